#include "zetterberg/gf.hpp"

#include <algorithm>
#include <cstring>

#include "zetterberg/errors.hpp"
#include "zetterberg/intmath.hpp"

namespace zetterberg::gf {

namespace {

// ---- polynomials over F_p (ascending coefficients, trimmed) ----

using Pol = std::vector<uint32_t>;

void trim(Pol& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Pol pol_mulmod(const Pol& a, const Pol& b, const Pol& f, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += uint64_t(a[i]) * b[j];
  }
  for (auto& v : r) v %= p;
  const size_t d = f.size() - 1;  // f monic
  for (size_t i = r.size(); i-- > d;) {
    uint64_t c = r[i] % p;
    if (!c) continue;
    r[i] = 0;
    for (size_t j = 0; j < d; ++j) {
      r[i - d + j] = (r[i - d + j] + uint64_t(p - f[j]) * c) % p;
    }
  }
  Pol out(r.begin(), r.begin() + std::min(r.size(), d));
  trim(out);
  return out;
}

Pol pol_powmod(Pol base, uint64_t e, const Pol& f, uint32_t p) {
  Pol res{1};
  while (e) {
    if (e & 1) res = pol_mulmod(res, base, f, p);
    base = pol_mulmod(base, base, f, p);
    e >>= 1;
  }
  return res;
}

Pol pol_mod(Pol a, const Pol& b, uint32_t p) {
  // b nonzero
  trim(a);
  const size_t db = b.size() - 1;
  uint64_t lead_inv = intmath::powmod(b.back(), p - 2, p);
  while (a.size() > db) {
    uint64_t c = uint64_t(a.back()) * lead_inv % p;
    size_t shift = a.size() - 1 - db;
    if (c) {
      for (size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + uint64_t(p) * p - c * b[j] % p) % p;
      }
    }
    a.pop_back();
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

Pol pol_gcd(Pol a, Pol b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Pol r = pol_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    uint64_t inv = intmath::powmod(a.back(), p - 2, p);
    for (auto& c : a) c = uint64_t(c) * inv % p;
  }
  return a;
}

bool pol_irreducible(const Pol& f, uint32_t p) {
  const uint32_t d = uint32_t(f.size()) - 1;
  if (d == 1) return true;
  const Pol x{0, 1};
  // x^(p^d) == x mod f
  Pol t = x;
  for (uint32_t i = 0; i < d; ++i) t = pol_powmod(t, p, f, p);
  if (t != x) return false;
  for (uint64_t r : intmath::prime_factors(d)) {
    Pol u = x;
    for (uint64_t i = 0; i < d / r; ++i) u = pol_powmod(u, p, f, p);
    // gcd(x^(p^(d/r)) - x, f) must be 1
    Pol diff = u;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    if (pol_gcd(diff, f, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

// ---- FieldSpec ----

uint64_t FieldSpec::size() const { return intmath::checked_pow(p, d); }

FieldSpec FieldSpec::make(uint32_t p, uint32_t d) {
  if (p < 3 || !intmath::is_prime(p)) throw input_error("characteristic must be an odd prime");
  if (d < 1 || d > kMaxDegree) throw input_error("unsupported extension degree");
  FieldSpec spec;
  spec.p = p;
  spec.d = d;
  if (d == 1) {
    spec.modulus = {0, 1};
    return spec;
  }
  // smallest coefficient vector in mixed-radix order
  const uint64_t limit = intmath::checked_pow(p, d);
  for (uint64_t idx = 1; idx < limit; ++idx) {
    Pol f(d + 1, 0);
    uint64_t t = idx;
    for (uint32_t i = 0; i < d; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[d] = 1;
    if (f[0] == 0) continue;
    if (pol_irreducible(f, p)) {
      spec.modulus.assign(f.begin(), f.end());
      return spec;
    }
  }
  throw check_error("no irreducible polynomial found");  // unreachable
}

nlohmann::json FieldSpec::to_json() const {
  return nlohmann::json{{"p", p}, {"d", d}, {"modulus", modulus}};
}

FieldSpec FieldSpec::from_json(const nlohmann::json& j) {
  FieldSpec s;
  s.p = j.at("p").get<uint32_t>();
  s.d = j.at("d").get<uint32_t>();
  s.modulus = j.at("modulus").get<std::vector<uint32_t>>();
  return s;
}

// ---- Elt ----

bool Elt::is_zero() const {
  for (uint32_t v : c)
    if (v) return false;
  return true;
}

std::vector<uint32_t> Elt::coeffs() const {
  if (!ctx) return {};
  return {c.begin(), c.begin() + ctx->degree()};
}

// ---- FieldCtx ----

FieldCtx::FieldCtx(FieldSpec spec) : spec_(std::move(spec)) {
  if (spec_.p < 3 || !intmath::is_prime(spec_.p)) throw input_error("characteristic must be an odd prime");
  if (spec_.d < 1 || spec_.d > kMaxDegree) throw input_error("unsupported extension degree");
  if (spec_.modulus.size() != spec_.d + 1 || spec_.modulus.back() != 1) {
    throw input_error("modulus must be monic of degree d");
  }
  for (uint32_t c : spec_.modulus)
    if (c >= spec_.p) throw input_error("modulus coefficients must be reduced mod p");
  Pol f(spec_.modulus.begin(), spec_.modulus.end());
  if (!pol_irreducible(f, spec_.p)) throw input_error("modulus is not irreducible");
  size_ = spec_.size();
  for (uint32_t j = 0; j < spec_.d; ++j) red_[j] = (spec_.p - spec_.modulus[j]) % spec_.p;
  find_generator();
  if (size_ <= (uint64_t(1) << 24)) build_eta_table();
}

Elt FieldCtx::zero() const {
  Elt e;
  e.ctx = this;
  return e;
}

Elt FieldCtx::one() const { return constant(1); }

Elt FieldCtx::constant(uint64_t v) const {
  Elt e = zero();
  e.c[0] = uint32_t(v % spec_.p);
  return e;
}

Elt FieldCtx::from_coeffs(std::span<const uint32_t> cs) const {
  if (cs.size() > spec_.d) throw input_error("coefficient vector too long");
  Elt e = zero();
  for (size_t i = 0; i < cs.size(); ++i) e.c[i] = cs[i] % spec_.p;
  return e;
}

Elt FieldCtx::from_index(uint64_t idx) const {
  if (idx >= size_) throw input_error("element index out of range");
  Elt e = zero();
  for (uint32_t i = 0; i < spec_.d; ++i) {
    e.c[i] = uint32_t(idx % spec_.p);
    idx /= spec_.p;
  }
  return e;
}

uint64_t FieldCtx::index(const Elt& a) const {
  check_member(a);
  uint64_t v = 0;
  for (uint32_t i = spec_.d; i-- > 0;) v = v * spec_.p + a.c[i];
  return v;
}

void FieldCtx::check_member(const Elt& a) const {
  if (a.ctx != this) throw input_error("element does not belong to this field context");
}

Elt FieldCtx::add(const Elt& a, const Elt& b) const {
  check_member(a);
  check_member(b);
  Elt r = zero();
  for (uint32_t i = 0; i < spec_.d; ++i) {
    uint32_t v = a.c[i] + b.c[i];
    r.c[i] = v >= spec_.p ? v - spec_.p : v;
  }
  return r;
}

Elt FieldCtx::sub(const Elt& a, const Elt& b) const {
  check_member(a);
  check_member(b);
  Elt r = zero();
  for (uint32_t i = 0; i < spec_.d; ++i) {
    uint32_t v = a.c[i] + spec_.p - b.c[i];
    r.c[i] = v >= spec_.p ? v - spec_.p : v;
  }
  return r;
}

Elt FieldCtx::neg(const Elt& a) const { return sub(zero(), a); }

Elt FieldCtx::mul(const Elt& a, const Elt& b) const {
  check_member(a);
  check_member(b);
  const uint32_t d = spec_.d;
  const uint64_t p = spec_.p;
  uint64_t acc[2 * kMaxDegree - 1] = {0};
  for (uint32_t i = 0; i < d; ++i) {
    if (!a.c[i]) continue;
    const uint64_t ai = a.c[i];
    for (uint32_t j = 0; j < d; ++j) acc[i + j] += ai * b.c[j];
  }
  for (uint32_t i = 2 * d - 1; i-- > d;) {
    const uint64_t c = acc[i] % p;
    if (!c) continue;
    for (uint32_t j = 0; j < d; ++j) acc[i - d + j] += c * red_[j];
  }
  Elt r = zero();
  for (uint32_t i = 0; i < d; ++i) r.c[i] = uint32_t(acc[i] % p);
  return r;
}

Elt FieldCtx::pow(Elt a, uint64_t e) const {
  check_member(a);
  Elt r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elt FieldCtx::inv(const Elt& a) const {
  if (a.is_zero()) throw input_error("inverse of zero");
  return pow(a, size_ - 2);
}

void FieldCtx::find_generator() {
  const auto primes = intmath::prime_factors(size_ - 1);
  for (uint64_t idx = 2; idx < size_; ++idx) {
    Elt cand = from_index(idx);
    bool ok = true;
    for (uint64_t r : primes) {
      if (pow(cand, (size_ - 1) / r) == one()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen_ = cand;
      return;
    }
  }
  throw check_error("no generator found");
}

void FieldCtx::build_eta_table() {
  square_bits_.assign((size_ + 63) / 64, 0);
  // mark g^0, g^2, g^4, ...
  Elt g2 = mul(gen_, gen_);
  Elt cur = one();
  const uint64_t half = (size_ - 1) / 2;
  for (uint64_t k = 0; k < half; ++k) {
    uint64_t i = index(cur);
    square_bits_[i >> 6] |= uint64_t(1) << (i & 63);
    cur = mul(cur, g2);
  }
}

int FieldCtx::eta(const Elt& a) const {
  check_member(a);
  if (a.is_zero()) return 0;
  if (!square_bits_.empty()) {
    uint64_t i = index(a);
    return (square_bits_[i >> 6] >> (i & 63)) & 1 ? 1 : -1;
  }
  return eta_by_exponent(a);
}

int FieldCtx::eta_by_exponent(const Elt& a) const {
  check_member(a);
  if (a.is_zero()) return 0;
  return pow(a, (size_ - 1) / 2) == one() ? 1 : -1;
}

uint64_t FieldCtx::mult_order(const Elt& a) const {
  check_member(a);
  if (a.is_zero()) throw input_error("zero has no multiplicative order");
  uint64_t order = size_ - 1;
  for (uint64_t r : intmath::factorize(size_ - 1)) {
    if (order % r == 0 && pow(a, order / r) == one()) order /= r;
  }
  return order;
}

Elt FieldCtx::sqrt(const Elt& a) const {
  check_member(a);
  if (a.is_zero()) return a;
  if (size_ % 4 != 3) throw input_error("sqrt implemented for size = 3 mod 4 only");
  Elt r = pow(a, (size_ + 1) / 4);
  if (!(mul(r, r) == a)) throw input_error("element is not a square");
  return r;
}

// ---- polynomials over a FieldCtx (for embedding root-finding) ----

namespace {

using PolE = std::vector<Elt>;

void trimE(PolE& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

PolE pole_mulmod(const FieldCtx& F, const PolE& a, const PolE& b, const PolE& f) {
  if (a.empty() || b.empty()) return {};
  PolE r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  // f monic
  const size_t d = f.size() - 1;
  for (size_t i = r.size(); i-- > d;) {
    Elt c = r[i];
    if (c.is_zero()) continue;
    r[i] = F.zero();
    for (size_t j = 0; j < d; ++j) r[i - d + j] = F.sub(r[i - d + j], F.mul(c, f[j]));
  }
  r.resize(std::min(r.size(), d), F.zero());
  trimE(r);
  return r;
}

PolE pole_powmod(const FieldCtx& F, PolE base, uint64_t e, const PolE& f) {
  PolE res{F.one()};
  while (e) {
    if (e & 1) res = pole_mulmod(F, res, base, f);
    base = pole_mulmod(F, base, base, f);
    e >>= 1;
  }
  return res;
}

PolE pole_mod(const FieldCtx& F, PolE a, const PolE& b) {
  trimE(a);
  const size_t db = b.size() - 1;
  const Elt lead_inv = F.inv(b.back());
  while (a.size() > db) {
    Elt c = F.mul(a.back(), lead_inv);
    size_t shift = a.size() - 1 - db;
    if (!c.is_zero()) {
      for (size_t j = 0; j + 1 < b.size(); ++j) {
        a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
      }
    }
    a.pop_back();
    trimE(a);
    if (a.empty()) break;
  }
  return a;
}

PolE pole_divexact(const FieldCtx& F, PolE a, const PolE& b) {
  // a = q*b exactly; returns q
  trimE(a);
  PolE q(a.size() - b.size() + 1, F.zero());
  const Elt lead_inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    Elt c = F.mul(a.back(), lead_inv);
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
    trimE(a);
    if (a.empty()) break;
  }
  return q;
}

PolE pole_gcd(const FieldCtx& F, PolE a, PolE b) {
  trimE(a);
  trimE(b);
  while (!b.empty()) {
    PolE r = pole_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Elt inv = F.inv(a.back());
    for (auto& c : a) c = F.mul(c, inv);
  }
  return a;
}

// Deterministic root of a monic polynomial that splits into distinct linear
// factors over F. Splits with gcd((x+c)^((|F|-1)/2) - 1, f) for shifts c
// enumerated in index order.
Elt pole_find_root(const FieldCtx& F, PolE f) {
  trimE(f);
  while (f.size() > 2) {
    bool split = false;
    for (uint64_t ci = 0; ci < F.size() && !split; ++ci) {
      const Elt c = F.from_index(ci);
      PolE base{c, F.one()};  // x + c
      PolE t = pole_powmod(F, base, (F.size() - 1) / 2, f);
      if (t.empty()) {
        // x + c divides f: -c is a root
        return F.neg(c);
      }
      t[0] = F.sub(t[0], F.one());
      PolE h = pole_gcd(F, t, f);
      if (h.size() > 1 && h.size() < f.size()) {
        PolE other = pole_divexact(F, f, h);
        f = (h.size() <= other.size()) ? std::move(h) : std::move(other);
        split = true;
      }
    }
    if (!split) throw check_error("root splitting failed");
  }
  if (f.size() != 2) throw check_error("polynomial has no root in this field");
  return F.neg(f[0]);
}

}  // namespace

// ---- Embedding ----

Embedding::Embedding(const FieldCtx& sub, const FieldCtx& super) : sub_(&sub), super_(&super) {
  if (sub.characteristic() != super.characteristic()) {
    throw input_error("embedding requires equal characteristic");
  }
  if (super.degree() % sub.degree() != 0) {
    throw input_error("subfield degree must divide extension degree");
  }
  const uint32_t a = sub.degree();
  Elt root;
  if (sub.spec() == super.spec()) {
    root = a > 1 ? super.from_index(super.characteristic()) : super.one();  // x itself, or 1
  } else {
    PolE f;
    f.reserve(a + 1);
    for (uint32_t i = 0; i <= a; ++i) f.push_back(super.constant(sub.spec().modulus[i]));
    root = pole_find_root(super, std::move(f));
  }
  basis_.reserve(a);
  Elt cur = super.one();
  for (uint32_t i = 0; i < a; ++i) {
    basis_.push_back(cur);
    cur = super.mul(cur, root);
  }
}

Elt Embedding::embed(const Elt& x) const {
  sub_->check_member(x);
  Elt r = super_->zero();
  for (uint32_t i = 0; i < sub_->degree(); ++i) {
    if (!x.c[i]) continue;
    Elt term = super_->mul(basis_[i], super_->constant(x.c[i]));
    r = super_->add(r, term);
  }
  return r;
}

namespace {

// Solve M v = y over F_p by Gaussian elimination; M given by columns.
// Returns false if inconsistent.
bool solve_fp(uint32_t p, const std::vector<std::vector<uint32_t>>& cols,
              std::vector<uint32_t> y, std::vector<uint32_t>& v) {
  const size_t ncols = cols.size();
  const size_t nrows = y.size();
  std::vector<std::vector<uint32_t>> m(nrows, std::vector<uint32_t>(ncols + 1, 0));
  for (size_t j = 0; j < ncols; ++j)
    for (size_t i = 0; i < nrows; ++i) m[i][j] = cols[j][i];
  for (size_t i = 0; i < nrows; ++i) m[i][ncols] = y[i];
  std::vector<int> pivot_of_col(ncols, -1);
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < nrows; ++col) {
    size_t sel = row;
    while (sel < nrows && m[sel][col] == 0) ++sel;
    if (sel == nrows) continue;
    std::swap(m[sel], m[row]);
    uint64_t inv = intmath::powmod(m[row][col], p - 2, p);
    for (size_t j = col; j <= ncols; ++j) m[row][j] = uint32_t(m[row][j] * inv % p);
    for (size_t i = 0; i < nrows; ++i) {
      if (i == row || m[i][col] == 0) continue;
      uint64_t f = m[i][col];
      for (size_t j = col; j <= ncols; ++j) {
        m[i][j] = uint32_t((m[i][j] + (uint64_t(p) - f) * m[row][j]) % p);
      }
    }
    pivot_of_col[col] = int(row);
    ++row;
  }
  for (size_t i = row; i < nrows; ++i) {
    if (m[i][ncols] != 0) return false;
  }
  v.assign(ncols, 0);
  for (size_t col = 0; col < ncols; ++col) {
    if (pivot_of_col[col] >= 0) v[col] = m[size_t(pivot_of_col[col])][ncols];
  }
  return true;
}

}  // namespace

bool Embedding::contains(const Elt& x) const {
  super_->check_member(x);
  std::vector<std::vector<uint32_t>> cols;
  cols.reserve(basis_.size());
  for (const Elt& b : basis_) {
    cols.emplace_back(b.c.begin(), b.c.begin() + super_->degree());
  }
  std::vector<uint32_t> y(x.c.begin(), x.c.begin() + super_->degree());
  std::vector<uint32_t> v;
  return solve_fp(super_->characteristic(), cols, std::move(y), v);
}

Elt Embedding::project(const Elt& x) const {
  super_->check_member(x);
  std::vector<std::vector<uint32_t>> cols;
  cols.reserve(basis_.size());
  for (const Elt& b : basis_) {
    cols.emplace_back(b.c.begin(), b.c.begin() + super_->degree());
  }
  std::vector<uint32_t> y(x.c.begin(), x.c.begin() + super_->degree());
  std::vector<uint32_t> v;
  if (!solve_fp(super_->characteristic(), cols, std::move(y), v)) {
    throw input_error("element is not in the embedded subfield");
  }
  return sub_->from_coeffs(v);
}

// ---- Tower ----

Tower make_tower(const FieldSpec& q0_spec, uint32_t s) {
  if (s < 1 || s % 2 == 0) throw input_error("s must be an odd positive integer");
  Tower t;
  t.s = s;
  const uint32_t d0 = q0_spec.d;
  if (2ull * s * d0 > kMaxDegree) throw input_error("tower degree exceeds supported maximum");
  t.f_q0 = std::make_unique<FieldCtx>(q0_spec);
  t.f_q = std::make_unique<FieldCtx>(s == 1 ? q0_spec : FieldSpec::make(q0_spec.p, s * d0));
  t.f_q2 = std::make_unique<FieldCtx>(FieldSpec::make(q0_spec.p, 2 * s * d0));
  t.q0 = t.f_q0->size();
  t.q = t.f_q->size();
  t.q0_in_q = std::make_unique<Embedding>(*t.f_q0, *t.f_q);
  t.q_in_q2 = std::make_unique<Embedding>(*t.f_q, *t.f_q2);
  t.q0_in_q2 = std::make_unique<Embedding>(*t.f_q0, *t.f_q2);
  return t;
}

// ---- subgroups ----

SubgroupEnum::SubgroupEnum(const FieldCtx& ctx, uint64_t order) : ctx_(&ctx), order_(order) {
  if (order == 0 || (ctx.size() - 1) % order != 0) {
    throw input_error("order does not divide the multiplicative group order");
  }
  step_ = ctx.pow(ctx.generator(), (ctx.size() - 1) / order);
}

SubgroupEnum::iterator& SubgroupEnum::iterator::operator++() {
  ++k_;
  if (k_ < owner_->order_) cur_ = owner_->ctx_->mul(cur_, owner_->step_);
  return *this;
}

std::vector<Elt> SubgroupEnum::materialize() const {
  std::vector<Elt> out;
  out.reserve(order_);
  for (const Elt& e : *this) out.push_back(e);
  return out;
}

SubgroupEnum subgroup(const FieldCtx& ctx_q2, uint64_t order) { return SubgroupEnum(ctx_q2, order); }

Elt primitive_2l_root(const FieldCtx& ctx_q2, uint32_t ell) {
  if (ell == 0 || ell >= 63) throw input_error("invalid 2-power exponent");
  const uint64_t n = uint64_t(1) << ell;
  if ((ctx_q2.size() - 1) % n != 0) throw input_error("2^ell does not divide the group order");
  return ctx_q2.pow(ctx_q2.generator(), (ctx_q2.size() - 1) / n);
}

Elt nonsquare_rep(const FieldCtx& ctx) { return ctx.generator(); }

}  // namespace zetterberg::gf
