#include "zetterberg/properties.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "zetterberg/congruence.hpp"
#include "zetterberg/errors.hpp"

namespace zetterberg::properties {

using gf::Elt;
using gf::FieldCtx;
using gf::Tower;

namespace {

/// The m embedded targets of one parity: nonzero squares (even) or
/// non-squares (odd) of F_{q0}, in ascending F_{q0} index order.
std::vector<Elt> embedded_targets(const Tower& t, Parity parity) {
  const int want = parity == Parity::even ? 1 : -1;
  std::vector<Elt> out;
  for (uint64_t i = 1; i < t.q0; ++i) {
    Elt a0 = t.f_q0->from_index(i);
    if (t.f_q0->eta(a0) == want) out.push_back(t.q0_in_q->embed(a0));
  }
  if (out.size() != (t.q0 - 1) / 2) throw check_error("target enumeration out of balance");
  return out;
}

std::string checkpoint_path(const ScanOptions& opt, const Tower& t, Parity parity) {
  std::ostringstream name;
  name << "npi_q0" << t.q0 << "_s" << t.s << "_" << parity_name(parity) << "_" << opt.shard_index
       << "of" << opt.shard_count << ".json";
  return (std::filesystem::path(opt.checkpoint_dir) / name.str()).string();
}

constexpr uint64_t kNotFound = ~uint64_t(0);

PropertyReport npi_scan(const Tower& t, Parity parity, const ScanOptions& opt) {
  if (opt.workers < 1 || opt.shard_count < 1 || opt.shard_index >= opt.shard_count) {
    throw input_error("bad worker or shard layout");
  }
  const auto t_start = std::chrono::steady_clock::now();
  const FieldCtx& F = *t.f_q;
  const std::vector<Elt> targets = embedded_targets(t, parity);
  const Elt g = F.generator();

  const uint64_t total = F.size() - 1;  // exponents of g, all of F_q^*
  const uint64_t lo = opt.shard_index * total / opt.shard_count;
  const uint64_t hi = (opt.shard_index + 1) * total / opt.shard_count;
  const uint32_t W = uint32_t(std::min<uint64_t>(opt.workers, std::max<uint64_t>(hi - lo, 1)));

  // resume positions, one per worker range
  std::vector<uint64_t> start(W);
  for (uint32_t w = 0; w < W; ++w) start[w] = lo + (hi - lo) * w / W;
  std::atomic<uint64_t> best{kNotFound};
  if (!opt.checkpoint_dir.empty()) {
    std::ifstream in(checkpoint_path(opt, t, parity));
    if (in) {
      auto j = nlohmann::json::parse(in, nullptr, false);
      if (!j.is_discarded() && j.value("workers", 0u) == W &&
          j.value("parity", "") == parity_name(parity) && j.value("q0", 0ull) == t.q0 &&
          j.value("s", 0u) == t.s && j.value("shard_index", 0u) == opt.shard_index &&
          j.value("shard_count", 0u) == opt.shard_count) {
        auto prog = j.value("progress", std::vector<uint64_t>{});
        for (uint32_t w = 0; w < W && w < prog.size(); ++w) start[w] = std::max(start[w], prog[w]);
        if (!j["best"].is_null()) best.store(j["best"].get<uint64_t>());
      }
    }
  }

  std::unique_ptr<std::atomic<uint64_t>[]> progress(new std::atomic<uint64_t>[W]);
  for (uint32_t w = 0; w < W; ++w) progress[w].store(start[w]);
  std::mutex ckpt_mutex;
  std::atomic<uint64_t> checkpoints{0};

  auto write_checkpoint = [&] {
    std::lock_guard lock(ckpt_mutex);
    nlohmann::json j{{"q0", t.q0},         {"s", t.s},
                     {"parity", parity_name(parity)},  {"shard_index", opt.shard_index},
                     {"shard_count", opt.shard_count}, {"workers", W}};
    std::vector<uint64_t> prog(W);
    for (uint32_t w = 0; w < W; ++w) prog[w] = progress[w].load();
    j["progress"] = prog;
    uint64_t b = best.load();
    j["best"] = b == kNotFound ? nlohmann::json() : nlohmann::json(b);
    std::ofstream out(checkpoint_path(opt, t, parity));
    out << j.dump(2) << '\n';
    checkpoints.fetch_add(1);
  };

  auto worker = [&](uint32_t w) {
    const uint64_t wlo = lo + (hi - lo) * w / W;
    const uint64_t whi = lo + (hi - lo) * (w + 1) / W;
    uint64_t k = std::max(start[w], wlo);
    if (k >= whi) return;
    Elt x = F.pow(g, k);
    uint64_t since_ckpt = 0;
    for (; k < whi; ++k, x = F.mul(x, g)) {
      if ((k & 0xfff) == 0 && best.load(std::memory_order_relaxed) < k) break;
      Elt xx = F.mul(x, x);
      bool ok = true;
      for (const Elt& a : targets) {
        if (F.eta(F.sub(xx, a)) != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        uint64_t cur = best.load();
        while (k < cur && !best.compare_exchange_weak(cur, k)) {
        }
        break;
      }
      if (!opt.checkpoint_dir.empty() && ++since_ckpt >= opt.checkpoint_interval) {
        progress[w].store(k + 1);
        write_checkpoint();
        since_ckpt = 0;
      }
    }
    progress[w].store(std::min(k + 1, whi));
  };

  if (W == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t w = 0; w < W; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  PropertyReport rep;
  rep.q0 = t.q0;
  rep.s = t.s;
  rep.q = t.q;
  rep.parity = parity;
  rep.shard_index = opt.shard_index;
  rep.shard_count = opt.shard_count;
  rep.checkpoints_written = checkpoints.load();
  const uint64_t found = best.load();
  if (found != kNotFound) {
    rep.holds = true;
    rep.witness_k = found;
    Elt x = F.pow(g, found);
    rep.witness_coeffs = x.coeffs();
    Elt xx = F.mul(x, x);
    for (const Elt& a : targets) {
      Elt y = F.sqrt(F.sub(xx, a));
      if (y.is_zero()) throw check_error("witness reconstruction hit y = 0");
      rep.witness_y.push_back(y.coeffs());
    }
    rep.elements_scanned = found + 1 - lo;  // canonical serial count
  } else {
    rep.exhausted = true;
    rep.elements_scanned = hi - lo;
  }
  if (!opt.checkpoint_dir.empty()) write_checkpoint();
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
          .count();
  return rep;
}

}  // namespace

nlohmann::json PropertyReport::to_json() const {
  nlohmann::json j{{"q0", q0},
                   {"s", s},
                   {"q", q},
                   {"parity", parity_name(parity)},
                   {"holds", holds},
                   {"exhausted", exhausted},
                   {"witness", witness_k ? nlohmann::json(witness_coeffs) : nlohmann::json()},
                   {"witness_k", witness_k ? nlohmann::json(*witness_k) : nlohmann::json()},
                   {"witness_y", witness_y},
                   {"scanned", elements_scanned},
                   {"checkpoints", checkpoints_written},
                   {"shard", std::to_string(shard_index) + "/" + std::to_string(shard_count)},
                   {"elapsed_ms", elapsed_ms}};
  return j;
}

PropertyReport npi_even(const Tower& t, const ScanOptions& opt) {
  return npi_scan(t, Parity::even, opt);
}

PropertyReport npi_odd(const Tower& t, const ScanOptions& opt) {
  return npi_scan(t, Parity::odd, opt);
}

nlohmann::json IQ0Result::to_json() const {
  return nlohmann::json{{"member", member}, {"even", even.to_json()}, {"odd", odd.to_json()}};
}

IQ0Result in_I(const gf::FieldSpec& q0_spec, uint32_t s, const ScanOptions& opt) {
  auto cls = congruence::classify(q0_spec.size());
  if (!cls.ell) throw input_error("I(q0) is defined for q0 = 7 mod 8 only");
  gf::Tower t = gf::make_tower(q0_spec, s);
  IQ0Result r;
  r.even = npi_even(t, opt);
  r.odd = npi_odd(t, opt);
  r.member = r.even.holds || r.odd.holds;
  return r;
}

bool npi_oracle_bruteforce(const Tower& t, uint32_t ell, uint32_t i, uint64_t cap) {
  if (t.q > cap) {
    throw resource_error("oracle pair enumeration refused for q > cap", t.q * t.q);
  }
  const FieldCtx& F2 = *t.f_q2;
  const uint64_t m = (t.q0 - 1) / 2;
  if (i >= (uint64_t(1) << ell)) throw input_error("index i out of range");

  // sumset H_m + H_m as a bitset over element indices of F_{q^2}
  auto hm = gf::subgroup(F2, m * (t.q + 1)).materialize();
  std::vector<uint64_t> sums((F2.size() + 63) / 64, 0);
  for (const Elt& h1 : hm) {
    for (const Elt& h2 : hm) {
      uint64_t idx = F2.index(F2.add(h1, h2));
      sums[idx >> 6] |= uint64_t(1) << (idx & 63);
    }
  }

  // G_i = gamma0 * <g^(q+1)>, gamma0 = g^(i(q+1)/2^ell); |G_i| = q - 1
  Elt gamma = F2.pow(F2.generator(), i * (t.q + 1) >> ell);
  Elt step = F2.pow(F2.generator(), t.q + 1);
  for (uint64_t k = 0; k < t.q - 1; ++k, gamma = F2.mul(gamma, step)) {
    uint64_t idx = F2.index(gamma);
    if (!(sums[idx >> 6] >> (idx & 63) & 1)) return true;
  }
  return false;
}

DeltaPoly DeltaPoly::make(const FieldCtx& F, const Elt& alpha, Parity parity, const Elt* D) {
  F.check_member(alpha);
  if (alpha.is_zero()) throw input_error("alpha must be nonzero");
  DeltaPoly p;
  p.parity = parity;
  p.alpha = alpha;
  if (parity == Parity::even) {
    p.dhat = F.one();
  } else {
    p.dhat = D ? *D : gf::nonsquare_rep(F);
    if (F.eta(p.dhat) != -1) throw input_error("D must be a non-square");
  }
  const Elt& dh = p.dhat;
  Elt a2 = F.mul(alpha, alpha);
  Elt a3 = F.mul(a2, alpha);
  Elt a4 = F.mul(a2, a2);
  Elt inv2 = F.inv(F.constant(2));
  Elt inv4 = F.mul(inv2, inv2);
  Elt two_alpha = F.add(alpha, alpha);
  Elt a2_dh = F.add(a2, dh);

  p.a = {F.neg(a2_dh), two_alpha};
  p.b = {F.add(a3, F.mul(dh, alpha)), F.neg(F.add(F.add(a2, a2), F.add(a2, dh))), two_alpha};
  p.c = {F.add(F.sub(F.neg(F.mul(a4, inv4)), F.mul(F.mul(dh, a2), inv2)),
               F.mul(F.mul(F.constant(3), F.mul(dh, dh)), inv4)),
         p.b[0], F.neg(a2_dh)};

  // delta = b^2 - 4ac
  std::array<Elt, 5> d;
  for (auto& e : d) e = F.zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d[i + j] = F.add(d[i + j], F.mul(p.b[i], p.b[j]));
  }
  Elt four = F.constant(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) {
      d[i + j] = F.sub(d[i + j], F.mul(four, F.mul(p.a[i], p.c[j])));
    }
  }
  p.delta = d;
  if (!(p.delta[4] == F.mul(four, a2))) {
    throw check_error("delta leading coefficient is not 4 alpha^2");
  }
  return p;
}

namespace {

Elt eval_poly(const FieldCtx& F, std::span<const Elt> coeffs, const Elt& x) {
  Elt acc = F.zero();
  for (size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
  return acc;
}

}  // namespace

Elt DeltaPoly::eval_a(const Elt& x) const { return eval_poly(*x.ctx, a, x); }
Elt DeltaPoly::eval_b(const Elt& x) const { return eval_poly(*x.ctx, b, x); }
Elt DeltaPoly::eval_c(const Elt& x) const { return eval_poly(*x.ctx, c, x); }
Elt DeltaPoly::eval_delta(const Elt& x) const { return eval_poly(*x.ctx, delta, x); }

namespace {

bool witness_valid(const FieldCtx& F, const PiWitness& w, const Elt& alpha, const Elt& dhat) {
  const auto& v = w.v;
  for (int i = 0; i < 3; ++i) {
    if (!(F.add(F.mul(v[i], v[i]), F.mul(v[i + 3], v[i + 3])) == dhat)) return false;
  }
  if (!(F.add(F.add(v[0], v[1]), v[2]) == alpha)) return false;
  return F.add(F.add(v[3], v[4]), v[5]).is_zero();
}

}  // namespace

std::optional<PiWitness> pi_solve(const FieldCtx& F, const Elt& alpha, Parity parity,
                                  const Elt* D) {
  F.check_member(alpha);
  if (alpha.is_zero()) throw input_error("alpha must be nonzero");
  Elt one = F.one();
  if (parity == Parity::even && (alpha == one || alpha == F.neg(one))) {
    PiWitness w;
    w.v = {one, alpha == one ? one : F.neg(one), F.neg(one), F.zero(), F.zero(), F.zero()};
    return w;
  }
  DeltaPoly dp = DeltaPoly::make(F, alpha, parity, D);
  const Elt& dh = dp.dhat;
  Elt inv2 = F.inv(F.constant(2));
  Elt shift = F.mul(F.add(F.mul(alpha, alpha), dh), inv2);  // (alpha^2 + dhat)/2
  for (uint64_t xi = 0; xi < F.size(); ++xi) {
    Elt x1 = F.from_index(xi);
    Elt t1 = F.sub(dh, F.mul(x1, x1));
    if (F.eta(t1) != 1) continue;
    Elt av = dp.eval_a(x1);
    if (av.is_zero()) continue;
    Elt dv = dp.eval_delta(x1);
    if (F.eta(dv) != 1) continue;
    Elt y1 = F.sqrt(t1);
    Elt sd = F.sqrt(dv);
    Elt bv = dp.eval_b(x1);
    Elt inv2a = F.inv(F.add(av, av));
    for (int sign = 0; sign < 2; ++sign) {
      Elt x2 = F.mul(F.add(F.neg(bv), sign ? F.neg(sd) : sd), inv2a);
      Elt y2 = F.mul(
          F.sub(F.sub(F.add(F.mul(alpha, x1), F.mul(alpha, x2)), F.mul(x1, x2)), shift),
          F.inv(y1));
      Elt x3 = F.sub(F.sub(alpha, x1), x2);
      Elt y3 = F.neg(F.add(y1, y2));
      PiWitness w;
      w.v = {x1, x2, x3, y1, y2, y3};
      if (witness_valid(F, w, alpha, dh)) return w;
    }
    throw check_error("quartic reduction produced an invalid sextuple");
  }
  return std::nullopt;
}

bool pi_direct_search(const FieldCtx& F_q, Parity parity) {
  Elt D = gf::nonsquare_rep(F_q);
  for (uint64_t ai = 1; ai < F_q.size(); ++ai) {
    Elt alpha = F_q.from_index(ai);
    if (alpha.is_zero()) continue;
    if (!pi_solve(F_q, alpha, parity, parity == Parity::odd ? &D : nullptr)) return false;
  }
  return true;
}

DeltaCertificate delta_not_square_certificate(const FieldCtx& F, const Elt& alpha, Parity parity,
                                              const Elt* D, uint64_t brute_cap) {
  Elt one = F.one();
  if (parity == Parity::even && (alpha == one || alpha == F.neg(one))) {
    throw input_error("even case requires alpha outside {-1, 1}");
  }
  DeltaPoly dp = DeltaPoly::make(F, alpha, parity, D);
  Elt lead_inv = F.inv(dp.delta[4]);
  DeltaCertificate cert;
  cert.A0 = F.mul(dp.delta[0], lead_inv);
  cert.A1 = F.mul(dp.delta[1], lead_inv);
  cert.A2 = F.mul(dp.delta[2], lead_inv);
  cert.A3 = F.mul(dp.delta[3], lead_inv);
  cert.a3_nonzero = !cert.A3.is_zero();
  if (!cert.a3_nonzero) throw check_error("A3 vanished outside the excluded alphas");

  // A2 - ((A3/2)^2 + 2 A1/A3): a monic quartic with A3 != 0 can only be the
  // square of x^2 + (A3/2) x + t with t = A1/A3, forcing this to vanish
  Elt inv2 = F.inv(F.constant(2));
  Elt half_a3 = F.mul(cert.A3, inv2);
  Elt t = F.mul(cert.A1, F.inv(cert.A3));
  cert.obstruction = F.sub(cert.A2, F.add(F.mul(half_a3, half_a3), F.add(t, t)));
  cert.obstruction_nonzero = !cert.obstruction.is_zero();

  // closed forms
  Elt a2 = F.mul(alpha, alpha);
  Elt inv_alpha2 = F.inv(a2);
  Elt a3_cf, obs_cf;
  if (parity == Parity::even) {
    a3_cf = F.mul(F.sub(one, a2), F.inv(alpha));
    obs_cf = F.mul(F.sub(a2, one), inv_alpha2);
  } else {
    const Elt& dd = dp.dhat;
    a3_cf = F.mul(F.sub(dd, a2), F.inv(alpha));
    obs_cf = F.mul(F.sub(F.mul(dd, a2), F.mul(dd, dd)), inv_alpha2);
  }
  cert.closed_forms_match = (a3_cf == cert.A3) && (obs_cf == cert.obstruction);

  if (F.size() <= brute_cap) {
    // no monic quadratic x^2 + u x + v squares to delta/(4 alpha^2)
    for (uint64_t ui = 0; ui < F.size(); ++ui) {
      Elt u = F.from_index(ui);
      Elt u2 = F.mul(u, u);
      for (uint64_t vi = 0; vi < F.size(); ++vi) {
        Elt v = F.from_index(vi);
        bool square = F.add(u, u) == cert.A3 && F.add(u2, F.add(v, v)) == cert.A2 &&
                      F.mul(F.add(u, u), v) == cert.A1 && F.mul(v, v) == cert.A0;
        if (square) throw check_error("delta is a polynomial square");
      }
    }
    cert.brute_force_checked = true;
  }
  return cert;
}

nlohmann::json WeilAudit::to_json() const {
  nlohmann::json ents = nlohmann::json::array();
  for (const auto& e : entries) {
    ents.push_back({{"parity", parity_name(e.parity)},
                    {"alpha_index", e.alpha_index},
                    {"sum_eta_delta", e.sum_eta_delta},
                    {"sum_eta_product", e.sum_eta_product},
                    {"E", e.E},
                    {"N1", e.N1},
                    {"bounds_ok", e.bounds_ok},
                    {"certificate_ok", e.certificate_ok}});
  }
  return nlohmann::json{{"q", q},
                        {"sum_eta_even", sum_eta_even},
                        {"sum_eta_odd", sum_eta_odd},
                        {"entries", ents},
                        {"all_ok", all_ok}};
}

WeilAudit weil_sum_audit(const FieldCtx& F_q, uint32_t alpha_sample_count) {
  const uint64_t q = F_q.size();
  if (q > (uint64_t(1) << 24)) {
    throw resource_error("weil audit enumerates F_q; q exceeds 2^24", q);
  }
  WeilAudit audit;
  audit.q = q;
  Elt D = gf::nonsquare_rep(F_q);
  for (uint64_t xi = 0; xi < q; ++xi) {
    Elt x = F_q.from_index(xi);
    Elt xx = F_q.mul(x, x);
    audit.sum_eta_even += F_q.eta(F_q.sub(F_q.one(), xx));
    audit.sum_eta_odd += F_q.eta(F_q.sub(D, xx));
  }

  bool ok = audit.sum_eta_even == 1 && audit.sum_eta_odd == 1;
  for (Parity parity : {Parity::even, Parity::odd}) {
    const int64_t e_cap = parity == Parity::even ? 16 : 12;
    const int64_t n1_off = parity == Parity::even ? 15 : 11;
    Elt alpha = F_q.one();
    uint64_t a_exp = 0;
    uint32_t taken = 0;
    while (taken < alpha_sample_count) {
      alpha = F_q.mul(alpha, F_q.generator());
      a_exp = (a_exp + 1) % (q - 1);
      if (a_exp == 0) {  // wrapped to 1; advance again to stay in F_q^*
        alpha = F_q.generator();
        a_exp = 1;
      }
      if (parity == Parity::even && (alpha == F_q.one() || alpha == F_q.neg(F_q.one()))) {
        continue;
      }
      WeilAuditEntry ent;
      ent.parity = parity;
      ent.alpha_index = F_q.index(alpha);
      DeltaPoly dp =
          DeltaPoly::make(F_q, alpha, parity, parity == Parity::odd ? &D : nullptr);
      for (uint64_t xi = 0; xi < q; ++xi) {
        Elt x = F_q.from_index(xi);
        Elt tv = F_q.sub(dp.dhat, F_q.mul(x, x));
        Elt dv = dp.eval_delta(x);
        int e1 = F_q.eta(tv);
        int e2 = F_q.eta(dv);
        ent.sum_eta_delta += e2;
        ent.sum_eta_product += e1 * e2;
        bool in_T = tv.is_zero() || dp.eval_a(x).is_zero() || dv.is_zero();
        int64_t term = int64_t(1 + e1) * (1 + e2);
        (in_T ? ent.E : ent.N1) += term;
      }
      // integer-exact forms of the square-root bounds
      auto sq_le = [](int64_t v, int64_t bound_sq) { return v * v <= bound_sq; };
      bool n1_ok;
      {
        int64_t lhs = int64_t(q) - n1_off - ent.N1;  // N1 >= q - 8 sqrt(q) - off
        n1_ok = lhs <= 0 || lhs * lhs <= int64_t(64 * q);
      }
      ent.bounds_ok = sq_le(ent.sum_eta_delta, int64_t(9 * q)) &&
                      sq_le(ent.sum_eta_product, int64_t(25 * q)) && ent.E <= e_cap && n1_ok;
      auto cert = delta_not_square_certificate(F_q, alpha, parity,
                                               parity == Parity::odd ? &D : nullptr);
      ent.certificate_ok =
          cert.a3_nonzero && cert.obstruction_nonzero && cert.closed_forms_match;
      ok = ok && ent.bounds_ok && ent.certificate_ok;
      audit.entries.push_back(ent);
      ++taken;
    }
  }
  audit.all_ok = ok;
  return audit;
}

}  // namespace zetterberg::properties
