#include "zetterberg/codes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zetterberg/congruence.hpp"
#include "zetterberg/errors.hpp"
#include "zetterberg/intmath.hpp"

namespace zetterberg::codes {

using gf::Elt;
using gf::FieldCtx;
using gf::FieldSpec;
using gf::Tower;

namespace {

/// Coordinate map of F_{q^2} as an F_{q0}-vector space with respect to the
/// basis {x^j * E(t^i) : j < 2s, i < d0}, where x is the variable of the flat
/// F_{q^2} representation, t the variable of F_{q0}, and E the subfield
/// embedding. For prime q0 this is the identity on coefficient vectors.
class CoordMap {
 public:
  explicit CoordMap(const Tower& t)
      : f_q0_(t.f_q0.get()), f_q2_(t.f_q2.get()), d0_(t.f_q0->degree()), r_(2 * t.s) {
    const uint32_t p = f_q2_->characteristic();
    const uint32_t dim = r_ * d0_;
    // basis matrix: column (j*d0+i) holds the F_p coefficients of x^j E(t^i)
    std::vector<std::vector<uint32_t>> m(dim, std::vector<uint32_t>(2 * dim, 0));
    Elt x = f_q2_->from_index(p);  // the variable of F_{q^2}
    Elt xj = f_q2_->one();
    for (uint32_t j = 0; j < r_; ++j) {
      Elt ti = f_q0_->one();
      for (uint32_t i = 0; i < d0_; ++i) {
        Elt b = f_q2_->mul(xj, t.q0_in_q2->embed(ti));
        for (uint32_t k = 0; k < dim; ++k) m[k][j * d0_ + i] = b.c[k];
        if (i + 1 < d0_) ti = f_q0_->mul(ti, f_q0_->from_index(p));
      }
      xj = f_q2_->mul(xj, x);
    }
    // Gauss-Jordan inversion over F_p
    for (uint32_t k = 0; k < dim; ++k) m[k][dim + k] = 1;
    for (uint32_t col = 0; col < dim; ++col) {
      uint32_t piv = col;
      while (piv < dim && m[piv][col] == 0) ++piv;
      if (piv == dim) throw check_error("coordinate basis is singular");
      std::swap(m[piv], m[col]);
      uint64_t inv = intmath::powmod(m[col][col], p - 2, p);
      for (auto& v : m[col]) v = uint32_t(v * inv % p);
      for (uint32_t row = 0; row < dim; ++row) {
        if (row == col || m[row][col] == 0) continue;
        uint64_t f = m[row][col];
        for (uint32_t k = col; k < 2 * dim; ++k) {
          m[row][k] = uint32_t((m[row][k] + (p - f) * m[col][k]) % p);
        }
      }
    }
    inv_.assign(dim, std::vector<uint32_t>(dim));
    for (uint32_t row = 0; row < dim; ++row) {
      for (uint32_t k = 0; k < dim; ++k) inv_[row][k] = m[row][dim + k];
    }
  }

  /// F_{q0} element indices of the 2s coordinates of a.
  std::vector<uint32_t> coords(const Elt& a) const {
    const uint32_t p = f_q2_->characteristic();
    const uint32_t dim = r_ * d0_;
    std::vector<uint32_t> c(dim, 0);
    for (uint32_t row = 0; row < dim; ++row) {
      uint64_t acc = 0;
      for (uint32_t k = 0; k < dim; ++k) acc += uint64_t(inv_[row][k]) * a.c[k];
      c[row] = uint32_t(acc % p);
    }
    std::vector<uint32_t> out(r_);
    for (uint32_t j = 0; j < r_; ++j) {
      uint64_t idx = 0;
      for (uint32_t i = d0_; i-- > 0;) idx = idx * p + c[j * d0_ + i];
      out[j] = uint32_t(idx);
    }
    return out;
  }

 private:
  const FieldCtx* f_q0_;
  const FieldCtx* f_q2_;
  uint32_t d0_, r_;
  std::vector<std::vector<uint32_t>> inv_;
};

LinearCode code_shell(const FieldSpec& q0_spec, uint32_t s, Kind kind) {
  LinearCode code;
  code.kind = kind;
  code.q0_spec = q0_spec;
  code.q0 = q0_spec.size();
  code.s = s;
  code.r = 2 * s;
  return code;
}

}  // namespace

LinearCode build_full(const FieldSpec& q0_spec, uint32_t s) {
  Tower t = gf::make_tower(q0_spec, s);
  LinearCode code = code_shell(q0_spec, s, Kind::full);
  code.n = t.q + 1;
  CoordMap phi(t);
  for (const Elt& h : gf::subgroup(*t.f_q2, t.q + 1)) {
    code.columns.push_back(phi.coords(h));
  }
  return code;
}

LinearCode build_twisted_half(const FieldSpec& q0_spec, uint32_t s) {
  Tower t = gf::make_tower(q0_spec, s);
  auto cls = congruence::classify(t.q);
  if (!cls.ell) {
    throw input_error("twisted half construction needs q = 7 mod 8");
  }
  const uint32_t ell = *cls.ell;
  LinearCode code = code_shell(q0_spec, s, Kind::twisted_half);
  code.ell = ell;
  code.n = (t.q + 1) / 2;
  code.enumeration = "theta-coset-major";
  CoordMap phi(t);
  Elt theta = gf::primitive_2l_root(*t.f_q2, ell);
  auto hl = gf::subgroup(*t.f_q2, (t.q + 1) >> ell).materialize();
  Elt coset = t.f_q2->one();
  for (uint32_t i = 0; i < (1u << (ell - 1)); ++i) {
    for (const Elt& e : hl) code.columns.push_back(phi.coords(t.f_q2->mul(coset, e)));
    coset = t.f_q2->mul(coset, theta);
  }
  return code;
}

uint64_t dimension(const LinearCode& code) {
  FieldCtx F(code.q0_spec);
  // row-reduce the r x n parity-check matrix over F_{q0}
  std::vector<std::vector<Elt>> rows(code.r, std::vector<Elt>(code.n));
  for (uint64_t j = 0; j < code.n; ++j) {
    for (uint32_t i = 0; i < code.r; ++i) rows[i][j] = F.from_index(code.columns[j][i]);
  }
  uint32_t rank = 0;
  for (uint64_t col = 0; col < code.n && rank < code.r; ++col) {
    uint32_t piv = rank;
    while (piv < code.r && rows[piv][col].is_zero()) ++piv;
    if (piv == code.r) continue;
    std::swap(rows[piv], rows[rank]);
    Elt inv = F.inv(rows[rank][col]);
    for (uint64_t k = col; k < code.n; ++k) rows[rank][k] = F.mul(rows[rank][k], inv);
    for (uint32_t i = 0; i < code.r; ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      Elt f = rows[i][col];
      for (uint64_t k = col; k < code.n; ++k) {
        rows[i][k] = F.sub(rows[i][k], F.mul(f, rows[rank][k]));
      }
    }
    ++rank;
  }
  return code.n - rank;
}

uint32_t min_distance_small(const LinearCode& code, uint64_t cap) {
  if (code.n > cap) {
    throw resource_error("minimum distance search refused: n exceeds cap", code.n);
  }
  FieldCtx F(code.q0_spec);
  auto as_elts = [&](const std::vector<uint32_t>& col) {
    std::vector<Elt> v(code.r);
    for (uint32_t i = 0; i < code.r; ++i) v[i] = F.from_index(col[i]);
    return v;
  };
  auto normalize = [&](std::vector<Elt> v) -> std::vector<uint32_t> {
    for (uint32_t i = 0; i < code.r; ++i) {
      if (!v[i].is_zero()) {
        Elt inv = F.inv(v[i]);
        std::vector<uint32_t> key(code.r);
        for (uint32_t k = 0; k < code.r; ++k) key[k] = uint32_t(F.index(F.mul(v[k], inv)));
        return key;
      }
    }
    return {};  // zero vector
  };

  std::vector<std::vector<Elt>> cols(code.n);
  std::map<std::vector<uint32_t>, uint64_t> directions;
  for (uint64_t j = 0; j < code.n; ++j) {
    cols[j] = as_elts(code.columns[j]);
    auto key = normalize(cols[j]);
    if (key.empty()) return 1;  // zero column: weight-1 codeword
    if (!directions.emplace(std::move(key), j).second) return 2;
  }
  // weight-3 codewords can be scaled so the first coefficient is 1
  std::vector<Elt> v(code.r);
  for (uint64_t i = 0; i < code.n; ++i) {
    for (uint64_t j = i + 1; j < code.n; ++j) {
      for (uint64_t li = 1; li < code.q0; ++li) {
        Elt lam = F.from_index(li);
        for (uint32_t k = 0; k < code.r; ++k) v[k] = F.add(cols[i][k], F.mul(lam, cols[j][k]));
        auto it = directions.find(normalize(v));
        if (it != directions.end() && it->second != i && it->second != j) return 3;
      }
    }
  }
  return 4;
}

uint64_t covering_radius_table_bytes(const LinearCode& code) {
  uint64_t total = 1;
  for (uint32_t i = 0; i < code.r; ++i) total *= code.q0;
  return total;  // one level byte per syndrome
}

CRCertificate covering_radius_exact(const LinearCode& code, uint32_t rho_cap,
                                    uint64_t memory_budget) {
  const uint32_t p = code.q0_spec.p;
  const uint32_t d0 = code.q0_spec.d;
  const uint32_t dim = code.r * d0;  // syndromes as F_p digit vectors
  const uint64_t total = covering_radius_table_bytes(code);
  if (total > memory_budget) {
    throw resource_error("syndrome table exceeds memory budget", total);
  }
  FieldCtx F(code.q0_spec);

  std::vector<uint64_t> pw(dim + 1, 1);
  for (uint32_t k = 0; k < dim; ++k) pw[k + 1] = pw[k] * p;

  // generator moves: lambda * column over all nonzero lambda, as digit vectors
  std::vector<std::array<uint8_t, gf::kMaxDegree>> gens;
  gens.reserve(code.n * (code.q0 - 1));
  for (const auto& col : code.columns) {
    for (uint64_t li = 1; li < code.q0; ++li) {
      Elt lam = F.from_index(li);
      std::array<uint8_t, gf::kMaxDegree> g{};
      for (uint32_t i = 0; i < code.r; ++i) {
        uint64_t idx = F.index(F.mul(lam, F.from_index(col[i])));
        for (uint32_t k = 0; k < d0; ++k) {
          g[i * d0 + k] = uint8_t(idx % p);
          idx /= p;
        }
      }
      gens.push_back(g);
    }
  }

  constexpr uint8_t kUnseen = 0xff;
  std::vector<uint8_t> level(total, kUnseen);
  std::vector<uint64_t> frontier{0}, next;
  level[0] = 0;
  CRCertificate cert;
  cert.coverage_histogram.push_back(1);
  uint64_t covered = 1;
  uint32_t depth = 0;
  std::array<uint8_t, gf::kMaxDegree> dig{};
  while (!frontier.empty() && covered < total) {
    if (depth == rho_cap) {
      throw resource_error("covering radius exceeds the configured cap", rho_cap);
    }
    ++depth;
    next.clear();
    for (uint64_t idx : frontier) {
      uint64_t rem = idx;
      for (uint32_t k = 0; k < dim; ++k) {
        dig[k] = uint8_t(rem % p);
        rem /= p;
      }
      for (const auto& g : gens) {
        uint64_t nidx = 0;
        for (uint32_t k = 0; k < dim; ++k) {
          uint32_t t = dig[k] + g[k];
          if (t >= p) t -= p;
          nidx += uint64_t(t) * pw[k];
        }
        if (level[nidx] == kUnseen) {
          level[nidx] = uint8_t(depth);
          next.push_back(nidx);
        }
      }
    }
    covered += next.size();
    cert.coverage_histogram.push_back(next.size());
    frontier.swap(next);
  }
  if (covered != total) {
    throw check_error("parity-check columns do not span the syndrome space");
  }
  cert.rho = depth;
  // smallest syndrome index first covered at the final level
  for (uint64_t idx = 0; idx < total; ++idx) {
    if (level[idx] == depth) {
      uint64_t rem = idx;
      std::vector<uint32_t> synd(code.r);
      for (uint32_t i = 0; i < code.r; ++i) {
        uint64_t e = 0, mul = 1;
        for (uint32_t k = 0; k < d0; ++k) {
          e += (rem % p) * mul;
          rem /= p;
          mul *= p;
        }
        synd[i] = uint32_t(e);
      }
      cert.deepest_syndrome = std::move(synd);
      break;
    }
  }
  return cert;
}

bool quasi_perfect(const LinearCode& code, const CRCertificate& cr, uint32_t min_distance) {
  (void)code;
  const uint32_t t = (min_distance - 1) / 2;
  return cr.rho == t + 1;
}

nlohmann::json LinearCode::to_json() const {
  nlohmann::json j{{"kind", kind == Kind::full ? "full" : "twisted_half"},
                   {"q0", q0},
                   {"s", s},
                   {"n", n},
                   {"r", r},
                   {"enumeration", enumeration},
                   {"q0_spec", q0_spec.to_json()},
                   {"columns", columns}};
  if (kind == Kind::twisted_half) j["ell"] = ell;
  return j;
}

std::string LinearCode::parity_check_csv() const {
  std::ostringstream out;
  for (uint32_t i = 0; i < r; ++i) {
    for (uint64_t j = 0; j < n; ++j) {
      if (j) out << ',';
      out << columns[j][i];
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json code_report(const LinearCode& code, const CRCertificate& cr,
                           uint32_t min_distance, bool qp) {
  return nlohmann::json{{"kind", code.kind == Kind::full ? "full" : "twisted_half"},
                        {"q0", code.q0},
                        {"s", code.s},
                        {"n", code.n},
                        {"dimension", dimension(code)},
                        {"d_bounds", {min_distance, min_distance}},
                        {"rho", cr.rho},
                        {"histogram", cr.coverage_histogram},
                        {"deepest_syndrome", cr.deepest_syndrome},
                        {"quasi_perfect", qp}};
}

}  // namespace zetterberg::codes
