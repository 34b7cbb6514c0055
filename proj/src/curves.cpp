#include "zetterberg/curves.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "zetterberg/congruence.hpp"
#include "zetterberg/errors.hpp"

namespace zetterberg::curves {

using boost::multiprecision::cpp_int;
using gf::Elt;
using gf::Tower;
using properties::Parity;

namespace {

constexpr uint64_t kScanCap = uint64_t(1) << 24;

std::vector<Elt> branch_targets(const Tower& t, Parity parity) {
  const int want = parity == Parity::even ? 1 : -1;
  std::vector<Elt> out;
  for (uint64_t i = 1; i < t.q0; ++i) {
    Elt a0 = t.f_q0->from_index(i);
    if (t.f_q0->eta(a0) == want) out.push_back(t.q0_in_q->embed(a0));
  }
  return out;
}

uint64_t genus_of(uint32_t m) { return 1 + (uint64_t(1) << (m - 1)) * (m - 2); }

}  // namespace

nlohmann::json CurveCount::to_json() const {
  return nlohmann::json{{"q0", q0},
                        {"s", s},
                        {"q", q},
                        {"m", m},
                        {"parity", properties::parity_name(parity)},
                        {"N_s", N_s},
                        {"N_s_star", N_s_star},
                        {"N_chi", N_chi},
                        {"genus", genus},
                        {"hasse_weil_ok", hasse_weil_ok}};
}

CurveCount count_N(const Tower& t, Parity parity) {
  if (t.q > kScanCap) throw resource_error("curve scan enumerates F_q; q too large", t.q);
  const gf::FieldCtx& F = *t.f_q;
  const auto targets = branch_targets(t, parity);
  CurveCount cc;
  cc.q0 = t.q0;
  cc.s = t.s;
  cc.q = t.q;
  cc.m = uint32_t(targets.size());
  cc.parity = parity;
  for (uint64_t ui = 0; ui < t.q; ++ui) {
    Elt u = F.from_index(ui);
    Elt uu = F.mul(u, u);
    bool ok = true;
    for (const Elt& a : targets) {
      if (F.eta(F.sub(uu, a)) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ++cc.N_s;
      if (!u.is_zero()) ++cc.N_s_star;
    }
  }
  cc.N_chi = (uint64_t(1) << cc.m) * (1 + cc.N_s);
  cc.genus = genus_of(cc.m);
  // |N_chi - (q + 1)| <= 2 g sqrt(q), squared to stay in integers
  __int128 diff = __int128(cc.N_chi) - __int128(t.q) - 1;
  __int128 rhs = __int128(4) * cc.genus * cc.genus * t.q;
  cc.hasse_weil_ok = diff * diff <= rhs;
  return cc;
}

uint64_t count_points_direct(const Tower& t, Parity parity) {
  if (t.q > 100000) throw resource_error("direct fibre count capped at q <= 10^5", t.q);
  const gf::FieldCtx& F = *t.f_q;
  const auto targets = branch_targets(t, parity);
  const uint64_t fibre_full = uint64_t(1) << targets.size();
  uint64_t total = 0;
  for (uint64_t ui = 0; ui < t.q; ++ui) {
    Elt u = F.from_index(ui);
    Elt uu = F.mul(u, u);
    uint64_t fibre = 1;
    bool branch = false;
    for (const Elt& a : targets) {
      int e = F.eta(F.sub(uu, a));
      branch |= e == 0;
      fibre *= uint64_t(1 + e);  // #solutions of y^2 = u^2 - a
    }
    if (branch && fibre != 0) throw check_error("nonempty fibre over a branch point");
    if (fibre != 0 && fibre != fibre_full) throw check_error("fibre size outside {0, 2^m}");
    total += fibre;
  }
  return total + fibre_full;  // the 2^m points over P_infinity
}

nlohmann::json SStarResult::to_json() const {
  return nlohmann::json{{"q0", q0}, {"m", m}, {"s_star", s_star}};
}

bool s_star_holds(uint64_t q0, uint32_t s) {
  auto cls = congruence::classify(q0);
  if (!cls.ell) throw input_error("threshold is defined for q0 = 7 mod 8 only");
  const uint32_t m = uint32_t((q0 - 1) / 2);
  cpp_int qs = boost::multiprecision::pow(cpp_int(q0), s);
  cpp_int lhs = qs + 1 - (cpp_int(1) << m);
  if (lhs <= 0) return false;
  cpp_int g = 1 + (cpp_int(1) << (m - 1)) * (m - 2);
  return lhs * lhs > 4 * g * g * qs;
}

SStarResult s_star(uint64_t q0) {
  SStarResult r;
  r.q0 = q0;
  r.m = uint32_t((q0 - 1) / 2);
  for (uint32_t s = 1;; s += 2) {
    if (s_star_holds(q0, s)) {
      r.s_star = s;
      return r;
    }
    if (s > 10000) throw check_error("threshold search runaway");
  }
}

}  // namespace zetterberg::curves
