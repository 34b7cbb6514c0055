#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "zetterberg/codes.hpp"
#include "zetterberg/congruence.hpp"
#include "zetterberg/curves.hpp"
#include "zetterberg/errors.hpp"
#include "zetterberg/intmath.hpp"
#include "zetterberg/properties.hpp"
#include "zetterberg/verify.hpp"

using namespace zetterberg;

namespace {

/// Field spec for a prime power q (p^d with p its smallest prime factor).
gf::FieldSpec spec_for(uint64_t q) {
  auto fac = intmath::factorize(q);
  for (size_t i = 1; i < fac.size(); ++i) {
    if (fac[i] != fac[0]) throw input_error("q must be a prime power");
  }
  return gf::FieldSpec::make(uint32_t(fac[0]), uint32_t(fac.size()));
}

void parse_shard(const std::string& s, properties::ScanOptions& opt) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw input_error("shard must be k/n");
  opt.shard_index = uint32_t(std::stoul(s.substr(0, slash)));
  opt.shard_count = uint32_t(std::stoul(s.substr(slash + 1)));
  if (opt.shard_count == 0 || opt.shard_index >= opt.shard_count) {
    throw input_error("shard must satisfy 0 <= k < n");
  }
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Zetterberg codes: construction, covering radii, and the "
               "algebraic characterizations behind them"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may appear after the subcommand

  uint32_t workers = 1;
  uint64_t memory_budget = uint64_t(1) << 27;
  std::string checkpoint_dir;
  if (const char* env = std::getenv("ZETTERBERG_CHECKPOINT_DIR")) checkpoint_dir = env;
  std::string shard = "0/1";
  app.add_option("--workers", workers, "parallelism degree")->check(CLI::PositiveNumber);
  app.add_option("--memory-budget", memory_budget, "byte budget for large tables");
  app.add_option("--checkpoint-dir", checkpoint_dir,
                 "directory for resumable scan checkpoints (env ZETTERBERG_CHECKPOINT_DIR)");
  app.add_option("--shard", shard, "scan only shard k of n, as k/n");

  uint64_t q = 0, q0 = 0;
  uint32_t s = 1, samples = 50, rho_cap = 4;
  std::string kind = "full", parity = "even", tier = "standard";
  bool csv = false;

  auto* c_classify = app.add_subcommand("classify", "two-adic class of an odd q");
  c_classify->add_option("q", q)->required();

  auto* c_code = app.add_subcommand("code", "build a code and report its invariants");
  c_code->add_option("--q0", q0)->required();
  c_code->add_option("--s", s)->required();
  c_code->add_option("--kind", kind)->check(CLI::IsMember({"full", "twisted-half"}));
  c_code->add_option("--rho-cap", rho_cap);
  c_code->add_flag("--csv", csv, "print the parity-check matrix as CSV instead of JSON");

  auto* c_iq0 = app.add_subcommand("iq0", "is s in I(q0)?");
  c_iq0->add_option("--q0", q0)->required();
  c_iq0->add_option("--s", s)->required();

  auto* c_pi = app.add_subcommand("pi-check", "property Pi direct search over F_q");
  c_pi->add_option("--q", q)->required();

  auto* c_sstar = app.add_subcommand("s-star", "threshold s* for q0");
  c_sstar->add_option("--q0", q0)->required();

  auto* c_curves = app.add_subcommand("curves", "curve point counting");
  auto* c_count = c_curves->add_subcommand("count", "count points of chi over F_{q0^s}");
  c_count->add_option("--q0", q0)->required();
  c_count->add_option("--s", s)->required();
  c_count->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd"}));

  auto* c_delta = app.add_subcommand("delta-audit", "non-square certificates for all alpha");
  c_delta->add_option("--q", q)->required();

  auto* c_weil = app.add_subcommand("weil-audit", "exact character-sum audit over F_q");
  c_weil->add_option("--q", q)->required();
  c_weil->add_option("--samples", samples);

  auto* c_verify = app.add_subcommand("verify", "run the reproduction checks");
  c_verify->add_option("--tier", tier)->check(CLI::IsMember({"fast", "standard", "long"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;  // bad input
  }

  try {
    properties::ScanOptions opt;
    opt.workers = workers;
    opt.checkpoint_dir = checkpoint_dir;
    parse_shard(shard, opt);

    if (*c_classify) {
      auto c = congruence::classify(q);
      nlohmann::json j{{"q", c.q}, {"in_s", c.in_s}};
      j["ell"] = c.ell ? nlohmann::json(*c.ell) : nlohmann::json();
      emit(j);
    } else if (*c_code) {
      auto spec = spec_for(q0);
      auto code = kind == "full" ? codes::build_full(spec, s)
                                 : codes::build_twisted_half(spec, s);
      if (csv) {
        std::cout << code.parity_check_csv();
        return 0;
      }
      auto cr = codes::covering_radius_exact(code, rho_cap, memory_budget);
      uint32_t d = codes::min_distance_small(code);
      auto rep = codes::code_report(code, cr, d, codes::quasi_perfect(code, cr, d));
      rep["q0_spec"] = code.q0_spec.to_json();
      emit(rep);
    } else if (*c_iq0) {
      emit(properties::in_I(spec_for(q0), s, opt).to_json());
    } else if (*c_pi) {
      gf::FieldCtx F(spec_for(q));
      emit(nlohmann::json{{"q", q},
                          {"even", properties::pi_direct_search(F, properties::Parity::even)},
                          {"odd", properties::pi_direct_search(F, properties::Parity::odd)}});
    } else if (*c_sstar) {
      emit(curves::s_star(q0).to_json());
    } else if (*c_count) {
      auto t = gf::make_tower(spec_for(q0), s);
      auto par = parity == "even" ? properties::Parity::even : properties::Parity::odd;
      auto cc = curves::count_N(t, par);
      auto j = cc.to_json();
      if (t.q <= 100000) j["N_chi_direct"] = curves::count_points_direct(t, par);
      emit(j);
    } else if (*c_delta) {
      gf::FieldCtx F(spec_for(q));
      gf::Elt D = gf::nonsquare_rep(F);
      bool ok = true;
      uint64_t audited = 0;
      for (uint64_t ai = 1; ai < F.size(); ++ai) {
        gf::Elt alpha = F.from_index(ai);
        if (!(alpha == F.one() || alpha == F.neg(F.one()))) {
          auto c = delta_not_square_certificate(F, alpha, properties::Parity::even);
          ok = ok && c.a3_nonzero && c.obstruction_nonzero && c.closed_forms_match;
          ++audited;
        }
        auto c = delta_not_square_certificate(F, alpha, properties::Parity::odd, &D);
        ok = ok && c.a3_nonzero && c.obstruction_nonzero && c.closed_forms_match;
        ++audited;
      }
      emit(nlohmann::json{{"q", q}, {"certificates", audited}, {"all_nonsquare", ok}});
      if (!ok) return 1;
    } else if (*c_weil) {
      gf::FieldCtx F(spec_for(q));
      auto audit = properties::weil_sum_audit(F, samples);
      emit(audit.to_json());
      if (!audit.all_ok) return 1;
    } else if (*c_verify) {
      auto summary = verify::run_verification(verify::tier_from_name(tier), workers);
      emit(summary.to_json());
      if (!summary.all_passed) return 1;
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 3;
  } catch (const resource_error& e) {
    std::cerr << "refused: " << e.what();
    if (e.required_bytes) std::cerr << " (required: " << e.required_bytes << ")";
    std::cerr << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
