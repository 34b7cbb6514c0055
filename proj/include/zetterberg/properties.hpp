#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetterberg/gf.hpp"

namespace zetterberg::properties {

enum class Parity { even, odd };

inline const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// Controls for the exhaustive scans over F_q^*.
struct ScanOptions {
  uint32_t workers = 1;
  uint32_t shard_index = 0;  // this process scans shard shard_index of shard_count
  uint32_t shard_count = 1;
  std::string checkpoint_dir;               // empty disables checkpointing
  uint64_t checkpoint_interval = 1 << 20;   // elements per checkpoint
};

struct PropertyReport {
  uint64_t q0 = 0;
  uint32_t s = 0;
  uint64_t q = 0;
  Parity parity = Parity::even;
  bool holds = false;
  bool exhausted = false;  // the scanned shard was fully exhausted without a witness
  std::optional<uint64_t> witness_k;       // exponent: witness x = g^k, minimal k
  std::vector<uint32_t> witness_coeffs;    // x as F_q coefficient vector
  std::vector<std::vector<uint32_t>> witness_y;  // y_j with y_j^2 = x^2 - alpha_j
  uint64_t elements_scanned = 0;
  uint64_t checkpoints_written = 0;
  double elapsed_ms = 0;
  uint32_t shard_index = 0;
  uint32_t shard_count = 1;

  nlohmann::json to_json() const;
};

/// Does some x in F_q^* satisfy eta(x^2 - alpha_j) = +1 for all m nonzero
/// squares alpha_j of F_{q0}? Scans x = g^k in ascending k; the witness is
/// the minimal such k within the scanned shard.
PropertyReport npi_even(const gf::Tower& t, const ScanOptions& opt = {});

/// Same with the m non-squares beta_j of F_{q0}.
PropertyReport npi_odd(const gf::Tower& t, const ScanOptions& opt = {});

struct IQ0Result {
  bool member = false;
  PropertyReport even;
  PropertyReport odd;
  nlohmann::json to_json() const;
};

/// s is in I(q0) iff the even or the odd system is solvable; equivalently the
/// full code C_s(q0) has covering radius 3 (else 2).
IQ0Result in_I(const gf::FieldSpec& q0_spec, uint32_t s, const ScanOptions& opt = {});

/// Independent oracle straight from the definition: enumerates
/// G_i = {gamma : gamma^(q-1) = theta^i} in F_{q^2} and answers whether some
/// gamma is outside the sumset H_m + H_m, H_m the subgroup of order m(q+1).
/// Pair enumeration; refuses when q > cap.
bool npi_oracle_bruteforce(const gf::Tower& t, uint32_t ell, uint32_t i, uint64_t cap = 400);

/// The quartic discriminant machinery shared by the direct search and the
/// non-square certificates. dhat is 1 in the even case and the fixed
/// non-square D in the odd case.
struct DeltaPoly {
  Parity parity = Parity::even;
  gf::Elt alpha, dhat;
  std::array<gf::Elt, 2> a;  // a(x) = 2 alpha x - alpha^2 - dhat
  std::array<gf::Elt, 3> b;
  std::array<gf::Elt, 3> c;
  std::array<gf::Elt, 5> delta;  // b^2 - 4ac, leading coefficient 4 alpha^2

  static DeltaPoly make(const gf::FieldCtx& F, const gf::Elt& alpha, Parity parity,
                        const gf::Elt* D = nullptr);

  gf::Elt eval_a(const gf::Elt& x) const;
  gf::Elt eval_b(const gf::Elt& x) const;
  gf::Elt eval_c(const gf::Elt& x) const;
  gf::Elt eval_delta(const gf::Elt& x) const;
};

/// One solution (x1, x2, x3, y1, y2, y3) of the three-circle system
///   x_i^2 + y_i^2 = dhat,  x1+x2+x3 = alpha,  y1+y2+y3 = 0.
struct PiWitness {
  std::array<gf::Elt, 6> v;  // x1, x2, x3, y1, y2, y3
};

/// Solves the system for one alpha via the quartic reduction (explicit
/// solutions at alpha = +-1 in the even case). Empty when no admissible x1
/// exists; throws check_error if reconstruction from an admissible x1 fails.
std::optional<PiWitness> pi_solve(const gf::FieldCtx& F, const gf::Elt& alpha, Parity parity,
                                  const gf::Elt* D = nullptr);

/// Property Pi for every alpha in F_q^* and one parity; D fixed to the
/// canonical non-square for the odd case.
bool pi_direct_search(const gf::FieldCtx& F_q, Parity parity);

/// Certifies that delta(x) is not a square in F_q[x]: the monic quartic
/// delta/(4 alpha^2) has A3 != 0 and A2 - ((A3/2)^2 + 2 A1/A3) != 0. Also
/// cross-checks the closed forms for A3 and the obstruction, and for
/// q <= brute_cap verifies directly that no monic quadratic squares to it.
struct DeltaCertificate {
  gf::Elt A3, A2, A1, A0;
  gf::Elt obstruction;
  bool a3_nonzero = false;
  bool obstruction_nonzero = false;
  bool closed_forms_match = false;
  bool brute_force_checked = false;  // true only when the exhaustive check ran
};

DeltaCertificate delta_not_square_certificate(const gf::FieldCtx& F, const gf::Elt& alpha,
                                              Parity parity, const gf::Elt* D = nullptr,
                                              uint64_t brute_cap = 100);

/// Exact character-sum accounting behind the Weil argument, per sampled alpha.
struct WeilAuditEntry {
  Parity parity = Parity::even;
  uint64_t alpha_index = 0;
  int64_t sum_eta_delta = 0;       // |.| <= 3 sqrt(q)
  int64_t sum_eta_product = 0;     // |.| <= 5 sqrt(q)
  int64_t E = 0;                   // <= 16 even / 12 odd
  int64_t N1 = 0;                  // >= q - 8 sqrt(q) - 15 / - 11
  bool bounds_ok = false;
  bool certificate_ok = false;
};

struct WeilAudit {
  uint64_t q = 0;
  int64_t sum_eta_even = 0;  // sum eta(1 - x^2), exactly 1
  int64_t sum_eta_odd = 0;   // sum eta(D - x^2), exactly 1
  std::vector<WeilAuditEntry> entries;
  bool all_ok = false;

  nlohmann::json to_json() const;
};

/// Samples alpha = g^j, j = 1..count (skipping +-1 in the even case), and
/// evaluates every sum exactly over F_q.
WeilAudit weil_sum_audit(const gf::FieldCtx& F_q, uint32_t alpha_sample_count);

}  // namespace zetterberg::properties
