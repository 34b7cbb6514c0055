#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetterberg/gf.hpp"

namespace zetterberg::codes {

enum class Kind { full, twisted_half };

/// Linear code over F_{q0} given by its parity-check columns. Column entries
/// are F_{q0} element indices (residues when q0 is prime).
struct LinearCode {
  uint64_t q0 = 0;
  uint64_t n = 0;
  uint32_t r = 0;  // redundancy, 2s
  std::vector<std::vector<uint32_t>> columns;

  Kind kind = Kind::full;
  gf::FieldSpec q0_spec;
  uint32_t s = 0;
  uint32_t ell = 0;                      // 2-adic class of q0 (twisted construction input)
  std::string enumeration = "h-powers";  // column order id

  nlohmann::json to_json() const;
  std::string parity_check_csv() const;  // row-major, r rows, n columns
};

/// Coverage certificate from the exact syndrome BFS.
struct CRCertificate {
  uint32_t rho = 0;
  std::vector<uint32_t> deepest_syndrome;  // one syndrome first covered at level rho
  std::vector<uint64_t> coverage_histogram;  // counts first covered at level 0..rho
};

/// Columns are the order-(q+1) subgroup H of F_{q^2}^*, in powers of the
/// canonical H generator, mapped through the coordinate map of the fixed
/// polynomial basis of F_{q^2} over F_{q0}.
LinearCode build_full(const gf::FieldSpec& q0_spec, uint32_t s);

/// Columns are the half-set union of theta^i H_ell cosets (coset-major,
/// subgroup-power minor), length (q+1)/2. Requires q0 = 7 mod 8.
LinearCode build_twisted_half(const gf::FieldSpec& q0_spec, uint32_t s);

/// n - rank of the parity-check matrix.
uint64_t dimension(const LinearCode& code);

/// Exact minimum distance for codes with d in {3,4}: certifies d >= 3 by
/// pairwise scalar-independence of columns, then searches weight-3 codewords.
/// n capped by `cap` (the search is quadratic in n).
uint32_t min_distance_small(const LinearCode& code, uint64_t cap = 1000);

/// Breadth-first closure over all q0^r syndromes. Refuses if the level-tag
/// table would exceed memory_budget bytes; errors past rho_cap.
CRCertificate covering_radius_exact(const LinearCode& code, uint32_t rho_cap = 4,
                                    uint64_t memory_budget = uint64_t(1) << 27);

/// Required bytes for covering_radius_exact on this code.
uint64_t covering_radius_table_bytes(const LinearCode& code);

bool quasi_perfect(const LinearCode& code, const CRCertificate& cr, uint32_t min_distance);

/// Full per-code report used by the CLI.
nlohmann::json code_report(const LinearCode& code, const CRCertificate& cr,
                           uint32_t min_distance, bool qp);

}  // namespace zetterberg::codes
