#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "zetterberg/codes.hpp"
#include "zetterberg/errors.hpp"

using namespace zetterberg;
using namespace zetterberg::codes;
using gf::FieldSpec;

namespace {

uint64_t hist_sum(const CRCertificate& c) {
  return std::accumulate(c.coverage_histogram.begin(), c.coverage_histogram.end(), uint64_t(0));
}

}  // namespace

TEST_CASE("full code shapes and dimension n - 2s") {
  for (auto [p, s] : {std::pair{7u, 1u}, {7u, 3u}, {23u, 1u}, {31u, 1u}, {47u, 1u}}) {
    auto code = build_full(FieldSpec::make(p, 1), s);
    uint64_t q = 1;
    for (uint32_t i = 0; i < s; ++i) q *= p;
    CHECK(code.n == q + 1);
    CHECK(code.r == 2 * s);
    CHECK(dimension(code) == code.n - 2 * s);
    for (const auto& col : code.columns) CHECK(col.size() == code.r);
  }
}

TEST_CASE("full code covering radii") {
  auto cr71 = covering_radius_exact(build_full(FieldSpec::make(7, 1), 1));
  CHECK(cr71.rho == 2);
  auto cr73 = covering_radius_exact(build_full(FieldSpec::make(7, 1), 3));
  CHECK(cr73.rho == 3);
  CHECK(hist_sum(cr73) == 117649);  // 7^6 syndromes all covered
  auto cr231 = covering_radius_exact(build_full(FieldSpec::make(23, 1), 1));
  CHECK(cr231.rho == 2);
}

TEST_CASE("twisted half code over F_7, s = 1") {
  auto code = build_twisted_half(FieldSpec::make(7, 1), 1);
  CHECK(code.n == 4);
  CHECK(code.ell == 3);
  CHECK(dimension(code) == 2);
  CHECK(min_distance_small(code) == 3);
  auto cr = covering_radius_exact(code);
  CHECK(cr.rho == 2);
  CHECK(cr.coverage_histogram == std::vector<uint64_t>{1, 24, 24});
  CHECK(quasi_perfect(code, cr, 3));
}

TEST_CASE("twisted half code over F_7, s = 3") {
  auto code = build_twisted_half(FieldSpec::make(7, 1), 3);
  CHECK(code.n == 172);
  CHECK(code.ell == 3);
  CHECK(dimension(code) == 166);
  CHECK(min_distance_small(code) == 3);
  auto cr = covering_radius_exact(code);
  CHECK(cr.rho == 3);
  CHECK(cr.coverage_histogram == std::vector<uint64_t>{1, 1032, 103200, 13416});
  CHECK_FALSE(quasi_perfect(code, cr, 3));  // rho = 3 > t + 1 = 2
  CHECK(cr.deepest_syndrome.size() == 6);
}

TEST_CASE("twisted construction rejected off the 7 mod 8 classes") {
  CHECK_THROWS_AS(build_twisted_half(FieldSpec::make(13, 1), 1), input_error);
  CHECK_THROWS_AS(build_twisted_half(FieldSpec::make(17, 1), 1), input_error);
}

TEST_CASE("twisted columns are half of the full columns up to sign") {
  // every full column is either a twisted column or the negation of one
  auto full = build_full(FieldSpec::make(7, 1), 1);
  auto half = build_twisted_half(FieldSpec::make(7, 1), 1);
  auto neg = [](const std::vector<uint32_t>& c) {
    std::vector<uint32_t> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) out[i] = c[i] ? 7 - c[i] : 0;
    return out;
  };
  std::set<std::vector<uint32_t>> pool(half.columns.begin(), half.columns.end());
  CHECK(pool.size() == half.n);
  for (const auto& c : full.columns) {
    CHECK((pool.count(c) + pool.count(neg(c))) == 1);
  }
}

TEST_CASE("covering radius is invariant under column permutation and rescaling") {
  gf::FieldCtx F(FieldSpec::make(7, 1));
  auto code = build_twisted_half(FieldSpec::make(7, 1), 3);
  auto base = covering_radius_exact(code);
  std::mt19937_64 rng(2024);
  LinearCode mangled = code;
  std::shuffle(mangled.columns.begin(), mangled.columns.end(), rng);
  for (auto& col : mangled.columns) {
    auto lam = F.from_index(std::uniform_int_distribution<uint64_t>(1, 6)(rng));
    for (auto& e : col) e = uint32_t(F.index(F.mul(lam, F.from_index(e))));
  }
  auto cr = covering_radius_exact(mangled);
  CHECK(cr.rho == base.rho);
  CHECK(cr.coverage_histogram == base.coverage_histogram);
  CHECK(min_distance_small(mangled) == min_distance_small(code));
  CHECK(dimension(mangled) == dimension(code));
}

TEST_CASE("memory budget refusal") {
  auto code = build_full(FieldSpec::make(23, 1), 3);
  CHECK(covering_radius_table_bytes(code) == 148035889);  // 23^6
  CHECK_THROWS_AS(covering_radius_exact(code), resource_error);
  try {
    covering_radius_exact(code);
  } catch (const resource_error& e) {
    CHECK(e.required_bytes == 148035889);
  }
}

TEST_CASE("serialization") {
  auto code = build_twisted_half(FieldSpec::make(7, 1), 1);
  auto j = code.to_json();
  CHECK(j["kind"] == "twisted_half");
  CHECK(j["n"] == 4);
  CHECK(j["ell"] == 3);
  CHECK(j["columns"].size() == 4);
  auto csv = code.parity_check_csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(std::count(csv.begin(), csv.end(), ',') == 6);

  auto cr = covering_radius_exact(code);
  auto rep = code_report(code, cr, min_distance_small(code), true);
  CHECK(rep["rho"] == 2);
  CHECK(rep["dimension"] == 2);
  CHECK(rep["quasi_perfect"] == true);
}
