#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace zetterberg::gf {

/// Upper bound on extension degree over the prime field. Degree 18 is the
/// largest desk-scale context (F_{7^18} in the I(q0) closure tests).
inline constexpr uint32_t kMaxDegree = 20;

/// Description of F_{p^d}: odd prime p and a monic irreducible modulus of
/// degree d over F_p (coefficients ascending, length d+1).
struct FieldSpec {
  uint32_t p = 0;
  uint32_t d = 0;
  std::vector<uint32_t> modulus;

  uint64_t size() const;

  /// Deterministic spec for F_{p^d}: smallest monic irreducible polynomial
  /// of degree d over F_p in mixed-radix coefficient order.
  static FieldSpec make(uint32_t p, uint32_t d);

  nlohmann::json to_json() const;
  static FieldSpec from_json(const nlohmann::json& j);

  bool operator==(const FieldSpec&) const = default;
};

class FieldCtx;

/// Element of a specific field context: d coefficients over F_p, always
/// canonically reduced.
struct Elt {
  const FieldCtx* ctx = nullptr;
  std::array<uint32_t, kMaxDegree> c{};

  bool is_zero() const;
  bool operator==(const Elt& o) const { return ctx == o.ctx && c == o.c; }
  std::vector<uint32_t> coeffs() const;
};

/// Immutable arithmetic context for F_{p^d}. Safe to share across threads
/// after construction.
class FieldCtx {
 public:
  explicit FieldCtx(FieldSpec spec);

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  const FieldSpec& spec() const { return spec_; }
  uint32_t characteristic() const { return spec_.p; }
  uint32_t degree() const { return spec_.d; }
  uint64_t size() const { return size_; }

  Elt zero() const;
  Elt one() const;
  Elt constant(uint64_t v) const;  // v mod p as a constant polynomial
  Elt from_coeffs(std::span<const uint32_t> cs) const;
  Elt from_index(uint64_t idx) const;   // mixed-radix decode, idx < size()
  uint64_t index(const Elt& a) const;   // mixed-radix encode

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt inv(const Elt& a) const;  // throws input_error on zero
  Elt pow(Elt a, uint64_t e) const;

  /// Fixed primitive element of the multiplicative group, found by checking
  /// candidates in index order against the prime factorization of size()-1.
  const Elt& generator() const { return gen_; }

  uint64_t mult_order(const Elt& a) const;

  /// Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise.
  /// Table lookup when the square-indicator bitset exists, else Euler
  /// criterion by square-and-multiply.
  int eta(const Elt& a) const;
  int eta_by_exponent(const Elt& a) const;
  bool has_eta_table() const { return !square_bits_.empty(); }

  /// Square root for q = 3 mod 4 fields (x^((q+1)/4)); throws if the input
  /// is not a square or the field is 1 mod 4.
  Elt sqrt(const Elt& a) const;

  void check_member(const Elt& a) const;  // throws input_error on ctx mismatch

 private:
  void find_generator();
  void build_eta_table();

  FieldSpec spec_;
  uint64_t size_ = 0;
  std::array<uint32_t, kMaxDegree> red_{};  // x^d = sum red_[j] x^j
  Elt gen_;
  std::vector<uint64_t> square_bits_;  // built when size() <= 2^24
};

/// Ring embedding of a subfield context into an extension context with the
/// same characteristic. The modulus root in the big field is located by
/// deterministic equal-degree splitting, so the map is reproducible.
class Embedding {
 public:
  Embedding(const FieldCtx& sub, const FieldCtx& super);

  const FieldCtx& sub() const { return *sub_; }
  const FieldCtx& super() const { return *super_; }

  Elt embed(const Elt& a) const;
  bool contains(const Elt& a) const;
  Elt project(const Elt& a) const;  // inverse of embed; throws if not in image
  const Elt& root() const { return basis_[sub_->degree() > 1 ? 1 : 0]; }

 private:
  const FieldCtx* sub_;
  const FieldCtx* super_;
  std::vector<Elt> basis_;  // root^i for i < sub degree
};

/// The tower F_{q0} c F_q = F_{q0^s} c F_{q^2}.
struct Tower {
  std::unique_ptr<FieldCtx> f_q0;
  std::unique_ptr<FieldCtx> f_q;
  std::unique_ptr<FieldCtx> f_q2;
  std::unique_ptr<Embedding> q0_in_q;
  std::unique_ptr<Embedding> q_in_q2;
  std::unique_ptr<Embedding> q0_in_q2;
  uint32_t s = 0;
  uint64_t q0 = 0;
  uint64_t q = 0;
};

/// Builds the tower for odd s >= 1. F_{q^2} is a single flat extension of
/// the prime field of degree 2*s*d0.
Tower make_tower(const FieldSpec& q0_spec, uint32_t s);

/// Lazily enumerable cyclic subgroup {g^(k*(size-1)/order) : 0 <= k < order}
/// of a field's multiplicative group, in that fixed order.
class SubgroupEnum {
 public:
  SubgroupEnum(const FieldCtx& ctx, uint64_t order);

  uint64_t order() const { return order_; }
  const Elt& step() const { return step_; }  // generator of the subgroup

  class iterator {
   public:
    iterator(const SubgroupEnum* s, uint64_t k) : owner_(s), k_(k) {
      if (s && k < s->order_) cur_ = s->ctx_->one();
    }
    const Elt& operator*() const { return cur_; }
    iterator& operator++();
    bool operator!=(const iterator& o) const { return k_ != o.k_; }

   private:
    const SubgroupEnum* owner_;
    uint64_t k_;
    Elt cur_;
  };

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, order_); }
  std::vector<Elt> materialize() const;

 private:
  const FieldCtx* ctx_;
  uint64_t order_;
  Elt step_;
};

SubgroupEnum subgroup(const FieldCtx& ctx_q2, uint64_t order);

/// theta with multiplicative order exactly 2^ell; requires 2^ell | size-1.
Elt primitive_2l_root(const FieldCtx& ctx_q2, uint32_t ell);

/// Deterministic non-square: the context generator (eta = -1 by primitivity).
Elt nonsquare_rep(const FieldCtx& ctx);

}  // namespace zetterberg::gf
