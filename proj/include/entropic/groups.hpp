#pragma once

#include <cstddef>
#include <vector>

#include "entropic/numerics.hpp"

namespace entropic {

/// Residue tuple (j_1, ..., j_k) with 0 <= j_r < n_r.
using GroupElement = std::vector<std::size_t>;

/// Subgroup stored as the sorted list of mixed-radix element codes.
struct Subgroup {
  std::vector<std::size_t> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(std::size_t code) const;

  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;
};

/// Finite abelian group Z_{n_1} x ... x Z_{n_k}, each n_r >= 2, order <= 64.
///
/// Elements are encoded in mixed radix with the first factor most
/// significant, so the group Fourier matrix of Z_a x Z_b is F_a (x) F_b.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<std::size_t> orders);
  static AbelianGroup cyclic(std::size_t n) { return AbelianGroup({n}); }

  const std::vector<std::size_t>& orders() const noexcept { return orders_; }
  std::size_t order() const noexcept { return order_; }

  /// Throws BadElement for a malformed tuple.
  std::size_t encode(const GroupElement& j) const;
  GroupElement decode(std::size_t code) const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t subtract(std::size_t a, std::size_t b) const { return add(a, negate(b)); }

  /// Phase of the canonical pairing as a fraction of a full turn, in [0, 1).
  double pairing_turns(std::size_t j, std::size_t k) const;
  /// Exact test for bic(j, k) == 1.
  bool pairs_trivially(std::size_t j, std::size_t k) const;

  /// The subgroup generated by subgroup `base` and `generator`.
  Subgroup closure(const Subgroup& base, std::size_t generator) const;
  bool is_subgroup(const Subgroup& s) const;
  Subgroup trivial_subgroup() const { return Subgroup{{0}}; }
  Subgroup whole() const;

 private:
  std::vector<std::size_t> orders_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::size_t lcm_ = 1;
};

/// exp(2 pi i sum_r j_r k_r / n_r).
Complex bicharacter(const AbelianGroup& g, const GroupElement& j, const GroupElement& k);

/// Every subgroup of g, each sorted, listed in canonical (lexicographic) order.
std::vector<Subgroup> subgroups(const AbelianGroup& g);

/// {k : bic(j, k) = 1 for all j in L}. Throws NotSubgroup.
Subgroup annihilator(const AbelianGroup& g, const Subgroup& l);

/// l2-normalized indicator function of L.
CVector indicator_state(const AbelianGroup& g, const Subgroup& l);

/// chi'(j') = bic(j', k) chi_L(j' - j).
CVector translate_modulate(const AbelianGroup& g, const Subgroup& l, std::size_t j, std::size_t k);

/// One representative per coset of L (the smallest code in each coset).
std::vector<std::size_t> coset_representatives(const AbelianGroup& g, const Subgroup& l);

}  // namespace entropic
