// A finite commutative ring given by full addition and multiplication tables,
// with exhaustive-search answers to unit, P^1 and SL_2 questions.
#pragma once

#include "arithgeo/bigint.hpp"
#include "arithgeo/errors.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace arithgeo {

struct Sl2Count {
  std::uint64_t group_order = 0;   // #SL_2(R)
  std::uint64_t gamma0_order = 0;  // matrices with lower-left entry 0
  std::uint64_t index = 0;
};

class TableRing {
 public:
  using Index = std::uint32_t;

  TableRing() = default;

  /// `add_of(i, j)` and `mul_of(i, j)` give the index of the sum and product of residues i and j.
  template <class Add, class Mul>
  TableRing(std::size_t size, Index one, Add&& add_of, Mul&& mul_of) : size_(size), one_(one) {
    add_.resize(size * size);
    mul_.resize(size * size);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) {
        add_[i * size + j] = add_of(i, j);
        mul_[i * size + j] = mul_of(i, j);
      }
    neg_.assign(size, 0);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j)
        if (add(i, j) == 0) {
          neg_[i] = j;
          break;
        }
  }

  std::size_t size() const { return size_; }
  Index zero() const { return 0; }
  Index one() const { return one_; }
  Index add(Index i, Index j) const { return add_[i * size_ + j]; }
  Index mul(Index i, Index j) const { return mul_[i * size_ + j]; }
  Index neg(Index i) const { return neg_[i]; }
  Index sub(Index i, Index j) const { return add(i, neg(j)); }

  Index pow(Index base, BigInt e) const {
    Index r = one_;
    while (e > 0) {
      if ((e & 1) != 0) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool is_unit(Index x) const {
    for (Index y = 0; y < size_; ++y)
      if (mul(x, y) == one_) return true;
    return false;
  }

  std::vector<Index> units() const {
    std::vector<Index> out;
    for (Index x = 0; x < size_; ++x)
      if (is_unit(x)) out.push_back(x);
    return out;
  }

  /// Invertible residues, by exhaustive search for inverses.
  std::uint64_t unit_count() const { return units().size(); }

  /// Pairs generating the unit ideal, modulo scaling by units.
  std::uint64_t p1_count() const {
    std::vector<std::vector<Index>> principal(size_);
    std::vector<std::uint8_t> member(size_ * size_, 0);
    for (Index x = 0; x < size_; ++x)
      for (Index r = 0; r < size_; ++r) {
        const Index v = mul(x, r);
        if (!member[x * size_ + v]) {
          member[x * size_ + v] = 1;
          principal[x].push_back(v);
        }
      }
    std::uint64_t pairs = 0;
    for (Index a = 0; a < size_; ++a)
      for (Index b = 0; b < size_; ++b)
        for (Index u : principal[a])
          if (member[b * size_ + sub(one_, u)]) {
            ++pairs;
            break;
          }
    const std::uint64_t n_units = unit_count();
    if (pairs % n_units != 0) throw InternalError("unit scaling is not free on P^1 of a finite ring");
    return pairs / n_units;
  }

  /// Index of the lower-left-zero subgroup in SL_2(R), enumerating all |R|^4 matrices.
  Sl2Count sl2_count(std::uint64_t cap) const {
    if (size_ > cap)
      throw ResourceError("SL_2 enumeration over a ring of order " + std::to_string(size_) + " exceeds cap " +
                          std::to_string(cap));
    Sl2Count c;
    const auto n = static_cast<Index>(size_);
    for (Index a = 0; a < n; ++a)
      for (Index d = 0; d < n; ++d) {
        const Index ad = mul(a, d);
        for (Index b = 0; b < n; ++b)
          for (Index cc = 0; cc < n; ++cc) {
            if (sub(ad, mul(b, cc)) != one_) continue;
            ++c.group_order;
            if (cc == 0) ++c.gamma0_order;
          }
      }
    if (c.gamma0_order == 0 || c.group_order % c.gamma0_order != 0)
      throw InternalError("Gamma_0 order does not divide SL_2 order");
    c.index = c.group_order / c.gamma0_order;
    return c;
  }

 private:
  std::size_t size_ = 1;
  Index one_ = 0;
  std::vector<Index> add_{0};
  std::vector<Index> mul_{0};
  std::vector<Index> neg_{0};
};

}  // namespace arithgeo
