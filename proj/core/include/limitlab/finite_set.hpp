#ifndef LIMITLAB_FINITE_SET_HPP
#define LIMITLAB_FINITE_SET_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "limitlab/nat.hpp"

namespace limitlab {

/// Canonical finite set of naturals: strictly ascending, duplicate-free.
/// Two equal sets always have identical representation.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<Nat> xs);
  explicit FiniteSet(std::vector<Nat> xs);  // sorts and dedups

  bool contains(Nat x) const;
  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  Nat max() const;  // throws on empty

  FiniteSet with(Nat x) const;
  FiniteSet union_with(const FiniteSet& o) const;
  FiniteSet minus(const FiniteSet& o) const;
  FiniteSet intersect(const FiniteSet& o) const;
  /// Elements <= bound.
  FiniteSet clipped(Nat bound) const;

  bool subset_of(const FiniteSet& o) const;

  const std::vector<Nat>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const FiniteSet& o) const { return elems_ == o.elems_; }
  bool operator!=(const FiniteSet& o) const { return elems_ != o.elems_; }
  bool operator<(const FiniteSet& o) const { return elems_ < o.elems_; }

  std::string to_string() const;  // "{0,2,5}"

 private:
  std::vector<Nat> elems_;
};

/// D_e, the e-th canonical finite set: sum of 2^x over x in D_e equals e.
FiniteSet canonical_finite_set(Nat e);

/// Inverse of canonical_finite_set. Throws if some element is >= 64.
Nat finite_set_index(const FiniteSet& d);

}  // namespace limitlab

#endif
