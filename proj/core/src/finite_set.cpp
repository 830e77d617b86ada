#include "limitlab/finite_set.hpp"

#include <algorithm>
#include <sstream>

namespace limitlab {

FiniteSet::FiniteSet(std::initializer_list<Nat> xs) : FiniteSet(std::vector<Nat>(xs)) {}

FiniteSet::FiniteSet(std::vector<Nat> xs) : elems_(std::move(xs)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

bool FiniteSet::contains(Nat x) const {
  return std::binary_search(elems_.begin(), elems_.end(), x);
}

Nat FiniteSet::max() const {
  if (elems_.empty()) throw Error("max() of empty FiniteSet");
  return elems_.back();
}

FiniteSet FiniteSet::with(Nat x) const {
  if (contains(x)) return *this;
  FiniteSet r = *this;
  r.elems_.insert(std::lower_bound(r.elems_.begin(), r.elems_.end(), x), x);
  return r;
}

FiniteSet FiniteSet::union_with(const FiniteSet& o) const {
  FiniteSet r;
  r.elems_.reserve(size() + o.size());
  std::set_union(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                 std::back_inserter(r.elems_));
  return r;
}

FiniteSet FiniteSet::minus(const FiniteSet& o) const {
  FiniteSet r;
  std::set_difference(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                      std::back_inserter(r.elems_));
  return r;
}

FiniteSet FiniteSet::intersect(const FiniteSet& o) const {
  FiniteSet r;
  std::set_intersection(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end(),
                        std::back_inserter(r.elems_));
  return r;
}

FiniteSet FiniteSet::clipped(Nat bound) const {
  FiniteSet r;
  for (Nat x : elems_) {
    if (x > bound) break;
    r.elems_.push_back(x);
  }
  return r;
}

bool FiniteSet::subset_of(const FiniteSet& o) const {
  return std::includes(o.elems_.begin(), o.elems_.end(), elems_.begin(), elems_.end());
}

std::string FiniteSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    if (i) os << ',';
    os << elems_[i];
  }
  os << '}';
  return os.str();
}

FiniteSet canonical_finite_set(Nat e) {
  std::vector<Nat> xs;
  for (Nat x = 0; x < 64; ++x) {
    if ((e >> x) & 1) xs.push_back(x);
  }
  return FiniteSet(std::move(xs));
}

Nat finite_set_index(const FiniteSet& d) {
  Nat e = 0;
  for (Nat x : d) {
    if (x >= 64) throw Error("finite_set_index: element " + std::to_string(x) + " out of range");
    e |= (Nat{1} << x);
  }
  return e;
}

}  // namespace limitlab
