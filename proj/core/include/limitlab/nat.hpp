#ifndef LIMITLAB_NAT_HPP
#define LIMITLAB_NAT_HPP

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace limitlab {

/// Natural number. The desk-scale model fixes 64 bits; every shipped
/// construction and test stays far below that.
using Nat = std::uint64_t;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Cantor's pairing function <x,y> = (x+y)(x+y+1)/2 + y.
inline Nat cantor_pair(Nat x, Nat y) {
  Nat s = x + y;
  assert(s < (Nat{1} << 31) && "cantor_pair argument out of modeled range");
  return s * (s + 1) / 2 + y;
}

/// Inverse of cantor_pair.
inline std::pair<Nat, Nat> cantor_unpair(Nat n) {
  // Largest s with s(s+1)/2 <= n.
  Nat s = 0;
  {
    Nat lo = 0, hi = 1;
    while (hi * (hi + 1) / 2 <= n) hi = hi * 2 + 1;
    while (lo < hi) {
      Nat mid = lo + (hi - lo + 1) / 2;
      if (mid * (mid + 1) / 2 <= n) lo = mid; else hi = mid - 1;
    }
    s = lo;
  }
  Nat y = n - s * (s + 1) / 2;
  Nat x = s - y;
  return {x, y};
}

/// <x,y,z> = <<x,y>,z>.
inline Nat cantor_triple(Nat x, Nat y, Nat z) {
  return cantor_pair(cantor_pair(x, y), z);
}

}  // namespace limitlab

#endif
