#ifndef LIMITLAB_KERNEL_HPP
#define LIMITLAB_KERNEL_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/hypcode.hpp"

namespace limitlab {

/// Exact description of an eventually periodic set: for x < threshold
/// membership is read off `below`, for x >= threshold it is
/// residues[x % period]. Every combinator over Fin/Tail/Stride has one;
/// Base codes have one when their family provides it.
struct PeriodicForm {
  Nat threshold = 0;
  Nat period = 1;
  std::vector<bool> residues;  // size == period
  FiniteSet below;             // members < threshold

  bool member(Nat x) const {
    if (x < threshold) return below.contains(x);
    return residues[x % period];
  }
  bool is_infinite() const;
  bool is_finite() const { return !is_infinite(); }
  /// Exact superset test: does this set contain every member of `sub`?
  bool contains_all_of(const PeriodicForm& sub) const;
  bool same_extension(const PeriodicForm& o) const;
};

enum class CofinalClass : std::uint8_t {
  AllButFinitely,
  InfinitelyManyButNotAlmostAll,
  Finitely,
};

/// How a set meets each residue class mod 2.
struct CofinalProfile {
  CofinalClass even = CofinalClass::Finitely;
  CofinalClass odd = CofinalClass::Finitely;
  bool exact = true;  // false when stage-approximated
};

/// A uniformly presented indexed family L_0, L_1, ... of sets.
struct Family {
  std::string id;
  bool decidable = false;
  /// Stage-s membership approximation; must be monotone in s and, when the
  /// family is decidable, converge to `decide`.
  std::function<bool(Nat i, Nat x, Nat s)> member_at;
  /// Exact membership; required when `decidable`.
  std::function<bool(Nat i, Nat x)> decide;
  /// Optional exact set description per index (enables profiles and
  /// superset reasoning on Base codes).
  std::function<std::optional<PeriodicForm>(Nat i)> form;
};

/// Stagewise procedure backing an Opaque code: the elements emitted at
/// stage s (clipped to {0,...,s} by the kernel; cumulative over stages).
using StageEnumerator = std::function<std::vector<Nat>(Nat s)>;

/// Append-only registry of families and opaque enumerators. Reads are safe
/// concurrently; registration is serialized. Registration with an existing
/// key/id is idempotent and keeps the original entry.
class Registry {
 public:
  static Registry& global();

  /// `exact_form`, when the construction can supply one, describes the
  /// enumerator's limit set exactly; it feeds periodic_form / the checkers'
  /// exact tier but never decide_member (opaque stays Undecidable there).
  HypCode register_opaque(OpaqueKey key, StageEnumerator fn,
                          std::optional<PeriodicForm> exact_form = std::nullopt);
  void register_family(Family f);

  bool has_opaque(const OpaqueKey& key) const;
  bool has_family(const std::string& id) const;
  const Family& family(const std::string& id) const;  // throws if absent

  /// Cumulative stage-s set of a registered opaque key (memoized).
  FiniteSet opaque_enum_at(const OpaqueKey& key, Nat s) const;
  std::optional<PeriodicForm> opaque_form(const OpaqueKey& key) const;

  Registry();
  ~Registry();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Registers against the global registry.
HypCode register_opaque(OpaqueKey key, StageEnumerator fn,
                        std::optional<PeriodicForm> exact_form = std::nullopt);
void register_family(Family f);

/// Stage-s approximation of c's extension; monotone in s and a subset of
/// {0,...,s}. Throws Error for unregistered Base families / Opaque keys.
FiniteSet enum_at(const HypCode& c, Nat s);

/// x in enum_at(c, s).
bool member_at(const HypCode& c, Nat x, Nat s);

/// Exact membership when every Base inside c is decidable and no Opaque
/// occurs; nullopt (Undecidable) otherwise.
std::optional<bool> decide_member(const HypCode& c, Nat x);

/// Exact eventually-periodic description when derivable (no Opaque, and all
/// Base families provide forms); nullopt otherwise. Periods are capped; a
/// blow-up also yields nullopt.
std::optional<PeriodicForm> periodic_form(const HypCode& c);

/// Exact cofinality profile, derived from the periodic form.
std::optional<CofinalProfile> cofinal_profile(const HypCode& c);

/// Stage-approximated profile: classifies each parity class by how densely
/// enum_at(c, stage) fills the upper half of {0,...,stage}.
CofinalProfile approximate_profile(const HypCode& c, Nat stage);

}  // namespace limitlab

#endif
