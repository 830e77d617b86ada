#ifndef LIMITLAB_TARGET_HPP
#define LIMITLAB_TARGET_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "limitlab/kernel.hpp"
#include "limitlab/text.hpp"

namespace limitlab {

/// A target language: exact decidable membership plus enough structure to
/// enumerate it ascendingly and reason about it exactly.
struct Target {
  std::string name;
  std::function<bool(Nat)> membership;
  bool finite = false;
  /// Exclusive scan bound: when finite, all members are < finite_bound.
  Nat finite_bound = 0;
  /// Exact combinator representation, when one exists.
  std::optional<HypCode> code;
  /// Named infinite decidable subsets usable as approximation witnesses.
  std::vector<std::pair<std::string, HypCode>> witness_sets;

  bool member(Nat x) const { return membership(x); }
  /// k-th member in ascending order; nullopt past the end of a finite target.
  std::optional<Nat> kth_member(Nat k) const;
};

/// An indexed generator of targets, optionally backed by a registered
/// uniformly recursive family (then targets(i) agrees with family index i).
struct BenchmarkClass {
  std::string name;
  std::function<Target(Nat)> targets;
  std::optional<std::string> family_id;
};

/// First n symbols of the ascending enumeration of t, '#'-padded after
/// exhaustion for finite targets.
TextPrefix canonical_text(const Target& t, Nat n);

/// Deterministic pseudo-random text of length n for t. Repetitions and
/// pauses allowed; range stays inside t; every member below n/4 appears
/// within the prefix (schedule g(n) = n/4, h(n) = n).
TextPrefix seeded_text(const Target& t, Nat seed, Nat n);

/// Data that exceeded every earlier datum at their first occurrence.
FiniteSet record_holder_set(const TextPrefix& prefix);

/// The shipped benchmark classes: gold, cofinite, evenodd, propsep,
/// infinite_sampled and separation. Registers the backing families on
/// first use.
std::vector<BenchmarkClass> benchmark_classes();

// Individual class builders (each registers its family if it has one).
BenchmarkClass gold_class();
BenchmarkClass cofinite_class();
BenchmarkClass evenodd_class();
BenchmarkClass propsep_class();
BenchmarkClass infinite_sampled_class();
BenchmarkClass finite_sets_class();  // canonical finite sets D_e

/// Convenience targets.
Target nat_target();                      // the set of all naturals
Target initial_segment_target(Nat m);     // {0,...,m}
Target tail_target(Nat t);                // {x : x >= t}

/// Family ids registered by the builders above.
inline constexpr const char* kGoldFamily = "gold";
inline constexpr const char* kCofiniteFamily = "cofinite";
inline constexpr const char* kEvenOddFamily = "evenodd";
inline constexpr const char* kPropSepFamily = "propsep";
inline constexpr const char* kFiniteFamily = "finite";

}  // namespace limitlab

#endif
