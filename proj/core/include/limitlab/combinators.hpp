#ifndef LIMITLAB_COMBINATORS_HPP
#define LIMITLAB_COMBINATORS_HPP

#include <map>
#include <optional>
#include <vector>

#include "limitlab/learner.hpp"

namespace limitlab {

/// Emission bookkeeping for "output X at least m times iff ..." schedules,
/// aggregated per emitted code. Bounds only grow; a code is due while its
/// emission count lags its bound. Scheduling alternates between a leader
/// lane (maximal bound, ties to the earliest admission) and a round-robin
/// lane, so no due obligation starves within a window of twice the due
/// count while an obligation with unboundedly growing bound dominates
/// every other step.
class ObligationQueue {
 public:
  /// Tracks the code (bound starts at 0) and returns its admission rank.
  std::size_t ensure(const HypCode& code);
  void raise_bound(const HypCode& code, Nat bound);
  void count_emission(const HypCode& code);

  Nat bound(const HypCode& code) const;
  Nat emitted(const HypCode& code) const;
  bool any_due() const;
  Nat due_count() const;

  /// Due code with the largest bound; earliest admission wins ties.
  std::optional<HypCode> pick_leader() const;
  /// Next due code in circular admission order.
  std::optional<HypCode> pick_rr();

  nlohmann::ordered_json dump() const;

 private:
  struct Ob {
    HypCode code;
    Nat bound = 0;
    Nat emitted = 0;
  };
  std::vector<Ob> obs_;
  std::map<HypCode, std::size_t> index_;
  std::size_t cursor_ = 0;
};

/// Runs may implement this to expose their internal table evolution.
class DebugDumpable {
 public:
  virtual ~DebugDumpable() = default;
  virtual nlohmann::ordered_json debug_dump() const = 0;
};

/// Replays `learner` over `prefix` and returns the run's debug dump, or
/// null when the learner's runs expose none.
nlohmann::ordered_json wrapper_debug_dump(const Learner& learner, const TextPrefix& prefix);

/// Partial learner -> finitely approximating partial learner: outputs
/// D union (e_n above m) for m the first step conjecturing e_n and D the
/// data below m.
Learner finapprox_part_wrap(Learner m1);

/// Conservative variant: the finite part is cross-checked against the
/// stage-s enumeration of e_s before the hypothesis is updated; otherwise
/// the previous output repeats. Requires m1 declared conservative.
Learner finapprox_consv_part_wrap(Learner m1);

/// BC^n learner -> partial BC^n learner via canonical indices for
/// W_e union F / W_e minus F over all |F| <= n, emission counts driven by
/// the two verification conditions, finished with padding normalization.
Learner bcn_part(Learner m, Nat n);

/// BC* learner emitting at least one fully correct hypothesis -> partial
/// BC* learner via the per-hypothesis quality table.
Learner bcstar_part_once_correct(Learner m);

/// BC* learner emitting some index infinitely often -> partial BC* learner;
/// F-sets are admitted per repetition count of the base hypothesis.
Learner bcstar_part_inf_often(Learner m);

/// Conservative partial learner -> approximating partial BC* learner:
/// staged hypothesis sets from the coverage-ordered index sequence, an
/// intermediate learner driven by the two quality counters, a delay layer,
/// and the finite-approximation normalization. Requires m declared
/// conservative.
Learner consv_to_approxpart_bcstar(Learner m);

/// Vac*-and-WPart learner -> Vac learner: replays the best-agreeing
/// previous conjecture (maximal agreement prefix, earliest tie).
Learner vacstar_wpart_to_vac(Learner m);

/// Pads every emission so that exactly one code recurs infinitely often
/// when the first-appearing infinitely-repeated code is correct: the pad
/// tag counts emissions of strictly earlier-appearing codes.
Learner padding_normalize(Learner n1);

}  // namespace limitlab

#endif
