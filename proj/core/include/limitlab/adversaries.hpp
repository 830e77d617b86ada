#ifndef LIMITLAB_ADVERSARIES_HPP
#define LIMITLAB_ADVERSARIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "limitlab/criteria.hpp"
#include "limitlab/learner.hpp"
#include "limitlab/target.hpp"

namespace limitlab {

/// Per-run audit trail: hypothesis codes, membership queries, phase moves.
struct AuditLog {
  nlohmann::ordered_json events = nlohmann::ordered_json::array();

  void query(Nat step, const HypCode& code, Nat x, Nat budget, bool result);
  void note(Nat step, const std::string& what, nlohmann::ordered_json detail = {});
  nlohmann::ordered_json to_json() const { return events; }
};

/// Text builder against a learner on the class of the full set plus all
/// initial segments: starts at 0 and advances exactly when the learner's
/// current hypothesis claims the next number.
TextPrefix gold_adversary(const Learner& learner, Nat budget, Nat n, AuditLog* log = nullptr);

struct EvenOddOptions {
  /// Stage for approximate profiles of codes without an exact one; unset
  /// means such codes raise an Error.
  std::optional<Nat> approx_stage;
};

struct EvenOddResult {
  TextPrefix prefix;
  Nat alternations = 0;
  AuditLog log;
};

/// Alternating even/odd feeder: feeds least unused evens until the current
/// hypothesis is cofinal-even with finitely many odds, then mirrors with
/// odds, counting completed switches.
EvenOddResult evenodd_adversary(const Learner& learner, Nat n, EvenOddOptions opt = {});

enum class CofiniteOutcome : std::uint8_t { StuckInA, Alternating };

struct CofiniteResult {
  TextPrefix prefix;
  CofiniteOutcome outcome = CofiniteOutcome::StuckInA;
  Nat alternations = 0;      // completed (a)-phases
  Nat current_w = 0;         // the withheld element of the active (a)-phase
  Nat phase_start = 0;       // step the active phase began
  AuditLog log;
};

/// Two-phase builder against learners of a cofinite target L with witness
/// set W: phase (a) withholds a fresh w in (L intersect W) and feeds
/// L - {w} ascending until the hypothesis omits w, phase (b) repairs the
/// text up to w and restarts (a).
CofiniteResult cofinite_adversary(const Target& l, const HypCode& w_code,
                                  const Learner& learner, Nat budget, Nat n);

/// Levels assigned to d, d+1, ... by the staged diagonalization against one
/// learner; permanent cancellation bookkeeping included.
struct LevelAssignment {
  Nat d = 0;
  std::string learner_id;
  Nat stages = 0;
  Nat budget = 0;
  std::vector<Nat> levels;                      // levels[k] = level of d+k
  std::vector<std::pair<Nat, Nat>> cancelled;   // (e, stage cancelled at)

  Nat level(Nat x) const;  // x in [d, d+stages)
  bool is_cancelled(Nat e) const;
  /// Ascending x < d+s with level(x) = e, as known at stage s.
  std::vector<Nat> tau_at(Nat e, Nat s) const;
  /// Final-knowledge tau_e.
  std::vector<Nat> tau(Nat e) const { return tau_at(e, stages); }
};

/// Runs the staged construction for `stages` stages. Learner hypotheses are
/// enumerated at stage max(s, budget).
LevelAssignment separation_levels(Nat d, const Learner& learner, Nat stages, Nat budget);

/// Concatenates tau_0 tau_1 ... from the final assignment, truncated to n
/// symbols. Throws when the assignment holds fewer than n symbols.
TextPrefix separation_text(const LevelAssignment& assignment, Nat n);

/// L_{d,e} = {x >= d : level(x) <= e}, truncated at the assignment's stage
/// bound (membership beyond it is false at desk scale).
Target separation_target(const LevelAssignment& assignment, Nat e);

/// Benchmark class over an assignment's level sets.
BenchmarkClass separation_class(const LevelAssignment& assignment);

}  // namespace limitlab

#endif
