#ifndef LIMITLAB_CRITERIA_HPP
#define LIMITLAB_CRITERIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "limitlab/learner.hpp"
#include "limitlab/target.hpp"

namespace limitlab {

enum class VerdictStatus : std::uint8_t { Supported, Refuted, Inconclusive };

std::string to_string(VerdictStatus s);

/// Three-valued horizon judgment. Refuted always rests on a finite
/// counterexample that is stable under enlarging budgets; Supported always
/// carries a witness payload.
struct Verdict {
  std::string criterion;
  VerdictStatus status = VerdictStatus::Inconclusive;
  nlohmann::ordered_json witness;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  nlohmann::ordered_json config;

  bool supported() const { return status == VerdictStatus::Supported; }
  bool refuted() const { return status == VerdictStatus::Refuted; }
  nlohmann::ordered_json to_json() const;
};

struct CheckConfig {
  /// Steps to judge; 0 means the whole trace.
  Nat horizon = 0;
  /// Stage budget for enumeration-tier membership.
  Nat budget = 200;
  /// Final-window length; 0 means ceil(n/3).
  Nat window = 0;
  /// Agreement domain bound: criteria compare sets on {0,...,domain_bound}.
  Nat domain_bound = 64;
  /// Anomaly tolerance used by the starred/ -a criteria.
  Nat anomaly_cap = 1;

  Nat effective_horizon(Nat trace_steps) const;
  Nat effective_window(Nat n) const;
  nlohmann::ordered_json to_json() const;
};

/// Exact membership tier: structural decision or an exact set description
/// (families and registered opaque forms included); nullopt if neither.
std::optional<bool> exact_member(const HypCode& c, Nat x);

/// Consistency: every fed datum lies in the conjecture made on its prefix.
Verdict check_cons(const Trace& trace, const CheckConfig& cfg);

/// Partial learning at the horizon: exactly one code recurs in the final
/// window and it agrees with the target on {0,...,domain_bound}.
Verdict check_part(const Trace& trace, const Target& target, const CheckConfig& cfg);

/// Conservative partial learning: additionally, at most one emitted code's
/// exact extension is a superset of the target.
Verdict check_consv_part(const Trace& trace, const Target& target, const CheckConfig& cfg);

/// Confident partial learning on an arbitrary symbol sequence: window
/// candidate analysis without any correctness requirement.
Verdict check_conf_part(const Trace& trace, const CheckConfig& cfg);

/// Behaviourally correct learning with anomaly tolerance `anomalies`
/// (nullopt = finitely many, the starred variant).
Verdict check_bc_family(const Trace& trace, const Target& target, const CheckConfig& cfg,
                        std::optional<Nat> anomalies);

Verdict check_ex(const Trace& trace, const Target& target, const CheckConfig& cfg);
Verdict check_exstar(const Trace& trace, const Target& target, const CheckConfig& cfg);
Verdict check_vac(const Trace& trace, const Target& target, const CheckConfig& cfg);
Verdict check_vacstar(const Trace& trace, const Target& target, const CheckConfig& cfg);

/// Finite approximation on D: almost all conjectures agree with the target
/// on the finite set D.
Verdict check_finapprox(const Trace& trace, const Target& target, const FiniteSet& d,
                        const CheckConfig& cfg);

/// Weak approximation via witness code V (decidable, infinite): almost all
/// conjectures agree with the target on V up to the domain bound.
Verdict check_weakapprox(const Trace& trace, const Target& target, const HypCode& v,
                         const CheckConfig& cfg);

/// Approximation: weak approximation with one shared V across >= 2 texts.
Verdict check_approx(const std::vector<Trace>& traces, const Target& target, const HypCode& v,
                     const CheckConfig& cfg);

}  // namespace limitlab

#endif
