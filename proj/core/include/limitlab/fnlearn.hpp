#ifndef LIMITLAB_FNLEARN_HPP
#define LIMITLAB_FNLEARN_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "limitlab/criteria.hpp"

namespace limitlab {

/// One (possibly partial) function definition: a finite initial-segment
/// table or a total closed form.
struct FnDef {
  enum class Kind : std::uint8_t { Table, Constant, Identity, Step };
  Kind kind = Kind::Constant;
  std::vector<Nat> table;  // Table: values on {0,...,table.size()-1}
  Nat lo = 0;              // Constant value / Step low value
  Nat hi = 0;              // Step high value
  Nat threshold = 0;       // Step threshold

  std::optional<Nat> value(Nat x) const;
  bool is_total() const { return kind != Kind::Table; }

  static FnDef constant(Nat c);
  static FnDef identity();
  static FnDef step(Nat threshold, Nat lo, Nat hi);
  /// Values given as a sparse map; normalization rejects gaps.
  static FnDef finite_table(std::map<Nat, Nat> values);

  std::map<Nat, Nat> raw_values;  // pre-normalization table input
};

/// Function graph prefix: values on an initial segment of the naturals.
using FnPrefix = std::vector<Nat>;

/// A disciplined enumeration of partial functions: exactly one pair (e,x)
/// becomes defined per stage and every domain grows as an initial segment.
class PsiLab {
 public:
  /// Re-schedules raw definitions round-robin; rejects tables whose domain
  /// is not an initial segment.
  static std::shared_ptr<const PsiLab> normalize(std::vector<FnDef> raw, Nat horizon);

  std::size_t size() const { return defs_.size(); }
  Nat horizon() const { return horizon_; }
  Nat schedule_length() const { return schedule_.size(); }
  const std::string& id() const { return id_; }
  const FnDef& def(Nat e) const { return defs_.at(e); }

  /// The unique pair defined at `stage`.
  std::pair<Nat, Nat> scheduled_at(Nat stage) const { return schedule_.at(stage); }
  /// Stage at which psi_e(x) becomes defined, if within the horizon.
  std::optional<Nat> defined_stage(Nat e, Nat x) const;
  bool defined_within(Nat e, Nat x, Nat steps) const;
  std::optional<Nat> value(Nat e, Nat x) const { return defs_.at(e).value(x); }

  /// psi_e makes progress on sigma at step s.
  bool progress(Nat e, const FnPrefix& sigma, Nat s) const;
  /// Stages below `limit` at which psi_e progresses on its own graph.
  std::vector<Nat> self_progress_times(Nat e, Nat limit) const;

  static std::shared_ptr<const PsiLab> from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

 private:
  std::vector<FnDef> defs_;
  Nat horizon_ = 0;
  std::vector<std::pair<Nat, Nat>> schedule_;
  std::map<std::pair<Nat, Nat>, Nat> stage_of_;
  std::string id_;
};

/// Hypothesis identity for function learning: a staged tracking function
/// over a lab (with parameters e, sigma, t) or the everywhere-undefined
/// default.
class FnHyp {
 public:
  FnHyp() = default;  // default hypothesis

  static FnHyp theta(std::shared_ptr<const PsiLab> lab, Nat e, FnPrefix sigma, Nat t);

  bool is_default() const { return !s_; }
  std::optional<Nat> value_at(Nat x, Nat budget) const;
  std::string to_string() const;

  bool operator==(const FnHyp& o) const;
  bool operator!=(const FnHyp& o) const { return !(*this == o); }
  bool operator<(const FnHyp& o) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

class FnLearnerRun {
 public:
  virtual ~FnLearnerRun() = default;
  virtual FnHyp initial() = 0;
  virtual FnHyp feed(Nat value) = 0;
};

class FunctionLearner {
 public:
  FunctionLearner() = default;
  FunctionLearner(std::string id, std::function<std::unique_ptr<FnLearnerRun>()> make_run);
  const std::string& id() const { return id_; }
  std::unique_ptr<FnLearnerRun> run() const { return make_run_(); }
  FnHyp step(const FnPrefix& prefix) const;

 private:
  std::string id_;
  std::function<std::unique_ptr<FnLearnerRun>()> make_run_;
};

/// The staged-tracking learner over a lab: conjectures theta codes chosen
/// by the first progress event past the input length.
FunctionLearner fj_learner(std::shared_ptr<const PsiLab> lab);

struct FnTrace {
  std::string learner_id;
  FnPrefix text;
  std::vector<FnHyp> conjectures;
  std::vector<FnHyp> distinct;
  std::vector<std::size_t> distinct_index;
  std::size_t steps() const { return conjectures.size(); }
};

FnTrace build_fn_trace(const FunctionLearner& learner, const FnPrefix& values);

struct FnTarget {
  std::string name;
  std::function<Nat(Nat)> value;
};

/// Graph text of the target: f(0), f(1), ..., f(n-1).
FnPrefix fn_canonical_text(const FnTarget& f, Nat n);

Verdict check_fn_part(const FnTrace& trace, const FnTarget& target, const CheckConfig& cfg);
Verdict check_fn_bcstar(const FnTrace& trace, const FnTarget& target, const CheckConfig& cfg);

/// The two simplified approximation conditions: every point is eventually
/// always correct, and the hypotheses are eventually always correct on the
/// witness set S (clipped to the domain bound).
Verdict check_fulkjain(const FnTrace& trace, const FnTarget& target, const FiniteSet& s,
                       const CheckConfig& cfg);

/// Stage-n set of the ascending approximation-set construction, restricted
/// to {0,...,domain_bound}. Throws unless check_fulkjain supports the
/// trace with S.
FiniteSet materialize_Sn(const FiniteSet& s, const FnTrace& trace, Nat n,
                         const FnTarget& target, const CheckConfig& cfg);

}  // namespace limitlab

#endif
