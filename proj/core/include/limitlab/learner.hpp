#ifndef LIMITLAB_LEARNER_HPP
#define LIMITLAB_LEARNER_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "limitlab/hypcode.hpp"
#include "limitlab/text.hpp"

namespace limitlab {

/// Incremental evaluation of a learner along one growing text. Runs carry
/// per-text state; they are not shared across threads.
class LearnerRun {
 public:
  virtual ~LearnerRun() = default;
  /// Conjecture on the empty prefix.
  virtual HypCode initial() = 0;
  /// Extends the fed prefix by one symbol and returns the conjecture on it.
  virtual HypCode feed(Symbol s) = 0;
};

struct LearnerMeta {
  bool consistent = false;
  bool conservative = false;
  std::string target_class;
};

/// Total deterministic map TextPrefix -> HypCode with a stable identity.
/// Identical prefixes always yield structurally identical codes.
class Learner {
 public:
  Learner() = default;
  Learner(std::string id, LearnerMeta meta,
          std::function<std::unique_ptr<LearnerRun>()> make_run);

  bool valid() const { return impl_ != nullptr; }
  const std::string& id() const;
  const LearnerMeta& meta() const;

  std::unique_ptr<LearnerRun> run() const;
  /// Evaluates on one prefix by replaying a fresh run.
  HypCode step(const TextPrefix& prefix) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Conjecture sequence of a learner on a text prefix:
/// conjectures[k] = M(T[k+1]).
struct Trace {
  std::string learner_id;
  TextPrefix text;
  std::vector<HypCode> conjectures;
  std::vector<HypCode> distinct;             // first-appearance order
  std::vector<std::size_t> distinct_index;   // step -> index into distinct

  std::size_t steps() const { return conjectures.size(); }
};

Trace build_trace(const Learner& learner, const TextPrefix& text);

nlohmann::ordered_json trace_to_json(const Trace& t);

// -- learner registry ---------------------------------------------------------

using LearnerFactory = std::function<Learner(const nlohmann::json& params)>;

void register_learner(const std::string& name, LearnerFactory factory);
bool has_learner(const std::string& name);
/// Throws Error for unknown names.
Learner make_learner(const std::string& name, const nlohmann::json& params = {});
std::vector<std::string> registered_learner_names();

/// Registers every learner this library ships (idempotent).
void register_builtin_learners();

}  // namespace limitlab

#endif
