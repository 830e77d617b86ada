#include "limitlab/learner.hpp"

#include <map>
#include <mutex>

namespace limitlab {

struct Learner::Impl {
  std::string id;
  LearnerMeta meta;
  std::function<std::unique_ptr<LearnerRun>()> make_run;
};

Learner::Learner(std::string id, LearnerMeta meta,
                 std::function<std::unique_ptr<LearnerRun>()> make_run) {
  auto impl = std::make_shared<Impl>();
  impl->id = std::move(id);
  impl->meta = std::move(meta);
  impl->make_run = std::move(make_run);
  impl_ = std::move(impl);
}

const std::string& Learner::id() const { return impl_->id; }
const LearnerMeta& Learner::meta() const { return impl_->meta; }

std::unique_ptr<LearnerRun> Learner::run() const {
  if (!impl_) throw Error("run() on invalid learner");
  return impl_->make_run();
}

HypCode Learner::step(const TextPrefix& prefix) const {
  auto r = run();
  HypCode c = r->initial();
  for (const Symbol& s : prefix.symbols()) c = r->feed(s);
  return c;
}

Trace build_trace(const Learner& learner, const TextPrefix& text) {
  Trace t;
  t.learner_id = learner.id();
  t.text = text;
  auto run = learner.run();
  run->initial();
  std::map<HypCode, std::size_t> seen;
  for (const Symbol& s : text.symbols()) {
    HypCode c = run->feed(s);
    auto it = seen.find(c);
    if (it == seen.end()) {
      it = seen.emplace(c, t.distinct.size()).first;
      t.distinct.push_back(c);
    }
    t.conjectures.push_back(c);
    t.distinct_index.push_back(it->second);
  }
  return t;
}

nlohmann::ordered_json trace_to_json(const Trace& t) {
  nlohmann::ordered_json j;
  j["learner"] = t.learner_id;
  j["length"] = t.text.size();
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < t.conjectures.size(); ++k) {
    nlohmann::ordered_json row;
    row["step"] = k;
    const Symbol& s = t.text.at(k);
    if (s.is_pause())
      row["symbol"] = "#";
    else
      row["symbol"] = s.datum();
    row["code"] = t.conjectures[k].to_string();
    steps.push_back(std::move(row));
  }
  j["steps"] = std::move(steps);
  return j;
}

// -- registry -----------------------------------------------------------------

namespace {

struct LearnerRegistry {
  std::mutex m;
  std::map<std::string, LearnerFactory> factories;
};

LearnerRegistry& learner_registry() {
  static LearnerRegistry r;
  return r;
}

}  // namespace

void register_learner(const std::string& name, LearnerFactory factory) {
  auto& r = learner_registry();
  std::lock_guard lk(r.m);
  r.factories.emplace(name, std::move(factory));  // first registration wins
}

bool has_learner(const std::string& name) {
  register_builtin_learners();
  auto& r = learner_registry();
  std::lock_guard lk(r.m);
  return r.factories.count(name) > 0;
}

Learner make_learner(const std::string& name, const nlohmann::json& params) {
  register_builtin_learners();
  LearnerFactory f;
  {
    auto& r = learner_registry();
    std::lock_guard lk(r.m);
    auto it = r.factories.find(name);
    if (it == r.factories.end()) throw Error("unknown learner: " + name);
    f = it->second;
  }
  return f(params);
}

std::vector<std::string> registered_learner_names() {
  register_builtin_learners();
  auto& r = learner_registry();
  std::lock_guard lk(r.m);
  std::vector<std::string> names;
  for (const auto& [k, v] : r.factories) names.push_back(k);
  return names;
}

}  // namespace limitlab
