#include "limitlab/fnlearn.hpp"

#include <algorithm>
#include <sstream>

namespace limitlab {

// -- FnDef ---------------------------------------------------------------------

std::optional<Nat> FnDef::value(Nat x) const {
  switch (kind) {
    case Kind::Table:
      if (x < table.size()) return table[x];
      return std::nullopt;
    case Kind::Constant:
      return lo;
    case Kind::Identity:
      return x;
    case Kind::Step:
      return x < threshold ? lo : hi;
  }
  return std::nullopt;
}

FnDef FnDef::constant(Nat c) {
  FnDef d;
  d.kind = Kind::Constant;
  d.lo = c;
  return d;
}

FnDef FnDef::identity() {
  FnDef d;
  d.kind = Kind::Identity;
  return d;
}

FnDef FnDef::step(Nat threshold, Nat lo, Nat hi) {
  FnDef d;
  d.kind = Kind::Step;
  d.threshold = threshold;
  d.lo = lo;
  d.hi = hi;
  return d;
}

FnDef FnDef::finite_table(std::map<Nat, Nat> values) {
  FnDef d;
  d.kind = Kind::Table;
  d.raw_values = std::move(values);
  return d;
}

// -- PsiLab --------------------------------------------------------------------

std::shared_ptr<const PsiLab> PsiLab::normalize(std::vector<FnDef> raw, Nat horizon) {
  auto lab = std::make_shared<PsiLab>();
  for (std::size_t e = 0; e < raw.size(); ++e) {
    FnDef& d = raw[e];
    if (d.kind == FnDef::Kind::Table && !d.raw_values.empty()) {
      // Domains must be initial segments; defer-forever gaps are rejected.
      Nat expect = 0;
      for (const auto& [x, v] : d.raw_values) {
        if (x != expect)
          throw Error("normalize: function " + std::to_string(e) +
                      " has a domain gap at " + std::to_string(expect));
        d.table.push_back(v);
        ++expect;
      }
      d.raw_values.clear();
    }
  }
  lab->defs_ = std::move(raw);
  lab->horizon_ = horizon;

  // Round-robin over definitions that still have a next value.
  std::vector<Nat> next_x(lab->defs_.size(), 0);
  std::size_t cursor = 0;
  while (lab->schedule_.size() < horizon) {
    bool scheduled = false;
    for (std::size_t off = 0; off < lab->defs_.size(); ++off) {
      std::size_t e = (cursor + off) % lab->defs_.size();
      if (lab->defs_[e].value(next_x[e]).has_value()) {
        Nat stage = lab->schedule_.size();
        lab->schedule_.emplace_back(e, next_x[e]);
        lab->stage_of_.emplace(std::make_pair(Nat(e), next_x[e]), stage);
        ++next_x[e];
        cursor = e + 1;
        scheduled = true;
        break;
      }
    }
    if (!scheduled) break;  // every table exhausted
  }

  std::ostringstream id;
  id << "lab" << lab->defs_.size() << "h" << horizon << "_";
  std::size_t h = 0x9dc5;
  for (const FnDef& d : lab->defs_) {
    h = h * 1099511628211ull + static_cast<std::size_t>(d.kind);
    h = h * 1099511628211ull + d.lo + d.hi * 31 + d.threshold * 101;
    for (Nat v : d.table) h = h * 1099511628211ull + v;
  }
  id << std::hex << (h & 0xffffffff);
  lab->id_ = id.str();
  return lab;
}

std::optional<Nat> PsiLab::defined_stage(Nat e, Nat x) const {
  auto it = stage_of_.find({e, x});
  if (it == stage_of_.end()) return std::nullopt;
  return it->second;
}

bool PsiLab::defined_within(Nat e, Nat x, Nat steps) const {
  auto st = defined_stage(e, x);
  return st.has_value() && *st < steps;
}

bool PsiLab::progress(Nat e, const FnPrefix& sigma, Nat s) const {
  if (s >= schedule_.size()) return false;
  auto [de, dx] = schedule_[s];
  if (de != e || dx >= sigma.size()) return false;
  for (Nat y = 0; y <= dx; ++y) {
    auto v = value(e, y);
    if (!v.has_value() || *v != sigma[y]) return false;
  }
  return true;
}

std::vector<Nat> PsiLab::self_progress_times(Nat e, Nat limit) const {
  std::vector<Nat> times;
  Nat upto = std::min<Nat>(limit, schedule_.size());
  for (Nat s = 0; s < upto; ++s)
    if (schedule_[s].first == e) times.push_back(s);
  return times;
}

std::shared_ptr<const PsiLab> PsiLab::from_json(const nlohmann::json& j) {
  if (!j.contains("horizon") || !j.contains("functions"))
    throw Error("lab json: needs horizon and functions");
  std::vector<FnDef> defs;
  for (const auto& f : j.at("functions")) {
    std::string kind = f.at("kind").get<std::string>();
    if (kind == "constant") {
      defs.push_back(FnDef::constant(f.at("value").get<Nat>()));
    } else if (kind == "identity") {
      defs.push_back(FnDef::identity());
    } else if (kind == "step") {
      defs.push_back(FnDef::step(f.at("threshold").get<Nat>(), f.at("lo").get<Nat>(),
                                 f.at("hi").get<Nat>()));
    } else if (kind == "table") {
      std::map<Nat, Nat> values;
      const auto& v = f.at("values");
      if (v.is_array()) {
        Nat x = 0;
        for (const auto& item : v) values[x++] = item.get<Nat>();
      } else {
        for (auto it = v.begin(); it != v.end(); ++it)
          values[std::stoull(it.key())] = it.value().get<Nat>();
      }
      defs.push_back(FnDef::finite_table(std::move(values)));
    } else {
      throw Error("lab json: unknown function kind '" + kind + "'");
    }
  }
  return normalize(std::move(defs), j.at("horizon").get<Nat>());
}

nlohmann::ordered_json PsiLab::to_json() const {
  nlohmann::ordered_json j;
  j["horizon"] = horizon_;
  nlohmann::ordered_json fns = nlohmann::ordered_json::array();
  for (const FnDef& d : defs_) {
    nlohmann::ordered_json f;
    switch (d.kind) {
      case FnDef::Kind::Constant:
        f["kind"] = "constant";
        f["value"] = d.lo;
        break;
      case FnDef::Kind::Identity:
        f["kind"] = "identity";
        break;
      case FnDef::Kind::Step:
        f["kind"] = "step";
        f["threshold"] = d.threshold;
        f["lo"] = d.lo;
        f["hi"] = d.hi;
        break;
      case FnDef::Kind::Table:
        f["kind"] = "table";
        f["values"] = d.table;
        break;
    }
    fns.push_back(std::move(f));
  }
  j["functions"] = std::move(fns);
  return j;
}

// -- FnHyp ---------------------------------------------------------------------

struct FnHyp::State {
  std::shared_ptr<const PsiLab> lab;
  Nat e = 0;
  FnPrefix sigma;
  Nat t = 0;
  // Memoized tracking sequence: e_seq[i] is the index at stage t+i.
  std::vector<Nat> e_seq;

  Nat index_at(Nat s) {
    // s >= t
    if (e_seq.empty()) e_seq.push_back(e);
    while (t + e_seq.size() <= s) {
      Nat cur = e_seq.back();
      Nat next_stage = t + e_seq.size();  // step s+1 in the recursion
      Nat chosen = cur;
      for (Nat d = 0; d < cur; ++d) {
        if (lab->progress(d, sigma, next_stage)) {
          chosen = d;
          break;
        }
      }
      e_seq.push_back(chosen);
    }
    return e_seq[s - t];
  }
};

FnHyp FnHyp::theta(std::shared_ptr<const PsiLab> lab, Nat e, FnPrefix sigma, Nat t) {
  FnHyp h;
  h.s_ = std::make_shared<State>();
  h.s_->lab = std::move(lab);
  h.s_->e = e;
  h.s_->sigma = std::move(sigma);
  h.s_->t = t;
  return h;
}

std::optional<Nat> FnHyp::value_at(Nat x, Nat budget) const {
  if (!s_) return std::nullopt;
  if (x < s_->sigma.size()) return s_->sigma[x];
  Nat limit = std::min<Nat>(budget, s_->lab->schedule_length());
  for (Nat s = s_->t + x; s < limit; ++s) {
    Nat idx = s_->index_at(s);
    if (s_->lab->defined_within(idx, x, s + 1)) return s_->lab->value(idx, x);
  }
  return std::nullopt;
}

std::string FnHyp::to_string() const {
  if (!s_) return "(fn-default)";
  std::ostringstream os;
  os << "(theta " << s_->lab->id() << " " << s_->e << " [";
  for (std::size_t i = 0; i < s_->sigma.size(); ++i) {
    if (i) os << ',';
    os << s_->sigma[i];
  }
  os << "] " << s_->t << ")";
  return os.str();
}

bool FnHyp::operator==(const FnHyp& o) const {
  if (!s_ || !o.s_) return !s_ && !o.s_;
  return s_->lab->id() == o.s_->lab->id() && s_->e == o.s_->e && s_->t == o.s_->t &&
         s_->sigma == o.s_->sigma;
}

bool FnHyp::operator<(const FnHyp& o) const {
  if (!s_ || !o.s_) return !s_ && o.s_;
  auto key = [](const State& s) {
    return std::make_tuple(s.lab->id(), s.e, s.t, s.sigma);
  };
  return key(*s_) < key(*o.s_);
}

// -- FunctionLearner ------------------------------------------------------------

FunctionLearner::FunctionLearner(std::string id,
                                 std::function<std::unique_ptr<FnLearnerRun>()> make_run)
    : id_(std::move(id)), make_run_(std::move(make_run)) {}

FnHyp FunctionLearner::step(const FnPrefix& prefix) const {
  auto r = run();
  FnHyp h = r->initial();
  for (Nat v : prefix) h = r->feed(v);
  return h;
}

namespace {

struct FjRun : FnLearnerRun {
  std::shared_ptr<const PsiLab> lab;
  FnPrefix tau;
  std::vector<Nat> match_len;  // longest agreeing prefix of tau per function

  explicit FjRun(std::shared_ptr<const PsiLab> l)
      : lab(std::move(l)), match_len(lab->size(), 0) {}

  FnHyp initial() override { return FnHyp(); }

  bool qualifies(Nat d, Nat stage) const {
    auto [de, dx] = lab->scheduled_at(stage);
    return de == d && dx < match_len[d];
  }

  FnHyp feed(Nat v) override {
    // Extend agreement lengths.
    for (Nat e = 0; e < lab->size(); ++e) {
      if (match_len[e] == tau.size()) {
        auto val = lab->value(e, tau.size());
        if (val.has_value() && *val == v) match_len[e] += 1;
      }
    }
    tau.push_back(v);

    // First progress event at or past the input length.
    std::optional<Nat> t_found;
    Nat e_found = 0;
    for (Nat t = tau.size(); t < lab->schedule_length(); ++t) {
      auto [de, dx] = lab->scheduled_at(t);
      if (dx < tau.size() && dx < match_len[de]) {
        t_found = t;
        e_found = de;
        break;
      }
    }
    if (!t_found.has_value()) return FnHyp();
    Nat t = *t_found;
    Nat e = e_found;

    // Shortest prefix excluding every smaller index. The hypothesis key
    // binds the tracking start to |sigma| so that the recurring conjecture
    // has one stable identity (the search time t grows forever and would
    // fragment it).
    for (Nat len = 0; len <= tau.size(); ++len) {
      bool ok = true;
      for (Nat d = 0; d < e && ok; ++d) {
        // No progress of psi_d on tau at any stage in [len, t].
        for (Nat s = len; s <= t && ok; ++s)
          if (qualifies(d, s)) ok = false;
        if (!ok) break;
        // psi_{d,len} must conflict with sigma: a wrong value or a hole.
        bool conflict = false;
        for (Nat y = 0; y < len && !conflict; ++y) {
          if (!lab->defined_within(d, y, len))
            conflict = true;
          else if (*lab->value(d, y) != tau[y])
            conflict = true;
        }
        if (!conflict) ok = false;
      }
      if (ok) {
        FnPrefix sigma(tau.begin(), tau.begin() + len);
        return FnHyp::theta(lab, e, std::move(sigma), len);
      }
    }
    return FnHyp();
  }
};

}  // namespace

FunctionLearner fj_learner(std::shared_ptr<const PsiLab> lab) {
  std::string id = "fj(" + lab->id() + ")";
  return FunctionLearner(id, [lab]() { return std::make_unique<FjRun>(lab); });
}

FnTrace build_fn_trace(const FunctionLearner& learner, const FnPrefix& values) {
  FnTrace t;
  t.learner_id = learner.id();
  t.text = values;
  auto run = learner.run();
  run->initial();
  std::map<FnHyp, std::size_t> seen;
  for (Nat v : values) {
    FnHyp h = run->feed(v);
    auto it = seen.find(h);
    if (it == seen.end()) {
      it = seen.emplace(h, t.distinct.size()).first;
      t.distinct.push_back(h);
    }
    t.conjectures.push_back(h);
    t.distinct_index.push_back(it->second);
  }
  return t;
}

FnPrefix fn_canonical_text(const FnTarget& f, Nat n) {
  FnPrefix p;
  for (Nat x = 0; x < n; ++x) p.push_back(f.value(x));
  return p;
}

// -- checkers ------------------------------------------------------------------

namespace {

Verdict fn_base_verdict(std::string criterion, const CheckConfig& cfg) {
  Verdict v;
  v.criterion = std::move(criterion);
  v.config = cfg.to_json();
  return v;
}

Nat fn_anomaly(const FnHyp& h, const FnTarget& target, Nat m, Nat budget) {
  Nat count = 0;
  for (Nat x = 0; x <= m; ++x) {
    auto v = h.value_at(x, budget);
    if (!v.has_value() || *v != target.value(x)) ++count;
  }
  return count;
}

}  // namespace

Verdict check_fn_part(const FnTrace& trace, const FnTarget& target, const CheckConfig& cfg) {
  Verdict v = fn_base_verdict("fn_part", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  std::map<FnHyp, Nat> counts;
  for (Nat j = n - w; j < n; ++j) counts[trace.conjectures[j]] += 1;
  std::vector<FnHyp> candidates;
  for (const auto& [h, c] : counts)
    if (c >= 2) candidates.push_back(h);
  v.witness["candidates"] = candidates.size();
  if (candidates.size() != 1) return v;
  const FnHyp& c = candidates.front();
  v.witness["candidate"] = c.to_string();
  Nat anomalies = fn_anomaly(c, target, cfg.domain_bound, cfg.budget);
  v.witness["anomalies"] = anomalies;
  if (anomalies == 0) v.status = VerdictStatus::Supported;
  return v;
}

Verdict check_fn_bcstar(const FnTrace& trace, const FnTarget& target, const CheckConfig& cfg) {
  Verdict v = fn_base_verdict("fn_bc_star", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  Nat m = cfg.domain_bound;
  std::map<FnHyp, Nat> cache;
  std::vector<Nat> anomalies(n);
  for (Nat j = 0; j < n; ++j) {
    const FnHyp& h = trace.conjectures[j];
    auto it = cache.find(h);
    if (it == cache.end()) it = cache.emplace(h, fn_anomaly(h, target, m, cfg.budget)).first;
    anomalies[j] = it->second;
  }
  Nat star_cap = 0;
  for (Nat j = n - w; j < n; ++j) star_cap = std::max(star_cap, anomalies[j]);
  Nat k_star = n - w;
  {
    std::vector<Nat> sufmax(n + 1, 0);
    for (Nat j = n; j-- > 0;) sufmax[j] = std::max(anomalies[j], sufmax[j + 1]);
    while (k_star > 0 && sufmax[k_star - 1] == star_cap) --k_star;
  }
  Nat cap = (m + 1) / 2;
  v.witness["suffix_max_anomaly"] = star_cap;
  v.witness["cap"] = cap;
  v.witness["suffix_start"] = k_star;
  if (star_cap <= cap) v.status = VerdictStatus::Supported;
  return v;
}

Verdict check_fulkjain(const FnTrace& trace, const FnTarget& target, const FiniteSet& s,
                       const CheckConfig& cfg) {
  Verdict v = fn_base_verdict("fulkjain", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  Nat m = cfg.domain_bound;

  // (d): every point below the bound is eventually always correct.
  bool pointwise_ok = true;
  nlohmann::ordered_json late = nlohmann::ordered_json::array();
  for (Nat x = 0; x <= m; ++x) {
    std::optional<Nat> last_bad;
    for (Nat j = 0; j < n; ++j) {
      auto val = trace.conjectures[j].value_at(x, cfg.budget);
      if (!val.has_value() || *val != target.value(x)) last_bad = j;
    }
    if (last_bad.has_value() && *last_bad + 1 > n - w) {
      pointwise_ok = false;
      nlohmann::ordered_json row;
      row["x"] = x;
      row["last_disagreement"] = *last_bad;
      late.push_back(std::move(row));
    }
  }
  v.witness["pointwise_ok"] = pointwise_ok;
  v.witness["late_points"] = std::move(late);

  // (e): eventually always correct on the witness set.
  FiniteSet s_clip = s.clipped(m);
  Nat k_star = 0;
  for (Nat j = 0; j < n; ++j) {
    for (Nat x : s_clip) {
      auto val = trace.conjectures[j].value_at(x, cfg.budget);
      if (!val.has_value() || *val != target.value(x)) {
        k_star = j + 1;
        nlohmann::ordered_json f;
        f["step"] = j;
        f["x"] = x;
        v.failures.push_back(std::move(f));
        break;
      }
    }
  }
  v.witness["S"] = s_clip.to_string();
  v.witness["k_star"] = k_star;
  bool witness_ok = k_star <= n - w;
  if (pointwise_ok && witness_ok) v.status = VerdictStatus::Supported;
  return v;
}

FiniteSet materialize_Sn(const FiniteSet& s, const FnTrace& trace, Nat n,
                         const FnTarget& target, const CheckConfig& cfg) {
  Verdict pre = check_fulkjain(trace, target, s, cfg);
  if (!pre.supported())
    throw Error("materialize_Sn: the trace is not supported with this witness set");
  Nat steps = cfg.effective_horizon(trace.steps());
  Nat m = cfg.domain_bound;
  FiniteSet s_clip = s.clipped(m);

  // Onset: from here on every hypothesis is correct on the witness set.
  Nat onset = pre.witness.at("k_star").get<Nat>();
  if (n < onset) return FiniteSet{};

  // Points that every hypothesis from n on gets right.
  std::vector<Nat> settled;
  for (Nat x = 0; x <= std::min(n, m); ++x) {
    bool ok = true;
    for (Nat j = n; j < steps && ok; ++j) {
      auto val = trace.conjectures[j].value_at(x, cfg.budget);
      if (!val.has_value() || *val != target.value(x)) ok = false;
    }
    if (ok) settled.push_back(x);
  }

  // Scheduled allotment: at every applicable step move alternate elements
  // of the remaining witness points in, keeping part outside for later.
  std::vector<Nat> remaining(s_clip.begin(), s_clip.end());
  std::vector<Nat> allotted;
  for (Nat k = onset; k <= n; ++k) {
    if (remaining.size() < 2) break;
    std::vector<Nat> keep;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      bool last = i + 1 == remaining.size();
      if (i % 2 == 0 && !last)
        allotted.push_back(remaining[i]);
      else
        keep.push_back(remaining[i]);
    }
    remaining = std::move(keep);
  }
  std::vector<Nat> all(settled);
  all.insert(all.end(), allotted.begin(), allotted.end());
  return FiniteSet(std::move(all));
}

}  // namespace limitlab
