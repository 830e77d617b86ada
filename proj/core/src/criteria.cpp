#include "limitlab/criteria.hpp"

#include <algorithm>
#include <map>

namespace limitlab {

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Supported:
      return "supported";
    case VerdictStatus::Refuted:
      return "refuted";
    default:
      return "inconclusive";
  }
}

nlohmann::ordered_json Verdict::to_json() const {
  nlohmann::ordered_json j;
  j["criterion"] = criterion;
  j["status"] = to_string(status);
  j["witness"] = witness;
  j["config"] = config;
  j["failures"] = failures;
  return j;
}

Nat CheckConfig::effective_horizon(Nat trace_steps) const {
  if (horizon == 0) return trace_steps;
  return std::min<Nat>(horizon, trace_steps);
}

Nat CheckConfig::effective_window(Nat n) const {
  Nat w = window == 0 ? (n + 2) / 3 : window;
  return std::min<Nat>(std::max<Nat>(w, 1), n);
}

nlohmann::ordered_json CheckConfig::to_json() const {
  nlohmann::ordered_json j;
  j["horizon"] = horizon;
  j["budget"] = budget;
  j["window"] = window;
  j["domain_bound"] = domain_bound;
  j["anomaly_cap"] = anomaly_cap;
  return j;
}

std::optional<bool> exact_member(const HypCode& c, Nat x) {
  if (auto d = decide_member(c, x)) return d;
  if (auto f = periodic_form(c)) return f->member(x);
  return std::nullopt;
}

namespace {

Verdict base_verdict(std::string criterion, const CheckConfig& cfg) {
  Verdict v;
  v.criterion = std::move(criterion);
  v.config = cfg.to_json();
  return v;
}

/// Codes occurring at least twice within the final window, plus the count
/// table of every code seen there.
struct WindowAnalysis {
  std::vector<HypCode> candidates;
  std::map<HypCode, Nat> counts;
  Nat window_start = 0;
};

WindowAnalysis analyze_window(const Trace& trace, Nat n, Nat w) {
  WindowAnalysis a;
  a.window_start = n - w;
  for (Nat j = a.window_start; j < n; ++j) a.counts[trace.conjectures[j]] += 1;
  for (const auto& [code, cnt] : a.counts)
    if (cnt >= 2) a.candidates.push_back(code);
  return a;
}

nlohmann::ordered_json count_table_json(const WindowAnalysis& a) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& [code, cnt] : a.counts) {
    nlohmann::ordered_json row;
    row["code"] = code.to_string();
    row["count"] = cnt;
    arr.push_back(std::move(row));
  }
  return arr;
}

/// Agreement of `c` with the target on {0,...,m}: exact tier preferred,
/// else the stage-budget tier. Returns (agrees, used_exact_tier,
/// first_disagreement).
struct Agreement {
  bool agrees = true;
  bool exact = true;
  std::optional<Nat> disagreement;
};

Agreement agree_on_domain(const HypCode& c, const Target& target, Nat m, Nat budget) {
  Agreement a;
  for (Nat x = 0; x <= m; ++x) {
    auto em = exact_member(c, x);
    bool in_set;
    if (em.has_value()) {
      in_set = *em;
    } else {
      a.exact = false;
      in_set = member_at(c, x, budget);
    }
    if (in_set != target.member(x)) {
      a.agrees = false;
      a.disagreement = x;
      return a;
    }
  }
  return a;
}

/// Anomaly count of `c` against the target on {0,...,m}; nullopt when some
/// point is undecidable at the exact tier.
std::optional<Nat> exact_anomaly(const HypCode& c, const Target& target, Nat m) {
  Nat count = 0;
  for (Nat x = 0; x <= m; ++x) {
    auto em = exact_member(c, x);
    if (!em.has_value()) return std::nullopt;
    if (*em != target.member(x)) ++count;
  }
  return count;
}

}  // namespace

Verdict check_cons(const Trace& trace, const CheckConfig& cfg) {
  Verdict v = base_verdict("cons", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  std::vector<Nat> data;
  bool all_witnessed = true;
  for (Nat j = 0; j < n; ++j) {
    const Symbol& s = trace.text.at(j);
    if (s.is_datum() && !std::count(data.begin(), data.end(), s.datum()))
      data.push_back(s.datum());
    const HypCode& c = trace.conjectures[j];
    for (Nat x : data) {
      auto em = exact_member(c, x);
      if (em.has_value()) {
        if (!*em) {
          v.status = VerdictStatus::Refuted;
          v.witness = {{"step", j}, {"datum", x}, {"code", c.to_string()}};
          return v;
        }
      } else if (!member_at(c, x, cfg.budget)) {
        all_witnessed = false;
        nlohmann::ordered_json f;
        f["step"] = j;
        f["datum"] = x;
        f["unwitnessed_at_budget"] = cfg.budget;
        v.failures.push_back(std::move(f));
      }
    }
  }
  if (all_witnessed) {
    v.status = VerdictStatus::Supported;
    v.witness = {{"steps_checked", n}};
  }
  return v;
}

Verdict check_part(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("part", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  WindowAnalysis a = analyze_window(trace, n, w);
  v.witness["window_start"] = a.window_start;
  v.witness["counts"] = count_table_json(a);
  if (a.candidates.size() != 1) {
    v.witness["candidates"] = a.candidates.size();
    return v;  // Inconclusive: zero or several recurring codes
  }
  const HypCode& c = a.candidates.front();
  v.witness["candidate"] = c.to_string();
  v.witness["candidate_count"] = a.counts[c];
  Agreement agr = agree_on_domain(c, target, cfg.domain_bound, cfg.budget);
  v.witness["exact_tier"] = agr.exact;
  if (agr.agrees) {
    v.status = VerdictStatus::Supported;
  } else {
    v.witness["disagreement_at"] = *agr.disagreement;
  }
  return v;
}

Verdict check_consv_part(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("consv_part", cfg);
  if (!target.code.has_value())
    throw Error("check_consv_part: target without exact code");
  auto target_form = periodic_form(*target.code);
  if (!target_form.has_value())
    throw Error("check_consv_part: target code has no exact form");

  Nat n = cfg.effective_horizon(trace.steps());
  std::vector<HypCode> supersets;
  bool unknown = false;
  std::vector<HypCode> distinct_seen;
  for (Nat j = 0; j < n; ++j) {
    const HypCode& c = trace.conjectures[j];
    if (std::count(distinct_seen.begin(), distinct_seen.end(), c)) continue;
    distinct_seen.push_back(c);
    auto form = periodic_form(c);
    if (!form.has_value()) {
      unknown = true;
      continue;
    }
    if (form->contains_all_of(*target_form)) supersets.push_back(c);
  }
  nlohmann::ordered_json sup = nlohmann::ordered_json::array();
  for (const auto& c : supersets) sup.push_back(c.to_string());
  v.witness["supersets"] = sup;
  if (supersets.size() >= 2) {
    v.status = VerdictStatus::Refuted;
    return v;
  }
  if (unknown) {
    v.witness["undecidable_codes"] = true;
    return v;
  }
  Verdict part = check_part(trace, target, cfg);
  v.status = part.status == VerdictStatus::Supported ? VerdictStatus::Supported
                                                     : VerdictStatus::Inconclusive;
  v.witness["part"] = part.witness;
  return v;
}

Verdict check_conf_part(const Trace& trace, const CheckConfig& cfg) {
  Verdict v = base_verdict("conf_part", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  WindowAnalysis a = analyze_window(trace, n, w);
  v.witness["counts"] = count_table_json(a);
  v.witness["candidates"] = a.candidates.size();
  if (a.candidates.size() == 1) {
    v.status = VerdictStatus::Supported;
    v.witness["candidate"] = a.candidates.front().to_string();
  }
  return v;
}

namespace {

Verdict check_anomaly_suffix(std::string criterion, const Trace& trace, const Target& target,
                             const CheckConfig& cfg, std::optional<Nat> bound) {
  Verdict v = base_verdict(std::move(criterion), cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  Nat m = cfg.domain_bound;

  std::vector<std::optional<Nat>> anomalies(n);
  std::vector<std::optional<std::optional<Nat>>> cache(trace.distinct.size());
  for (Nat j = 0; j < n; ++j) {
    std::size_t rank = trace.distinct_index[j];
    if (!cache[rank].has_value())
      cache[rank] = exact_anomaly(trace.conjectures[j], target, m);
    anomalies[j] = *cache[rank];
  }

  // sufmax[j] = largest anomaly over steps [j, n); unknown when some step
  // there is undecidable at the exact tier.
  std::vector<std::optional<Nat>> sufmax(n + 1);
  sufmax[n] = 0;
  for (Nat j = n; j-- > 0;) {
    if (anomalies[j].has_value() && sufmax[j + 1].has_value())
      sufmax[j] = std::max(*anomalies[j], *sufmax[j + 1]);
  }

  v.witness["anomaly_profile_tail"] = nlohmann::ordered_json::array();
  for (Nat j = n - w; j < n; ++j) {
    if (anomalies[j].has_value())
      v.witness["anomaly_profile_tail"].push_back(*anomalies[j]);
    else
      v.witness["anomaly_profile_tail"].push_back(nullptr);
  }

  // Admissible suffix starts are k* <= n - w.
  if (!sufmax[n - w].has_value()) {
    v.witness["undecidable_steps"] = true;
    return v;
  }

  if (bound.has_value()) {
    std::optional<Nat> k_star;
    for (Nat j = 0; j <= n - w; ++j) {
      if (sufmax[j].has_value() && *sufmax[j] <= *bound) {
        k_star = j;
        break;
      }
    }
    v.witness["bound"] = *bound;
    if (k_star.has_value()) {
      v.status = VerdictStatus::Supported;
      v.witness["suffix_start"] = *k_star;
    } else {
      for (Nat j = 0; j < n; ++j)
        if (anomalies[j].has_value() && *anomalies[j] > *bound) {
          nlohmann::ordered_json f;
          f["step"] = j;
          f["anomalies"] = *anomalies[j];
          v.failures.push_back(std::move(f));
        }
    }
  } else {
    // Starred: the minimal suffix-max anomaly over admissible starts is the
    // one at n - w; supported iff it stays below the domain-dependent cap.
    Nat star_cap = *sufmax[n - w];
    Nat cap = (m + 1) / 2;
    Nat k_star = n - w;
    while (k_star > 0 && sufmax[k_star - 1].has_value() && *sufmax[k_star - 1] == star_cap)
      --k_star;
    v.witness["suffix_max_anomaly"] = star_cap;
    v.witness["cap"] = cap;
    v.witness["suffix_start"] = k_star;
    if (star_cap <= cap) v.status = VerdictStatus::Supported;
  }
  return v;
}

}  // namespace

Verdict check_bc_family(const Trace& trace, const Target& target, const CheckConfig& cfg,
                        std::optional<Nat> anomalies) {
  std::string name = !anomalies.has_value() ? "bc_star"
                     : *anomalies == 0      ? "bc"
                                            : "bc_" + std::to_string(*anomalies);
  return check_anomaly_suffix(std::move(name), trace, target, cfg, anomalies);
}

namespace {

/// Shared scaffolding for the convergence-style criteria.
struct SuffixInfo {
  Nat n, w, start;
  bool constant_suffix = true;
  bool no_new_in_window = true;
  std::optional<Nat> max_window_anomaly;  // nullopt if some window code undecidable
};

SuffixInfo suffix_info(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  SuffixInfo s;
  s.n = cfg.effective_horizon(trace.steps());
  s.w = cfg.effective_window(s.n);
  s.start = s.n - s.w;
  // First appearance step per distinct-code rank.
  std::vector<Nat> first_app(trace.distinct.size(), s.n);
  for (Nat j = s.n; j-- > 0;) first_app[trace.distinct_index[j]] = j;
  Nat max_anom = 0;
  bool unknown = false;
  std::vector<std::optional<std::optional<Nat>>> cache(trace.distinct.size());
  for (Nat j = s.start; j < s.n; ++j) {
    const HypCode& c = trace.conjectures[j];
    if (c != trace.conjectures[s.start]) s.constant_suffix = false;
    // A code counts as new only when it first shows strictly inside the
    // window; the boundary step itself still witnesses earlier behavior.
    if (first_app[trace.distinct_index[j]] > s.start) s.no_new_in_window = false;
    std::size_t rank = trace.distinct_index[j];
    if (!cache[rank].has_value()) cache[rank] = exact_anomaly(c, target, cfg.domain_bound);
    if (!cache[rank]->has_value())
      unknown = true;
    else
      max_anom = std::max(max_anom, **cache[rank]);
  }
  if (!unknown) s.max_window_anomaly = max_anom;
  return s;
}

}  // namespace

Verdict check_ex(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("ex", cfg);
  SuffixInfo s = suffix_info(trace, target, cfg);
  v.witness["window_start"] = s.start;
  v.witness["constant_suffix"] = s.constant_suffix;
  if (!s.max_window_anomaly.has_value()) return v;
  if (s.constant_suffix && *s.max_window_anomaly == 0) {
    v.status = VerdictStatus::Supported;
    v.witness["code"] = trace.conjectures[s.start].to_string();
  }
  return v;
}

Verdict check_exstar(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("ex_star", cfg);
  SuffixInfo s = suffix_info(trace, target, cfg);
  v.witness["window_start"] = s.start;
  v.witness["constant_suffix"] = s.constant_suffix;
  if (!s.max_window_anomaly.has_value()) return v;
  if (s.constant_suffix && *s.max_window_anomaly <= cfg.anomaly_cap) {
    v.status = VerdictStatus::Supported;
    v.witness["code"] = trace.conjectures[s.start].to_string();
    v.witness["anomalies"] = *s.max_window_anomaly;
  }
  return v;
}

Verdict check_vac(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("vac", cfg);
  SuffixInfo s = suffix_info(trace, target, cfg);
  v.witness["window_start"] = s.start;
  v.witness["no_new_codes"] = s.no_new_in_window;
  if (!s.max_window_anomaly.has_value()) return v;
  if (s.no_new_in_window && *s.max_window_anomaly == 0) {
    v.status = VerdictStatus::Supported;
  }
  return v;
}

Verdict check_vacstar(const Trace& trace, const Target& target, const CheckConfig& cfg) {
  Verdict v = base_verdict("vac_star", cfg);
  SuffixInfo s = suffix_info(trace, target, cfg);
  v.witness["window_start"] = s.start;
  v.witness["no_new_codes"] = s.no_new_in_window;
  if (!s.max_window_anomaly.has_value()) return v;
  if (s.no_new_in_window && *s.max_window_anomaly <= cfg.anomaly_cap) {
    v.status = VerdictStatus::Supported;
    v.witness["anomalies"] = *s.max_window_anomaly;
  }
  return v;
}

namespace {

/// k* and the disagreement schedule of the trace against the target on a
/// fixed finite point set.
struct PointAgreement {
  std::optional<Nat> k_star;      // least k with all later steps agreeing
  bool unknown = false;           // some (step, point) undecidable
  std::vector<std::pair<Nat, Nat>> disagreements;  // (step, x)
};

PointAgreement point_agreement(const Trace& trace, const Target& target,
                               const std::vector<Nat>& points, Nat n) {
  PointAgreement r;
  // Per distinct code: nullopt = not yet computed; inner nullopt = some
  // point undecidable; otherwise the first offending point, if any.
  struct CodeInfo {
    bool unknown = false;
    std::optional<Nat> bad_point;
  };
  std::vector<std::optional<CodeInfo>> cache(trace.distinct.size());
  Nat k_star = 0;
  for (Nat j = 0; j < n; ++j) {
    std::size_t rank = trace.distinct_index[j];
    if (!cache[rank].has_value()) {
      CodeInfo info;
      for (Nat x : points) {
        auto em = exact_member(trace.conjectures[j], x);
        if (!em.has_value()) {
          info.unknown = true;
          break;
        }
        if (*em != target.member(x)) {
          info.bad_point = x;
          break;
        }
      }
      cache[rank] = info;
    }
    const CodeInfo& info = *cache[rank];
    if (info.unknown) {
      r.unknown = true;
      k_star = j + 1;
    } else if (info.bad_point.has_value()) {
      r.disagreements.emplace_back(j, *info.bad_point);
      k_star = j + 1;
    }
  }
  if (!r.unknown) r.k_star = k_star;
  return r;
}

}  // namespace

Verdict check_finapprox(const Trace& trace, const Target& target, const FiniteSet& d,
                        const CheckConfig& cfg) {
  Verdict v = base_verdict("finapprox", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  std::vector<Nat> points(d.begin(), d.end());
  PointAgreement pa = point_agreement(trace, target, points, n);
  v.witness["D"] = d.to_string();
  for (auto [j, x] : pa.disagreements) {
    nlohmann::ordered_json f;
    f["step"] = j;
    f["x"] = x;
    v.failures.push_back(std::move(f));
  }
  if (pa.unknown) {
    v.witness["undecidable_steps"] = true;
    return v;
  }
  v.witness["k_star"] = *pa.k_star;
  if (*pa.k_star <= n - w) v.status = VerdictStatus::Supported;
  return v;
}

Verdict check_weakapprox(const Trace& trace, const Target& target, const HypCode& v_code,
                         const CheckConfig& cfg) {
  Verdict v = base_verdict("weakapprox", cfg);
  Nat n = cfg.effective_horizon(trace.steps());
  Nat w = cfg.effective_window(n);
  std::vector<Nat> points;
  for (Nat x = 0; x <= cfg.domain_bound; ++x) {
    auto em = exact_member(v_code, x);
    if (!em.has_value())
      throw Error("check_weakapprox: witness set must be exactly decidable");
    if (*em) points.push_back(x);
  }
  v.witness["V"] = v_code.to_string();
  v.witness["V_points_in_domain"] = points.size();
  PointAgreement pa = point_agreement(trace, target, points, n);
  // Per-point last disagreement positions certify all finite variants up to
  // the domain bound.
  std::map<Nat, Nat> last_disagreement;
  for (auto [j, x] : pa.disagreements) last_disagreement[x] = j;
  nlohmann::ordered_json per_x = nlohmann::ordered_json::array();
  for (auto [x, j] : last_disagreement) {
    nlohmann::ordered_json row;
    row["x"] = x;
    row["last_disagreement"] = j;
    per_x.push_back(std::move(row));
  }
  v.witness["per_point_last_disagreement"] = std::move(per_x);
  for (auto [j, x] : pa.disagreements) {
    nlohmann::ordered_json f;
    f["step"] = j;
    f["x"] = x;
    v.failures.push_back(std::move(f));
  }
  if (pa.unknown) {
    v.witness["undecidable_steps"] = true;
    return v;
  }
  v.witness["k_star"] = *pa.k_star;
  if (*pa.k_star <= n - w) v.status = VerdictStatus::Supported;
  return v;
}

Verdict check_approx(const std::vector<Trace>& traces, const Target& target,
                     const HypCode& v_code, const CheckConfig& cfg) {
  if (traces.size() < 2)
    throw Error("check_approx: needs traces over at least two distinct texts");
  Verdict v = base_verdict("approx", cfg);
  v.witness["V"] = v_code.to_string();
  v.witness["texts"] = traces.size();
  bool all = true;
  nlohmann::ordered_json per_trace = nlohmann::ordered_json::array();
  for (const Trace& t : traces) {
    Verdict wv = check_weakapprox(t, target, v_code, cfg);
    nlohmann::ordered_json row;
    row["status"] = to_string(wv.status);
    row["witness"] = wv.witness;
    per_trace.push_back(std::move(row));
    if (!wv.supported()) all = false;
  }
  v.witness["per_trace"] = std::move(per_trace);
  if (all) v.status = VerdictStatus::Supported;
  return v;
}

}  // namespace limitlab
