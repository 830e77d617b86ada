#include "limitlab/adversaries.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace limitlab {

void AuditLog::query(Nat step, const HypCode& code, Nat x, Nat budget, bool result) {
  nlohmann::ordered_json e;
  e["step"] = step;
  e["kind"] = "member_at";
  e["code"] = code.to_string();
  e["x"] = x;
  e["budget"] = budget;
  e["result"] = result;
  events.push_back(std::move(e));
}

void AuditLog::note(Nat step, const std::string& what, nlohmann::ordered_json detail) {
  nlohmann::ordered_json e;
  e["step"] = step;
  e["kind"] = what;
  if (!detail.is_null()) e["detail"] = std::move(detail);
  events.push_back(std::move(e));
}

TextPrefix gold_adversary(const Learner& learner, Nat budget, Nat n, AuditLog* log) {
  TextPrefix t;
  if (n == 0) return t;
  auto run = learner.run();
  run->initial();
  Nat cur = 0;
  t.push_back(Symbol(cur));
  HypCode hyp = run->feed(Symbol(cur));
  for (Nat k = 1; k < n; ++k) {
    bool claims_next = member_at(hyp, cur + 1, budget);
    if (log) log->query(k - 1, hyp, cur + 1, budget, claims_next);
    if (!claims_next) ++cur;
    t.push_back(Symbol(cur));
    hyp = run->feed(Symbol(cur));
  }
  return t;
}

namespace {

CofinalProfile profile_or_throw(const HypCode& code, const EvenOddOptions& opt) {
  if (auto p = cofinal_profile(code)) return *p;
  if (opt.approx_stage.has_value()) return approximate_profile(code, *opt.approx_stage);
  throw Error("evenodd_adversary: no exact profile for " + code.to_string() +
              " and no approximation stage configured");
}

bool matches(const CofinalProfile& p, Nat cofinal_parity) {
  const CofinalClass big = cofinal_parity == 0 ? p.even : p.odd;
  const CofinalClass small = cofinal_parity == 0 ? p.odd : p.even;
  return big == CofinalClass::AllButFinitely && small == CofinalClass::Finitely;
}

}  // namespace

EvenOddResult evenodd_adversary(const Learner& learner, Nat n, EvenOddOptions opt) {
  EvenOddResult r;
  auto run = learner.run();
  HypCode hyp = run->initial();
  Nat parity = 0;  // currently feeding this parity class
  Nat next_even = 0, next_odd = 1;
  for (Nat k = 0; k < n; ++k) {
    CofinalProfile p = profile_or_throw(hyp, opt);
    if (matches(p, parity)) {
      parity = 1 - parity;
      ++r.alternations;
      nlohmann::ordered_json detail;
      detail["now_feeding"] = parity == 0 ? "even" : "odd";
      detail["hypothesis"] = hyp.to_string();
      detail["profile_exact"] = p.exact;
      r.log.note(k, "switch", std::move(detail));
    }
    Nat x;
    if (parity == 0) {
      x = next_even;
      next_even += 2;
    } else {
      x = next_odd;
      next_odd += 2;
    }
    r.prefix.push_back(Symbol(x));
    hyp = run->feed(Symbol(x));
  }
  return r;
}

CofiniteResult cofinite_adversary(const Target& l, const HypCode& w_code,
                                  const Learner& learner, Nat budget, Nat n) {
  CofiniteResult r;
  auto run = learner.run();
  HypCode hyp = run->initial();
  std::set<Nat> in_text;

  auto pick_w = [&]() -> Nat {
    for (Nat w = 0;; ++w) {
      if (!l.member(w)) continue;
      auto in_witness = exact_member(w_code, w);
      if (!in_witness.has_value())
        throw Error("cofinite_adversary: witness set must be exactly decidable");
      if (!*in_witness) continue;
      if (in_text.count(w)) continue;
      return w;
    }
  };

  auto feed = [&](Nat x, Nat step) {
    r.prefix.push_back(Symbol(x));
    in_text.insert(x);
    hyp = run->feed(Symbol(x));
    (void)step;
  };

  bool in_phase_a = true;
  Nat w = pick_w();
  r.current_w = w;
  r.phase_start = 0;
  r.log.note(0, "phase_a",
             nlohmann::ordered_json{{"withheld", w}});
  Nat ascend = 0;  // next candidate to feed in phase (a)
  Nat b_cursor = 0, b_end = 0;

  for (Nat k = 0; k < n; ++k) {
    if (in_phase_a) {
      while (!l.member(ascend) || ascend == w) ++ascend;
      feed(ascend, k);
      ++ascend;
      bool contains_w = member_at(hyp, w, budget);
      r.log.query(k, hyp, w, budget, contains_w);
      if (!contains_w) {
        // Learner dropped w: repair the text up to w, then a fresh round.
        in_phase_a = false;
        b_cursor = 0;
        b_end = w;
        r.log.note(k, "phase_b", nlohmann::ordered_json{{"repair_up_to", w}});
      }
    } else {
      while (b_cursor <= b_end && !l.member(b_cursor)) ++b_cursor;
      if (b_cursor <= b_end) {
        feed(b_cursor, k);
        ++b_cursor;
      }
      if (b_cursor > b_end) {
        ++r.alternations;
        in_phase_a = true;
        ascend = 0;
        w = pick_w();
        r.current_w = w;
        r.phase_start = k + 1;
        r.log.note(k, "phase_a", nlohmann::ordered_json{{"withheld", w}});
      }
    }
  }
  // Stuck means the horizon ended deep inside one (a)-phase.
  bool stuck = in_phase_a && (n - r.phase_start) * 2 > n;
  r.outcome = stuck ? CofiniteOutcome::StuckInA : CofiniteOutcome::Alternating;
  return r;
}

// -- separation ----------------------------------------------------------------

Nat LevelAssignment::level(Nat x) const {
  if (x < d || x >= d + stages) throw Error("LevelAssignment::level out of range");
  return levels[x - d];
}

bool LevelAssignment::is_cancelled(Nat e) const {
  for (auto [c, s] : cancelled)
    if (c == e) return true;
  return false;
}

std::vector<Nat> LevelAssignment::tau_at(Nat e, Nat s) const {
  std::vector<Nat> xs;
  Nat upto = std::min<Nat>(s, stages);
  for (Nat k = 0; k < upto; ++k)
    if (levels[k] == e) xs.push_back(d + k);
  return xs;
}

LevelAssignment separation_levels(Nat d, const Learner& learner, Nat stages, Nat budget) {
  LevelAssignment a;
  a.d = d;
  a.learner_id = learner.id();
  a.stages = stages;
  a.budget = budget;
  std::set<Nat> cancelled;
  std::map<std::string, HypCode> memo;  // learner evaluations by prefix key

  auto eval = [&](const TextPrefix& p) {
    std::string key = p.to_string();
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    HypCode c = learner.step(p);
    memo.emplace(std::move(key), c);
    return c;
  };

  for (Nat s = 0; s < stages; ++s) {
    Nat enum_stage = std::max(s, budget);
    std::optional<Nat> chosen;
    // tau-sequences as known now.
    std::vector<std::vector<Nat>> taus(s + 1);
    for (Nat k = 0; k < s; ++k)
      if (a.levels[k] <= s) taus[a.levels[k]].push_back(d + k);
    for (Nat e = 0; e < s && !chosen.has_value(); ++e) {
      if (cancelled.count(e)) continue;
      const std::vector<Nat>& tau_e = taus[e];
      // Prefix of the query text: tau_0 ... tau_{e-1}.
      TextPrefix base;
      for (Nat i = 0; i < e; ++i)
        for (Nat x : taus[i]) base.push_back(Symbol(x));
      bool all_eta_ok = true;
      for (std::size_t len = 0; len <= tau_e.size() && all_eta_ok; ++len) {
        TextPrefix q = base;
        for (std::size_t i = 0; i < len; ++i) q.push_back(Symbol(tau_e[i]));
        HypCode hyp = eval(q);
        FiniteSet en = enum_at(hyp, enum_stage);
        Nat count = 0;
        for (Nat y : en)
          if (y >= d && y < d + s && a.levels[y - d] > e) ++count;
        if (count < tau_e.size()) all_eta_ok = false;
      }
      if (all_eta_ok) chosen = e;
    }
    if (chosen.has_value()) {
      a.levels.push_back(*chosen);
      for (Nat e2 = *chosen + 1; e2 <= s; ++e2) {
        if (!cancelled.count(e2)) {
          cancelled.insert(e2);
          a.cancelled.emplace_back(e2, s);
        }
      }
    } else {
      a.levels.push_back(s);
    }
  }
  return a;
}

TextPrefix separation_text(const LevelAssignment& a, Nat n) {
  if (n > a.stages)
    throw Error("separation_text: assignment holds " + std::to_string(a.stages) +
                " symbols, need " + std::to_string(n) + "; compute more stages");
  // Order positions by (level, value): concatenation tau_0 tau_1 ...
  std::vector<std::pair<Nat, Nat>> order;  // (level, x)
  for (Nat k = 0; k < a.stages; ++k) order.emplace_back(a.levels[k], a.d + k);
  std::sort(order.begin(), order.end());
  TextPrefix t;
  for (Nat i = 0; i < n; ++i) t.push_back(Symbol(order[i].second));
  return t;
}

Target separation_target(const LevelAssignment& a, Nat e) {
  Target t;
  t.name = "separation_d" + std::to_string(a.d) + "_e" + std::to_string(e);
  Nat d = a.d;
  Nat stages = a.stages;
  auto levels = std::make_shared<std::vector<Nat>>(a.levels);
  t.membership = [d, stages, levels, e](Nat x) {
    if (x < d || x >= d + stages) return false;
    return (*levels)[x - d] <= e;
  };
  t.finite = true;
  t.finite_bound = d + stages;
  return t;
}

BenchmarkClass separation_class(const LevelAssignment& a) {
  BenchmarkClass c;
  c.name = "separation_d" + std::to_string(a.d);
  c.targets = [a](Nat e) { return separation_target(a, e); };
  return c;
}

}  // namespace limitlab
