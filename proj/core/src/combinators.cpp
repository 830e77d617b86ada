#include "limitlab/combinators.hpp"

#include <algorithm>
#include <set>

#include "limitlab/criteria.hpp"

namespace limitlab {

// -- ObligationQueue ----------------------------------------------------------

std::size_t ObligationQueue::ensure(const HypCode& code) {
  auto it = index_.find(code);
  if (it != index_.end()) return it->second;
  std::size_t rank = obs_.size();
  obs_.push_back(Ob{code, 0, 0});
  index_.emplace(code, rank);
  return rank;
}

void ObligationQueue::raise_bound(const HypCode& code, Nat bound) {
  Ob& ob = obs_[ensure(code)];
  ob.bound = std::max(ob.bound, bound);
}

void ObligationQueue::count_emission(const HypCode& code) { obs_[ensure(code)].emitted += 1; }

Nat ObligationQueue::bound(const HypCode& code) const {
  auto it = index_.find(code);
  return it == index_.end() ? 0 : obs_[it->second].bound;
}

Nat ObligationQueue::emitted(const HypCode& code) const {
  auto it = index_.find(code);
  return it == index_.end() ? 0 : obs_[it->second].emitted;
}

bool ObligationQueue::any_due() const {
  for (const Ob& ob : obs_)
    if (ob.emitted < ob.bound) return true;
  return false;
}

Nat ObligationQueue::due_count() const {
  Nat c = 0;
  for (const Ob& ob : obs_)
    if (ob.emitted < ob.bound) ++c;
  return c;
}

std::optional<HypCode> ObligationQueue::pick_leader() const {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    const Ob& ob = obs_[i];
    if (ob.emitted >= ob.bound) continue;
    if (!best.has_value() || ob.bound > obs_[*best].bound) best = i;
  }
  if (!best.has_value()) return std::nullopt;
  return obs_[*best].code;
}

std::optional<HypCode> ObligationQueue::pick_rr() {
  if (obs_.empty()) return std::nullopt;
  for (std::size_t off = 0; off < obs_.size(); ++off) {
    std::size_t i = (cursor_ + off) % obs_.size();
    if (obs_[i].emitted < obs_[i].bound) {
      cursor_ = i + 1;
      return obs_[i].code;
    }
  }
  return std::nullopt;
}

nlohmann::ordered_json ObligationQueue::dump() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Ob& ob : obs_) {
    nlohmann::ordered_json row;
    row["code"] = ob.code.to_string();
    row["bound"] = ob.bound;
    row["emitted"] = ob.emitted;
    arr.push_back(std::move(row));
  }
  return arr;
}

nlohmann::ordered_json wrapper_debug_dump(const Learner& learner, const TextPrefix& prefix) {
  auto run = learner.run();
  run->initial();
  for (const Symbol& s : prefix.symbols()) run->feed(s);
  if (auto* d = dynamic_cast<DebugDumpable*>(run.get())) return d->debug_dump();
  return nullptr;
}

namespace {

/// Data bookkeeping shared by the wrappers: which datum arrived at which
/// step, membership of range(T[t+1]).
struct TextState {
  TextPrefix prefix;
  std::map<Nat, Nat> first_seen;  // datum -> step index

  /// Returns the datum if it is fresh.
  std::optional<Nat> feed(Symbol s) {
    Nat step = prefix.size();
    prefix.push_back(s);
    if (s.is_datum() && first_seen.emplace(s.datum(), step).second) return s.datum();
    return std::nullopt;
  }
  Nat len() const { return prefix.size(); }
  bool in_range_at(Nat x, Nat t) const {
    auto it = first_seen.find(x);
    return it != first_seen.end() && it->second <= t;
  }
  bool in_range(Nat x) const { return first_seen.count(x) > 0; }
  FiniteSet range() const { return prefix.range(); }
};

/// Distinct inner conjectures in first-appearance order.
struct DistinctCodes {
  std::vector<HypCode> codes;
  std::map<HypCode, std::size_t> rank;
  std::vector<Nat> emissions_by_inner;  // how often the inner learner said it

  std::size_t note(const HypCode& c) {
    auto it = rank.find(c);
    if (it == rank.end()) {
      it = rank.emplace(c, codes.size()).first;
      codes.push_back(c);
      emissions_by_inner.push_back(0);
    }
    emissions_by_inner[it->second] += 1;
    return it->second;
  }
};

// -- finapprox_part_wrap ------------------------------------------------------

struct FinapproxPartRun : LearnerRun {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  std::map<HypCode, Nat> first_index;  // code -> least step conjecturing it
  Nat step = 0;

  explicit FinapproxPartRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode wrap(const HypCode& e) {
    auto it = first_index.find(e);
    Nat m = it == first_index.end() ? step : it->second;
    FiniteSet d = text.range().clipped(m);
    return HypCode::union_of(HypCode::fin(d), HypCode::above(e, m));
  }
  HypCode initial() override {
    HypCode e = inner->initial();
    return HypCode::union_of(HypCode::fin({}), HypCode::above(e, 0));
  }
  HypCode feed(Symbol s) override {
    text.feed(s);
    HypCode e = inner->feed(s);
    first_index.emplace(e, step);
    HypCode out = wrap(e);
    ++step;
    return out;
  }
};

// -- finapprox_consv_part_wrap ------------------------------------------------

struct FinapproxConsvPartRun : LearnerRun {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  std::map<HypCode, Nat> first_index;
  Nat step = 0;
  HypCode prev = HypCode::fin({});

  explicit FinapproxConsvPartRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override {
    inner->initial();
    return prev;
  }
  HypCode feed(Symbol s) override {
    text.feed(s);
    HypCode e = inner->feed(s);
    first_index.emplace(e, step);
    Nat cur = step++;
    FiniteSet range = text.range();
    if (range.empty()) {
      prev = HypCode::fin({});
      return prev;
    }
    Nat m = first_index[e];
    FiniteSet enum_part = enum_at(e, cur).clipped(m);
    FiniteSet range_part = range.clipped(m);
    if (enum_part == range_part) {
      prev = HypCode::union_of(HypCode::fin(enum_part), HypCode::above(e, m));
    }
    return prev;
  }
};

// -- padding_normalize --------------------------------------------------------

struct PaddingNormalizeRun : LearnerRun, DebugDumpable {
  std::unique_ptr<LearnerRun> inner;
  std::map<HypCode, std::size_t> rank;
  std::vector<Nat> counts;  // emissions per rank

  explicit PaddingNormalizeRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  nlohmann::ordered_json debug_dump() const override {
    if (auto* d = dynamic_cast<DebugDumpable*>(inner.get())) return d->debug_dump();
    return nullptr;
  }

  HypCode relabel(const HypCode& c) {
    auto it = rank.find(c);
    if (it == rank.end()) {
      it = rank.emplace(c, counts.size()).first;
      counts.push_back(0);
    }
    std::size_t r = it->second;
    Nat tag = 0;
    for (std::size_t j = 0; j < r; ++j) tag += counts[j];
    counts[r] += 1;
    return pad(c, tag);
  }
  // The empty-prefix conjecture is not part of the judged sequence; it is
  // passed through unranked.
  HypCode initial() override { return pad(inner->initial(), 0); }
  HypCode feed(Symbol s) override { return relabel(inner->feed(s)); }
};

// -- scheduler shared by the BC-style wrappers --------------------------------

/// Builds the canonical code for (W_e union F) or (W_e minus F); elements
/// already settled by the exact tier are dropped so extensionally equal
/// modifications of the same base coincide.
HypCode modified_code(const HypCode& e, const FiniteSet& f, bool is_union) {
  std::vector<Nat> kept;
  for (Nat x : f) {
    auto em = exact_member(e, x);
    if (is_union) {
      if (!em.has_value() || !*em) kept.push_back(x);
    } else {
      if (!em.has_value() || *em) kept.push_back(x);
    }
  }
  if (kept.empty()) return e;
  FiniteSet reduced{std::move(kept)};
  return is_union ? HypCode::union_of(e, HypCode::fin(reduced))
                  : HypCode::diff(e, reduced);
}

/// One tracked key: a base hypothesis modified by F with a sign. The bound
/// folds in, at every step t, the stage-t agreement prefix of the modified
/// set against the data (condition 2); verification is lazy from the step
/// the key is admitted.
struct Scheduler {
  ObligationQueue queue;
  std::map<std::tuple<HypCode, FiniteSet, bool>, bool> key_seen;

  /// Condition-2 disagreement positions of one modified code against the
  /// data. Codes whose stage enumeration is just their clipped extension
  /// (anything with a periodic form) are updated incrementally: a position
  /// can only flip when a datum arrives or when the scan frontier grows.
  struct Tracker {
    HypCode code;
    bool incremental = false;
    std::set<Nat> mismatches;
    Nat scanned_to = 0;
  };
  std::vector<Tracker> trackers;

  void admit(const HypCode& base, const FiniteSet& f, bool is_union) {
    auto tag = std::make_tuple(base, f, is_union);
    if (key_seen.count(tag)) return;
    key_seen.emplace(std::move(tag), true);
    HypCode code = modified_code(base, f, is_union);
    std::size_t rank = queue.ensure(code);
    if (rank == trackers.size()) {
      Tracker tr;
      tr.code = code;
      tr.incremental = periodic_form(code).has_value();
      trackers.push_back(std::move(tr));
    }
  }

  void recheck(Tracker& tr, const TextState& text, Nat x, Nat t) {
    bool in_set = member_at(tr.code, x, t);
    if (in_set != text.in_range_at(x, t))
      tr.mismatches.insert(x);
    else
      tr.mismatches.erase(x);
  }

  /// Condition-2 folding at step t: the agreement prefix of each code's
  /// stage-t set against range(T[t+1]), capped by t-1, merges into its
  /// bound.
  void fold_bounds(const TextState& text, Nat t, std::optional<Nat> new_datum) {
    for (Tracker& tr : trackers) {
      if (!tr.incremental) {
        tr.mismatches.clear();
        for (Nat x = 0; x < t; ++x) recheck(tr, text, x, t);
        tr.scanned_to = t;
      } else {
        while (tr.scanned_to < t) recheck(tr, text, tr.scanned_to++, t);
        if (new_datum.has_value() && *new_datum < t) recheck(tr, text, *new_datum, t);
      }
      Nat first_dis = tr.mismatches.empty() ? t : *tr.mismatches.begin();
      Nat contribution = std::min(first_dis, t == 0 ? 0 : t - 1);
      queue.raise_bound(tr.code, contribution);
    }
  }

  /// Emits by lane parity; falls back to `fallback` when nothing is due.
  HypCode emit(Nat step, const HypCode& fallback) {
    std::optional<HypCode> pick;
    if (queue.any_due()) pick = step % 2 == 0 ? queue.pick_leader() : queue.pick_rr();
    HypCode out = pick.value_or(fallback);
    queue.count_emission(out);
    return out;
  }

  std::size_t key_count() const { return key_seen.size(); }
};

/// One-one enumeration of the finite sets with at most `max_size` elements
/// (all finite sets when max_size is nullopt). Sets are listed grouped by
/// their maximum element, canonically ordered inside each group, so the
/// position of a set grows polynomially with its largest member. With
/// max_size = 0 the enumeration has exactly one entry.
struct FiniteSetSeq {
  std::optional<Nat> max_size;
  std::vector<FiniteSet> sets = {FiniteSet{}};
  Nat next_max = 0;  // next group: sets whose maximum is next_max

  bool in_range(Nat j) const { return !max_size.has_value() || *max_size > 0 || j == 0; }

  const FiniteSet& at(Nat j) {
    if (!in_range(j)) throw Error("finite-set enumeration index out of range");
    while (sets.size() <= j) {
      Nat top = next_max++;
      // Subsets of {0..top-1} joined with {top}, by canonical index.
      Nat limit = max_size.has_value() ? *max_size - 1 : top;
      std::vector<Nat> masks{0};
      if (limit > 0) {
        if (top > 63) throw Error("finite-set enumeration grew past the modeled range");
        std::function<void(Nat, Nat, Nat)> gen = [&](Nat next, Nat mask, Nat size) {
          if (size == limit) return;
          for (Nat e = next; e < top; ++e) {
            Nat m2 = mask | (Nat{1} << e);
            masks.push_back(m2);
            gen(e + 1, m2, size + 1);
          }
        };
        gen(0, 0, 0);
        std::sort(masks.begin(), masks.end());
      }
      for (Nat mask : masks) sets.push_back(canonical_finite_set(mask).with(top));
    }
    return sets[j];
  }
};

// -- bcn_part -----------------------------------------------------------------

struct BcnPartRun : LearnerRun, DebugDumpable {
  std::unique_ptr<LearnerRun> inner;
  Nat n_anomalies;
  TextState text;
  DistinctCodes distinct;
  Scheduler sched;
  FiniteSetSeq fseq;
  // cond1_ok[rank] = F-indices already verified for that base code
  std::vector<std::vector<bool>> cond1_ok;
  Nat step = 0;

  BcnPartRun(std::unique_ptr<LearnerRun> in, Nat n) : inner(std::move(in)), n_anomalies(n) {
    fseq.max_size = n;
  }

  HypCode initial() override { return inner->initial(); }

  HypCode feed(Symbol s) override {
    std::optional<Nat> fresh = text.feed(s);
    HypCode e = inner->feed(s);
    std::size_t r = distinct.note(e);
    if (cond1_ok.size() <= r) cond1_ok.resize(r + 1);
    Nat t = step;

    // Condition 1 marking: disagreement count of each base code against the
    // data below j, at the current stage.
    for (std::size_t i = 0; i < distinct.codes.size(); ++i) {
      const HypCode& base = distinct.codes[i];
      auto& ok = cond1_ok[i];
      if (ok.size() < t) ok.resize(t, false);
      std::vector<Nat> dis;
      for (Nat x = 0; x < t; ++x) {
        bool in_set = member_at(base, x, t);
        if (in_set != text.in_range_at(x, t)) dis.push_back(x);
      }
      std::size_t ptr = 0;
      for (Nat j = 0; j < t; ++j) {  // stage t > j holds
        while (ptr < dis.size() && dis[ptr] < j) ++ptr;
        if (ptr <= n_anomalies && !ok[j] && fseq.in_range(j)) {
          ok[j] = true;
          sched.admit(base, fseq.at(j), true);
          sched.admit(base, fseq.at(j), false);
        }
      }
    }

    sched.fold_bounds(text, t, fresh);
    HypCode out = sched.emit(t, e);
    ++step;
    return out;
  }

  nlohmann::ordered_json debug_dump() const override {
    nlohmann::ordered_json j;
    j["obligations"] = sched.queue.dump();
    j["distinct_codes"] = distinct.codes.size();
    j["keys"] = sched.key_count();
    return j;
  }
};

// -- bcstar_part_inf_often ----------------------------------------------------

struct BcstarInfOftenRun : LearnerRun, DebugDumpable {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  DistinctCodes distinct;
  Scheduler sched;
  FiniteSetSeq fseq;  // all finite sets
  std::vector<Nat> admitted_upto;  // per rank: F-indices admitted so far
  Nat step = 0;

  explicit BcstarInfOftenRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override { return inner->initial(); }

  HypCode feed(Symbol s) override {
    std::optional<Nat> fresh = text.feed(s);
    HypCode e = inner->feed(s);
    std::size_t r = distinct.note(e);
    if (admitted_upto.size() <= r) admitted_upto.resize(r + 1, 0);
    // Condition 1: F_l considered once the base was emitted l+1 times.
    for (std::size_t i = 0; i < distinct.codes.size(); ++i) {
      Nat count = distinct.emissions_by_inner[i];
      while (admitted_upto[i] < count) {
        Nat l = admitted_upto[i]++;
        sched.admit(distinct.codes[i], fseq.at(l), true);
        sched.admit(distinct.codes[i], fseq.at(l), false);
      }
    }
    sched.fold_bounds(text, step, fresh);
    HypCode out = sched.emit(step, e);
    ++step;
    return out;
  }

  nlohmann::ordered_json debug_dump() const override {
    nlohmann::ordered_json j;
    j["obligations"] = sched.queue.dump();
    j["keys"] = sched.key_count();
    return j;
  }
};

// -- bcstar_part_once_correct -------------------------------------------------

struct BcstarOnceCorrectRun : LearnerRun, DebugDumpable {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  DistinctCodes distinct;
  std::vector<Nat> emitted;  // by this wrapper, per rank
  Nat step = 0;

  explicit BcstarOnceCorrectRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override { return inner->initial(); }

  /// Agreement-prefix quality of a code against the data at stage t.
  Nat quality(const HypCode& c, Nat t) const {
    for (Nat x = 0; x <= t; ++x) {
      bool in_set = member_at(c, x, t);
      if (in_set != text.in_range_at(x, t)) return x;
    }
    return t + 1;
  }

  HypCode feed(Symbol s) override {
    text.feed(s);
    HypCode e = inner->feed(s);
    distinct.note(e);
    if (emitted.size() < distinct.codes.size()) emitted.resize(distinct.codes.size(), 0);
    Nat t = step++;
    std::vector<Nat> q(distinct.codes.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = quality(distinct.codes[i], t);
    // (a) least index still owing emissions; (b) otherwise the best quality.
    std::optional<std::size_t> choice;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (emitted[i] < q[i]) {
        choice = i;
        break;
      }
    if (!choice.has_value()) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < q.size(); ++i)
        if (q[i] > q[best]) best = i;
      choice = best;
    }
    emitted[*choice] += 1;
    return distinct.codes[*choice];
  }

  nlohmann::ordered_json debug_dump() const override {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < distinct.codes.size(); ++i) {
      nlohmann::ordered_json row;
      row["code"] = distinct.codes[i].to_string();
      row["emitted"] = emitted[i];
      j.push_back(std::move(row));
    }
    return j;
  }
};

// -- consv_to_approxpart_bcstar -----------------------------------------------

/// The staged hypothesis set derived from the distinct-code list and a
/// prefix: enumerates along the coverage-ordered index sequence. Registers
/// the enumerator once per (codes, sigma) and attaches the exact form when
/// every ingredient is exactly decidable.
HypCode staged_hypothesis_code(const std::vector<HypCode>& codes, std::size_t n,
                               const TextPrefix& sigma) {
  std::string params = sigma.to_string() + "|";
  for (std::size_t i = 0; i <= n; ++i) {
    if (i) params += ';';
    params += codes[i].to_string();
  }
  OpaqueKey key{"staged", std::move(params)};
  if (Registry::global().has_opaque(key)) return HypCode::opaque(key);

  std::vector<HypCode> prefix_codes(codes.begin(), codes.begin() + n + 1);
  FiniteSet sigma_range = sigma.range();
  Nat t_bind = sigma.size();

  auto index_at = [prefix_codes, sigma_range, t_bind, n](Nat u) -> std::size_t {
    for (std::size_t m = 0; m < n; ++m) {
      bool covers = true;
      FiniteSet en = enum_at(prefix_codes[m], u + t_bind);
      for (Nat x : sigma_range)
        if (!en.contains(x)) {
          covers = false;
          break;
        }
      if (covers) return m;
    }
    return n;
  };

  StageEnumerator fn = [prefix_codes, index_at](Nat u) {
    FiniteSet en = enum_at(prefix_codes[index_at(u)], u);
    return std::vector<Nat>(en.begin(), en.end());
  };

  // Exact form: the index sequence stabilizes once the coverage status of
  // every candidate is settled, i.e. past max(range(sigma)).
  std::optional<PeriodicForm> form;
  {
    Nat u_star = (sigma_range.empty() ? 0 : sigma_range.max()) + 1;
    std::size_t m_star = index_at(u_star);
    auto tail_form = periodic_form(prefix_codes[m_star]);
    bool all_exact = tail_form.has_value();
    if (all_exact) {
      PeriodicForm f;
      f.period = tail_form->period;
      f.residues = tail_form->residues;
      f.threshold = std::max(tail_form->threshold, u_star);
      std::vector<Nat> below;
      for (Nat x = 0; x < f.threshold && all_exact; ++x) {
        bool member = false;
        // u >= x: transient indices first, then the stable tail.
        for (Nat u = x; u <= u_star && !member; ++u) {
          auto em = exact_member(prefix_codes[index_at(u)], x);
          if (!em.has_value()) {
            all_exact = false;
            break;
          }
          member = *em;
        }
        if (!member) {
          auto em = exact_member(prefix_codes[m_star], x);
          if (!em.has_value()) all_exact = false;
          else member = *em;
        }
        if (member) below.push_back(x);
      }
      if (all_exact) {
        f.below = FiniteSet(std::move(below));
        form = std::move(f);
      }
    }
  }
  return register_opaque(std::move(key), std::move(fn), std::move(form));
}

struct ConsvCoreRun : LearnerRun, DebugDumpable {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  DistinctCodes distinct;
  ObligationQueue queue;
  Nat step = 0;

  explicit ConsvCoreRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override {
    inner->initial();
    return HypCode::fin({});
  }

  HypCode feed(Symbol s) override {
    text.feed(s);
    HypCode e = inner->feed(s);
    std::size_t cur = distinct.note(e);
    Nat g = step++;
    Nat len = text.len();

    // Quality counters at t = g: b[n] is the agreed data prefix inside the
    // stage-(n+g) enumeration of e_n; a[n] chains the predecessors.
    std::vector<Nat> b(distinct.codes.size(), 0);
    std::vector<Nat> a(distinct.codes.size(), 1);
    for (std::size_t n = 0; n < distinct.codes.size(); ++n) {
      FiniteSet en = enum_at(distinct.codes[n], n + g);
      Nat cap = std::min<Nat>(n + g, len);
      Nat sp = 0;
      while (sp < cap) {
        const Symbol& sym = text.prefix.at(sp);
        if (sym.is_datum() && !en.contains(sym.datum())) break;
        ++sp;
      }
      b[n] = sp;
      Nat amax = 0;
      for (std::size_t m = 0; m < n; ++m) amax = std::max(amax, b[m]);
      a[n] = 1 + amax;
    }

    HypCode fallback = HypCode::fin({});
    for (std::size_t n = 0; n < distinct.codes.size(); ++n) {
      if (a[n] >= len) continue;  // sigma = T(0)..T(a[n]) not yet available
      TextPrefix sigma = text.prefix.take(a[n] + 1);
      HypCode h = staged_hypothesis_code(distinct.codes, n, sigma);
      if (b[n] >= 1) queue.raise_bound(h, b[n] - 1);
      if (n == cur) fallback = h;
    }
    if (fallback == HypCode::fin({})) {
      // Current index not ready: use its clamped prefix.
      TextPrefix sigma = text.prefix.take(std::min<Nat>(a[cur] + 1, len));
      fallback = staged_hypothesis_code(distinct.codes, cur, sigma);
    }

    std::optional<HypCode> pick;
    if (queue.any_due()) pick = g % 2 == 0 ? queue.pick_leader() : queue.pick_rr();
    HypCode out = pick.value_or(fallback);
    queue.count_emission(out);
    return out;
  }

  nlohmann::ordered_json debug_dump() const override {
    nlohmann::ordered_json j;
    j["obligations"] = queue.dump();
    return j;
  }
};

struct DelayRun : LearnerRun {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  std::vector<HypCode> stream;
  std::size_t held = 0;
  std::optional<FiniteSet> held_range;

  explicit DelayRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override { return inner->initial(); }

  HypCode feed(Symbol s) override {
    text.feed(s);
    stream.push_back(inner->feed(s));
    if (!held_range.has_value()) held_range = text.range();
    FiniteSet cur_range = text.range();
    const HypCode& h = stream[held];
    bool release = !cur_range.subset_of(*held_range) ||
                   enum_at(h, text.len()) != cur_range;
    if (release && held + 1 < stream.size()) {
      ++held;
      held_range = cur_range;
    }
    return stream[held];
  }
};

// -- vacstar_wpart_to_vac -----------------------------------------------------

struct VacstarToVacRun : LearnerRun {
  std::unique_ptr<LearnerRun> inner;
  TextState text;
  DistinctCodes distinct;
  Nat step = 0;

  explicit VacstarToVacRun(std::unique_ptr<LearnerRun> in) : inner(std::move(in)) {}

  HypCode initial() override { return inner->initial(); }

  HypCode feed(Symbol s) override {
    text.feed(s);
    distinct.note(inner->feed(s));
    Nat len = ++step;
    // Agreement prefix per previous conjecture at stage |sigma|.
    std::size_t best = 0;
    Nat best_p = 0;
    for (std::size_t i = 0; i < distinct.codes.size(); ++i) {
      Nat p = 0;
      while (true) {
        bool in_set = member_at(distinct.codes[i], p, len);
        if (in_set != text.in_range(p)) break;
        ++p;
        if (p > len) break;
      }
      if (p > best_p) {
        best_p = p;
        best = i;
      }
    }
    return distinct.codes[best];
  }
};

Learner wrap(const std::string& id, LearnerMeta meta, const Learner& inner,
             std::function<std::unique_ptr<LearnerRun>(std::unique_ptr<LearnerRun>)> make) {
  return Learner(id, std::move(meta),
                 [inner, make]() { return make(inner.run()); });
}

}  // namespace

Learner finapprox_part_wrap(Learner m1) {
  LearnerMeta meta;
  meta.target_class = m1.meta().target_class;
  return wrap("finapprox_part(" + m1.id() + ")", meta, m1,
              [](std::unique_ptr<LearnerRun> in) {
                return std::make_unique<FinapproxPartRun>(std::move(in));
              });
}

Learner finapprox_consv_part_wrap(Learner m1) {
  if (!m1.meta().conservative)
    throw Error("finapprox_consv_part_wrap: learner must be declared conservative");
  LearnerMeta meta;
  meta.conservative = true;
  meta.target_class = m1.meta().target_class;
  return wrap("finapprox_consv_part(" + m1.id() + ")", meta, m1,
              [](std::unique_ptr<LearnerRun> in) {
                return std::make_unique<FinapproxConsvPartRun>(std::move(in));
              });
}

Learner padding_normalize(Learner n1) {
  LearnerMeta meta;
  meta.target_class = n1.meta().target_class;
  return wrap("padnorm(" + n1.id() + ")", meta, n1,
              [](std::unique_ptr<LearnerRun> in) {
                return std::make_unique<PaddingNormalizeRun>(std::move(in));
              });
}

Learner bcn_part(Learner m, Nat n) {
  LearnerMeta meta;
  meta.target_class = m.meta().target_class;
  Learner scheduler =
      wrap("bcn_part" + std::to_string(n) + "(" + m.id() + ")", meta, m,
           [n](std::unique_ptr<LearnerRun> in) {
             return std::make_unique<BcnPartRun>(std::move(in), n);
           });
  return padding_normalize(scheduler);
}

Learner bcstar_part_once_correct(Learner m) {
  LearnerMeta meta;
  meta.target_class = m.meta().target_class;
  Learner scheduler = wrap("bcstar_once(" + m.id() + ")", meta, m,
                           [](std::unique_ptr<LearnerRun> in) {
                             return std::make_unique<BcstarOnceCorrectRun>(std::move(in));
                           });
  return padding_normalize(scheduler);
}

Learner bcstar_part_inf_often(Learner m) {
  LearnerMeta meta;
  meta.target_class = m.meta().target_class;
  Learner scheduler = wrap("bcstar_infoften(" + m.id() + ")", meta, m,
                           [](std::unique_ptr<LearnerRun> in) {
                             return std::make_unique<BcstarInfOftenRun>(std::move(in));
                           });
  return padding_normalize(scheduler);
}

Learner consv_to_approxpart_bcstar(Learner m) {
  if (!m.meta().conservative)
    throw Error("consv_to_approxpart_bcstar: learner must be declared conservative");
  LearnerMeta meta;
  meta.target_class = m.meta().target_class;
  Learner core = wrap("consv_core(" + m.id() + ")", meta, m,
                      [](std::unique_ptr<LearnerRun> in) {
                        return std::make_unique<ConsvCoreRun>(std::move(in));
                      });
  Learner delayed = wrap("delay(" + core.id() + ")", meta, core,
                         [](std::unique_ptr<LearnerRun> in) {
                           return std::make_unique<DelayRun>(std::move(in));
                         });
  return finapprox_part_wrap(delayed);
}

Learner vacstar_wpart_to_vac(Learner m) {
  LearnerMeta meta;
  meta.target_class = m.meta().target_class;
  return wrap("vacstar_to_vac(" + m.id() + ")", meta, m,
              [](std::unique_ptr<LearnerRun> in) {
                return std::make_unique<VacstarToVacRun>(std::move(in));
              });
}

}  // namespace limitlab
