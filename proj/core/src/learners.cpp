#include "limitlab/learners.hpp"

#include <algorithm>
#include <set>

namespace limitlab {

namespace {

/// Shared bookkeeping for runs that track the data seen so far.
struct RangeState {
  std::set<Nat> data;
  bool saw(Nat x) const { return data.count(x) > 0; }
  FiniteSet range() const { return FiniteSet(std::vector<Nat>(data.begin(), data.end())); }
  /// Returns the datum if `s` carries one that is new.
  std::optional<Nat> add(Symbol s) {
    if (!s.is_datum()) return std::nullopt;
    auto [it, fresh] = data.insert(s.datum());
    (void)it;
    if (!fresh) return std::nullopt;
    return s.datum();
  }
};

struct TailUnionRun : LearnerRun {
  RangeState st;
  HypCode conjecture() {
    if (st.data.empty()) return HypCode::tail(0);
    Nat mx = *st.data.rbegin();
    return HypCode::union_of(HypCode::fin(st.range()), HypCode::tail(mx + 1));
  }
  HypCode initial() override { return conjecture(); }
  HypCode feed(Symbol s) override {
    st.add(s);
    return conjecture();
  }
};

struct RangeRun : LearnerRun {
  RangeState st;
  HypCode initial() override { return HypCode::fin({}); }
  HypCode feed(Symbol s) override {
    st.add(s);
    return HypCode::fin(st.range());
  }
};

struct CofiniteRun : LearnerRun {
  RangeState st;
  HypCode prev = HypCode::tail(0);
  HypCode initial() override { return prev; }
  HypCode feed(Symbol s) override {
    auto fresh = st.add(s);
    if (!fresh.has_value()) return prev;  // pause or repeated datum
    Nat x = *fresh;
    // Greatest w <= x missing from the data.
    std::optional<Nat> w;
    for (Nat cand = x + 1; cand-- > 0;) {
      if (!st.saw(cand)) {
        w = cand;
        break;
      }
    }
    if (!w.has_value()) {
      prev = HypCode::tail(0);
      return prev;
    }
    std::vector<Nat> below;
    for (Nat y : st.data) {
      if (y > *w) break;
      below.push_back(y);
    }
    prev = HypCode::union_of(HypCode::fin(FiniteSet(std::move(below))), HypCode::tail(*w + 1));
    return prev;
  }
};

struct SupersetApproxRun : LearnerRun {
  HypCode w;
  RangeState st;
  explicit SupersetApproxRun(HypCode code) : w(std::move(code)) {}
  HypCode conjecture() { return HypCode::union_of(HypCode::fin(st.range()), w); }
  HypCode initial() override { return conjecture(); }
  HypCode feed(Symbol s) override {
    st.add(s);
    return conjecture();
  }
};

struct UrecConsPartRun : LearnerRun {
  std::string family_id;
  RangeState st;
  Nat step = 0;
  explicit UrecConsPartRun(std::string id) : family_id(std::move(id)) {}

  HypCode initial() override { return HypCode::fin({}); }
  HypCode feed(Symbol s) override {
    auto fresh = st.add(s);
    Nat cur = step++;
    if (fresh.has_value()) {
      Nat x = *fresh;
      const Family& fam = Registry::global().family(family_id);
      for (Nat i = 0; i <= cur; ++i) {
        // One decode per candidate; pointwise queries are then cheap.
        std::optional<PeriodicForm> form = fam.form ? fam.form(i) : std::nullopt;
        auto member = [&](Nat y) { return form ? form->member(y) : fam.decide(i, y); };
        bool ok = true;
        // Data below x must match L_i exactly there.
        for (Nat y = 0; ok && y <= x; ++y)
          if (member(y) != st.saw(y)) ok = false;
        // All data must lie inside L_i.
        if (ok)
          for (Nat y : st.data)
            if (!member(y)) {
              ok = false;
              break;
            }
        if (ok) return HypCode::base(family_id, i);
      }
    }
    return HypCode::fin(st.range());
  }
};

struct PropSepRun : LearnerRun {
  RangeState st;
  std::optional<Nat> max_odd;

  HypCode conjecture() {
    if (!max_odd.has_value()) return HypCode::stride(2, 0, 0);
    Nat d = *max_odd;
    std::vector<Nat> xs;
    for (Nat y = 0; y <= d; ++y) xs.push_back(y);
    return HypCode::union_of(HypCode::fin(FiniteSet(std::move(xs))), HypCode::stride(2, 0, d + 1));
  }
  HypCode initial() override { return conjecture(); }
  HypCode feed(Symbol s) override {
    auto fresh = st.add(s);
    if (fresh.has_value() && *fresh % 2 == 1) {
      max_odd = std::max(max_odd.value_or(0), *fresh);
      return HypCode::tail(0);
    }
    if (s.is_datum() && s.datum() % 2 == 1)
      max_odd = std::max(max_odd.value_or(0), s.datum());
    return conjecture();
  }
};

// -- bcstar_to_weakapprox -----------------------------------------------------

/// Index-decodes the i-th candidate string over (members of `range`) + '#'
/// of length 2*|range|; returns nullopt past the candidate space.
std::optional<TextPrefix> candidate_tau(const FiniteSet& range, Nat index) {
  Nat r = range.size();
  Nat len = 2 * r;
  Nat alphabet = r + 1;
  // Reject indices beyond alphabet^len (computed with a cap).
  Nat cap = 1;
  for (Nat i = 0; i < len; ++i) {
    if (cap > (Nat{1} << 40)) break;  // effectively unbounded
    cap *= alphabet;
  }
  if (cap <= (Nat{1} << 40) && index >= cap) return std::nullopt;
  std::vector<Symbol> syms;
  Nat n = index;
  const auto& elems = range.elements();
  for (Nat i = 0; i < len; ++i) {
    Nat digit = n % alphabet;
    n /= alphabet;
    if (digit == r)
      syms.push_back(Symbol::pause());
    else
      syms.push_back(Symbol(elems[digit]));
  }
  return TextPrefix(std::move(syms));
}

struct BcswRun : LearnerRun {
  Learner inner;
  TextPrefix sigma;
  explicit BcswRun(Learner o) : inner(std::move(o)) {}

  HypCode conjecture() {
    FiniteSet rng = sigma.range();
    TextPrefix sig = sigma;
    Learner o = inner;
    Nat sigma_len = sigma.size();
    OpaqueKey key{"bcsw", inner.id() + "|" + sigma.to_string()};
    return register_opaque(key, [rng, sig, o, sigma_len](Nat stage) {
      std::vector<Nat> out(rng.elements());
      // Dovetailed search: at stage u inspect the first u candidate strings
      // with budget u.
      bool found = false;
      for (Nat idx = 0; idx < stage && !found; ++idx) {
        auto tau = candidate_tau(rng, idx);
        if (!tau.has_value()) break;
        if (tau->range() != rng) continue;
        bool ok = true;
        for (Nat s = 0; ok && s <= sigma_len; ++s) {
          TextPrefix padded = *tau;
          for (Nat i = 0; i < s; ++i) padded.push_back(Symbol::pause());
          HypCode h = o.step(padded);
          if (enum_at(h, stage).size() < sigma_len) ok = false;
        }
        found = ok;
      }
      if (found) {
        TailUnionRun m;
        HypCode weak = m.initial();
        for (const Symbol& s : sig.symbols()) weak = m.feed(s);
        for (Nat x : enum_at(weak, stage)) out.push_back(x);
      }
      return out;
    });
  }
  HypCode initial() override { return conjecture(); }
  HypCode feed(Symbol s) override {
    sigma.push_back(s);
    return conjecture();
  }
};

// -- fixtures -----------------------------------------------------------------

struct MissingPointRun : LearnerRun {
  RangeState st;
  HypCode conjecture() {
    // Least gap below the data frontier; zero while no gap is visible.
    Nat guess = 0;
    if (!st.data.empty()) {
      Nat mx = *st.data.rbegin();
      for (Nat x = 0; x < mx; ++x)
        if (!st.saw(x)) {
          guess = x;
          break;
        }
    }
    return HypCode::diff(HypCode::tail(0), {guess});
  }
  HypCode initial() override { return conjecture(); }
  HypCode feed(Symbol s) override {
    st.add(s);
    return conjecture();
  }
};

struct OnceCorrectTailRun : LearnerRun {
  RangeState st;
  Nat len = 0;
  HypCode initial() override { return HypCode::tail(0); }
  HypCode feed(Symbol s) override {
    st.add(s);
    ++len;
    if (st.data.empty()) return HypCode::tail(0);
    Nat d = *st.data.begin();
    if (len % 2 == 1) return HypCode::tail(d);
    return HypCode::diff(HypCode::tail(d), {d + 1});
  }
};

struct InfOftenTailRun : LearnerRun {
  RangeState st;
  Nat len = 0;
  std::optional<Nat> last_min;
  HypCode initial() override { return HypCode::tail(0); }
  HypCode feed(Symbol s) override {
    st.add(s);
    ++len;
    if (st.data.empty()) return HypCode::tail(0);
    Nat d = *st.data.begin();
    bool min_changed = !last_min.has_value() || *last_min != d;
    last_min = d;
    // The exactly-correct code always appears before any padded copy of it.
    if (min_changed || len % 2 == 1) return HypCode::tail(d);
    return pad(HypCode::tail(d), len);
  }
};

struct VacstarWpartTailRun : LearnerRun {
  RangeState st;
  Nat len = 0;
  std::optional<Nat> last_min;
  HypCode initial() override { return HypCode::tail(0); }
  HypCode feed(Symbol s) override {
    st.add(s);
    ++len;
    if (st.data.empty()) return HypCode::tail(0);
    Nat d = *st.data.begin();
    bool min_changed = !last_min.has_value() || *last_min != d;
    last_min = d;
    if (min_changed) return HypCode::tail(d);
    switch (len % 3) {
      case 0:
        return HypCode::tail(d);
      case 1:
        return HypCode::union_of(HypCode::tail(d), HypCode::fin({}));
      default:
        return HypCode::diff(HypCode::tail(d), {d + 1});
    }
  }
};

struct ConsvTailRun : LearnerRun {
  RangeState st;
  HypCode initial() override { return HypCode::fin({}); }
  HypCode feed(Symbol s) override {
    st.add(s);
    if (st.data.empty()) return HypCode::fin({});
    return HypCode::tail(*st.data.begin());
  }
};

template <typename Run, typename... Args>
Learner make(const std::string& id, LearnerMeta meta, Args... args) {
  return Learner(id, std::move(meta),
                 [=]() { return std::make_unique<Run>(args...); });
}

}  // namespace

Learner tail_union_learner() {
  LearnerMeta m;
  m.consistent = true;
  m.target_class = "infinite";
  return make<TailUnionRun>("tail_union", m);
}

Learner range_learner() {
  LearnerMeta m;
  m.consistent = true;
  m.conservative = true;  // on the class of finite sets
  m.target_class = "finite";
  return make<RangeRun>("range", m);
}

Learner cofinite_learner() {
  LearnerMeta m;
  m.consistent = true;
  m.target_class = "cofinite";
  return make<CofiniteRun>("cofinite", m);
}

Learner superset_approx_learner(HypCode w) {
  LearnerMeta m;
  m.consistent = true;
  m.target_class = "supersets";
  return Learner("superset_approx(" + w.to_string() + ")", m,
                 [w]() { return std::make_unique<SupersetApproxRun>(w); });
}

Learner urec_cons_part_learner(const std::string& family_id) {
  if (!Registry::global().has_family(family_id))
    throw Error("urec_cons_part_learner: unregistered family " + family_id);
  if (!Registry::global().family(family_id).decidable)
    throw Error("urec_cons_part_learner: family must be decidable");
  LearnerMeta m;
  m.consistent = true;
  m.target_class = family_id;
  return Learner("urec_cons_part(" + family_id + ")", m, [family_id]() {
    return std::make_unique<UrecConsPartRun>(family_id);
  });
}

Learner propsep_learner() {
  LearnerMeta m;
  m.consistent = true;
  m.target_class = "propsep";
  return make<PropSepRun>("propsep", m);
}

Learner bcstar_to_weakapprox(Learner o) {
  LearnerMeta m;
  m.target_class = o.meta().target_class;
  return Learner("bcsw(" + o.id() + ")", m,
                 [o]() { return std::make_unique<BcswRun>(o); });
}

Learner missing_point_learner() {
  LearnerMeta m;
  m.target_class = "one_point_cofinite";
  return make<MissingPointRun>("missing_point", m);
}

Learner once_correct_tail_learner() {
  LearnerMeta m;
  m.target_class = "tails";
  return make<OnceCorrectTailRun>("once_correct_tail", m);
}

Learner inf_often_tail_learner() {
  LearnerMeta m;
  m.target_class = "tails";
  return make<InfOftenTailRun>("inf_often_tail", m);
}

Learner vacstar_wpart_tail_learner() {
  LearnerMeta m;
  m.target_class = "tails";
  return make<VacstarWpartTailRun>("vacstar_wpart_tail", m);
}

Learner consv_tail_learner() {
  LearnerMeta m;
  m.consistent = true;
  m.conservative = true;
  m.target_class = "tails";
  return make<ConsvTailRun>("consv_tail", m);
}

}  // namespace limitlab
