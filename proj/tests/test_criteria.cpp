#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "limitlab/criteria.hpp"

using namespace limitlab;
using testing::datums;
using testing::pure_learner;

namespace {

/// Trace with the given constant conjecture over a canonical text.
Trace constant_trace(const Target& t, const HypCode& code, Nat n) {
  Trace tr;
  tr.learner_id = "const";
  tr.text = canonical_text(t, n);
  tr.conjectures.assign(n, code);
  tr.distinct = {code};
  tr.distinct_index.assign(n, 0);
  return tr;
}

Trace trace_of(const std::vector<HypCode>& seq, const Target& t) {
  Trace tr;
  tr.learner_id = "manual";
  tr.text = canonical_text(t, seq.size());
  tr.conjectures = seq;
  for (const HypCode& c : seq) {
    std::size_t i = 0;
    for (; i < tr.distinct.size(); ++i)
      if (tr.distinct[i] == c) break;
    if (i == tr.distinct.size()) tr.distinct.push_back(c);
    tr.distinct_index.push_back(i);
  }
  return tr;
}

}  // namespace

TEST_CASE("check_cons") {
  CheckConfig cfg;
  // The range learner is consistent by construction.
  Trace good = build_trace(range_learner(), canonical_text(nat_target(), 60));
  CHECK(check_cons(good, cfg).supported());

  // A learner that forgets its data is refuted at the offending step.
  Learner bad = pure_learner("forgets", [](const TextPrefix& p) {
    return p.size() >= 2 ? HypCode::fin({}) : HypCode::fin(p.range());
  });
  Trace tr = build_trace(bad, datums({3, 4, 5}));
  Verdict v = check_cons(tr, cfg);
  CHECK(v.refuted());
  CHECK(v.witness.at("step").get<Nat>() == 1);

  // An opaque conjecture that never enumerates the datum is inconclusive.
  HypCode lazy = register_opaque(OpaqueKey{"testcons", "lazy"},
                                 [](Nat) { return std::vector<Nat>{}; });
  Learner opaque = pure_learner("lazy", [lazy](const TextPrefix&) { return lazy; });
  Verdict v2 = check_cons(build_trace(opaque, datums({3})), cfg);
  CHECK(v2.status == VerdictStatus::Inconclusive);
  CHECK(v2.failures.size() == 1);
}

TEST_CASE("check_part") {
  CheckConfig cfg;
  Target seg = initial_segment_target(3);
  // A constant correct code is supported.
  Verdict v = check_part(constant_trace(seg, *seg.code, 90), seg, cfg);
  CHECK(v.supported());

  // Two strictly alternating codes leave two window candidates.
  std::vector<HypCode> alt;
  for (Nat i = 0; i < 90; ++i)
    alt.push_back(i % 2 ? HypCode::tail(0) : *seg.code);
  Verdict v2 = check_part(trace_of(alt, seg), seg, cfg);
  CHECK(v2.status == VerdictStatus::Inconclusive);
  CHECK(v2.witness.at("candidates").get<Nat>() == 2);

  // A wrong single candidate is inconclusive, with the disagreement noted.
  Verdict v3 = check_part(constant_trace(seg, HypCode::tail(0), 90), seg, cfg);
  CHECK(v3.status == VerdictStatus::Inconclusive);
  CHECK(v3.witness.contains("disagreement_at"));
}

TEST_CASE("check_consv_part") {
  CheckConfig cfg;
  Target t = cofinite_class().targets(32);  // misses {5}
  // Two distinct full-extension codes are both strict supersets: refuted.
  std::vector<HypCode> seq;
  for (Nat i = 0; i < 60; ++i)
    seq.push_back(i % 2 ? HypCode::tail(0)
                        : HypCode::union_of(HypCode::fin({0}), HypCode::tail(1)));
  Verdict v = check_consv_part(trace_of(seq, t), t, cfg);
  CHECK(v.refuted());

  // Finite conjectures are never supersets of an infinite target.
  Trace fins = build_trace(range_learner(), canonical_text(t, 60));
  Verdict v2 = check_consv_part(fins, t, cfg);
  CHECK_FALSE(v2.refuted());
}

TEST_CASE("check_conf_part") {
  CheckConfig cfg;
  Target t = nat_target();
  CHECK(check_conf_part(constant_trace(t, HypCode::tail(0), 60), cfg).supported());

  std::vector<HypCode> fresh;
  for (Nat i = 0; i < 60; ++i) fresh.push_back(pad(HypCode::tail(0), i));
  Verdict v = check_conf_part(trace_of(fresh, t), cfg);
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(v.witness.at("candidates").get<Nat>() == 0);

  std::vector<HypCode> two;
  for (Nat i = 0; i < 60; ++i) two.push_back(i % 2 ? HypCode::tail(0) : HypCode::tail(1));
  CHECK(check_conf_part(trace_of(two, t), cfg).status == VerdictStatus::Inconclusive);
}

TEST_CASE("check_bc_family") {
  CheckConfig cfg;
  Target t = cofinite_class().targets(32);  // N - {5}

  // Constant exact code: plain behavioural correctness from step 0.
  Verdict v = check_bc_family(constant_trace(t, *t.code, 90), t, cfg, 0);
  CHECK(v.supported());
  CHECK(v.witness.at("suffix_start").get<Nat>() == 0);

  // The full set has exactly one anomaly against N - {5}.
  Trace full = constant_trace(t, HypCode::tail(0), 90);
  CHECK(check_bc_family(full, t, cfg, 1).supported());
  Verdict v2 = check_bc_family(full, t, cfg, 0);
  CHECK(v2.status == VerdictStatus::Inconclusive);
  CHECK(v2.failures.size() > 0);

  // Strictly growing anomaly profiles never stabilize under the cap.
  std::vector<HypCode> growing;
  for (Nat i = 0; i < 90; ++i)
    growing.push_back(HypCode::diff(HypCode::tail(0), canonical_finite_set((Nat{1} << (i / 15)) - 1)));
  Verdict v3 = check_bc_family(trace_of(growing, nat_target()), nat_target(), cfg, std::nullopt);
  CHECK(v3.witness.at("suffix_max_anomaly").get<Nat>() >= 5);
}

TEST_CASE("check_ex family") {
  CheckConfig cfg;
  Target t = tail_target(2);
  CHECK(check_ex(constant_trace(t, *t.code, 60), t, cfg).supported());

  // Convergence to an off-by-one code: starred yes, plain no.
  HypCode off = HypCode::diff(HypCode::tail(2), {4});
  Trace tr = constant_trace(t, off, 60);
  CHECK(check_exstar(tr, t, cfg).supported());
  CHECK(check_ex(tr, t, cfg).status == VerdictStatus::Inconclusive);

  // Cycling among three correct codes: vacillation yes, convergence no.
  std::vector<HypCode> cyc;
  std::vector<HypCode> codes = {*t.code, HypCode::union_of(HypCode::tail(2), HypCode::fin({})),
                                HypCode::union_of(HypCode::fin({2}), HypCode::tail(3))};
  for (Nat i = 0; i < 60; ++i) cyc.push_back(codes[i % 3]);
  Trace cyct = trace_of(cyc, t);
  CHECK(check_vac(cyct, t, cfg).supported());
  CHECK(check_ex(cyct, t, cfg).status == VerdictStatus::Inconclusive);

  // Vac* tolerates bounded anomalies in the cycle.
  std::vector<HypCode> cyc2 = cyc;
  for (Nat i = 0; i < 60; i += 3) cyc2[i] = off;
  Trace cyct2 = trace_of(cyc2, t);
  CHECK(check_vacstar(cyct2, t, cfg).supported());
  CHECK(check_vac(cyct2, t, cfg).status == VerdictStatus::Inconclusive);
}

TEST_CASE("check_finapprox") {
  CheckConfig cfg;
  Target seg = initial_segment_target(1);
  Trace tr = constant_trace(seg, HypCode::fin({0, 1}), 60);
  Verdict v = check_finapprox(tr, seg, FiniteSet{0, 1, 2}, cfg);
  CHECK(v.supported());
  CHECK(v.witness.at("k_star").get<Nat>() == 0);

  // Alternating on membership of 2 forever: the schedule stays dense.
  std::vector<HypCode> alt;
  for (Nat i = 0; i < 60; ++i)
    alt.push_back(i % 2 ? HypCode::fin({0, 1, 2}) : HypCode::fin({0, 1}));
  Verdict v2 = check_finapprox(trace_of(alt, seg), seg, FiniteSet{0, 1, 2}, cfg);
  CHECK(v2.status == VerdictStatus::Inconclusive);
  CHECK(v2.failures.size() >= 25);
}

TEST_CASE("check_weakapprox and check_approx") {
  CheckConfig cfg;
  Target t = nat_target();
  // Constant exact code: supported for any witness set.
  for (const HypCode& v_code : {HypCode::stride(2, 0, 0), HypCode::tail(0)}) {
    Verdict v = check_weakapprox(constant_trace(t, HypCode::tail(0), 90), t, v_code, cfg);
    CHECK(v.supported());
    CHECK(v.witness.at("k_star").get<Nat>() == 0);
  }

  // The record-holder witness supports the tail-union learner.
  TextPrefix text = seeded_text(t, 11, 150);
  Trace tr = build_trace(tail_union_learner(), text);
  HypCode v_rec = HypCode::fin(record_holder_set(text));
  CHECK(check_weakapprox(tr, t, v_rec, cfg).supported());

  // Approximation requires one witness across several texts.
  Target evens;
  evens.name = "evens";
  evens.membership = [](Nat x) { return x % 2 == 0; };
  evens.code = HypCode::stride(2, 0, 0);
  Learner m = superset_approx_learner(HypCode::stride(2, 0, 0));
  std::vector<Trace> traces;
  for (Nat seed : {1u, 2u, 3u}) traces.push_back(build_trace(m, seeded_text(evens, seed, 120)));
  CHECK(check_approx(traces, evens, HypCode::stride(2, 0, 0), cfg).supported());
  CHECK_THROWS_AS(check_approx({traces[0]}, evens, HypCode::stride(2, 0, 0), cfg), Error);

  // A learner whose witness must differ per text fails on any single one.
  Trace odd_side = constant_trace(t, HypCode::stride(2, 1, 0), 90);
  Trace even_side = constant_trace(t, HypCode::stride(2, 0, 0), 90);
  CHECK_FALSE(check_approx({odd_side, even_side}, t, HypCode::stride(2, 1, 0), cfg).supported());
  CHECK_FALSE(check_approx({odd_side, even_side}, t, HypCode::stride(2, 0, 0), cfg).supported());

  // The witness code must be exactly decidable.
  HypCode opaque_v = register_opaque(OpaqueKey{"testweak", "v"},
                                     [](Nat) { return std::vector<Nat>{}; });
  CHECK_THROWS_AS(check_weakapprox(tr, t, opaque_v, cfg), Error);
}

TEST_CASE("monotone evidence: refutations are budget-stable") {
  Learner bad = pure_learner("forgets", [](const TextPrefix& p) {
    return p.size() >= 2 ? HypCode::fin({}) : HypCode::fin(p.range());
  });
  Trace tr = build_trace(bad, datums({3, 4, 5}));
  CheckConfig small, big;
  small.budget = 50;
  big.budget = 100;
  CHECK(check_cons(tr, small).refuted());
  CHECK(check_cons(tr, big).refuted());
}

TEST_CASE("range learner approximates coinfinite targets via the complement") {
  // The witness is the complement of the target inside the domain window.
  CheckConfig cfg;
  Target evens;
  evens.name = "evens";
  evens.membership = [](Nat x) { return x % 2 == 0; };
  evens.code = HypCode::stride(2, 0, 0);
  Learner m = range_learner();
  std::vector<Trace> traces;
  for (Nat seed : {4u, 9u}) traces.push_back(build_trace(m, seeded_text(evens, seed, 260)));
  HypCode odds = HypCode::stride(2, 1, 0);
  CHECK(check_approx(traces, evens, odds, cfg).supported());
}
