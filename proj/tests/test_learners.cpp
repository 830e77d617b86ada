#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "limitlab/criteria.hpp"

using namespace limitlab;
using testing::datums;

TEST_CASE("tail_union_learner") {
  Learner m = tail_union_learner();
  CHECK(m.step(TextPrefix{}) == HypCode::tail(0));
  CHECK(m.step(datums({3, 1})) ==
        HypCode::union_of(HypCode::fin({1, 3}), HypCode::tail(4)));
  TextPrefix p = datums({0}).appended(Symbol::pause()).appended(Symbol(0));
  CHECK(m.step(p) == HypCode::union_of(HypCode::fin({0}), HypCode::tail(1)));
}

TEST_CASE("range_learner") {
  Learner m = range_learner();
  CHECK(m.step(TextPrefix{}) == HypCode::fin({}));
  TextPrefix p = datums({2, 2}).appended(Symbol::pause());
  CHECK(m.step(p) == HypCode::fin({2}));
  CHECK(m.step(datums({5, 1})) == HypCode::fin({1, 5}));
}

TEST_CASE("cofinite_learner") {
  Learner m = cofinite_learner();
  CHECK(m.step(datums({2})) == HypCode::union_of(HypCode::fin({}), HypCode::tail(2)));
  CHECK(m.step(datums({0})) == HypCode::tail(0));
  TextPrefix p = datums({0}).appended(Symbol::pause()).appended(Symbol::pause());
  CHECK(m.step(p) == HypCode::tail(0));  // repeat rule
  // A later datum with a gap below it pins the greatest missing point.
  CHECK(m.step(datums({5, 3})) ==
        HypCode::union_of(HypCode::fin({}), HypCode::tail(3)));
}

TEST_CASE("cofinite_learner consistency on cofinite targets") {
  Learner m = cofinite_learner();
  Target t = cofinite_class().targets(5);  // misses {0,2}
  for (Nat seed : {1u, 2u}) {
    TextPrefix text = seeded_text(t, seed, 150);
    Trace trace = build_trace(m, text);
    Verdict v = check_cons(trace, CheckConfig{});
    CHECK(v.supported());
  }
}

TEST_CASE("superset_approx_learner") {
  HypCode evens = HypCode::stride(2, 0, 0);
  Learner m = superset_approx_learner(evens);
  CHECK(m.step(TextPrefix{}) == HypCode::union_of(HypCode::fin({}), evens));
  Learner m10 = superset_approx_learner(HypCode::tail(10));
  CHECK(m10.step(datums({1})) ==
        HypCode::union_of(HypCode::fin({1}), HypCode::tail(10)));
  // Conjecture always covers the witness set's enumeration.
  TextPrefix text = seeded_text(nat_target(), 4, 60);
  Trace trace = build_trace(m, text);
  for (const HypCode& c : trace.conjectures)
    CHECK(enum_at(evens, 40).subset_of(enum_at(c, 40)));
}

TEST_CASE("urec_cons_part_learner on the gold family") {
  gold_class();
  Learner m = urec_cons_part_learner(kGoldFamily);
  CHECK(m.step(datums({0})) == HypCode::base(kGoldFamily, 0));
  TextPrefix p = datums({0}).appended(Symbol::pause());
  CHECK(m.step(p) == HypCode::fin({0}));  // no new datum
  CHECK(m.step(datums({0, 2})) == HypCode::fin({0, 2}));
}

TEST_CASE("urec_cons_part_learner is consistent per step") {
  gold_class();
  Learner m = urec_cons_part_learner(kGoldFamily);
  for (Nat idx : {0u, 3u, 6u}) {
    Target t = gold_class().targets(idx);
    Trace trace = build_trace(m, canonical_text(t, 80));
    CHECK(check_cons(trace, CheckConfig{}).supported());
  }
}

TEST_CASE("propsep_learner") {
  Learner m = propsep_learner();
  CHECK(m.step(datums({1})) == HypCode::tail(0));
  CHECK(m.step(datums({1, 0})) ==
        HypCode::union_of(HypCode::fin({0, 1}), HypCode::stride(2, 0, 2)));
  CHECK(m.step(datums({0, 2})) == HypCode::stride(2, 0, 0));
}

TEST_CASE("learner determinism and identity") {
  gold_class();
  std::vector<Learner> all = {tail_union_learner(),  range_learner(),
                              cofinite_learner(),    propsep_learner(),
                              missing_point_learner(), once_correct_tail_learner(),
                              inf_often_tail_learner(), vacstar_wpart_tail_learner(),
                              consv_tail_learner(),  urec_cons_part_learner(kGoldFamily)};
  std::vector<TextPrefix> corpus = {
      TextPrefix{},
      datums({0, 1, 2, 3}),
      datums({5, 3, 5}).appended(Symbol::pause()),
      seeded_text(nat_target(), 3, 40),
      seeded_text(tail_target(2), 8, 40),
  };
  for (const Learner& m : all)
    for (const TextPrefix& p : corpus) CHECK(m.step(p) == m.step(p));
}

TEST_CASE("tail_union conjectures contain the record holders") {
  Learner m = tail_union_learner();
  TextPrefix text = seeded_text(tail_target(1), 17, 120);
  auto run = m.run();
  run->initial();
  TextPrefix sofar;
  for (const Symbol& s : text.symbols()) {
    HypCode c = run->feed(s);
    sofar.push_back(s);
    for (Nat x : record_holder_set(sofar)) CHECK(decide_member(c, x) == std::optional<bool>{true});
  }
}

TEST_CASE("bcstar_to_weakapprox") {
  Learner o = range_learner();
  Learner m = bcstar_to_weakapprox(o);

  // Key determinism: equal inputs give one registered code.
  CHECK(m.step(datums({4})) == m.step(datums({4})));
  CHECK(m.step(datums({4})) != m.step(datums({5})));

  // Enumerations always cover the data seen.
  TextPrefix p = datums({2, 7});
  HypCode c = m.step(p);
  FiniteSet en = enum_at(c, 50);
  CHECK(en.contains(2));
  CHECK(en.contains(7));

  // Single-datum prefix against the finite-set learner: every candidate tau
  // already enumerates one element, so the search succeeds and the staged
  // set also carries the tail-union hypothesis.
  HypCode single = m.step(datums({4}));
  FiniteSet staged = enum_at(single, 200);
  HypCode weak = tail_union_learner().step(datums({4}));
  CHECK(enum_at(weak, 200).subset_of(staged));
}

TEST_CASE("fixture learners behave as declared") {
  // missing_point: converges to the one-point-cofinite code.
  {
    Learner m = missing_point_learner();
    Target t = cofinite_class().targets(8);  // misses {3}
    Trace trace = build_trace(m, canonical_text(t, 60));
    CHECK(trace.conjectures.back() == HypCode::diff(HypCode::tail(0), {3}));
  }
  // once_correct_tail: exactly correct at every other step.
  {
    Learner m = once_correct_tail_learner();
    Trace trace = build_trace(m, canonical_text(tail_target(2), 30));
    Nat correct = 0;
    for (const HypCode& c : trace.conjectures)
      if (c == HypCode::tail(2)) ++correct;
    CHECK(correct >= 14);
  }
  // inf_often_tail: the plain code recurs infinitely often, pads are fresh.
  {
    Learner m = inf_often_tail_learner();
    Trace trace = build_trace(m, canonical_text(tail_target(1), 40));
    Nat plain = 0;
    for (const HypCode& c : trace.conjectures)
      if (c == HypCode::tail(1)) ++plain;
    CHECK(plain >= 19);
    CHECK(trace.distinct.size() >= 10);
    CHECK(trace.conjectures.front() == HypCode::tail(1));
  }
  // consv_tail: never conjectures a proper superset of the target.
  {
    Learner m = consv_tail_learner();
    Target t = tail_target(4);
    Trace trace = build_trace(m, seeded_text(t, 5, 80));
    auto target_form = *periodic_form(*t.code);
    Nat supersets = 0;
    for (const HypCode& c : trace.distinct) {
      auto form = periodic_form(c);
      REQUIRE(form.has_value());
      if (form->contains_all_of(target_form)) ++supersets;
    }
    CHECK(supersets <= 1);
  }
}

TEST_CASE("learner registry") {
  CHECK(has_learner("tail_union"));
  CHECK_FALSE(has_learner("nonsense"));
  CHECK_THROWS_AS(make_learner("nonsense"), Error);
  Learner m = make_learner("superset_approx", nlohmann::json{{"W", "(stride 2 0 0)"}});
  CHECK(m.step(TextPrefix{}) ==
        HypCode::union_of(HypCode::fin({}), HypCode::stride(2, 0, 0)));
  Learner wrapped = make_learner(
      "finapprox_part", nlohmann::json{{"inner", {{"name", "range"}}}});
  CHECK(wrapped.id() == "finapprox_part(range)");
  CHECK(registered_learner_names().size() >= 15);
}
