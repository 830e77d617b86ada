#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "limitlab/adversaries.hpp"

using namespace limitlab;
using testing::pure_learner;

TEST_CASE("gold_adversary") {
  // A learner whose hypothesis is always the full set never lets the text
  // advance: the text settles on {0}.
  Learner full = pure_learner("full", [](const TextPrefix&) { return HypCode::tail(0); });
  TextPrefix t = gold_adversary(full, 64, 40);
  for (const Symbol& s : t.symbols()) CHECK(s.datum() == 0);

  // Finite-set conjectures never claim the next number: ascending text.
  TextPrefix t2 = gold_adversary(range_learner(), 64, 40);
  for (Nat k = 0; k < 40; ++k) CHECK(t2.at(k).datum() == k);

  // Determinism, and the range is always an initial segment.
  CHECK(gold_adversary(range_learner(), 64, 40) == t2);
  Learner mixed = tail_union_learner();
  TextPrefix t3 = gold_adversary(mixed, 64, 60);
  FiniteSet r = t3.range();
  for (Nat x = 0; x < r.size(); ++x) CHECK(r.contains(x));

  AuditLog log;
  gold_adversary(range_learner(), 64, 10, &log);
  CHECK(log.to_json().size() == 9);
  CHECK(log.to_json()[0].contains("code"));
}

TEST_CASE("evenodd_adversary against the finite-set learner") {
  // Fin profiles are (finitely, finitely): no phase exit, evens forever.
  EvenOddResult r = evenodd_adversary(range_learner(), 50);
  CHECK(r.alternations == 0);
  for (Nat k = 0; k < 50; ++k) CHECK(r.prefix.at(k).datum() == 2 * k);

  // Determinism.
  CHECK(evenodd_adversary(range_learner(), 50).prefix == r.prefix);
}

TEST_CASE("evenodd_adversary alternates against the shipped consistent partial learner") {
  evenodd_class();
  Learner m = urec_cons_part_learner(kEvenOddFamily);
  EvenOddResult r = evenodd_adversary(m, 400);
  CHECK(r.alternations >= 2);
  // All fed symbols are data from the full set.
  for (const Symbol& s : r.prefix.symbols()) CHECK(s.is_datum());
}

TEST_CASE("evenodd_adversary needs a profile or an approximation stage") {
  HypCode opaque = register_opaque(OpaqueKey{"testadv", "blind"},
                                   [](Nat) { return std::vector<Nat>{}; });
  Learner blind = pure_learner("blind", [opaque](const TextPrefix&) { return opaque; });
  CHECK_THROWS_AS(evenodd_adversary(blind, 10), Error);
  EvenOddOptions opt;
  opt.approx_stage = 100;
  CHECK_NOTHROW(evenodd_adversary(blind, 10, opt));
}

TEST_CASE("cofinite_adversary") {
  Target l = cofinite_class().targets(5);  // misses {0, 2}
  HypCode w = HypCode::tail(0);

  // The full-set conjecturer never omits the withheld element.
  Learner full = pure_learner("full", [](const TextPrefix&) { return HypCode::tail(0); });
  CofiniteResult r = cofinite_adversary(l, w, full, 64, 200);
  CHECK(r.outcome == CofiniteOutcome::StuckInA);
  CHECK(r.alternations == 0);

  // The finite-set conjecturer leaves phase (a) immediately, over and over.
  CofiniteResult r2 = cofinite_adversary(l, w, range_learner(), 64, 1500);
  CHECK(r2.outcome == CofiniteOutcome::Alternating);
  CHECK(r2.alternations >= 5);

  // Every fed element belongs to L, in both phases.
  for (const Symbol& s : r2.prefix.symbols()) CHECK(l.member(s.datum()));
  for (const Symbol& s : r.prefix.symbols()) CHECK(l.member(s.datum()));

  // The withheld element is repaired before the next round begins.
  CofiniteResult r3 = cofinite_adversary(l, w, range_learner(), 64, 300);
  REQUIRE(r3.alternations > 0);
  bool found = false;
  for (const Symbol& s : r3.prefix.symbols())
    if (s.datum() == 1) found = true;  // the least element of L inter W
  CHECK(found);

  // Budget stability: doubling the stage budget reproduces the prefix.
  CofiniteResult big = cofinite_adversary(l, w, range_learner(), 128, 1500);
  CHECK(big.prefix == r2.prefix);
  CHECK(big.alternations == r2.alternations);
}

TEST_CASE("separation_levels") {
  // Stage 0 always lands in the else-branch.
  LevelAssignment a0 = separation_levels(3, range_learner(), 1, 0);
  CHECK(a0.level(3) == 0);

  // Against the finite-set learner the witness condition keeps failing, so
  // levels grow without bound.
  LevelAssignment a = separation_levels(2, range_learner(), 200, 0);
  Nat max_level = 0;
  for (Nat k = 0; k < a.stages; ++k) max_level = std::max(max_level, a.level(2 + k));
  CHECK(max_level >= 10);

  // Determinism.
  LevelAssignment b = separation_levels(2, range_learner(), 200, 0);
  CHECK(a.levels == b.levels);
  CHECK(a.cancelled == b.cancelled);

  // Levels are total on the covered interval; cancellation is permanent.
  CHECK(a.levels.size() == 200);
  for (auto [e, s] : a.cancelled) {
    CHECK(a.is_cancelled(e));
    for (Nat k = s; k < a.stages; ++k) CHECK(a.level(2 + k) != e);
  }
}

TEST_CASE("separation_text") {
  LevelAssignment a = separation_levels(4, range_learner(), 60, 0);
  // All levels distinct means the text ascends from d.
  bool all_distinct = true;
  for (Nat k = 0; k < a.stages; ++k)
    if (a.level(4 + k) != k) all_distinct = false;
  TextPrefix t = separation_text(a, 60);
  if (all_distinct)
    for (Nat k = 0; k < 60; ++k) CHECK(t.at(k).datum() == 4 + k);

  // Prefix property and range bound.
  CHECK(separation_text(a, 30).is_prefix_of(t));
  for (const Symbol& s : t.symbols()) CHECK(s.datum() >= 4);

  CHECK_THROWS_AS(separation_text(a, 61), Error);
}

TEST_CASE("separation targets and class") {
  LevelAssignment a = separation_levels(2, range_learner(), 80, 0);
  Target l0 = separation_target(a, 0);
  for (Nat x = 0; x < 2; ++x) CHECK_FALSE(l0.member(x));
  Nat count = 0;
  for (Nat x = 2; x < 82; ++x)
    if (l0.member(x)) ++count;
  Nat expect = 0;
  for (Nat k = 0; k < 80; ++k)
    if (a.level(2 + k) == 0) ++expect;
  CHECK(count == expect);

  BenchmarkClass c = separation_class(a);
  CHECK(c.targets(1).member(2) == (a.level(2) <= 1));
}
