#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fixtures.hpp"
#include "limitlab/kernel.hpp"

using namespace limitlab;
using testing::TestRng;

TEST_CASE("cantor pairing examples") {
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(0, 1) == 2);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_unpair(0) == std::pair<Nat, Nat>{0, 0});
  CHECK(cantor_unpair(2) == std::pair<Nat, Nat>{0, 1});
  CHECK(cantor_unpair(1) == std::pair<Nat, Nat>{1, 0});
}

TEST_CASE("cantor pairing bijection") {
  for (Nat n = 0; n < 20000; ++n) {
    auto [x, y] = cantor_unpair(n);
    CHECK(cantor_pair(x, y) == n);
  }
  for (Nat x = 0; x < 100; ++x)
    for (Nat y = 0; y < 100; ++y) {
      auto [a, b] = cantor_unpair(cantor_pair(x, y));
      CHECK(a == x);
      CHECK(b == y);
    }
}

TEST_CASE("canonical finite sets") {
  CHECK(canonical_finite_set(0) == FiniteSet{});
  CHECK(canonical_finite_set(5) == FiniteSet{0, 2});
  CHECK(canonical_finite_set(6) == FiniteSet{1, 2});
  CHECK(finite_set_index(FiniteSet{}) == 0);
  CHECK(finite_set_index(FiniteSet{0, 2}) == 5);
  CHECK(finite_set_index(FiniteSet{3}) == 8);
  for (Nat e = 0; e < 20000; ++e) CHECK(finite_set_index(canonical_finite_set(e)) == e);
  CHECK_THROWS_AS(finite_set_index(FiniteSet{70}), Error);
}

TEST_CASE("enum_at structural semantics") {
  CHECK(enum_at(HypCode::fin({1, 3}), 2) == FiniteSet{1});
  CHECK(enum_at(HypCode::union_of(HypCode::fin({0}), HypCode::tail(5)), 7) ==
        FiniteSet{0, 5, 6, 7});
  CHECK(enum_at(pad(HypCode::tail(0), 9), 3) == FiniteSet{0, 1, 2, 3});
  CHECK(enum_at(HypCode::stride(2, 0, 3), 9) == FiniteSet{4, 6, 8});
  CHECK(enum_at(HypCode::above(HypCode::tail(0), 4), 7) == FiniteSet{5, 6, 7});
  CHECK(enum_at(HypCode::diff(HypCode::tail(0), {2}), 4) == FiniteSet{0, 1, 3, 4});
}

TEST_CASE("member_at examples") {
  CHECK(member_at(HypCode::tail(4), 4, 10));
  CHECK_FALSE(member_at(HypCode::diff(HypCode::tail(0), {2}), 2, 10));
  CHECK(member_at(HypCode::stride(2, 0, 3), 4, 10));
}

TEST_CASE("decide_member tiers") {
  CHECK(decide_member(HypCode::union_of(HypCode::fin({9}), HypCode::tail(100)), 9) ==
        std::optional<bool>{true});
  HypCode op = register_opaque(OpaqueKey{"testnever", "1"}, [](Nat) { return std::vector<Nat>{}; });
  CHECK(decide_member(op, 9) == std::nullopt);
  CHECK(decide_member(HypCode::diff(HypCode::stride(2, 1, 0), {5}), 5) ==
        std::optional<bool>{false});
}

TEST_CASE("pad identity and extension") {
  HypCode nat = HypCode::tail(0);
  HypCode p0 = pad(nat, 0);
  CHECK(p0 != nat);
  CHECK(pad(HypCode::fin({}), 1) != pad(HypCode::fin({}), 2));
  CHECK(enum_at(pad(HypCode::fin({1}), 4), 5) == enum_at(HypCode::fin({1}), 5));
  CHECK(p0.pad_base() == nat);

  // One-one across nesting: collapsed tags never collide with plain ones.
  HypCode nested = pad(pad(nat, 1), 2);
  CHECK(nested.kind() == CodeKind::Pad);
  CHECK(nested.pad_base() == nat);
  CHECK(nested != pad(nat, 1));
  CHECK(nested != pad(nat, 2));
  CHECK(nested != pad(pad(nat, 2), 1));
  CHECK(nested == pad(pad(nat, 1), 2));
  CHECK(enum_at(nested, 6) == enum_at(nat, 6));
}

TEST_CASE("register_opaque semantics") {
  OpaqueKey key{"testidem", "a"};
  HypCode c1 = register_opaque(key, [](Nat s) { return std::vector<Nat>{s}; });
  HypCode c2 = register_opaque(key, [](Nat) { return std::vector<Nat>{}; });
  CHECK(c1 == c2);  // identical identity, first enumerator kept
  CHECK(enum_at(c1, 5) == FiniteSet{0, 1, 2, 3, 4, 5});

  HypCode never =
      register_opaque(OpaqueKey{"testidem", "b"}, [](Nat) { return std::vector<Nat>{}; });
  for (Nat s = 0; s < 10; ++s) CHECK(enum_at(never, s).empty());
}

TEST_CASE("enumeration monotonicity and clipping on random codes") {
  TestRng rng{42};
  for (int i = 0; i < 120; ++i) {
    HypCode c = testing::random_code(rng, 6, false);
    FiniteSet prev;
    for (Nat s = 0; s < 60; ++s) {
      FiniteSet cur = enum_at(c, s);
      CHECK(prev.subset_of(cur));
      if (!cur.empty()) CHECK(cur.max() <= s);
      prev = cur;
    }
  }
}

TEST_CASE("two-tier agreement on decidable codes") {
  TestRng rng{7};
  for (int i = 0; i < 80; ++i) {
    HypCode c = testing::random_code(rng, 5, true);
    for (Nat x = 0; x < 100; x += 7) {
      auto d = decide_member(c, x);
      REQUIRE(d.has_value());
      CHECK(*d == member_at(c, x, 500));
    }
  }
}

TEST_CASE("enum_at agrees with the pointwise oracle") {
  TestRng rng{99};
  for (int i = 0; i < 80; ++i) {
    HypCode c = testing::random_code(rng, 6, false);
    for (Nat s : {0u, 3u, 17u, 40u}) {
      FiniteSet en = enum_at(c, s);
      for (Nat x = 0; x <= s; ++x) CHECK(en.contains(x) == testing::oracle_member_at(c, x, s));
    }
  }
}

TEST_CASE("pad extensionality on random codes") {
  TestRng rng{5};
  for (int i = 0; i < 60; ++i) {
    HypCode c = testing::random_code(rng, 5, false);
    Nat d = rng.below(10);
    for (Nat s : {0u, 9u, 33u}) CHECK(enum_at(pad(c, d), s) == enum_at(c, s));
  }
}

TEST_CASE("serialization round-trips and is extension-faithful") {
  CHECK(HypCode::union_of(HypCode::fin({1, 3}), HypCode::tail(4)).to_string() ==
        "(union (fin 1 3) (tail 4))");
  HypCode parsed = HypCode::parse("(pad (base gold 2) 7)");
  CHECK(parsed.to_string() == "(pad (base gold 2) 7)");

  TestRng rng{11};
  for (int i = 0; i < 120; ++i) {
    HypCode c = testing::random_code(rng, 6, false);
    HypCode back = HypCode::parse(c.to_string());
    CHECK(back == c);
    CHECK(enum_at(back, 40) == enum_at(c, 40));
  }
  CHECK_THROWS_AS(HypCode::parse("(tail )"), Error);
  CHECK_THROWS_AS(HypCode::parse("(frob 1)"), Error);
  CHECK_THROWS_AS(HypCode::parse("(tail 1) junk"), Error);
}

TEST_CASE("periodic forms match the exact tier") {
  TestRng rng{123};
  for (int i = 0; i < 100; ++i) {
    HypCode c = testing::random_code(rng, 5, true);
    auto form = periodic_form(c);
    REQUIRE(form.has_value());
    for (Nat x = 0; x < 300; ++x) {
      auto d = decide_member(c, x);
      REQUIRE(d.has_value());
      CHECK(form->member(x) == *d);
    }
  }
}

TEST_CASE("periodic form set reasoning") {
  auto nat = *periodic_form(HypCode::tail(0));
  auto cof = *periodic_form(HypCode::diff(HypCode::tail(0), {5}));
  auto evens = *periodic_form(HypCode::stride(2, 0, 0));
  CHECK(nat.contains_all_of(cof));
  CHECK_FALSE(cof.contains_all_of(nat));
  CHECK(nat.contains_all_of(evens));
  CHECK(nat.is_infinite());
  CHECK(periodic_form(HypCode::fin({1, 2}))->is_finite());

  // Two interleaved strides add up to the full parity class.
  HypCode both = HypCode::union_of(HypCode::stride(4, 0, 0), HypCode::stride(4, 2, 0));
  CHECK(periodic_form(both)->same_extension(evens));
}

TEST_CASE("cofinal profiles") {
  auto p1 = *cofinal_profile(HypCode::fin({1, 2, 3}));
  CHECK(p1.even == CofinalClass::Finitely);
  CHECK(p1.odd == CofinalClass::Finitely);
  CHECK(p1.exact);

  auto p2 = *cofinal_profile(HypCode::tail(3));
  CHECK(p2.even == CofinalClass::AllButFinitely);
  CHECK(p2.odd == CofinalClass::AllButFinitely);

  auto p3 = *cofinal_profile(HypCode::stride(2, 0, 0));
  CHECK(p3.even == CofinalClass::AllButFinitely);
  CHECK(p3.odd == CofinalClass::Finitely);

  auto p4 = *cofinal_profile(HypCode::stride(4, 1, 0));
  CHECK(p4.odd == CofinalClass::InfinitelyManyButNotAlmostAll);
  CHECK(p4.even == CofinalClass::Finitely);

  // The union of the two even residue classes mod 4 is all evens.
  auto p5 = *cofinal_profile(
      HypCode::union_of(HypCode::stride(4, 0, 0), HypCode::stride(4, 2, 0)));
  CHECK(p5.even == CofinalClass::AllButFinitely);

  HypCode op = register_opaque(OpaqueKey{"testprofile", "x"}, [](Nat s) {
    return s % 2 == 0 ? std::vector<Nat>{s} : std::vector<Nat>{};
  });
  CHECK_FALSE(cofinal_profile(op).has_value());
  CofinalProfile approx = approximate_profile(op, 400);
  CHECK_FALSE(approx.exact);
  CHECK(approx.even == CofinalClass::AllButFinitely);
  CHECK(approx.odd == CofinalClass::Finitely);
}

TEST_CASE("registered exact forms feed the periodic tier but not decide_member") {
  OpaqueKey key{"testform", "evens"};
  PeriodicForm evens = *periodic_form(HypCode::stride(2, 0, 0));
  HypCode c = register_opaque(
      key, [](Nat s) { return std::vector<Nat>{2 * (s / 2)}; }, evens);
  CHECK(decide_member(c, 4) == std::nullopt);
  auto form = periodic_form(c);
  REQUIRE(form.has_value());
  CHECK(form->member(4));
  CHECK_FALSE(form->member(5));
}

TEST_CASE("unregistered references raise errors") {
  CHECK_THROWS_AS(enum_at(HypCode::base("nosuchfamily", 0), 5), Error);
  CHECK_THROWS_AS(enum_at(HypCode::opaque(OpaqueKey{"nosuchkey", ""}), 5), Error);
}
