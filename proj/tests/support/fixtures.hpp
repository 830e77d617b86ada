#ifndef LIMITLAB_TESTS_FIXTURES_HPP
#define LIMITLAB_TESTS_FIXTURES_HPP

#include <functional>
#include <vector>

#include "limitlab/learners.hpp"
#include "limitlab/target.hpp"

namespace limitlab::testing {

// splitmix64, kept separate from production code so tests stay independent.
struct TestRng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  Nat below(Nat n) { return n == 0 ? 0 : next() % n; }
};

/// Random hypothesis code of bounded depth. Decidable-only codes draw from
/// the combinator constructors and the gold family; otherwise opaque leaves
/// (simple registered enumerators) may occur too.
inline HypCode random_code(TestRng& rng, Nat depth, bool decidable_only) {
  if (depth == 0 || rng.below(3) == 0) {
    switch (rng.below(decidable_only ? 5 : 6)) {
      case 0: {
        std::vector<Nat> xs;
        for (Nat i = rng.below(4); i-- > 0;) xs.push_back(rng.below(30));
        return HypCode::fin(FiniteSet(std::move(xs)));
      }
      case 1:
        return HypCode::tail(rng.below(20));
      case 2: {
        Nat a = 1 + rng.below(5);
        return HypCode::stride(a, rng.below(a), rng.below(12));
      }
      case 3: {
        gold_class();  // registers the family
        return HypCode::base(kGoldFamily, rng.below(8));
      }
      case 4: {
        std::vector<Nat> xs;
        for (Nat i = 1 + rng.below(3); i-- > 0;) xs.push_back(rng.below(25));
        return HypCode::fin(FiniteSet(std::move(xs)));
      }
      default: {
        Nat step_gap = 1 + rng.below(4);
        OpaqueKey key{"testenum", std::to_string(step_gap) + "_" + std::to_string(rng.below(16))};
        return register_opaque(key, [step_gap](Nat s) {
          std::vector<Nat> out;
          if (s % step_gap == 0) out.push_back(s);
          return out;
        });
      }
    }
  }
  switch (rng.below(4)) {
    case 0:
      return HypCode::union_of(random_code(rng, depth - 1, decidable_only),
                               random_code(rng, depth - 1, decidable_only));
    case 1: {
      std::vector<Nat> xs;
      for (Nat i = rng.below(3); i-- > 0;) xs.push_back(rng.below(20));
      return HypCode::diff(random_code(rng, depth - 1, decidable_only), FiniteSet(std::move(xs)));
    }
    case 2:
      return HypCode::above(random_code(rng, depth - 1, decidable_only), rng.below(15));
    default:
      return pad(random_code(rng, depth - 1, decidable_only), rng.below(10));
  }
}

/// Independent semantics oracle: direct recursive stage-s membership,
/// written against the node definitions rather than the set algebra the
/// kernel uses.
inline bool oracle_member_at(const HypCode& c, Nat x, Nat s) {
  if (x > s) return false;
  const auto& n = c.node();
  switch (c.kind()) {
    case CodeKind::Fin:
      return n.set.contains(x);
    case CodeKind::Tail:
      return x >= n.t;
    case CodeKind::Stride:
      return x >= n.t && x % n.a == n.r;
    case CodeKind::Union:
      return oracle_member_at(c.left(), x, s) || oracle_member_at(c.right(), x, s);
    case CodeKind::Diff:
      return oracle_member_at(c.left(), x, s) && !n.set.contains(x);
    case CodeKind::Above:
      return x > n.t && oracle_member_at(c.left(), x, s);
    case CodeKind::Pad:
      return oracle_member_at(c.left(), x, s);
    case CodeKind::Base:
      return Registry::global().family(n.family).member_at(n.index, x, s);
    case CodeKind::Opaque:
      return Registry::global().opaque_enum_at(n.key, s).contains(x);
  }
  return false;
}

/// A learner defined by one pure function of the prefix; convenient for
/// hand-built counterexamples.
inline Learner pure_learner(const std::string& id,
                            std::function<HypCode(const TextPrefix&)> fn,
                            LearnerMeta meta = {}) {
  struct Run : LearnerRun {
    std::function<HypCode(const TextPrefix&)> fn;
    TextPrefix prefix;
    explicit Run(std::function<HypCode(const TextPrefix&)> f) : fn(std::move(f)) {}
    HypCode initial() override { return fn(prefix); }
    HypCode feed(Symbol s) override {
      prefix.push_back(s);
      return fn(prefix);
    }
  };
  return Learner(id, std::move(meta), [fn]() { return std::make_unique<Run>(fn); });
}

inline TextPrefix datums(std::initializer_list<Nat> xs) {
  TextPrefix p;
  for (Nat x : xs) p.push_back(Symbol(x));
  return p;
}

}  // namespace limitlab::testing

#endif
