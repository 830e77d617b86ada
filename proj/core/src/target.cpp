#include "limitlab/target.hpp"

#include <algorithm>

namespace limitlab {

namespace {

// splitmix64; stable across platforms.
struct Rng {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

PeriodicForm parity_plus_finite(Nat parity, const FiniteSet& extra) {
  // {x : x = parity (mod 2)} union a finite set.
  PeriodicForm f;
  f.period = 2;
  f.residues = {parity == 0, parity == 1};
  f.threshold = extra.empty() ? 0 : extra.max() + 1;
  std::vector<Nat> below;
  for (Nat x = 0; x < f.threshold; ++x)
    if (x % 2 == parity || extra.contains(x)) below.push_back(x);
  f.below = FiniteSet(std::move(below));
  return f;
}

PeriodicForm full_form() {
  PeriodicForm f;
  f.period = 1;
  f.residues = {true};
  return f;
}

PeriodicForm finite_form(const FiniteSet& d) {
  PeriodicForm f;
  f.period = 1;
  f.residues = {false};
  f.threshold = d.empty() ? 0 : d.max() + 1;
  f.below = d;
  return f;
}

}  // namespace

std::optional<Nat> Target::kth_member(Nat k) const {
  Nat seen = 0;
  Nat bound = finite ? finite_bound : ~Nat{0};
  for (Nat x = 0; x < bound; ++x) {
    if (membership(x)) {
      if (seen == k) return x;
      ++seen;
    }
  }
  return std::nullopt;
}

TextPrefix canonical_text(const Target& t, Nat n) {
  TextPrefix p;
  Nat x = 0;
  Nat bound = t.finite ? t.finite_bound : ~Nat{0};
  for (Nat i = 0; i < n; ++i) {
    while (x < bound && !t.membership(x)) ++x;
    if (x < bound) {
      p.push_back(Symbol(x));
      ++x;
    } else {
      p.push_back(Symbol::pause());
    }
  }
  return p;
}

TextPrefix seeded_text(const Target& t, Nat seed, Nat n) {
  Rng rng{seed * 0x9e3779b97f4a7c15ull + fnv1a(t.name) + 1};
  TextPrefix p;
  std::vector<Nat> data_seen;
  // Members of t form an ascending chain; `next_fresh` is the least member
  // not yet fed (presence is always a prefix of the chain).
  std::optional<Nat> next_fresh = t.kth_member(0);
  Nat fresh_count = 0;
  bool last_was_fresh = false;
  for (Nat k = 0; k < n; ++k) {
    Nat bound = (k + 1) / 4;
    bool due = next_fresh.has_value() && *next_fresh < bound;
    // Repetitions and pauses come only in isolation: two non-fresh steps
    // never run back to back while fresh members remain.
    bool force_fresh = due || (!last_was_fresh && next_fresh.has_value());
    Nat roll = rng.below(10);
    if (force_fresh || (roll < 4 && next_fresh.has_value())) {
      p.push_back(Symbol(*next_fresh));
      data_seen.push_back(*next_fresh);
      next_fresh = t.kth_member(++fresh_count);
      last_was_fresh = true;
    } else if (roll < 7 && !data_seen.empty()) {
      p.push_back(Symbol(data_seen[rng.below(data_seen.size())]));
      last_was_fresh = false;
    } else {
      p.push_back(Symbol::pause());
      last_was_fresh = false;
    }
  }
  return p;
}

FiniteSet record_holder_set(const TextPrefix& prefix) {
  std::vector<Nat> holders;
  bool any = false;
  Nat max_seen = 0;
  for (const Symbol& s : prefix.symbols()) {
    if (!s.is_datum()) continue;
    Nat x = s.datum();
    if (!any || x > max_seen) {
      holders.push_back(x);
      max_seen = x;
      any = true;
    }
  }
  return FiniteSet(std::move(holders));
}

// -- families and classes -----------------------------------------------------

namespace {

void ensure_gold_family() {
  if (Registry::global().has_family(kGoldFamily)) return;
  Family f;
  f.id = kGoldFamily;
  f.decidable = true;
  f.decide = [](Nat i, Nat x) { return i == 0 ? true : x < i; };
  f.member_at = [](Nat i, Nat x, Nat) { return i == 0 ? true : x < i; };
  f.form = [](Nat i) -> std::optional<PeriodicForm> {
    if (i == 0) return full_form();
    std::vector<Nat> xs;
    for (Nat x = 0; x < i; ++x) xs.push_back(x);
    return finite_form(FiniteSet(std::move(xs)));
  };
  register_family(std::move(f));
}

void ensure_cofinite_family() {
  if (Registry::global().has_family(kCofiniteFamily)) return;
  Family f;
  f.id = kCofiniteFamily;
  f.decidable = true;
  f.decide = [](Nat e, Nat x) { return x >= 64 || ((e >> x) & 1) == 0; };
  f.member_at = [](Nat e, Nat x, Nat) { return x >= 64 || ((e >> x) & 1) == 0; };
  f.form = [](Nat e) -> std::optional<PeriodicForm> {
    FiniteSet d = canonical_finite_set(e);
    PeriodicForm pf = full_form();
    pf.threshold = d.empty() ? 0 : d.max() + 1;
    std::vector<Nat> below;
    for (Nat x = 0; x < pf.threshold; ++x)
      if (!d.contains(x)) below.push_back(x);
    pf.below = FiniteSet(std::move(below));
    return pf;
  };
  register_family(std::move(f));
}

void ensure_finite_family() {
  if (Registry::global().has_family(kFiniteFamily)) return;
  Family f;
  f.id = kFiniteFamily;
  f.decidable = true;
  f.decide = [](Nat e, Nat x) { return x < 64 && ((e >> x) & 1) != 0; };
  f.member_at = [](Nat e, Nat x, Nat) { return x < 64 && ((e >> x) & 1) != 0; };
  f.form = [](Nat e) -> std::optional<PeriodicForm> {
    return finite_form(canonical_finite_set(e));
  };
  register_family(std::move(f));
}

// The even/odd class: the set of all naturals, every "all evens plus a
// finite odd part" set and every "all odds plus a finite even part" set.
// Even positions enumerate the consecutive-prefix variants so that sets
// arising from feeding least-unused data sit at small indices; odd
// positions enumerate the general finite parts through canonical sets.
struct EvenOddSet {
  bool is_full = false;
  Nat parity = 0;     // the cofinal parity class when !is_full
  FiniteSet extra;    // the finite part of the other parity
};

EvenOddSet evenodd_decode(Nat i) {
  EvenOddSet r;
  if (i % 2 == 0) {
    Nat j = i / 2;
    if (j == 0) {
      r.is_full = true;
    } else if (j == 1) {
      r.parity = 0;
    } else if (j == 2) {
      r.parity = 1;
    } else if ((j - 3) % 2 == 0) {
      Nat m = (j - 3) / 2;  // evens plus all odds <= 2m+1
      r.parity = 0;
      std::vector<Nat> xs;
      for (Nat v = 0; v <= m; ++v) xs.push_back(2 * v + 1);
      r.extra = FiniteSet(std::move(xs));
    } else {
      Nat m = (j - 4) / 2;  // odds plus all evens <= 2m
      r.parity = 1;
      std::vector<Nat> xs;
      for (Nat v = 0; v <= m; ++v) xs.push_back(2 * v);
      r.extra = FiniteSet(std::move(xs));
    }
  } else {
    Nat g = (i - 1) / 2;
    r.parity = g % 2;
    FiniteSet d = canonical_finite_set(g / 2);
    std::vector<Nat> xs;
    for (Nat v : d) xs.push_back(2 * v + (r.parity == 0 ? 1 : 0));
    r.extra = FiniteSet(std::move(xs));
  }
  return r;
}

bool evenodd_member(Nat i, Nat x) {
  EvenOddSet s = evenodd_decode(i);
  if (s.is_full) return true;
  return x % 2 == s.parity || s.extra.contains(x);
}

void ensure_evenodd_family() {
  if (Registry::global().has_family(kEvenOddFamily)) return;
  Family f;
  f.id = kEvenOddFamily;
  f.decidable = true;
  f.decide = evenodd_member;
  f.member_at = [](Nat i, Nat x, Nat) { return evenodd_member(i, x); };
  f.form = [](Nat i) -> std::optional<PeriodicForm> {
    EvenOddSet s = evenodd_decode(i);
    if (s.is_full) return full_form();
    return parity_plus_finite(s.parity, s.extra);
  };
  register_family(std::move(f));
}

bool propsep_member(Nat i, Nat x) {
  if (i == 0) return true;          // the full set
  return x <= i || (x % 2 == 0);    // {0,...,i} plus evens above i
}

void ensure_propsep_family() {
  if (Registry::global().has_family(kPropSepFamily)) return;
  Family f;
  f.id = kPropSepFamily;
  f.decidable = true;
  f.decide = propsep_member;
  f.member_at = [](Nat i, Nat x, Nat) { return propsep_member(i, x); };
  f.form = [](Nat i) -> std::optional<PeriodicForm> {
    if (i == 0) return full_form();
    std::vector<Nat> xs;
    for (Nat x = 0; x <= i; ++x) xs.push_back(x);
    return parity_plus_finite(0, FiniteSet(std::move(xs)));
  };
  register_family(std::move(f));
}

Target target_from_form(std::string name, const PeriodicForm& form, HypCode code) {
  Target t;
  t.name = std::move(name);
  t.membership = [form](Nat x) { return form.member(x); };
  t.finite = form.is_finite();
  if (t.finite) t.finite_bound = form.threshold;
  t.code = std::move(code);
  return t;
}

}  // namespace

Target nat_target() {
  Target t;
  t.name = "nat";
  t.membership = [](Nat) { return true; };
  t.code = HypCode::tail(0);
  return t;
}

Target initial_segment_target(Nat m) {
  Target t;
  t.name = "segment_" + std::to_string(m);
  t.membership = [m](Nat x) { return x <= m; };
  t.finite = true;
  t.finite_bound = m + 1;
  std::vector<Nat> xs;
  for (Nat x = 0; x <= m; ++x) xs.push_back(x);
  t.code = HypCode::fin(FiniteSet(std::move(xs)));
  return t;
}

Target tail_target(Nat t0) {
  Target t;
  t.name = "tail_" + std::to_string(t0);
  t.membership = [t0](Nat x) { return x >= t0; };
  t.code = HypCode::tail(t0);
  return t;
}

BenchmarkClass gold_class() {
  ensure_gold_family();
  BenchmarkClass c;
  c.name = "gold";
  c.family_id = kGoldFamily;
  c.targets = [](Nat i) {
    if (i == 0) {
      Target t = nat_target();
      t.name = "gold_nat";
      return t;
    }
    Target t = initial_segment_target(i - 1);
    t.name = "gold_segment_" + std::to_string(i - 1);
    return t;
  };
  return c;
}

BenchmarkClass cofinite_class() {
  ensure_cofinite_family();
  BenchmarkClass c;
  c.name = "cofinite";
  c.family_id = kCofiniteFamily;
  c.targets = [](Nat e) {
    FiniteSet d = canonical_finite_set(e);
    Target t;
    t.name = "cofinite_" + std::to_string(e);
    t.membership = [d](Nat x) { return !d.contains(x); };
    t.code = HypCode::diff(HypCode::tail(0), d);
    t.witness_sets = {{"all", HypCode::tail(0)}, {"even", HypCode::stride(2, 0, 0)}};
    return t;
  };
  return c;
}

BenchmarkClass evenodd_class() {
  ensure_evenodd_family();
  BenchmarkClass c;
  c.name = "evenodd";
  c.family_id = kEvenOddFamily;
  c.targets = [](Nat i) {
    EvenOddSet s = evenodd_decode(i);
    Target t;
    t.name = "evenodd_" + std::to_string(i);
    t.membership = [i](Nat x) { return evenodd_member(i, x); };
    if (s.is_full) {
      t.code = HypCode::tail(0);
    } else {
      t.code = HypCode::union_of(HypCode::stride(2, s.parity, 0), HypCode::fin(s.extra));
      t.witness_sets = {{"cofinal_parity", HypCode::stride(2, s.parity, 0)}};
    }
    return t;
  };
  return c;
}

BenchmarkClass propsep_class() {
  ensure_propsep_family();
  BenchmarkClass c;
  c.name = "propsep";
  c.family_id = kPropSepFamily;
  c.targets = [](Nat i) {
    Target t;
    t.name = "propsep_" + std::to_string(i);
    t.membership = [i](Nat x) { return propsep_member(i, x); };
    if (i == 0) {
      t.code = HypCode::tail(0);
    } else {
      std::vector<Nat> xs;
      for (Nat x = 0; x <= i; ++x) xs.push_back(x);
      t.code = HypCode::union_of(HypCode::fin(FiniteSet(std::move(xs))),
                                 HypCode::stride(2, 0, i + 1));
      t.witness_sets = {{"even", HypCode::stride(2, 0, 0)}};
    }
    return t;
  };
  return c;
}

BenchmarkClass infinite_sampled_class() {
  BenchmarkClass c;
  c.name = "infinite_sampled";
  c.targets = [](Nat i) {
    switch (i % 3) {
      case 0: {
        Target t = tail_target(i / 3);
        t.name = "inf_" + std::to_string(i) + "_" + t.name;
        return t;
      }
      case 1: {
        Rng rng{i * 0x9e3779b97f4a7c15ull + 17};
        Nat a = 2 + rng.below(4);
        Nat r = rng.below(a);
        Nat t0 = rng.below(6);
        Target t = target_from_form("inf_" + std::to_string(i) + "_stride",
                                    *periodic_form(HypCode::stride(a, r, t0)),
                                    HypCode::stride(a, r, t0));
        return t;
      }
      default: {
        // Random eventually periodic set with a nonempty residue pattern.
        Rng rng{i * 0xbf58476d1ce4e5b9ull + 5};
        Nat p = 2 + rng.below(5);
        HypCode code = HypCode::stride(p, rng.below(p), rng.below(4));
        if (rng.below(2) == 0)
          code = HypCode::union_of(code, HypCode::stride(p, rng.below(p), rng.below(4)));
        Target t = target_from_form("inf_" + std::to_string(i) + "_periodic",
                                    *periodic_form(code), code);
        return t;
      }
    }
  };
  return c;
}

BenchmarkClass finite_sets_class() {
  ensure_finite_family();
  BenchmarkClass c;
  c.name = "finite";
  c.family_id = kFiniteFamily;
  c.targets = [](Nat e) {
    FiniteSet d = canonical_finite_set(e);
    Target t;
    t.name = "finite_" + std::to_string(e);
    t.membership = [d](Nat x) { return d.contains(x); };
    t.finite = true;
    t.finite_bound = d.empty() ? 0 : d.max() + 1;
    t.code = HypCode::fin(d);
    return t;
  };
  return c;
}

}  // namespace limitlab
