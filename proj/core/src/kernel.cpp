#include "limitlab/kernel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

namespace limitlab {

// -- PeriodicForm -------------------------------------------------------------

bool PeriodicForm::is_infinite() const {
  return std::any_of(residues.begin(), residues.end(), [](bool b) { return b; });
}

bool PeriodicForm::contains_all_of(const PeriodicForm& sub) const {
  Nat start = std::max(threshold, sub.threshold);
  for (Nat x = 0; x < start; ++x)
    if (sub.member(x) && !member(x)) return false;
  Nat cycle = std::lcm(period, sub.period);
  for (Nat j = 0; j < cycle; ++j) {
    Nat x = start + j;
    if (sub.residues[x % sub.period] && !residues[x % period]) return false;
  }
  return true;
}

bool PeriodicForm::same_extension(const PeriodicForm& o) const {
  return contains_all_of(o) && o.contains_all_of(*this);
}

// -- Registry -----------------------------------------------------------------

struct OpaqueEntry {
  StageEnumerator fn;
  std::optional<PeriodicForm> exact_form;
  // cumulative[s] = union over u <= s of fn(u) clipped to {0..u}
  std::vector<FiniteSet> cumulative;
  std::mutex m;
};

struct Registry::Impl {
  mutable std::shared_mutex mtx;
  std::map<OpaqueKey, std::shared_ptr<OpaqueEntry>> opaques;
  std::map<std::string, Family> families;
};

Registry::Registry() : impl_(std::make_unique<Impl>()) {}
Registry::~Registry() = default;

Registry& Registry::global() {
  static Registry r;
  return r;
}

HypCode Registry::register_opaque(OpaqueKey key, StageEnumerator fn,
                                  std::optional<PeriodicForm> exact_form) {
  {
    std::unique_lock lk(impl_->mtx);
    auto it = impl_->opaques.find(key);
    if (it == impl_->opaques.end()) {
      auto entry = std::make_shared<OpaqueEntry>();
      entry->fn = std::move(fn);
      entry->exact_form = std::move(exact_form);
      impl_->opaques.emplace(key, std::move(entry));
    }
    // Re-registration with an equal key keeps the original enumerator.
  }
  return HypCode::opaque(std::move(key));
}

void Registry::register_family(Family f) {
  if (f.decidable && !f.decide) throw Error("register_family: decidable family without decide()");
  if (!f.member_at) throw Error("register_family: family without member_at()");
  std::unique_lock lk(impl_->mtx);
  impl_->families.emplace(f.id, std::move(f));  // keeps the first registration
}

bool Registry::has_opaque(const OpaqueKey& key) const {
  std::shared_lock lk(impl_->mtx);
  return impl_->opaques.count(key) > 0;
}

bool Registry::has_family(const std::string& id) const {
  std::shared_lock lk(impl_->mtx);
  return impl_->families.count(id) > 0;
}

const Family& Registry::family(const std::string& id) const {
  std::shared_lock lk(impl_->mtx);
  auto it = impl_->families.find(id);
  if (it == impl_->families.end()) throw Error("unregistered family: " + id);
  return it->second;
}

FiniteSet Registry::opaque_enum_at(const OpaqueKey& key, Nat s) const {
  std::shared_ptr<OpaqueEntry> entry;
  {
    std::shared_lock lk(impl_->mtx);
    auto it = impl_->opaques.find(key);
    if (it == impl_->opaques.end())
      throw Error("unregistered opaque key: " + key.construction + " " + key.params);
    entry = it->second;
  }
  std::lock_guard lk(entry->m);
  while (entry->cumulative.size() <= s) {
    Nat u = entry->cumulative.size();
    std::vector<Nat> emitted = entry->fn(u);
    FiniteSet stage_set = FiniteSet(std::move(emitted)).clipped(u);
    FiniteSet prev = u == 0 ? FiniteSet{} : entry->cumulative[u - 1];
    entry->cumulative.push_back(prev.union_with(stage_set));
  }
  return entry->cumulative[s];
}

std::optional<PeriodicForm> Registry::opaque_form(const OpaqueKey& key) const {
  std::shared_lock lk(impl_->mtx);
  auto it = impl_->opaques.find(key);
  if (it == impl_->opaques.end()) return std::nullopt;
  return it->second->exact_form;
}

HypCode register_opaque(OpaqueKey key, StageEnumerator fn,
                        std::optional<PeriodicForm> exact_form) {
  return Registry::global().register_opaque(std::move(key), std::move(fn),
                                            std::move(exact_form));
}

void register_family(Family f) { Registry::global().register_family(std::move(f)); }

// -- enumeration --------------------------------------------------------------

FiniteSet enum_at(const HypCode& c, Nat s) {
  const auto& n = c.node();
  switch (n.kind) {
    case CodeKind::Fin:
      return n.set.clipped(s);
    case CodeKind::Tail: {
      std::vector<Nat> xs;
      for (Nat x = n.t; x <= s; ++x) xs.push_back(x);
      return FiniteSet(std::move(xs));
    }
    case CodeKind::Stride: {
      std::vector<Nat> xs;
      // least x >= t with x = r (mod a)
      Nat first = n.t + (n.a + n.r % n.a - n.t % n.a) % n.a;
      for (Nat x = first; x <= s; x += n.a) xs.push_back(x);
      return FiniteSet(std::move(xs));
    }
    case CodeKind::Union:
      return enum_at(c.left(), s).union_with(enum_at(c.right(), s));
    case CodeKind::Diff:
      return enum_at(c.left(), s).minus(n.set);
    case CodeKind::Above: {
      FiniteSet inner = enum_at(c.left(), s);
      std::vector<Nat> xs;
      for (Nat x : inner)
        if (x > n.t) xs.push_back(x);
      return FiniteSet(std::move(xs));
    }
    case CodeKind::Pad:
      return enum_at(c.left(), s);
    case CodeKind::Base: {
      const Family& f = Registry::global().family(n.family);
      std::vector<Nat> xs;
      for (Nat x = 0; x <= s; ++x)
        if (f.member_at(n.index, x, s)) xs.push_back(x);
      return FiniteSet(std::move(xs));
    }
    case CodeKind::Opaque:
      return Registry::global().opaque_enum_at(n.key, s);
  }
  throw Error("enum_at: unhandled code kind");
}

bool member_at(const HypCode& c, Nat x, Nat s) {
  if (x > s) return false;
  const auto& n = c.node();
  switch (n.kind) {
    case CodeKind::Fin:
      return n.set.contains(x);
    case CodeKind::Tail:
      return x >= n.t;
    case CodeKind::Stride:
      return x >= n.t && x % n.a == n.r;
    case CodeKind::Union:
      return member_at(c.left(), x, s) || member_at(c.right(), x, s);
    case CodeKind::Diff:
      return !n.set.contains(x) && member_at(c.left(), x, s);
    case CodeKind::Above:
      return x > n.t && member_at(c.left(), x, s);
    case CodeKind::Pad:
      return member_at(c.left(), x, s);
    case CodeKind::Base:
      return Registry::global().family(n.family).member_at(n.index, x, s);
    case CodeKind::Opaque:
      return Registry::global().opaque_enum_at(n.key, s).contains(x);
  }
  throw Error("member_at: unhandled code kind");
}

std::optional<bool> decide_member(const HypCode& c, Nat x) {
  const auto& n = c.node();
  switch (n.kind) {
    case CodeKind::Fin:
      return n.set.contains(x);
    case CodeKind::Tail:
      return x >= n.t;
    case CodeKind::Stride:
      return x >= n.t && x % n.a == n.r;
    case CodeKind::Union: {
      auto l = decide_member(c.left(), x);
      if (l.has_value() && *l) return true;
      auto r = decide_member(c.right(), x);
      if (r.has_value() && *r) return true;
      if (l.has_value() && r.has_value()) return false;
      return std::nullopt;
    }
    case CodeKind::Diff: {
      if (n.set.contains(x)) return false;
      return decide_member(c.left(), x);
    }
    case CodeKind::Above: {
      if (x <= n.t) return false;
      return decide_member(c.left(), x);
    }
    case CodeKind::Pad:
      return decide_member(c.left(), x);
    case CodeKind::Base: {
      const Family& f = Registry::global().family(n.family);
      if (!f.decidable) return std::nullopt;
      return f.decide(n.index, x);
    }
    case CodeKind::Opaque:
      return std::nullopt;
  }
  throw Error("decide_member: unhandled code kind");
}

// -- periodic forms -----------------------------------------------------------

namespace {

constexpr Nat kPeriodCap = 4096;
constexpr Nat kThresholdCap = 1 << 20;

PeriodicForm make_form(Nat threshold, Nat period, std::vector<bool> residues,
                       std::vector<Nat> below) {
  PeriodicForm f;
  f.threshold = threshold;
  f.period = period;
  f.residues = std::move(residues);
  f.below = FiniteSet(std::move(below));
  return f;
}

std::optional<PeriodicForm> merge(const PeriodicForm& l, const PeriodicForm& r,
                                  const std::function<bool(bool, bool)>& op) {
  Nat period = std::lcm(l.period, r.period);
  if (period > kPeriodCap) return std::nullopt;
  Nat threshold = std::max(l.threshold, r.threshold);
  std::vector<bool> residues(period);
  for (Nat j = 0; j < period; ++j) {
    Nat x = threshold + j;
    residues[x % period] = op(l.residues[x % l.period], r.residues[x % r.period]);
  }
  std::vector<Nat> below;
  for (Nat x = 0; x < threshold; ++x)
    if (op(l.member(x), r.member(x))) below.push_back(x);
  return make_form(threshold, period, std::move(residues), std::move(below));
}

}  // namespace

std::optional<PeriodicForm> periodic_form(const HypCode& c) {
  const auto& n = c.node();
  switch (n.kind) {
    case CodeKind::Fin: {
      Nat threshold = n.set.empty() ? 0 : n.set.max() + 1;
      return make_form(threshold, 1, {false}, std::vector<Nat>(n.set.begin(), n.set.end()));
    }
    case CodeKind::Tail:
      return make_form(n.t, 1, {true}, {});
    case CodeKind::Stride: {
      std::vector<bool> residues(n.a, false);
      residues[n.r] = true;
      return make_form(n.t, n.a, std::move(residues), {});
    }
    case CodeKind::Union: {
      auto l = periodic_form(c.left());
      auto r = periodic_form(c.right());
      if (!l || !r) return std::nullopt;
      return merge(*l, *r, [](bool a, bool b) { return a || b; });
    }
    case CodeKind::Diff: {
      auto l = periodic_form(c.left());
      if (!l) return std::nullopt;
      Nat threshold = std::max(l->threshold, n.set.empty() ? 0 : n.set.max() + 1);
      if (threshold > kThresholdCap) return std::nullopt;
      std::vector<Nat> below;
      for (Nat x = 0; x < threshold; ++x)
        if (l->member(x) && !n.set.contains(x)) below.push_back(x);
      return make_form(threshold, l->period, l->residues, std::move(below));
    }
    case CodeKind::Above: {
      auto l = periodic_form(c.left());
      if (!l) return std::nullopt;
      Nat threshold = std::max(l->threshold, n.t + 1);
      if (threshold > kThresholdCap) return std::nullopt;
      std::vector<Nat> below;
      for (Nat x = 0; x < threshold; ++x)
        if (l->member(x) && x > n.t) below.push_back(x);
      return make_form(threshold, l->period, l->residues, std::move(below));
    }
    case CodeKind::Pad:
      return periodic_form(c.left());
    case CodeKind::Base: {
      const Family& f = Registry::global().family(n.family);
      if (!f.form) return std::nullopt;
      return f.form(n.index);
    }
    case CodeKind::Opaque:
      return Registry::global().opaque_form(n.key);
  }
  return std::nullopt;
}

namespace {

CofinalClass classify_parity(const PeriodicForm& f, Nat parity) {
  // Restrict to the residue class {x = parity (mod 2)} and classify the tail.
  Nat cycle = std::lcm<Nat>(f.period, 2);
  bool any = false, all = true;
  for (Nat j = 0; j < cycle; ++j) {
    Nat x = f.threshold + j;
    if (x % 2 != parity) continue;
    bool m = f.residues[x % f.period];
    any = any || m;
    all = all && m;
  }
  if (all) return CofinalClass::AllButFinitely;
  if (any) return CofinalClass::InfinitelyManyButNotAlmostAll;
  return CofinalClass::Finitely;
}

}  // namespace

std::optional<CofinalProfile> cofinal_profile(const HypCode& c) {
  auto f = periodic_form(c);
  if (!f) return std::nullopt;
  CofinalProfile p;
  p.even = classify_parity(*f, 0);
  p.odd = classify_parity(*f, 1);
  p.exact = true;
  return p;
}

CofinalProfile approximate_profile(const HypCode& c, Nat stage) {
  FiniteSet s = enum_at(c, stage);
  CofinalProfile p;
  p.exact = false;
  for (Nat parity = 0; parity < 2; ++parity) {
    Nat present = 0, total = 0;
    for (Nat x = stage / 2 + (stage / 2 % 2 == parity ? 0 : 1); x <= stage; x += 2) {
      ++total;
      if (s.contains(x)) ++present;
    }
    CofinalClass cls;
    if (total == 0 || present == total)
      cls = CofinalClass::AllButFinitely;
    else if (present == 0)
      cls = CofinalClass::Finitely;
    else
      cls = CofinalClass::InfinitelyManyButNotAlmostAll;
    (parity == 0 ? p.even : p.odd) = cls;
  }
  return p;
}

}  // namespace limitlab
