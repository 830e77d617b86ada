#ifndef LIMITLAB_LEARNERS_HPP
#define LIMITLAB_LEARNERS_HPP

#include "limitlab/learner.hpp"
#include "limitlab/target.hpp"

namespace limitlab {

/// Conjectures range(sigma) together with every number above the data seen:
/// Union(Fin(range), Tail(max+1)); the whole set on an empty range.
Learner tail_union_learner();

/// Conjectures exactly the data seen so far.
Learner range_learner();

/// Cofinite-set learner: on a new datum x it finds the greatest w <= x
/// missing from the data and conjectures (range below w) plus {z : z > w};
/// with no such w it conjectures the full set. Otherwise repeats itself.
Learner cofinite_learner();

/// Conjectures Union(Fin(range), W); W must be infinite.
Learner superset_approx_learner(HypCode w);

/// Consistent partial learner over a decidable registered family: on a new
/// datum x it outputs the least index i <= step agreeing with the data below
/// x and containing all data; otherwise the data themselves.
Learner urec_cons_part_learner(const std::string& family_id);

/// Learner for the step-plus-evens classes: a new odd datum yields the full
/// set; otherwise with d = max odd seen it yields {y : y <= d} plus the
/// evens above d, and just the evens when no odd was seen.
Learner propsep_learner();

/// Staged search construction lifting a learner O to a weak approximator:
/// each conjecture is an opaque code that enumerates range(sigma) and, once
/// a witness tau for O's long-run largeness is found, also the tail-union
/// hypothesis on sigma.
Learner bcstar_to_weakapprox(Learner o);

// -- fixtures -----------------------------------------------------------------

/// BC^1 fixture for {N - {x}}: conjectures the full set minus the least gap
/// below the data frontier (minus 0 while no gap is visible).
Learner missing_point_learner();

/// BC* fixture on tails that emits the exactly-correct Tail(min) at every
/// other step and a one-anomaly variant in between.
Learner once_correct_tail_learner();

/// BC* fixture on tails emitting Tail(min) infinitely often interleaved
/// with freshly padded copies (correct extension, ever-new identity).
Learner inf_often_tail_learner();

/// Vac*-and-WPart fixture on tails cycling among three fixed codes, two of
/// them exactly correct.
Learner vacstar_wpart_tail_learner();

/// Conservative partial fixture on tails: conjectures Tail(min(range)).
Learner consv_tail_learner();

}  // namespace limitlab

#endif
