#ifndef VRFW_ESTIMATOR_HPP
#define VRFW_ESTIMATOR_HPP

#include <vector>

#include "vrfw/core.hpp"

namespace vrfw {

// Anchor point with its precomputed exact gradient.
struct Snapshot {
  Iterate w0;
  Iterate grad_w0;
};

// Computes the full gradient at w0; costs one exact-gradient count.
Snapshot make_snapshot(const FiniteSumObjective& obj, const Iterate& w0,
                       CostLedger& ledger);

// grad f_i(w) - grad f_i(w0) + grad f(w0). Costs two stochastic gradients.
Iterate vr_gradient(const FiniteSumObjective& obj, const Iterate& w,
                    const Snapshot& snap, int i, CostLedger& ledger);

// Mean of m iid variance-reduced samples. Indices are drawn serially from
// rng, then sorted so the accumulation order is fixed.
Iterate minibatch_vr(const FiniteSumObjective& obj, const Iterate& w,
                     const Snapshot& snap, int m, RngStream& rng,
                     CostLedger& ledger);

// Mean of m iid plain stochastic gradients grad f_i(w).
Iterate minibatch_plain(const FiniteSumObjective& obj, const Iterate& w, int m,
                        RngStream& rng, CostLedger& ledger);

// Sample mean of ||vr_gradient - grad f(w)||^2 over `trials` draws.
double empirical_vr_variance(const FiniteSumObjective& obj, const Iterate& w,
                             const Snapshot& snap, int trials, RngStream& rng);

// Exact variance E_i||vr_gradient_i - grad f(w)||^2 by enumerating all
// component indices (no sampling noise).
double exhaustive_vr_variance(const FiniteSumObjective& obj, const Iterate& w,
                              const Snapshot& snap);

}  // namespace vrfw

#endif  // VRFW_ESTIMATOR_HPP
