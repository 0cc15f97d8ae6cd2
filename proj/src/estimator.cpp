#include "vrfw/estimator.hpp"

#include <algorithm>

namespace vrfw {

Snapshot make_snapshot(const FiniteSumObjective& obj, const Iterate& w0,
                       CostLedger& ledger) {
  ledger.exact_gradients += 1;
  return Snapshot{w0, obj.full_gradient(w0)};
}

Iterate vr_gradient(const FiniteSumObjective& obj, const Iterate& w,
                    const Snapshot& snap, int i, CostLedger& ledger) {
  if (i < 0 || i >= obj.num_components())
    throw std::out_of_range("vr_gradient: component index out of range");
  ledger.stochastic_gradients += 2;
  Iterate g = snap.grad_w0;
  obj.add_component_gradient(i, w, 1.0, g);
  obj.add_component_gradient(i, snap.w0, -1.0, g);
  return g;
}

Iterate minibatch_vr(const FiniteSumObjective& obj, const Iterate& w,
                     const Snapshot& snap, int m, RngStream& rng,
                     CostLedger& ledger) {
  if (m < 1) throw std::invalid_argument("minibatch_vr: m < 1");
  const int n = obj.num_components();
  std::vector<int> idx(m);
  for (int s = 0; s < m; ++s)
    idx[s] = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
  std::sort(idx.begin(), idx.end());
  ledger.stochastic_gradients += 2ULL * m;
  Iterate acc = Iterate::Zero(obj.rows(), obj.cols());
  for (int i : idx) {
    obj.add_component_gradient(i, w, 1.0, acc);
    obj.add_component_gradient(i, snap.w0, -1.0, acc);
  }
  return acc / m + snap.grad_w0;
}

Iterate minibatch_plain(const FiniteSumObjective& obj, const Iterate& w, int m,
                        RngStream& rng, CostLedger& ledger) {
  if (m < 1) throw std::invalid_argument("minibatch_plain: m < 1");
  const int n = obj.num_components();
  std::vector<int> idx(m);
  for (int s = 0; s < m; ++s)
    idx[s] = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(n)));
  std::sort(idx.begin(), idx.end());
  ledger.stochastic_gradients += static_cast<std::uint64_t>(m);
  Iterate acc = Iterate::Zero(obj.rows(), obj.cols());
  for (int i : idx) obj.add_component_gradient(i, w, 1.0, acc);
  return acc / m;
}

double empirical_vr_variance(const FiniteSumObjective& obj, const Iterate& w,
                             const Snapshot& snap, int trials,
                             RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("empirical_vr_variance: trials < 1");
  CostLedger scratch;
  const Iterate full = obj.full_gradient(w);
  double s = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int i = static_cast<int>(
        rng.next_index(static_cast<std::uint64_t>(obj.num_components())));
    s += (vr_gradient(obj, w, snap, i, scratch) - full).squaredNorm();
  }
  return s / trials;
}

double exhaustive_vr_variance(const FiniteSumObjective& obj, const Iterate& w,
                              const Snapshot& snap) {
  CostLedger scratch;
  const Iterate full = obj.full_gradient(w);
  const int n = obj.num_components();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += (vr_gradient(obj, w, snap, i, scratch) - full).squaredNorm();
  return s / n;
}

}  // namespace vrfw
