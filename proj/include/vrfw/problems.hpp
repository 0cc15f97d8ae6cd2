#ifndef VRFW_PROBLEMS_HPP
#define VRFW_PROBLEMS_HPP

#include <memory>

#include "vrfw/core.hpp"
#include "vrfw/dataio.hpp"

namespace vrfw {

// Multivariate logistic loss over sparse examples:
//   f_i(w) = log(1 + sum_{l != y_i} exp(w_l.e_i - w_{y_i}.e_i)),
// iterate shape h x m. Scores use max-shifted log-sum-exp so tau = 50 scale
// iterates cannot overflow.
class MulticlassLogistic : public FiniteSumObjective {
 public:
  explicit MulticlassLogistic(SparseDataset data);

  int num_components() const override {
    return static_cast<int>(data_.rows.size());
  }
  int rows() const override { return data_.num_classes; }
  int cols() const override { return data_.num_features; }

  double component_value(int i, const Iterate& w) const override;
  Iterate component_gradient(int i, const Iterate& w) const override;
  void add_component_gradient(int i, const Iterate& w, double coeff,
                              Iterate& acc) const override;

  // max_i ||e_i||^2; the per-class score Hessian has spectral norm <= 1.
  double smoothness_bound() const override { return smoothness_; }
  // sqrt(2) * max_i ||e_i||: the probability coefficients across classes
  // have l2 norm at most sqrt(2).
  std::optional<double> lipschitz_bound() const override {
    return lipschitz_;
  }

  const SparseDataset& data() const { return data_; }

 private:
  // Probability weights p_l (l != y_i) at w; returns the shared scratch.
  void class_probs(int i, const Iterate& w, Eigen::VectorXd& p) const;

  SparseDataset data_;
  double smoothness_ = 0.0;
  double lipschitz_ = 0.0;
};

// Finite sum of diagonal quadratics f_i(w) = (c_i/2) w'.diag(d).w - b_i'.w
// with mean(c_i) = 1 and mean(b_i) = b, so the average Hessian is exactly
// diag(d) with extreme eigenvalues (alpha, l_avg). Closed-form optimum and
// exact constants make it the oracle problem for the rate tests.
class QuadraticProblem : public FiniteSumObjective {
 public:
  QuadraticProblem(Eigen::VectorXd diag, std::vector<double> comp_scale,
                   std::vector<Eigen::VectorXd> comp_offset);

  int num_components() const override {
    return static_cast<int>(comp_scale_.size());
  }
  int rows() const override { return static_cast<int>(diag_.size()); }
  int cols() const override { return 1; }

  double component_value(int i, const Iterate& w) const override;
  Iterate component_gradient(int i, const Iterate& w) const override;
  void add_component_gradient(int i, const Iterate& w, double coeff,
                              Iterate& acc) const override;

  double value(const Iterate& w) const override;
  Iterate full_gradient(const Iterate& w) const override;

  // Valid for every component: max_i c_i * max(diag).
  double smoothness_bound() const override { return smoothness_; }
  std::optional<double> strong_convexity() const override { return alpha_; }
  std::optional<double> lipschitz_bound() const override;

  // Unconstrained minimizer of the average and its value.
  const Iterate& unconstrained_optimum() const { return wstar_; }
  double unconstrained_optimum_value() const { return fstar_; }
  double condition_number() const { return smoothness_ / alpha_; }

  // Lipschitz constant is domain dependent; set after choosing the domain.
  void set_lipschitz_bound(double g) { lipschitz_ = g; }
  const Eigen::VectorXd& hessian_diagonal() const { return diag_; }
  const Eigen::VectorXd& mean_offset() const { return mean_offset_; }

 private:
  Eigen::VectorXd diag_;
  std::vector<double> comp_scale_;
  std::vector<Eigen::VectorXd> comp_offset_;
  Eigen::VectorXd mean_offset_;
  double smoothness_ = 0.0;
  double alpha_ = 0.0;
  double lipschitz_ = -1.0;
  Iterate wstar_;
  double fstar_ = 0.0;
};

// Seeded factory. The average Hessian is diag(linspace(alpha, l_avg));
// per-component curvature scales and offsets are paired so their means are
// exact. `interior_optimum_shift` moves the unconstrained optimum: callers
// wrap the problem in a domain that either contains it (interior tests) or
// not (boundary tests).
QuadraticProblem quadratic_make(int dim, double l_avg, double alpha, int n,
                                std::uint64_t seed, double spread = 0.5,
                                double offset_scale = 1.0);

}  // namespace vrfw

#endif  // VRFW_PROBLEMS_HPP
