#ifndef VRFW_ORACLES_HPP
#define VRFW_ORACLES_HPP

#include <vector>

#include "vrfw/core.hpp"

namespace vrfw {

// Euclidean projection of v onto {x >= 0, sum x <= radius}, by the standard
// sort-and-threshold simplex projection. Used for trace-norm projection of
// singular values.
Eigen::VectorXd project_simplex_le(const Eigen::VectorXd& v, double radius);

// {w in R^{h x m} : ||w||_* <= tau}. Frobenius diameter bound 2*tau.
class TraceNormBall : public FeasibleDomain {
 public:
  TraceNormBall(double tau, int h, int m, int power_iters_max = 500,
                double power_tol = 1e-9);

  // Rank-1 vertex -tau * u1 v1^T from power iteration on the smaller Gram
  // matrix of g. Zero gradient returns tau * e1 e1^T with degenerate = true.
  LmoResult lmo(const Iterate& g, RngStream* rng = nullptr) const override;
  double diameter() const override { return 2.0 * tau_; }
  bool contains(const Iterate& w, double tol) const override;
  bool has_projection() const override { return true; }
  // Full SVD + simplex projection of the singular values.
  Iterate project(const Iterate& w) const override;
  Iterate some_point() const override { return Iterate::Zero(h_, m_); }
  Iterate sample_point(RngStream& rng) const override;
  int rows() const override { return h_; }
  int cols() const override { return m_; }

  double tau() const { return tau_; }
  // Top singular value estimate from the most recent lmo (for tests).
  double top_singular_value(const Iterate& g, RngStream* rng = nullptr) const;

 private:
  double tau_;
  int h_, m_;
  int power_iters_max_;
  double power_tol_;
};

// {w : ||w||_1 <= radius} in R^d, vertices +-radius * e_j.
class L1Ball : public FeasibleDomain {
 public:
  L1Ball(double radius, int d) : radius_(radius), d_(d) {}

  LmoResult lmo(const Iterate& g, RngStream* rng = nullptr) const override;
  double diameter() const override { return 2.0 * radius_; }
  bool contains(const Iterate& w, double tol) const override;
  bool has_projection() const override { return false; }
  Iterate some_point() const override { return Iterate::Zero(d_, 1); }
  Iterate sample_point(RngStream& rng) const override;
  int rows() const override { return d_; }
  int cols() const override { return 1; }

  double radius() const { return radius_; }
  std::vector<Iterate> vertices() const;

 private:
  double radius_;
  int d_;
};

// {w : ||w - center|| <= radius} in R^d.
class L2Ball : public FeasibleDomain {
 public:
  L2Ball(double radius, int d)
      : radius_(radius), center_(Iterate::Zero(d, 1)) {}
  L2Ball(double radius, Iterate center)
      : radius_(radius), center_(std::move(center)) {}

  LmoResult lmo(const Iterate& g, RngStream* rng = nullptr) const override;
  double diameter() const override { return 2.0 * radius_; }
  bool contains(const Iterate& w, double tol) const override;
  bool has_projection() const override { return true; }
  Iterate project(const Iterate& w) const override;
  Iterate some_point() const override { return center_; }
  Iterate sample_point(RngStream& rng) const override;
  int rows() const override { return static_cast<int>(center_.rows()); }
  int cols() const override { return static_cast<int>(center_.cols()); }

  double radius() const { return radius_; }
  const Iterate& center() const { return center_; }

 private:
  double radius_;
  Iterate center_;
};

// Frank-Wolfe gap <g, x - lmo(g)> = max_{v} <g, x - v>. Clamped at zero
// from below (the exact value is nonnegative for feasible x).
double duality_gap(const Iterate& g, const Iterate& x,
                   const FeasibleDomain& domain, RngStream* rng = nullptr);

}  // namespace vrfw

#endif  // VRFW_ORACLES_HPP
