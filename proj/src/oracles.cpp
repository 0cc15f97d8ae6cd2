#include "vrfw/oracles.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace vrfw {

Eigen::VectorXd project_simplex_le(const Eigen::VectorXd& v, double radius) {
  // Projection onto {x >= 0, sum x <= radius}: clip negatives first; if the
  // clipped point already satisfies the budget it is the answer, otherwise
  // project onto the simplex face {x >= 0, sum x = radius}.
  Eigen::VectorXd u = v.cwiseMax(0.0);
  if (u.sum() <= radius) return u;
  std::vector<double> s(u.data(), u.data() + u.size());
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (int k = 0; k < static_cast<int>(s.size()); ++k) {
    cum += s[k];
    const double t = (cum - radius) / (k + 1);
    if (k + 1 == static_cast<int>(s.size()) || s[k + 1] <= t) {
      theta = t;
      break;
    }
  }
  return (u.array() - theta).cwiseMax(0.0);
}

TraceNormBall::TraceNormBall(double tau, int h, int m, int power_iters_max,
                             double power_tol)
    : tau_(tau), h_(h), m_(m), power_iters_max_(power_iters_max),
      power_tol_(power_tol) {
  if (tau <= 0.0) throw std::invalid_argument("TraceNormBall: tau <= 0");
}

namespace {

// Power iteration for the top eigenpair of the smaller Gram matrix of g.
// Returns (sigma1, u1, v1) with g ~ sigma1 * u1 v1^T on the top subspace.
struct TopTriple {
  double sigma;
  Eigen::VectorXd u, v;
};

TopTriple top_singular_triple(const Eigen::MatrixXd& g, int iters_max,
                              double tol, RngStream* rng) {
  const bool tall = g.rows() >= g.cols();
  const Eigen::MatrixXd gram = tall ? Eigen::MatrixXd(g.transpose() * g)
                                    : Eigen::MatrixXd(g * g.transpose());
  const int d = static_cast<int>(gram.rows());
  Eigen::VectorXd x(d);
  if (rng) {
    for (int i = 0; i < d; ++i) x(i) = rng->next_gaussian();
  } else {
    x.setOnes();
  }
  x.normalize();
  double rq_prev = 0.0;
  for (int it = 0; it < iters_max; ++it) {
    Eigen::VectorXd y = gram * x;
    const double nrm = y.norm();
    if (nrm == 0.0) break;  // g in the null space direction; x is arbitrary
    y /= nrm;
    const double rq = y.dot(gram * y);
    x = y;
    if (it > 0 && std::abs(rq - rq_prev) <= tol * std::max(rq, 1e-300)) {
      rq_prev = rq;
      break;
    }
    rq_prev = rq;
  }
  TopTriple out;
  if (tall) {
    out.v = x;
    Eigen::VectorXd gu = g * x;
    out.sigma = gu.norm();
    out.u = out.sigma > 0 ? Eigen::VectorXd(gu / out.sigma)
                          : Eigen::VectorXd::Unit(g.rows(), 0);
  } else {
    out.u = x;
    Eigen::VectorXd gv = g.transpose() * x;
    out.sigma = gv.norm();
    out.v = out.sigma > 0 ? Eigen::VectorXd(gv / out.sigma)
                          : Eigen::VectorXd::Unit(g.cols(), 0);
  }
  return out;
}

}  // namespace

LmoResult TraceNormBall::lmo(const Iterate& g, RngStream* rng) const {
  if (g.rows() != h_ || g.cols() != m_)
    throw std::invalid_argument("TraceNormBall::lmo: shape mismatch");
  if (g.norm() == 0.0) {
    Iterate v = Iterate::Zero(h_, m_);
    v(0, 0) = tau_;
    return {v, true};
  }
  const TopTriple t =
      top_singular_triple(g, power_iters_max_, power_tol_, rng);
  return {Iterate(-tau_ * t.u * t.v.transpose()), false};
}

double TraceNormBall::top_singular_value(const Iterate& g,
                                         RngStream* rng) const {
  return top_singular_triple(g, power_iters_max_, power_tol_, rng).sigma;
}

bool TraceNormBall::contains(const Iterate& w, double tol) const {
  if (w.rows() != h_ || w.cols() != m_) return false;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  return svd.singularValues().sum() <= tau_ * (1.0 + tol) + tol;
}

Iterate TraceNormBall::project(const Iterate& w) const {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sv = svd.singularValues();
  if (sv.sum() <= tau_) return w;
  const Eigen::VectorXd proj = project_simplex_le(sv, tau_);
  return svd.matrixU() * proj.asDiagonal() * svd.matrixV().transpose();
}

Iterate TraceNormBall::sample_point(RngStream& rng) const {
  Iterate w(h_, m_);
  for (int i = 0; i < h_; ++i)
    for (int j = 0; j < m_; ++j) w(i, j) = rng.next_gaussian();
  // Scale into the ball by a uniformly drawn trace-norm budget.
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(w);
  const double nn = svd.singularValues().sum();
  const double target = tau_ * rng.next_double();
  return nn > 0 ? Iterate(w * (target / nn)) : w;
}

LmoResult L1Ball::lmo(const Iterate& g, RngStream*) const {
  if (g.rows() != d_ || g.cols() != 1)
    throw std::invalid_argument("L1Ball::lmo: shape mismatch");
  Iterate v = Iterate::Zero(d_, 1);
  if (g.norm() == 0.0) {
    v(0, 0) = radius_;
    return {v, true};
  }
  int jstar = 0;
  double best = -1.0;
  for (int j = 0; j < d_; ++j) {
    const double a = std::abs(g(j, 0));
    if (a > best) {  // strict: ties keep the lowest index
      best = a;
      jstar = j;
    }
  }
  v(jstar, 0) = g(jstar, 0) > 0 ? -radius_ : radius_;
  return {v, false};
}

bool L1Ball::contains(const Iterate& w, double tol) const {
  if (w.rows() != d_ || w.cols() != 1) return false;
  return w.lpNorm<1>() <= radius_ * (1.0 + tol) + tol;
}

Iterate L1Ball::sample_point(RngStream& rng) const {
  Iterate w(d_, 1);
  for (int j = 0; j < d_; ++j) w(j, 0) = 2.0 * rng.next_double() - 1.0;
  const double n1 = w.lpNorm<1>();
  const double target = radius_ * rng.next_double();
  return n1 > 0 ? Iterate(w * (target / n1)) : w;
}

std::vector<Iterate> L1Ball::vertices() const {
  std::vector<Iterate> out;
  out.reserve(2 * d_);
  for (int j = 0; j < d_; ++j) {
    for (double s : {1.0, -1.0}) {
      Iterate v = Iterate::Zero(d_, 1);
      v(j, 0) = s * radius_;
      out.push_back(v);
    }
  }
  return out;
}

LmoResult L2Ball::lmo(const Iterate& g, RngStream*) const {
  check_same_shape(g, center_, "L2Ball::lmo");
  const double n = g.norm();
  if (n == 0.0) {
    Iterate v = center_;
    v(0, 0) += radius_;
    return {v, true};
  }
  return {Iterate(center_ - (radius_ / n) * g), false};
}

bool L2Ball::contains(const Iterate& w, double tol) const {
  if (w.rows() != center_.rows() || w.cols() != center_.cols()) return false;
  return (w - center_).norm() <= radius_ * (1.0 + tol) + tol;
}

Iterate L2Ball::project(const Iterate& w) const {
  check_same_shape(w, center_, "L2Ball::project");
  const Iterate delta = w - center_;
  const double n = delta.norm();
  if (n <= radius_) return w;
  return center_ + (radius_ / n) * delta;
}

Iterate L2Ball::sample_point(RngStream& rng) const {
  Iterate w(center_.rows(), center_.cols());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = rng.next_gaussian();
  const double n = w.norm();
  const double target = radius_ * std::pow(rng.next_double(),
                                           1.0 / std::max<int>(1, w.size()));
  return n > 0 ? Iterate(center_ + w * (target / n)) : center_;
}

double duality_gap(const Iterate& g, const Iterate& x,
                   const FeasibleDomain& domain, RngStream* rng) {
  const LmoResult r = domain.lmo(g, rng);
  return std::max(0.0, dot(g, x - r.v));
}

}  // namespace vrfw
