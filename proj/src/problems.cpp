#include "vrfw/problems.hpp"

#include <cmath>

namespace vrfw {

MulticlassLogistic::MulticlassLogistic(SparseDataset data)
    : data_(std::move(data)) {
  if (data_.rows.empty())
    throw std::invalid_argument("MulticlassLogistic: empty dataset");
  if (data_.num_classes < 2)
    throw std::invalid_argument("MulticlassLogistic: need >= 2 classes");
  double max_sq = 0.0;
  for (const auto& row : data_.rows) {
    double sq = 0.0;
    for (const auto& [j, v] : row.features) sq += v * v;
    max_sq = std::max(max_sq, sq);
  }
  smoothness_ = max_sq;
  lipschitz_ = std::sqrt(2.0 * max_sq);
}

void MulticlassLogistic::class_probs(int i, const Iterate& w,
                                     Eigen::VectorXd& p) const {
  const SparseRow& row = data_.rows[i];
  const int h = data_.num_classes;
  p.resize(h);
  // scores s_l = w_l . e_i
  for (int l = 0; l < h; ++l) {
    double s = 0.0;
    for (const auto& [j, v] : row.features) s += w(l, j) * v;
    p(l) = s;
  }
  const double sy = p(row.label);
  double mx = 0.0;  // the implicit "1" term has exponent 0
  for (int l = 0; l < h; ++l) {
    if (l == row.label) continue;
    p(l) -= sy;
    mx = std::max(mx, p(l));
  }
  double denom = std::exp(-mx);
  for (int l = 0; l < h; ++l) {
    if (l == row.label) continue;
    p(l) = std::exp(p(l) - mx);
    denom += p(l);
  }
  for (int l = 0; l < h; ++l) {
    if (l == row.label)
      p(l) = 0.0;
    else
      p(l) /= denom;
  }
}

double MulticlassLogistic::component_value(int i, const Iterate& w) const {
  if (i < 0 || i >= num_components())
    throw std::out_of_range("MulticlassLogistic: index");
  const SparseRow& row = data_.rows[i];
  const int h = data_.num_classes;
  double sy = 0.0;
  for (const auto& [j, v] : row.features) sy += w(row.label, j) * v;
  double mx = 0.0;
  Eigen::VectorXd a(h);
  for (int l = 0; l < h; ++l) {
    if (l == row.label) {
      a(l) = 0.0;
      continue;
    }
    double s = 0.0;
    for (const auto& [j, v] : row.features) s += w(l, j) * v;
    a(l) = s - sy;
    mx = std::max(mx, a(l));
  }
  double sum = std::exp(-mx);  // the "1"
  for (int l = 0; l < h; ++l) {
    if (l == row.label) continue;
    sum += std::exp(a(l) - mx);
  }
  return mx + std::log(sum);
}

void MulticlassLogistic::add_component_gradient(int i, const Iterate& w,
                                                double coeff,
                                                Iterate& acc) const {
  if (i < 0 || i >= num_components())
    throw std::out_of_range("MulticlassLogistic: index");
  const SparseRow& row = data_.rows[i];
  const int h = data_.num_classes;
  Eigen::VectorXd p;
  class_probs(i, w, p);
  double psum = 0.0;
  for (int l = 0; l < h; ++l) psum += p(l);
  for (const auto& [j, v] : row.features) {
    const double cv = coeff * v;
    for (int l = 0; l < h; ++l) {
      if (l == row.label) continue;
      acc(l, j) += cv * p(l);
    }
    acc(row.label, j) -= cv * psum;
  }
}

Iterate MulticlassLogistic::component_gradient(int i, const Iterate& w) const {
  Iterate g = Iterate::Zero(rows(), cols());
  add_component_gradient(i, w, 1.0, g);
  return g;
}

QuadraticProblem::QuadraticProblem(Eigen::VectorXd diag,
                                   std::vector<double> comp_scale,
                                   std::vector<Eigen::VectorXd> comp_offset)
    : diag_(std::move(diag)), comp_scale_(std::move(comp_scale)),
      comp_offset_(std::move(comp_offset)) {
  const int n = static_cast<int>(comp_scale_.size());
  if (n == 0 || comp_offset_.size() != comp_scale_.size())
    throw std::invalid_argument("QuadraticProblem: bad component lists");
  for (double c : comp_scale_)
    if (c <= 0.0)
      throw std::invalid_argument("QuadraticProblem: curvature scale <= 0");
  mean_offset_ = Eigen::VectorXd::Zero(diag_.size());
  for (const auto& b : comp_offset_) mean_offset_ += b;
  mean_offset_ /= n;
  double cmax = 0.0;
  for (double c : comp_scale_) cmax = std::max(cmax, c);
  smoothness_ = cmax * diag_.maxCoeff();
  alpha_ = diag_.minCoeff();
  wstar_ = mean_offset_.cwiseQuotient(diag_);
  fstar_ = -0.5 * mean_offset_.cwiseProduct(wstar_).sum();
}

double QuadraticProblem::component_value(int i, const Iterate& w) const {
  const Eigen::VectorXd& v = w.col(0);
  return 0.5 * comp_scale_[i] * v.cwiseProduct(diag_).dot(v) -
         comp_offset_[i].dot(v);
}

void QuadraticProblem::add_component_gradient(int i, const Iterate& w,
                                              double coeff,
                                              Iterate& acc) const {
  acc.col(0) += coeff * (comp_scale_[i] * diag_.cwiseProduct(w.col(0)) -
                         comp_offset_[i]);
}

Iterate QuadraticProblem::component_gradient(int i, const Iterate& w) const {
  Iterate g = Iterate::Zero(rows(), 1);
  add_component_gradient(i, w, 1.0, g);
  return g;
}

double QuadraticProblem::value(const Iterate& w) const {
  // mean(c_i) = 1 and mean(b_i) = mean_offset_ hold exactly by construction
  const Eigen::VectorXd& v = w.col(0);
  return 0.5 * v.cwiseProduct(diag_).dot(v) - mean_offset_.dot(v);
}

Iterate QuadraticProblem::full_gradient(const Iterate& w) const {
  return diag_.cwiseProduct(w.col(0)) - mean_offset_;
}

std::optional<double> QuadraticProblem::lipschitz_bound() const {
  if (lipschitz_ < 0.0) return {};
  return lipschitz_;
}

QuadraticProblem quadratic_make(int dim, double l_avg, double alpha, int n,
                                std::uint64_t seed, double spread,
                                double offset_scale) {
  if (dim < 1 || n < 1) throw std::invalid_argument("quadratic_make: size");
  if (!(l_avg >= alpha && alpha > 0.0))
    throw std::invalid_argument("quadratic_make: need L >= alpha > 0");
  if (!(spread >= 0.0 && spread < 1.0))
    throw std::invalid_argument("quadratic_make: spread outside [0,1)");
  RngStream rng(seed);
  Eigen::VectorXd diag(dim);
  for (int j = 0; j < dim; ++j)
    diag(j) = dim == 1 ? l_avg
                       : alpha + (l_avg - alpha) * j / (dim - 1);
  // Paired curvature scales so the mean is exactly 1.
  std::vector<double> scale(n, 1.0);
  for (int i = 0; i + 1 < n; i += 2) {
    const double u = spread * (2.0 * rng.next_double() - 1.0);
    scale[i] = 1.0 + u;
    scale[i + 1] = 1.0 - u;
  }
  // Offsets: draw, recenter to zero mean, then add the common target mean.
  Eigen::VectorXd target_mean(dim);
  for (int j = 0; j < dim; ++j)
    target_mean(j) = offset_scale * rng.next_gaussian();
  std::vector<Eigen::VectorXd> offsets(n, Eigen::VectorXd(dim));
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j)
      offsets[i](j) = offset_scale * rng.next_gaussian();
    acc += offsets[i];
  }
  acc /= n;
  for (int i = 0; i < n; ++i) offsets[i] += target_mean - acc;
  return QuadraticProblem(std::move(diag), std::move(scale),
                          std::move(offsets));
}

}  // namespace vrfw
