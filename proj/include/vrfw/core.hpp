#ifndef VRFW_CORE_HPP
#define VRFW_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace vrfw {

// Decision points are dense matrices; vector problems use shape d x 1.
using Iterate = Eigen::MatrixXd;

inline void check_same_shape(const Iterate& a, const Iterate& b,
                             const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(where) + ": shape mismatch");
}

// Frobenius inner product.
inline double dot(const Iterate& a, const Iterate& b) {
  check_same_shape(a, b, "dot");
  return a.cwiseProduct(b).sum();
}

// (1 - gamma) * x + gamma * v, gamma in [0, 1].
inline Iterate convex_combination(const Iterate& x, const Iterate& v,
                                  double gamma) {
  check_same_shape(x, v, "convex_combination");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("convex_combination: gamma outside [0,1]");
  return (1.0 - gamma) * x + gamma * v;
}

// Oracle-call accounting. Objective evaluations for trace logging are
// deliberately not metered here.
struct CostLedger {
  std::uint64_t exact_gradients = 0;
  std::uint64_t stochastic_gradients = 0;
  std::uint64_t lmo_calls = 0;
  std::uint64_t projections = 0;
  double wall_time = 0.0;
};

// Seeded random stream with a fixed, platform-independent draw procedure
// (splitmix64). The bounded draw and the gaussian transform are spelled out
// here because std::uniform_int_distribution and std::normal_distribution
// are implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in {0, ..., n-1}, rejection sampled to avoid modulo bias.
  std::uint64_t next_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::next_index: n == 0");
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (platform-independent).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mul;
    have_spare_ = true;
    return u * mul;
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// f(w) = (1/n) sum_i f_i(w). Implementations must be safe for concurrent
// read-only evaluation.
class FiniteSumObjective {
 public:
  virtual ~FiniteSumObjective() = default;

  virtual int num_components() const = 0;
  virtual int rows() const = 0;
  virtual int cols() const = 0;

  virtual double component_value(int i, const Iterate& w) const = 0;
  virtual Iterate component_gradient(int i, const Iterate& w) const = 0;

  // acc += coeff * grad f_i(w). Overridable to avoid temporaries in hot loops.
  virtual void add_component_gradient(int i, const Iterate& w, double coeff,
                                      Iterate& acc) const {
    acc += coeff * component_gradient(i, w);
  }

  // Averages accumulate in index order 0..n-1 so results are reproducible.
  virtual double value(const Iterate& w) const {
    double s = 0.0;
    const int n = num_components();
    for (int i = 0; i < n; ++i) s += component_value(i, w);
    return s / n;
  }

  virtual Iterate full_gradient(const Iterate& w) const {
    Iterate g = Iterate::Zero(rows(), cols());
    const int n = num_components();
    for (int i = 0; i < n; ++i) add_component_gradient(i, w, 1.0, g);
    return g / n;
  }

  virtual double smoothness_bound() const = 0;
  virtual std::optional<double> strong_convexity() const { return {}; }
  virtual std::optional<double> lipschitz_bound() const { return {}; }
};

struct LmoResult {
  Iterate v;
  bool degenerate = false;  // zero-gradient convention vertex
};

class FeasibleDomain {
 public:
  virtual ~FeasibleDomain() = default;

  // argmin_{v in domain} <g, v>. rng, when given, seeds any iterative
  // subroutine (power iteration start vectors).
  virtual LmoResult lmo(const Iterate& g, RngStream* rng = nullptr) const = 0;
  virtual double diameter() const = 0;
  virtual bool contains(const Iterate& w, double tol) const = 0;

  virtual bool has_projection() const { return false; }
  virtual Iterate project(const Iterate& w) const {
    throw std::logic_error("domain has no projection");
  }

  // A fixed feasible point, used as the arbitrary initializer of the solvers.
  virtual Iterate some_point() const = 0;
  // Random feasible point for probe-based tests.
  virtual Iterate sample_point(RngStream& rng) const = 0;

  virtual int rows() const = 0;
  virtual int cols() const = 0;
};

}  // namespace vrfw

#endif  // VRFW_CORE_HPP
