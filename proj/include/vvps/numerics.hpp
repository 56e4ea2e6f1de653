#ifndef VVPS_NUMERICS_HPP
#define VVPS_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vvps {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Thrown for malformed inputs: wrong group, bad coset system, invalid config.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation is refused on numeric grounds (Im tau too small,
/// divergent integral, pole of the gamma function).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

template <typename T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
};

/// Globally adaptive 15-point Gauss-Kronrod on a finite interval.
QuadResult<double> integrate(const std::function<double(double)>& f, double a,
                             double b, const QuadOptions& opts = {});
QuadResult<Complex> integrate_complex(const std::function<Complex(double)>& f,
                                      double a, double b,
                                      const QuadOptions& opts = {});

/// Integral over [a, inf) through the map x = a + t/(1-t).
QuadResult<double> integrate_to_infinity(const std::function<double(double)>& f,
                                         double a, const QuadOptions& opts = {});

/// Adaptive Gauss-Kronrod started from geometric panels between lo and hi.
/// Meant for integrands concentrated near one end of a long positive range.
QuadResult<Complex> integrate_geometric(const std::function<Complex(double)>& f,
                                        double lo, double hi, int panels,
                                        const QuadOptions& opts = {});

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

/// Number of worker threads; honours VVPS_THREADS when set.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Each index is processed exactly once; callers
/// write into preallocated per-index slots so results do not depend on the
/// thread layout.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vvps

#endif  // VVPS_NUMERICS_HPP
