#ifndef VVPS_ANALYSIS_HPP
#define VVPS_ANALYSIS_HPP

// Expansions and Petersson inner products.

#include <functional>
#include <vector>

#include "vvps/modgroup.hpp"
#include "vvps/multiplier.hpp"
#include "vvps/rep.hpp"
#include "vvps/seeds.hpp"
#include "vvps/series.hpp"

namespace vvps {

/// Euler's gamma function for s > 0.
double gamma_function(double s);
double log_gamma(double s);

struct QuadratureSpec {
  double y_min = kMinImaginaryPart;
  double y_max = 12.0;
  int nx = 64;               // minimum x nodes per line
  int ny = 64;               // minimum y nodes (15 per initial Gauss-Kronrod panel)
  double rel_tol = 1e-10;    // y-adaptivity target
  double x_half_width = 6.0; // |x - Re xi| cut-off for half-plane integrals

  void validate() const;
};

struct PairingResult {
  Complex value;
  double error = 0.0;  // quadrature error estimate
  int evaluations = 0;
};

struct FourierTable {
  IntMatrix2 sigma;
  std::int64_t M = 1;
  std::vector<double> m;
  int n_min = 0;
  int n_max = 0;
  double y0 = 1.0;
  CMatrix b;  // b(j - 1, n - n_min)

  Complex at(int j, int n) const { return b(j - 1, n - n_min); }
};

/// b_n(j) = (1/M) int_0^M ((U F)_j |_k sigma)(x + i y0) e^{-2 pi i (n + m_j)(x + i y0)/M} dx
/// by the trapezoid rule with nx nodes.
FourierTable fourier_coefficients(const VectorField& F, const SpectralSplit& split,
                                  const MultiplierSystem& ms, const IntMatrix2& sigma, int n_min,
                                  int n_max, double y0, int nx = 64);

/// Coefficients of (tau - conj xi)^k F_j(tau) in powers of w = (tau - xi)/(tau - conj xi),
/// read off the circle |w| = r0 with nt trapezoid nodes.
std::vector<Complex> elliptic_expansion_coeffs(const std::function<Complex(const Point&)>& Fj,
                                               const Point& xi, double k, int n_max, double r0,
                                               int nt = 256);

/// int over Lambda\H of <F, f> Im^k dv: the strip ]0, M] x ]0, inf[ for GammaInfinity(M),
/// the half-plane (cut to |x - Re xi| <= x_half_width) for PlusMinusIdentity.
PairingResult petersson_strip(const VectorField& F, const SeedFn& f, const GroupSpec& lambda,
                              double k, const QuadratureSpec& q = {});

/// sum_j int over the standard fundamental domain of <F(g_j tau), G(g_j tau)> Im(g_j tau)^k dv,
/// Gauss-Legendre in x and adaptive in y above the unit circle.
PairingResult petersson_pair_full(const VectorField& F, const VectorField& G,
                                  const std::vector<IntMatrix2>& cosets, double k,
                                  const QuadratureSpec& q = {});

Complex classical_pairing_closed_form(Complex b, std::int64_t M, double k, int nu, double m);
Complex elliptic_pairing_closed_form(Complex b, double k, int nu, const Point& xi);

}  // namespace vvps

#endif  // VVPS_ANALYSIS_HPP
