#include "vvps/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace vvps {
namespace {

void require_convergent(double k, const char* what) {
  if (!(k > 2.0)) throw DomainError(std::string(what) + ": weight must exceed 2");
}

int panels_for(int ny) { return std::max(1, (ny + 14) / 15); }

}  // namespace

double gamma_function(double s) {
  if (!(s > 0.0)) throw DomainError("gamma_function: argument must be positive");
  return std::tgamma(s);
}

double log_gamma(double s) {
  if (!(s > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(s);
}

void QuadratureSpec::validate() const {
  if (!(y_min > 0.0 && y_max > y_min)) throw ArgumentError("quadrature: need 0 < y_min < y_max");
  if (nx < 16 || ny < 16) throw ArgumentError("quadrature: nx and ny must be at least 16");
  if (!(rel_tol > 0.0)) throw ArgumentError("quadrature: rel_tol must be positive");
  if (!(x_half_width > 0.0)) throw ArgumentError("quadrature: x_half_width must be positive");
}

FourierTable fourier_coefficients(const VectorField& F, const SpectralSplit& split,
                                  const MultiplierSystem& ms, const IntMatrix2& sigma, int n_min,
                                  int n_max, double y0, int nx) {
  if (y0 < kMinImaginaryPart) throw DomainError("fourier_coefficients: y0 too small");
  if (n_max < n_min) throw ArgumentError("fourier_coefficients: empty range of n");
  if (nx < 1) throw ArgumentError("fourier_coefficients: nx must be positive");
  const int p = static_cast<int>(split.m.size());
  const double M = double(split.M);
  const VectorField UF = [&](const Point& t) -> CVector { return split.U * F(t); };

  CMatrix samples(p, nx);
  for (int l = 0; l < nx; ++l) {
    const Point tau(M * l / nx, y0);
    samples.col(l) = slash_k(UF, sigma, ms, tau);
  }
  FourierTable table;
  table.sigma = sigma;
  table.M = split.M;
  table.m = split.m;
  table.n_min = n_min;
  table.n_max = n_max;
  table.y0 = y0;
  table.b.resize(p, n_max - n_min + 1);
  for (int j = 0; j < p; ++j) {
    for (int n = n_min; n <= n_max; ++n) {
      const double freq = (n + split.m[j]) / M;
      CompensatedComplexSum s;
      for (int l = 0; l < nx; ++l)
        s.add(samples(j, l) * std::polar(1.0, -kTwoPi * freq * (M * l / nx)));
      table.b(j, n - n_min) = s.value() / double(nx) * std::exp(kTwoPi * freq * y0);
    }
  }
  return table;
}

std::vector<Complex> elliptic_expansion_coeffs(const std::function<Complex(const Point&)>& Fj,
                                               const Point& xi, double k, int n_max, double r0,
                                               int nt) {
  if (!(r0 > 0.0 && r0 < 1.0)) throw ArgumentError("elliptic_expansion_coeffs: need 0 < r0 < 1");
  if (n_max < 0 || nt < 1) throw ArgumentError("elliptic_expansion_coeffs: bad sizes");
  const Complex z = xi.z();
  std::vector<Complex> g(nt);
  for (int l = 0; l < nt; ++l) {
    const Complex w = std::polar(r0, kTwoPi * l / nt);
    const Point tau((z - w * std::conj(z)) / (1.0 - w));
    g[l] = real_power(tau.z() - std::conj(z), k) * Fj(tau);
  }
  std::vector<Complex> b(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    CompensatedComplexSum s;
    for (int l = 0; l < nt; ++l) s.add(g[l] * std::polar(1.0, -kTwoPi * double(n) * l / nt));
    b[n] = s.value() / (double(nt) * std::pow(r0, n));
  }
  return b;
}

PairingResult petersson_strip(const VectorField& F, const SeedFn& f, const GroupSpec& lambda,
                              double k, const QuadratureSpec& q) {
  using K = GroupSpec::Kind;
  require_convergent(k, "petersson_strip");
  q.validate();
  const bool strip = lambda.kind() == K::GammaInfinity;
  if (!strip && lambda.kind() != K::PlusMinusIdentity)
    throw ArgumentError("petersson_strip: lambda must be GammaInfinity or PlusMinusIdentity");
  const double M = double(lambda.level());
  const double x0 = strip ? 0.0 : f.is_classical() ? 0.0 : f.as_elliptic().xi.x();
  const double X = q.x_half_width;

  // x-integral at height y: periodic trapezoid on ]0, M] or trapezoid on [x0 - X, x0 + X],
  // with node spacing at most y/6 (strip) or y/4 (half-plane).
  auto line = [&](double y) -> Complex {
    CompensatedComplexSum s;
    if (strip) {
      const int n = std::clamp(static_cast<int>(std::ceil(6.0 * M / y)), q.nx, 8192);
      const double h = M / n;
      for (int l = 0; l < n; ++l) {
        const Point tau((l + 0.5) * h, y);
        s.add(f(tau).dot(F(tau)));
      }
      return s.value() * h;
    }
    const int n = std::clamp(static_cast<int>(std::ceil(8.0 * X / y)), q.nx, 8192);
    const double h = 2.0 * X / n;
    for (int l = 0; l <= n; ++l) {
      const Point tau(x0 - X + l * h, y);
      const Complex v = f(tau).dot(F(tau));
      s.add((l == 0 || l == n) ? 0.5 * v : v);
    }
    return s.value() * h;
  };
  QuadOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = q.rel_tol;
  const auto r = integrate_geometric(
      [&](double y) { return line(y) * std::pow(y, k - 2.0); }, q.y_min, q.y_max, panels_for(q.ny),
      opts);
  return {r.value, r.error, r.evaluations};
}

PairingResult petersson_pair_full(const VectorField& F, const VectorField& G,
                                  const std::vector<IntMatrix2>& cosets, double k,
                                  const QuadratureSpec& q) {
  require_convergent(k, "petersson_pair_full");
  q.validate();
  if (cosets.empty()) throw ArgumentError("petersson_pair_full: no coset representatives");
  const GaussRule rule = gauss_legendre(q.nx);
  QuadOptions opts;
  opts.abs_tol = 0.0;
  opts.rel_tol = q.rel_tol;
  PairingResult out;
  CompensatedComplexSum total;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = 0.5 * rule.nodes[i];
    const double y_lo = std::sqrt(1.0 - x * x);
    auto integrand = [&](double y) -> Complex {
      const Point tau(x, y);
      CompensatedComplexSum s;
      for (const auto& g : cosets) {
        const Point gt = mobius_act(g, tau);
        s.add(G(gt).dot(F(gt)) * std::pow(gt.y(), k));
      }
      return s.value() / (y * y);
    };
    const auto r = integrate_geometric(integrand, y_lo, q.y_max, panels_for(q.ny), opts);
    total.add(0.5 * rule.weights[i] * r.value);
    out.error += 0.5 * rule.weights[i] * r.error;
    out.evaluations += r.evaluations;
  }
  out.value = total.value();
  return out;
}

Complex classical_pairing_closed_form(Complex b, std::int64_t M, double k, int nu, double m) {
  require_convergent(k, "classical_pairing_closed_form");
  if (M < 1 || nu < 0 || !(m > 0.0)) throw ArgumentError("classical_pairing_closed_form: bad input");
  const double log_factor =
      k * std::log(double(M)) + log_gamma(k - 1.0) - (k - 1.0) * std::log(4.0 * kPi * (nu + m));
  return b * std::exp(log_factor);
}

Complex elliptic_pairing_closed_form(Complex b, double k, int nu, const Point& xi) {
  require_convergent(k, "elliptic_pairing_closed_form");
  if (nu < 0) throw ArgumentError("elliptic_pairing_closed_form: nu must be nonnegative");
  // nu! / ((k-1) k ... (k+nu-1))
  double ratio = 1.0 / (k - 1.0);
  for (int i = 1; i <= nu; ++i) ratio *= double(i) / (k - 1.0 + i);
  return b * (4.0 * kPi * std::pow(4.0 * xi.y(), -k) * ratio);
}

}  // namespace vvps
