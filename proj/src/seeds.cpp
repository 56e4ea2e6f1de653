#include "vvps/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vvps/series.hpp"

namespace vvps {

SeedFn SeedFn::classical(int nu, int j, SpectralSplit split) {
  const auto p = static_cast<int>(split.m.size());
  if (nu < 0) throw ArgumentError("classical seed: nu must be nonnegative");
  if (j < 1 || j > p) throw ArgumentError("classical seed: j must lie in 1..p");
  SeedFn f;
  f.direction_ = split.U.adjoint().col(j - 1);
  f.data_ = ClassicalSeed{nu, j, std::move(split)};
  return f;
}

SeedFn SeedFn::elliptic(int nu, const Point& xi, CVector u, double k) {
  if (nu < 0) throw ArgumentError("elliptic seed: nu must be nonnegative");
  if (u.size() == 0 || u.norm() == 0.0) throw ArgumentError("elliptic seed: u must be nonzero");
  if (!std::isfinite(k)) throw ArgumentError("elliptic seed: weight must be finite");
  SeedFn f;
  f.direction_ = u;
  f.data_ = EllipticSeed{nu, xi, std::move(u), k};
  return f;
}

int SeedFn::nu() const {
  return is_classical() ? as_classical().nu : as_elliptic().nu;
}

double SeedFn::decay() const {
  const auto& c = as_classical();
  return (c.nu + c.split.m[c.j - 1]) / double(c.split.M);
}

std::int64_t SeedFn::width() const { return is_classical() ? as_classical().split.M : 1; }

Complex SeedFn::profile(const Point& tau) const {
  if (is_classical()) {
    const double a = decay();
    return std::polar(std::exp(-kTwoPi * a * tau.y()), kTwoPi * a * tau.x());
  }
  const auto& e = as_elliptic();
  Complex num = 1.0;
  for (int i = 0; i < e.nu; ++i) num *= tau.z() - e.xi.z();
  return num / real_power(tau.z() - std::conj(e.xi.z()), e.nu + e.k);
}

double check_seed_invariance(const SeedFn& f, const GroupSpec& lambda, const RepSpec& rep,
                             const MultiplierSystem& ms, int samples, std::uint64_t rng_seed) {
  using K = GroupSpec::Kind;
  if (lambda.kind() != K::GammaInfinity && lambda.kind() != K::PlusMinusIdentity)
    throw ArgumentError("check_seed_invariance: lambda must be GammaInfinity or PlusMinusIdentity");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> uy(0.3, 2.0);
  std::uniform_int_distribution<int> un(-3, 3);
  const VectorField field = [&f](const Point& t) { return f(t); };
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const std::int64_t n = lambda.kind() == K::GammaInfinity ? un(rng) * lambda.level() : 0;
    IntMatrix2 g = IntMatrix2::T(n);
    if (rng() & 1) g = -g;
    const Point tau(ux(rng), uy(rng));
    const CVector diff = slash_k_rho(field, g, rep, ms, tau) - f(tau);
    worst = std::max(worst, diff.norm());
  }
  return worst;
}

double seed_strip_integral(const SeedFn& f, double k) {
  if (!(k > 2.0)) throw DomainError("seed_strip_integral: the integral diverges for k <= 2");
  const double s = 0.5 * k - 1.0;
  if (f.is_classical()) {
    const double M = double(f.width());
    const double rate = kTwoPi * (f.nu() + f.as_classical().split.m[f.as_classical().j - 1]);
    return std::exp(0.5 * k * std::log(M) + std::lgamma(s) - s * std::log(rate));
  }
  // In w = (tau - xi)/(tau - conj xi): |f| Im^{k/2} = |u| (4 Im xi)^{-k/2} |w|^nu (1 - |w|^2)^{k/2}
  // and dv = 4 dA / (1 - |w|^2)^2, so the radial integral is a beta function.
  const auto& e = f.as_elliptic();
  const double a = 0.5 * e.nu + 1.0;
  const double log_beta = std::lgamma(a) + std::lgamma(s) - std::lgamma(a + s);
  return e.u.norm() * 4.0 * kPi * std::exp(log_beta - 0.5 * k * std::log(4.0 * e.xi.y()));
}

}  // namespace vvps
