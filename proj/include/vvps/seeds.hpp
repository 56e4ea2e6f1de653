#ifndef VVPS_SEEDS_HPP
#define VVPS_SEEDS_HPP

// Seed functions for the two Poincare families.

#include <cstdint>
#include <variant>

#include "vvps/rep.hpp"

namespace vvps {

struct ClassicalSeed {
  int nu = 0;
  int j = 1;  // 1-based column of U^{-1}
  SpectralSplit split;
};

struct EllipticSeed {
  int nu = 0;
  Point xi{0.0, 1.0};
  CVector u;
  double k = 12.0;
};

/// f(tau) = phi(tau) * direction, with
///   classical: phi = exp(2 pi i (nu + m_j) tau / M), direction = U^{-1} e_j;
///   elliptic:  phi = (tau - xi)^nu / (tau - conj xi)^{nu + k}, direction = u.
class SeedFn {
 public:
  static SeedFn classical(int nu, int j, SpectralSplit split);
  static SeedFn elliptic(int nu, const Point& xi, CVector u, double k);

  bool is_classical() const { return std::holds_alternative<ClassicalSeed>(data_); }
  const ClassicalSeed& as_classical() const { return std::get<ClassicalSeed>(data_); }
  const EllipticSeed& as_elliptic() const { return std::get<EllipticSeed>(data_); }

  int nu() const;
  int dim() const { return static_cast<int>(direction_.size()); }
  const CVector& direction() const { return direction_; }

  Complex profile(const Point& tau) const;
  CVector operator()(const Point& tau) const { return profile(tau) * direction_; }

  /// Classical: (nu + m_j) / M, the decay rate of |phi| in units of 2 pi Im tau.
  double decay() const;
  std::int64_t width() const;

 private:
  std::variant<ClassicalSeed, EllipticSeed> data_;
  CVector direction_;
};

inline CVector eval_seed(const SeedFn& f, const Point& tau) { return f(tau); }

/// Largest |(f|_{k,rho} lambda)(tau) - f(tau)| over sampled lambda in `lambda` and tau.
double check_seed_invariance(const SeedFn& f, const GroupSpec& lambda, const RepSpec& rep,
                             const MultiplierSystem& ms, int samples, std::uint64_t rng_seed = 1);

/// The integral of |f| Im^{k/2} dv over the quotient by Lambda.
double seed_strip_integral(const SeedFn& f, double k);

}  // namespace vvps

#endif  // VVPS_SEEDS_HPP
