#ifndef VVPS_MULTIPLIER_HPP
#define VVPS_MULTIPLIER_HPP

#include <cstdint>
#include <string>

#include "vvps/modgroup.hpp"

namespace vvps {

/// Unitary multiplier system of real weight k on SL2(Z), normalised by
/// v(-I) = (-1)^{-k}, so that mu(gamma, tau) = v(gamma) j(gamma, tau)^k is a cocycle.
class MultiplierSystem {
 public:
  enum class Family { TrivialEven, EtaPower };

  /// v = 1; k must be an even integer.
  static MultiplierSystem trivial_even(double k);
  /// The multiplier of eta^{2k}; any real k.
  static MultiplierSystem eta_power(double k);

  Family family() const { return family_; }
  double k() const { return k_; }
  /// v(T) = exp(2 pi i kappa), kappa in [0, 1).
  double kappa() const { return kappa_; }

  Complex evaluate(const IntMatrix2& g) const;
  /// mu(g, tau) = v(g) j(g, tau)^k.
  Complex automorphy_factor(const IntMatrix2& g, const Point& tau) const;

  static std::string family_name(Family f);
  static Family family_from_name(const std::string& s);
  static MultiplierSystem make(Family f, double k);

 private:
  MultiplierSystem(Family f, double k);
  Family family_;
  double k_;
  double kappa_;
};

inline Complex evaluate_v(const MultiplierSystem& ms, const IntMatrix2& g) { return ms.evaluate(g); }

/// Largest residual of the cocycle identity mu(g1 g2, tau) = mu(g1, g2.tau) mu(g2, tau)
/// (relative to |mu(g1 g2, tau)|) over random samples, together with |v(-I) - (-1)^{-k}|.
double check_consistency(const MultiplierSystem& ms, int samples, std::uint64_t rng_seed = 1);

}  // namespace vvps

#endif  // VVPS_MULTIPLIER_HPP
