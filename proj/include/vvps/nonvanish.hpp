#ifndef VVPS_NONVANISH_HPP
#define VVPS_NONVANISH_HPP

// Medians of the gamma and beta distributions and the non-vanishing criteria.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vvps/modgroup.hpp"
#include "vvps/seeds.hpp"

namespace vvps {

/// P(a, x) = gamma(a, x) / Gamma(a).
double regularized_incomplete_gamma(double a, double x);
/// I_x(a, b) = B(x; a, b) / B(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Median of Gamma(a, 1).
double gamma_median(double a);
/// Median of Beta(a, b).
double beta_median(double a, double b);

struct CriterionReport {
  std::string criterion;  // classical | elliptic | regionA | regionC
  bool satisfied = false;
  double margin = 0.0;
  std::map<std::string, double> inputs;
  std::map<std::string, double> details;
  std::map<std::string, bool> flags;
  std::vector<std::string> notes;
};

/// nu + m <= M N (k - 8/3) / (4 pi); the sharp test 2 pi (nu + m)/(M N) < median of
/// Gamma(k/2 - 1, 1) is reported in flags["sharp_satisfied"].
CriterionReport classical_criterion(double k, std::int64_t M, std::int64_t N, int nu, double m);

/// N > 4 sqrt(M_B) / (1 - M_B) with M_B the median of Beta(nu/2 + 1, k/2 - 1).
CriterionReport elliptic_criterion(double k, std::int64_t N, int nu);

struct RegionAOptions {
  bool check_A1 = false;  // search for Gamma-equivalent points of A instead of assuming none exist
  std::optional<GroupSpec> gamma;
  double A1_height = 60.0;
};

/// Mass inside and outside A for the classical seed over A = ]0, M] x ]1/N, inf[.
CriterionReport region_test_A(double k, std::int64_t M, std::int64_t N, int nu, double m,
                              const RegionAOptions& opts = {});
CriterionReport region_test_A(const SeedFn& seed, const GroupSpec& gamma, double k,
                              const RegionAOptions& opts = {});

/// True when no two points of ]0, M] x ]1/N, inf[ are equivalent under elements of
/// gamma of norm <= height.
bool check_strip_A1(const GroupSpec& gamma, std::int64_t M, std::int64_t N, double height);

/// radius_bound: 2 cosh(4r) < N^2 + 2; mass_balance: int_0^r > int_r^inf of tanh^nu t cosh^{-k} t sinh 2t dt.
CriterionReport region_test_C(double k, int nu, std::int64_t N, double r);

/// Midpoint of the feasible radius interval of region_test_C, if it is nonempty.
std::optional<double> find_radius(double k, int nu, std::int64_t N);

}  // namespace vvps

#endif  // VVPS_NONVANISH_HPP
