#ifndef VVPS_REP_HPP
#define VVPS_REP_HPP

// Finite-dimensional unitary representations and the spectral split at a cusp.

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "vvps/modgroup.hpp"
#include "vvps/multiplier.hpp"

namespace vvps {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class RepSpec {
 public:
  enum class Recipe { Trivial, Dirichlet, STGenerated, Induced };

  /// The trivial representation of dimension p on `domain`.
  static RepSpec trivial(int p, const GroupSpec& domain = GroupSpec::sl2z());
  /// gamma -> chi(d mod N) on Gamma0(N); chi[r] for r in [0, N), zero off the units.
  static RepSpec dirichlet(std::int64_t modulus, std::vector<Complex> chi);
  /// Representation of SL2(Z) given by the images of S and T.
  static RepSpec st_generated(CMatrix rho_s, CMatrix rho_t);
  /// Induction to SL2(Z); `cosets` is a right-coset system of inner.domain()
  /// with cosets[0] = I.
  static RepSpec induce(const RepSpec& inner, std::vector<IntMatrix2> cosets);

  Recipe recipe() const { return recipe_; }
  int dim() const { return p_; }
  const GroupSpec& domain() const { return domain_; }

  CMatrix evaluate(const IntMatrix2& g) const;

  const CMatrix& rho_s() const { return rho_s_; }
  const CMatrix& rho_t() const { return rho_t_; }
  const std::vector<Complex>& character() const { return chi_; }
  const RepSpec& inner() const { return *inner_; }
  const std::vector<IntMatrix2>& cosets() const { return cosets_; }

  static std::string recipe_name(Recipe r);

 private:
  RepSpec(Recipe r, int p, GroupSpec domain) : recipe_(r), p_(p), domain_(domain) {}

  Recipe recipe_;
  int p_;
  GroupSpec domain_;
  std::vector<Complex> chi_;
  CMatrix rho_s_, rho_t_;
  std::shared_ptr<const RepSpec> inner_;
  std::vector<IntMatrix2> cosets_;
};

inline CMatrix evaluate_rho(const RepSpec& rep, const IntMatrix2& g) { return rep.evaluate(g); }

/// l(j) (0-based): the index with gamma_j g^{-1} in gamma * gamma_{l(j)}.
std::vector<int> permutation_ell(const GroupSpec& gamma, const IntMatrix2& g,
                                 const std::vector<IntMatrix2>& cosets);

inline RepSpec induce(const RepSpec& rep, std::vector<IntMatrix2> cosets) {
  return RepSpec::induce(rep, std::move(cosets));
}

struct NormalityReport {
  bool n1 = false;  // rho(-I) = I
  bool n2 = false;  // cusp monodromy has finite order
  std::int64_t order = 0;  // least N with (e^{2 pi i kappa M} rho(sigma T^M sigma^-1))^N = I
  std::int64_t width = 0;  // M
  bool normal() const { return n1 && n2; }
};

NormalityReport check_normal(const RepSpec& rep, const MultiplierSystem& ms, const GroupSpec& gamma,
                             const IntMatrix2& sigma, std::int64_t max_order = 1000);

struct SpectralSplit {
  CMatrix U;              // rows: conjugated orthonormal eigenvectors
  std::vector<double> m;  // in (0, 1], non-decreasing
  std::int64_t M = 1;
  std::int64_t order = 1;
};

/// Diagonalises e^{2 pi i kappa M} rho(T^M) = U^{-1} diag(e^{2 pi i m_j}) U.
SpectralSplit spectral_split(const RepSpec& rep, const MultiplierSystem& ms, std::int64_t M,
                             std::int64_t max_order = 1000);

/// Largest entry of |A - B|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace vvps

#endif  // VVPS_REP_HPP
