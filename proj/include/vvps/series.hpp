#ifndef VVPS_SERIES_HPP
#define VVPS_SERIES_HPP

// Slash actions and truncated Poincare series.

#include <functional>
#include <vector>

#include "vvps/modgroup.hpp"
#include "vvps/multiplier.hpp"
#include "vvps/rep.hpp"
#include "vvps/seeds.hpp"

namespace vvps {

using VectorField = std::function<CVector(const Point&)>;

/// (F|_k g)(tau) = v(g)^{-1} j(g, tau)^{-k} F(g.tau); the weight is ms.k().
CVector slash_k(const VectorField& F, const IntMatrix2& g, const MultiplierSystem& ms,
                const Point& tau);
/// rho(g)^{-1} (F|_k g)(tau).
CVector slash_k_rho(const VectorField& F, const IntMatrix2& g, const RepSpec& rep,
                    const MultiplierSystem& ms, const Point& tau);

struct SeriesValue {
  CVector value;
  double tail = 0.0;  // sum of term norms over the outermost tenth of the cosets
  double height = 0.0;
  std::size_t terms = 0;
};

/// Evaluations closer than this to the real line are refused.
inline constexpr double kMinImaginaryPart = 0.05;

/// The Poincare series of `seed` over Lambda\Gamma, truncated to the cosets
/// meeting a Frobenius-norm ball.
class SeriesHandle {
 public:
  SeriesHandle(SeedFn seed, GroupSpec lambda, GroupSpec gamma, RepSpec rep, MultiplierSystem ms,
               double height);
  SeriesHandle(SeedFn seed, CosetTable cosets, RepSpec rep, MultiplierSystem ms);

  SeriesValue evaluate(const Point& tau) const;
  CVector operator()(const Point& tau) const { return evaluate(tau).value; }
  VectorField field() const;

  const SeedFn& seed() const { return seed_; }
  const CosetTable& cosets() const { return cosets_; }
  const RepSpec& rep() const { return rep_; }
  const MultiplierSystem& multiplier() const { return ms_; }
  const GroupSpec& lambda() const { return cosets_.lambda; }
  const GroupSpec& gamma() const { return cosets_.gamma; }
  double k() const { return ms_.k(); }
  int dim() const { return rep_.dim(); }

 private:
  void prepare();

  SeedFn seed_;
  CosetTable cosets_;
  RepSpec rep_;
  MultiplierSystem ms_;
  CMatrix coef_;                // column i: v(g_i)^{-1} rho(g_i)^{-1} direction
  std::vector<double> weight_;  // |column i|
};

inline SeriesValue evaluate_poincare(const SeriesHandle& h, const Point& tau) {
  return h.evaluate(tau);
}

struct TransformationCheck {
  double residual = 0.0;  // max |(P|_{k,rho} g)(tau) - P(tau)|
  double relative = 0.0;  // the same divided by |P(tau)|
  double tail = 0.0;      // larger tail bound of the two evaluations
};

TransformationCheck check_transformation(const SeriesHandle& h, const std::vector<IntMatrix2>& gammas,
                                         const std::vector<Point>& taus);

struct SupNormProbe {
  double value = 0.0;  // max |P(tau)| Im(tau)^{k/2}
  Point argmax{0.0, 1.0};
};

SupNormProbe sup_norm_probe(const SeriesHandle& h, const std::vector<Point>& grid);

}  // namespace vvps

#endif  // VVPS_SERIES_HPP
