#include "vvps/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vvps {

CVector slash_k(const VectorField& F, const IntMatrix2& g, const MultiplierSystem& ms,
                const Point& tau) {
  const Complex factor =
      std::conj(ms.evaluate(g)) * real_power(cocycle_j(g, tau), -ms.k());
  return factor * F(mobius_act(g, tau));
}

CVector slash_k_rho(const VectorField& F, const IntMatrix2& g, const RepSpec& rep,
                    const MultiplierSystem& ms, const Point& tau) {
  return rep.evaluate(g).adjoint() * slash_k(F, g, ms, tau);
}

SeriesHandle::SeriesHandle(SeedFn seed, GroupSpec lambda, GroupSpec gamma, RepSpec rep,
                           MultiplierSystem ms, double height)
    : seed_(std::move(seed)),
      cosets_(enumerate_cosets(lambda, gamma, height)),
      rep_(std::move(rep)),
      ms_(ms) {
  prepare();
}

SeriesHandle::SeriesHandle(SeedFn seed, CosetTable cosets, RepSpec rep, MultiplierSystem ms)
    : seed_(std::move(seed)), cosets_(std::move(cosets)), rep_(std::move(rep)), ms_(ms) {
  prepare();
}

void SeriesHandle::prepare() {
  using K = GroupSpec::Kind;
  if (!(ms_.k() > 2.0)) throw DomainError("series: weight must exceed 2 for convergence");
  if (cosets_.reps.empty()) throw ArgumentError("series: coset table is empty");
  if (seed_.dim() != rep_.dim())
    throw ArgumentError("series: seed and representation dimensions differ");
  if (!is_subgroup(cosets_.gamma, rep_.domain()))
    throw ArgumentError("series: representation is not defined on " + cosets_.gamma.name());
  const int p = rep_.dim();
  if (max_abs_diff(rep_.evaluate(IntMatrix2::minus_identity()), CMatrix::Identity(p, p)) > 1e-10)
    throw ArgumentError("series: representation is not normal (rho(-I) != I)");
  if (seed_.is_classical()) {
    if (cosets_.lambda.kind() != K::GammaInfinity || cosets_.lambda.level() != seed_.width())
      throw ArgumentError("series: classical seed needs Lambda = GammaInfinity(M) with its width M");
  } else {
    if (cosets_.lambda.kind() != K::PlusMinusIdentity)
      throw ArgumentError("series: elliptic seed needs Lambda = PlusMinusIdentity");
    if (seed_.as_elliptic().k != ms_.k())
      throw ArgumentError("series: elliptic seed weight differs from the multiplier weight");
  }
  const std::size_t n = cosets_.reps.size();
  coef_.resize(p, static_cast<Eigen::Index>(n));
  weight_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const IntMatrix2& g = cosets_.reps[i];
    coef_.col(i) = std::conj(ms_.evaluate(g)) * (rep_.evaluate(g).adjoint() * seed_.direction());
    weight_[i] = coef_.col(i).norm();
  }
}

SeriesValue SeriesHandle::evaluate(const Point& tau) const {
  if (tau.y() < kMinImaginaryPart)
    throw DomainError("series: Im(tau) below " + std::to_string(kMinImaginaryPart) +
                      " is refused");
  const std::size_t n = cosets_.reps.size();
  std::vector<Complex> scalar(n);
  const double k = ms_.k();
  parallel_for(n, [&](std::size_t i) {
    const IntMatrix2& g = cosets_.reps[i];
    scalar[i] = seed_.profile(mobius_act(g, tau)) * real_power(cocycle_j(g, tau), -k);
  });
  const int p = rep_.dim();
  std::vector<CompensatedComplexSum> sums(p);
  CompensatedSum tail;
  const std::size_t shell = n - n / 10;
  for (std::size_t i = 0; i < n; ++i) {
    for (int r = 0; r < p; ++r) sums[r].add(scalar[i] * coef_(r, static_cast<Eigen::Index>(i)));
    if (i >= shell) tail.add(std::abs(scalar[i]) * weight_[i]);
  }
  SeriesValue out;
  out.value.resize(p);
  for (int r = 0; r < p; ++r) out.value[r] = sums[r].value();
  out.tail = tail.value();
  out.height = cosets_.height;
  out.terms = n;
  return out;
}

VectorField SeriesHandle::field() const {
  return [this](const Point& tau) { return evaluate(tau).value; };
}

TransformationCheck check_transformation(const SeriesHandle& h, const std::vector<IntMatrix2>& gammas,
                                         const std::vector<Point>& taus) {
  TransformationCheck out;
  for (const auto& g : gammas) {
    if (!contains(h.gamma(), g)) {
      std::ostringstream os;
      os << "check_transformation: " << g << " is not in " << h.gamma().name();
      throw ArgumentError(os.str());
    }
  }
  for (const auto& g : gammas) {
    const CMatrix rho_inv = h.rep().evaluate(g).adjoint();
    const Complex v_inv = std::conj(h.multiplier().evaluate(g));
    for (const auto& tau : taus) {
      const SeriesValue here = h.evaluate(tau);
      const SeriesValue there = h.evaluate(mobius_act(g, tau));
      const CVector slashed =
          v_inv * real_power(cocycle_j(g, tau), -h.k()) * (rho_inv * there.value);
      const double res = (slashed - here.value).norm();
      out.residual = std::max(out.residual, res);
      out.relative = std::max(out.relative, res / here.value.norm());
      out.tail = std::max({out.tail, here.tail, there.tail});
    }
  }
  return out;
}

SupNormProbe sup_norm_probe(const SeriesHandle& h, const std::vector<Point>& grid) {
  SupNormProbe out;
  for (const auto& tau : grid) {
    const double v = h.evaluate(tau).value.norm() * std::pow(tau.y(), 0.5 * h.k());
    if (v > out.value) {
      out.value = v;
      out.argmax = tau;
    }
  }
  return out;
}

}  // namespace vvps
