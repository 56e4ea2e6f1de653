#include "vvps/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vvps {

MultiplierSystem::MultiplierSystem(Family f, double k) : family_(f), k_(k), kappa_(0.0) {
  if (!std::isfinite(k)) throw ArgumentError("multiplier: weight must be finite");
  if (f == Family::TrivialEven) {
    if (std::fmod(k, 2.0) != 0.0)
      throw ArgumentError("multiplier: trivial_even needs an even integer weight");
  } else {
    kappa_ = k / 12.0 - std::floor(k / 12.0);
    if (kappa_ >= 1.0) kappa_ = 0.0;
  }
}

MultiplierSystem MultiplierSystem::trivial_even(double k) { return {Family::TrivialEven, k}; }
MultiplierSystem MultiplierSystem::eta_power(double k) { return {Family::EtaPower, k}; }
MultiplierSystem MultiplierSystem::make(Family f, double k) { return {f, k}; }

std::string MultiplierSystem::family_name(Family f) {
  return f == Family::TrivialEven ? "trivial_even" : "eta_power";
}

MultiplierSystem::Family MultiplierSystem::family_from_name(const std::string& s) {
  if (s == "trivial_even") return Family::TrivialEven;
  if (s == "eta_power") return Family::EtaPower;
  throw ArgumentError("unknown multiplier family '" + s + "'");
}

Complex MultiplierSystem::evaluate(const IntMatrix2& g) const {
  if (family_ == Family::TrivialEven) return {1.0, 0.0};

  // mu(T, tau) = exp(2 pi i kappa) and mu(S, tau) = (-i tau)^k = exp(-i pi k/2) tau^k
  // generate the cocycle of eta^{2k}; fold the word from the right starting at i.
  const Word w = word_in_ST(g);
  const Point tau0(0.0, 1.0);
  Complex tau = tau0.z();
  double phase = 0.0;
  std::size_t i = w.letters.size();
  while (i > 0) {
    const Letter l = w.letters[i - 1];
    if (l == Letter::S) {
      double arg = std::arg(tau);
      phase += k_ * (arg - 0.5 * kPi);
      tau = -1.0 / tau;
      --i;
      continue;
    }
    std::int64_t q = 0;
    while (i > 0 && w.letters[i - 1] != Letter::S) {
      q += w.letters[i - 1] == Letter::T ? 1 : -1;
      --i;
    }
    const double turns = kappa_ * double(q);
    phase += kTwoPi * (turns - std::floor(turns));
    tau += double(q);
  }
  // mu(-I, tau) = 1, so the sign of the word does not contribute.
  double arg_j = std::arg(cocycle_j(g, tau0));
  if (arg_j <= -kPi) arg_j = kPi;
  return std::polar(1.0, std::remainder(phase - k_ * arg_j, kTwoPi));
}

Complex MultiplierSystem::automorphy_factor(const IntMatrix2& g, const Point& tau) const {
  return evaluate(g) * real_power(cocycle_j(g, tau), k_);
}

double check_consistency(const MultiplierSystem& ms, int samples, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> uy(0.3, 2.0);
  double worst = std::abs(ms.evaluate(IntMatrix2::minus_identity()) -
                          real_power(Complex(-1.0, 0.0), -ms.k()));
  for (int s = 0; s < samples; ++s) {
    const IntMatrix2 g1 = random_element(rng, 30);
    const IntMatrix2 g2 = random_element(rng, 30);
    const Point tau(ux(rng), uy(rng));
    const Complex lhs = ms.automorphy_factor(g1 * g2, tau);
    const Complex rhs =
        ms.automorphy_factor(g1, mobius_act(g2, tau)) * ms.automorphy_factor(g2, tau);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    worst = std::max(worst, std::abs(std::abs(ms.evaluate(g1)) - 1.0));
  }
  return worst;
}

}  // namespace vvps
