#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/QR>

#include "vvps/rep.hpp"

using namespace vvps;

namespace {

CMatrix random_unitary(int p, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(a);
  return qr.householderQ() * CMatrix::Identity(p, p);
}

CMatrix scalar(Complex z) { return CMatrix::Constant(1, 1, z); }

// One-dimensional characters of SL2(Z): S -> zeta^{-3a}, T -> zeta^a, zeta = e^{2 pi i / 12}.
RepSpec character(int a) {
  const Complex zeta = std::exp(Complex(0.0, kTwoPi / 12.0));
  return RepSpec::st_generated(scalar(std::pow(zeta, -3 * a)), scalar(std::pow(zeta, a)));
}

// S -> I, T -> W diag(e^{2 pi i/3}, 1) W^*.
RepSpec order_three(std::mt19937_64& rng) {
  const CMatrix w = random_unitary(2, rng);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = std::exp(Complex(0.0, kTwoPi / 3.0));
  d(1, 1) = 1.0;
  return RepSpec::st_generated(CMatrix::Identity(2, 2), w * d * w.adjoint());
}

// Through PSL2(Z) = Z/2 * Z/3: S -> diag(1, -1), ST -> R diag(1, w) R^T with the rotation
// angle chosen so that T has eigenvalues i and e^{7 pi i / 6}.
RepSpec two_dim_with_eigenvalue_i() {
  const double theta = 0.5 * std::acos(-1.0 / std::sqrt(3.0));
  CMatrix r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = std::exp(Complex(0.0, kTwoPi / 3.0));
  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  const CMatrix u = r * d * r.transpose();
  return RepSpec::st_generated(s, s * u);
}

double homomorphism_residual(const RepSpec& rep, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  int done = 0;
  while (done < samples) {
    const IntMatrix2 g1 = random_element(rng, 10);
    const IntMatrix2 g2 = random_element(rng, 10);
    if (!contains(rep.domain(), g1) || !contains(rep.domain(), g2)) continue;
    worst = std::max(worst, max_abs_diff(rep.evaluate(g1 * g2), rep.evaluate(g1) * rep.evaluate(g2)));
    ++done;
  }
  return worst;
}

double unitarity_residual(const RepSpec& rep, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const CMatrix id = CMatrix::Identity(rep.dim(), rep.dim());
  for (int s = 0; s < samples; ++s) {
    const IntMatrix2 g = random_element(rng, 12);
    if (!contains(rep.domain(), g)) continue;
    const CMatrix r = rep.evaluate(g);
    worst = std::max(worst, max_abs_diff(r * r.adjoint(), id));
  }
  return worst;
}

double reconstruction_residual(const RepSpec& rep, const MultiplierSystem& ms,
                               const SpectralSplit& sp) {
  const Complex phase = std::exp(Complex(0.0, kTwoPi * ms.kappa() * double(sp.M)));
  const CMatrix lhs = phase * rep.evaluate(IntMatrix2::T(sp.M));
  CMatrix diag = CMatrix::Zero(rep.dim(), rep.dim());
  for (int j = 0; j < rep.dim(); ++j) diag(j, j) = std::exp(Complex(0.0, kTwoPi * sp.m[j]));
  return std::max(max_abs_diff(sp.U.adjoint() * diag * sp.U, lhs),
                  max_abs_diff(sp.U * sp.U.adjoint(), CMatrix::Identity(rep.dim(), rep.dim())));
}

const std::vector<Complex> kLegendre5{0.0, 1.0, -1.0, -1.0, 1.0};

}  // namespace

TEST_SUITE("rep") {

TEST_CASE("trivial representation") {
  const auto rep = RepSpec::trivial(3);
  CHECK(rep.evaluate(IntMatrix2(2, 1, 1, 1)) == CMatrix::Identity(3, 3));
  CHECK_THROWS_AS(RepSpec::trivial(0), ArgumentError);
  const auto on_g0 = RepSpec::trivial(1, GroupSpec::gamma0(2));
  CHECK_THROWS_AS(on_g0.evaluate(IntMatrix2::S()), ArgumentError);
}

TEST_CASE("dirichlet characters on Gamma0(N)") {
  const auto rep = RepSpec::dirichlet(5, kLegendre5);
  CHECK(rep.domain() == GroupSpec::gamma0(5));
  CHECK(rep.evaluate(IntMatrix2(1, 0, 5, 1))(0, 0) == Complex(1.0, 0.0));
  CHECK(rep.evaluate(IntMatrix2(2, 1, 5, 3))(0, 0) == Complex(-1.0, 0.0));
  CHECK_THROWS_AS(rep.evaluate(IntMatrix2::S()), ArgumentError);
  CHECK(homomorphism_residual(rep, 100, 1) <= 1e-12);
  CHECK_THROWS_AS(RepSpec::dirichlet(5, {0.0, 1.0, 1.0, -1.0, 1.0}), ArgumentError);
  CHECK_THROWS_AS(RepSpec::dirichlet(5, {0.0, 1.0, 2.0, 0.5, 1.0}), ArgumentError);
  CHECK_THROWS_AS(RepSpec::dirichlet(5, {0.0, 1.0}), ArgumentError);
}

TEST_CASE("representations from images of S and T") {
  std::mt19937_64 rng(21);
  for (int a = 0; a < 12; ++a) {
    const auto rep = character(a);
    CHECK(homomorphism_residual(rep, 100, a + 1) <= 1e-10);
  }
  const auto r3 = order_three(rng);
  CHECK(homomorphism_residual(r3, 100, 3) <= 1e-10);
  CHECK(unitarity_residual(r3, 100, 3) <= 1e-10);
  const auto r2 = two_dim_with_eigenvalue_i();
  CHECK(homomorphism_residual(r2, 100, 4) <= 1e-10);
  CHECK(unitarity_residual(r2, 100, 4) <= 1e-10);
  // Conjugating by a unitary keeps the relations.
  const CMatrix w = random_unitary(2, rng);
  const auto conj = RepSpec::st_generated(w * r2.rho_s() * w.adjoint(), w * r2.rho_t() * w.adjoint());
  CHECK(homomorphism_residual(conj, 100, 5) <= 1e-10);

  CHECK(max_abs_diff(r2.evaluate(IntMatrix2::S()), r2.rho_s()) < 1e-15);
  CHECK(max_abs_diff(r2.evaluate(IntMatrix2::T(-3)),
                     r2.rho_t().adjoint() * r2.rho_t().adjoint() * r2.rho_t().adjoint()) < 1e-13);
  CHECK_THROWS_AS(RepSpec::st_generated(scalar(1.0), scalar(Complex(0.0, 1.0))), ArgumentError);
  CHECK_THROWS_AS(RepSpec::st_generated(scalar(2.0), scalar(1.0)), ArgumentError);
}

TEST_CASE("coset permutation") {
  const auto g0 = GroupSpec::gamma0(2);
  const auto reps = right_coset_representatives(g0);
  auto ell = permutation_ell(g0, IntMatrix2::identity(), reps);
  for (int j = 0; j < 3; ++j) CHECK(ell[j] == j);
  ell = permutation_ell(g0, IntMatrix2(1, 0, 2, 1), reps);
  CHECK(ell[0] == 0);

  std::mt19937_64 rng(6);
  for (int s = 0; s < 50; ++s) {
    const IntMatrix2 g = s == 0 ? IntMatrix2::S() : random_element(rng, 10);
    ell = permutation_ell(g0, g, reps);
    std::vector<int> seen(3, 0);
    for (int j = 0; j < 3; ++j) {
      ++seen[ell[j]];
      int hits = 0;
      for (int l = 0; l < 3; ++l)
        if (contains(g0, reps[j] * g.inverse() * reps[l].inverse())) {
          ++hits;
          CHECK(ell[j] == l);
        }
      CHECK(hits == 1);
    }
    CHECK(seen == std::vector<int>{1, 1, 1});
  }
}

TEST_CASE("induction") {
  std::mt19937_64 rng(8);
  const auto r3 = order_three(rng);
  const auto same = RepSpec::induce(r3, {IntMatrix2::identity()});
  for (int s = 0; s < 20; ++s) {
    const IntMatrix2 g = random_element(rng, 10);
    CHECK(max_abs_diff(same.evaluate(g), r3.evaluate(g)) < 1e-13);
  }

  const auto g0 = GroupSpec::gamma0(2);
  const auto cosets = right_coset_representatives(g0);
  const auto perm = RepSpec::induce(RepSpec::trivial(1, g0), cosets);
  CHECK(perm.dim() == 3);
  for (int s = 0; s < 100; ++s) {
    const CMatrix m = perm.evaluate(random_element(rng, 10));
    for (int c = 0; c < 3; ++c) {
      double col = 0.0;
      for (int r = 0; r < 3; ++r) {
        CHECK((m(r, c) == Complex(0.0) || m(r, c) == Complex(1.0)));
        col += m(r, c).real();
      }
      CHECK(col == 1.0);
    }
  }
  CHECK(homomorphism_residual(perm, 100, 9) <= 1e-12);

  // Block layout: block (l(s), s) is the inner image of g_l g g_s^{-1}.
  const auto chi = RepSpec::dirichlet(5, kLegendre5);
  const auto ind = RepSpec::induce(chi, right_coset_representatives(chi.domain()));
  CHECK(ind.dim() == 6);
  for (int s = 0; s < 30; ++s) {
    const IntMatrix2 g = random_element(rng, 10);
    const CMatrix m = ind.evaluate(g);
    const auto ell = permutation_ell(chi.domain(), g, ind.cosets());
    for (int c = 0; c < 6; ++c)
      for (int r = 0; r < 6; ++r) {
        const Complex expect =
            r == ell[c] ? chi.evaluate(ind.cosets()[r] * g * ind.cosets()[c].inverse())(0, 0) : 0.0;
        CHECK(m(r, c) == expect);
      }
  }
  CHECK(homomorphism_residual(ind, 100, 10) <= 1e-10);
  CHECK(unitarity_residual(ind, 100, 10) <= 1e-10);

  auto bad = cosets;
  bad.pop_back();
  CHECK_THROWS_AS(RepSpec::induce(RepSpec::trivial(1, g0), bad), ArgumentError);
  bad = cosets;
  bad[2] = IntMatrix2(1, 0, 2, 1) * bad[1];
  CHECK_THROWS_AS(RepSpec::induce(RepSpec::trivial(1, g0), bad), ArgumentError);
  bad = cosets;
  std::swap(bad[0], bad[1]);
  CHECK_THROWS_AS(RepSpec::induce(RepSpec::trivial(1, g0), bad), ArgumentError);
}

TEST_CASE("normality") {
  const auto triv = MultiplierSystem::trivial_even(12.0);
  auto rep = check_normal(RepSpec::trivial(2), triv, GroupSpec::sl2z(), IntMatrix2::identity());
  CHECK(rep.normal());
  CHECK(rep.order == 1);
  CHECK(rep.width == 1);

  // A character with T -> i has finite monodromy but sends -I to -1.
  rep = check_normal(character(3), triv, GroupSpec::sl2z(), IntMatrix2::identity());
  CHECK(rep.n2);
  CHECK(rep.order == 4);
  CHECK_FALSE(rep.n1);

  rep = check_normal(two_dim_with_eigenvalue_i(), triv, GroupSpec::sl2z(), IntMatrix2::identity());
  CHECK(rep.normal());
  CHECK(rep.order == 12);

  // kappa = 0.123456 is not a rational with small denominator.
  const auto eta = MultiplierSystem::eta_power(12.0 * 0.123456);
  rep = check_normal(RepSpec::trivial(1), eta, GroupSpec::sl2z(), IntMatrix2::identity(), 64);
  CHECK_FALSE(rep.n2);

  const auto g0 = GroupSpec::gamma0(4);
  rep = check_normal(RepSpec::trivial(1, g0), triv, g0, IntMatrix2::S());
  CHECK(rep.normal());
  CHECK(rep.width == 4);
}

TEST_CASE("spectral split") {
  const auto triv = MultiplierSystem::trivial_even(12.0);
  auto sp = spectral_split(RepSpec::trivial(1), triv, 1);
  REQUIRE(sp.m.size() == 1);
  CHECK(sp.m[0] == 1.0);
  CHECK(std::abs(std::abs(sp.U(0, 0)) - 1.0) < 1e-15);

  const auto diag_i = character(3);
  sp = spectral_split(diag_i, triv, 1);
  CHECK(sp.m[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sp.order == 4);
  CHECK(reconstruction_residual(diag_i, triv, sp) <= 1e-10);

  std::mt19937_64 rng(12);
  const auto r3 = order_three(rng);
  sp = spectral_split(r3, triv, 1);
  REQUIRE(sp.m.size() == 2);
  CHECK(sp.m[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sp.m[1] == 1.0);
  CHECK(reconstruction_residual(r3, triv, sp) <= 1e-10);

  const auto r2 = two_dim_with_eigenvalue_i();
  sp = spectral_split(r2, triv, 1);
  CHECK(sp.m[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(sp.m[1] == doctest::Approx(7.0 / 12.0).epsilon(1e-14));
  CHECK(sp.order == 12);
  CHECK(reconstruction_residual(r2, triv, sp) <= 1e-10);

  const auto eta = MultiplierSystem::eta_power(0.5);
  sp = spectral_split(RepSpec::trivial(1), eta, 1);
  CHECK(sp.m[0] == doctest::Approx(1.0 / 24.0).epsilon(1e-14));

  // A permutation representation has the repeated eigenvalue 1.
  const auto perm = RepSpec::induce(RepSpec::trivial(1, GroupSpec::gamma0(2)),
                                    right_coset_representatives(GroupSpec::gamma0(2)));
  sp = spectral_split(perm, triv, 1);
  CHECK(sp.m == std::vector<double>{0.5, 1.0, 1.0});
  CHECK(reconstruction_residual(perm, triv, sp) <= 1e-10);
  sp = spectral_split(perm, triv, 2);
  CHECK(sp.m == std::vector<double>{1.0, 1.0, 1.0});

  const auto irr = MultiplierSystem::eta_power(12.0 * 0.123456);
  CHECK_THROWS_AS(spectral_split(RepSpec::trivial(1), irr, 1, 64), ArgumentError);
  CHECK_THROWS_AS(spectral_split(RepSpec::trivial(1, GroupSpec::gamma_npm(3)), triv, 1), ArgumentError);
}

}  // TEST_SUITE
