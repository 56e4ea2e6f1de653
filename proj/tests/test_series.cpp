#include <doctest.h>

#include <cmath>
#include <random>

#include "vvps/series.hpp"

using namespace vvps;

namespace {

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  std::uniform_real_distribution<double> y(0.4, 2.0);
  return {x(rng), y(rng)};
}

// A smooth non-modular test field.
VectorField sample_field() {
  return [](const Point& t) {
    CVector v(2);
    v(0) = std::exp(Complex(0.0, 1.0) * t.z()) / (t.z() + Complex(0.0, 1.0));
    v(1) = t.z() * t.z();
    return v;
  };
}

// Delta = eta^24 from the q-product.
Complex delta(Complex tau) {
  const Complex q = std::exp(Complex(0.0, kTwoPi) * tau);
  Complex prod = 1.0;
  Complex qn = q;
  for (int n = 1; n < 5000 && std::abs(qn) > 1e-20; ++n) {
    prod *= 1.0 - qn;
    qn *= q;
  }
  return q * std::pow(prod, 24);
}

SeriesHandle classical_sl2z(double height) {
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const auto rep = RepSpec::trivial(1);
  return SeriesHandle(SeedFn::classical(0, 1, spectral_split(rep, ms, 1)),
                      GroupSpec::gamma_infinity(1), GroupSpec::sl2z(), rep, ms, height);
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("slash action basics") {
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const VectorField one = [](const Point&) { return CVector::Ones(1).eval(); };
  const Point tau(0.0, 2.0);
  CHECK(std::abs(slash_k(one, IntMatrix2::S(), ms, tau)(0) - std::pow(2.0, -12.0)) < 1e-18);
  const auto F = sample_field();
  const Point t2(0.3, 0.7);
  CHECK((slash_k(F, IntMatrix2::identity(), ms, t2) - F(t2)).norm() == 0.0);
  for (double k : {12.0, 12.5, 3.0, 0.5}) {
    const auto eta = MultiplierSystem::eta_power(k);
    CHECK((slash_k(F, IntMatrix2::minus_identity(), eta, t2) - F(t2)).norm() < 1e-13);
  }
}

TEST_CASE("slash action is a right action") {
  std::mt19937_64 rng(31);
  const auto F = sample_field();
  for (double k : {12.0, 12.5, 0.37}) {
    const auto ms = MultiplierSystem::eta_power(k);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const IntMatrix2 g1 = random_element(rng, 6);
      const IntMatrix2 g2 = random_element(rng, 6);
      const Point tau = random_point(rng);
      const VectorField Fg1 = [&](const Point& t) { return slash_k(F, g1, ms, t); };
      const CVector lhs = slash_k(Fg1, g2, ms, tau);
      const CVector rhs = slash_k(F, g1 * g2, ms, tau);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1e-300, rhs.norm()));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("slash with a representation") {
  std::mt19937_64 rng(32);
  const auto ms = MultiplierSystem::trivial_even(4.0);
  const auto F = sample_field();
  const auto triv = RepSpec::trivial(2);
  const Point tau(0.1, 0.9);
  const IntMatrix2 g(2, 1, 1, 1);
  CHECK((slash_k_rho(F, g, triv, ms, tau) - slash_k(F, g, ms, tau)).norm() == 0.0);

  CMatrix s = CMatrix::Zero(2, 2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  const auto rep = RepSpec::st_generated(s, s);  // S, T -> swap; (ST)^3 = I = S^2
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const IntMatrix2 g1 = random_element(rng, 6);
    const IntMatrix2 g2 = random_element(rng, 6);
    const Point t = random_point(rng);
    const VectorField Fg1 = [&](const Point& x) { return slash_k_rho(F, g1, rep, ms, x); };
    const CVector lhs = slash_k_rho(Fg1, g2, rep, ms, t);
    const CVector rhs = slash_k_rho(F, g1 * g2, rep, ms, t);
    worst = std::max(worst, (lhs - rhs).norm() / rhs.norm());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("construction errors") {
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const auto rep = RepSpec::trivial(1);
  const auto seed = SeedFn::classical(0, 1, spectral_split(rep, ms, 1));
  CHECK_THROWS_AS(SeriesHandle(seed, GroupSpec::gamma_infinity(1), GroupSpec::sl2z(), rep, ms, 1.0),
                  ArgumentError);
  const auto ms2 = MultiplierSystem::trivial_even(2.0);
  CHECK_THROWS_AS(SeriesHandle(seed, GroupSpec::gamma_infinity(1), GroupSpec::sl2z(), rep, ms2, 10.0),
                  DomainError);
  CHECK_THROWS_AS(
      SeriesHandle(seed, GroupSpec::gamma_infinity(1), GroupSpec::sl2z(), RepSpec::trivial(2), ms, 10.0),
      ArgumentError);
  CHECK_THROWS_AS(SeriesHandle(seed, GroupSpec::gamma_infinity(1), GroupSpec::sl2z(),
                               RepSpec::trivial(1, GroupSpec::gamma0(2)), ms, 10.0),
                  ArgumentError);
  CHECK_THROWS_AS(SeriesHandle(seed, GroupSpec::plus_minus_identity(), GroupSpec::sl2z(), rep, ms, 10.0),
                  ArgumentError);
  const auto ell = SeedFn::elliptic(0, Point(0.0, 1.0), CVector::Ones(1), 10.0);
  CHECK_THROWS_AS(SeriesHandle(ell, GroupSpec::plus_minus_identity(), GroupSpec::sl2z(), rep, ms, 10.0),
                  ArgumentError);
}

TEST_CASE("trivial quotient gives the seed itself") {
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const Point i(0.0, 1.0);
  const auto seed = SeedFn::elliptic(0, i, CVector::Ones(1), 12.0);
  const SeriesHandle h(seed, GroupSpec::plus_minus_identity(), GroupSpec::plus_minus_identity(),
                       RepSpec::trivial(1), ms, 5.0);
  CHECK(h.cosets().reps.size() == 1);
  CHECK(std::abs(h(i)(0) - std::pow(2.0, -12.0)) < 1e-18);
}

TEST_CASE("near the real line is refused") {
  const auto h = classical_sl2z(10.0);
  CHECK_THROWS_AS(h.evaluate(Point(0.0, 0.04)), DomainError);
  CHECK_NOTHROW(h.evaluate(Point(0.0, 0.05)));
}

TEST_CASE("weight 12 series is proportional to Delta") {
  const auto h = classical_sl2z(80.0);
  const Point t0(0.3, 1.1);
  const Complex ratio0 = h(t0)(0) / delta(t0.z());
  CHECK(ratio0.real() > 0.5);
  for (Point t : {Point(-0.2, 0.9), Point(0.1, 1.6), Point(0.45, 0.95)}) {
    const Complex ratio = h(t)(0) / delta(t.z());
    CHECK(std::abs(ratio - ratio0) <= 1e-6 * std::abs(ratio0));
  }
}

TEST_CASE("transformation law") {
  const auto h = classical_sl2z(60.0);
  const std::vector<Point> taus{Point(0.3, 1.1), Point(-0.1, 0.8)};
  auto r = check_transformation(h, {IntMatrix2::minus_identity()}, taus);
  CHECK(r.residual <= 1e-12 * h(taus[0]).norm() + 1e-300);
  r = check_transformation(h, {IntMatrix2::S(), IntMatrix2::T(), IntMatrix2(2, 1, 1, 1)}, taus);
  CHECK(r.relative <= 1e-5);
  CHECK(r.tail > 0.0);

  const auto g0 = GroupSpec::gamma0(2);
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const auto rep = RepSpec::trivial(1, g0);
  const SeriesHandle h2(SeedFn::classical(0, 1, spectral_split(rep, ms, 1)),
                        GroupSpec::gamma_infinity(1), g0, rep, ms, 30.0);
  CHECK_THROWS_AS(check_transformation(h2, {IntMatrix2::S()}, taus), ArgumentError);
}

TEST_CASE("residual shrinks as the height doubles") {
  const auto g0 = GroupSpec::gamma0(2);
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const auto rep = RepSpec::trivial(1, g0);
  const auto seed = SeedFn::classical(0, 1, spectral_split(rep, ms, 1));
  const std::vector<IntMatrix2> gs{IntMatrix2::T(), IntMatrix2(1, 0, -2, 1)};
  const std::vector<Point> taus{Point(0.3, 1.1)};
  double prev = 0.0;
  double prev_tail = 0.0;
  for (double H : {12.0, 24.0, 48.0}) {
    const SeriesHandle h(seed, GroupSpec::gamma_infinity(1), g0, rep, ms, H);
    const auto r = check_transformation(h, gs, taus);
    const double tail = h.evaluate(taus[0]).tail;
    if (prev > 0.0) {
      CHECK(r.residual * 2.0 <= prev);
      CHECK(tail < prev_tail);
    }
    prev = r.residual;
    prev_tail = tail;
  }
}

TEST_CASE("half-integral weight with the eta multiplier") {
  const auto ms = MultiplierSystem::eta_power(12.5);
  const auto rep = RepSpec::trivial(1);
  const auto sp = spectral_split(rep, ms, 1);
  CHECK(sp.m[0] == doctest::Approx(1.0 / 24.0));
  const SeriesHandle h(SeedFn::classical(0, 1, sp), GroupSpec::gamma_infinity(1), GroupSpec::sl2z(),
                       rep, ms, 60.0);
  const auto r = check_transformation(h, {IntMatrix2::S(), IntMatrix2::T(), IntMatrix2(1, 0, 3, 1)},
                                      {Point(0.2, 1.2), Point(-0.4, 0.9)});
  CHECK(r.relative <= 1e-5);
}

TEST_CASE("vector-valued series on an induced representation") {
  const auto g0 = GroupSpec::gamma0(2);
  const auto ms = MultiplierSystem::trivial_even(8.0);
  const auto rep = RepSpec::induce(RepSpec::trivial(1, g0), right_coset_representatives(g0));
  const auto sp = spectral_split(rep, ms, 1);
  for (int j = 1; j <= 3; ++j) {
    const SeriesHandle h(SeedFn::classical(0, j, sp), GroupSpec::gamma_infinity(1),
                         GroupSpec::sl2z(), rep, ms, 60.0);
    const auto r = check_transformation(h, {IntMatrix2::S(), IntMatrix2::T()}, {Point(0.2, 1.05)});
    CHECK(r.relative <= 1e-4);
  }
}

TEST_CASE("evaluation is deterministic") {
  const auto h = classical_sl2z(40.0);
  const Point t(0.17, 0.83);
  const auto a = h.evaluate(t);
  const auto b = h.evaluate(t);
  CHECK(a.value == b.value);
  CHECK(a.tail == b.tail);
  CHECK(a.terms == h.cosets().reps.size());
}

TEST_CASE("sup-norm probe") {
  const auto h = classical_sl2z(30.0);
  const std::vector<Point> grid{Point(0.0, 0.9), Point(0.2, 1.0), Point(0.4, 1.5), Point(0.0, 3.0)};
  const auto probe = sup_norm_probe(h, grid);
  double best = 0.0;
  for (const auto& t : grid) best = std::max(best, h(t).norm() * std::pow(t.y(), 6.0));
  CHECK(probe.value == best);
  CHECK(probe.value > 0.0);
}

}  // TEST_SUITE
