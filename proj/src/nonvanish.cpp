#include "vvps/nonvanish.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vvps/analysis.hpp"

namespace vvps {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

double gamma_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// Root of an increasing function on [lo, hi] down to adjacent doubles.
template <typename F>
double bisect(F&& f, double lo, double hi) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

void require_weight(double k, const char* what) {
  if (!(k > 2.0) || !std::isfinite(k)) throw ArgumentError(std::string(what) + ": need k > 2");
}

}  // namespace

double regularized_incomplete_gamma(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a))
    throw DomainError("regularized_incomplete_gamma: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return std::min(1.0, gamma_series(a, x));
  return std::max(0.0, 1.0 - gamma_continued_fraction(a, x));
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0))
    throw DomainError("regularized_incomplete_beta: need a, b > 0 and 0 <= x <= 1");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double gamma_median(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gamma_median: need a > 0");
  auto f = [a](double x) { return regularized_incomplete_gamma(a, x) - 0.5; };
  double lo = std::max(0.0, a - 1.0 / 3.0);
  double hi = a;
  // Chen-Rubin brackets the median; widen only if rounding disagrees.
  if (f(lo) > 0.0) lo = 0.0;
  while (f(hi) < 0.0) hi = 2.0 * hi + 1.0;
  return bisect(f, lo, hi);
}

double beta_median(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_median: need a, b > 0");
  return bisect([a, b](double x) { return regularized_incomplete_beta(a, b, x) - 0.5; }, 0.0, 1.0);
}

CriterionReport classical_criterion(double k, std::int64_t M, std::int64_t N, int nu, double m) {
  require_weight(k, "classical_criterion");
  if (M < 1 || N < 1 || nu < 0 || !(m > 0.0 && m <= 1.0))
    throw ArgumentError("classical_criterion: need M, N >= 1, nu >= 0, m in (0, 1]");
  CriterionReport r;
  r.criterion = "classical";
  r.inputs = {{"k", k}, {"M", double(M)}, {"N", double(N)}, {"nu", double(nu)}, {"m", m}};
  const double MN = double(M) * double(N);
  const double threshold = MN * (k - 8.0 / 3.0) / (4.0 * kPi);
  r.margin = threshold - (nu + m);
  r.satisfied = k > 8.0 / 3.0 && r.margin >= 0.0;
  if (!(k > 8.0 / 3.0)) r.notes.push_back("vacuous for k <= 8/3");
  const double x = kTwoPi * (nu + m) / MN;
  const double median = gamma_median(0.5 * k - 1.0);
  r.details = {{"threshold", threshold},
               {"x", x},
               {"gamma_median", median},
               {"sharp_margin", median - x}};
  r.flags["sharp_satisfied"] = x < median;
  return r;
}

CriterionReport elliptic_criterion(double k, std::int64_t N, int nu) {
  require_weight(k, "elliptic_criterion");
  if (N < 2 || nu < 0) throw ArgumentError("elliptic_criterion: need N >= 2 and nu >= 0");
  CriterionReport r;
  r.criterion = "elliptic";
  r.inputs = {{"k", k}, {"N", double(N)}, {"nu", double(nu)}};
  const double mb = beta_median(0.5 * nu + 1.0, 0.5 * k - 1.0);
  const double rhs = 4.0 * std::sqrt(mb) / (1.0 - mb);
  r.margin = double(N) - rhs;
  r.satisfied = r.margin > 0.0;
  const double r_star = std::atanh(std::sqrt(mb));
  const double r_max = std::acosh((double(N) * N + 2.0) / 2.0) / 4.0;
  r.details = {{"beta_median", mb}, {"rhs", rhs}, {"r_min", r_star}, {"r_max", r_max}};
  return r;
}

bool check_strip_A1(const GroupSpec& gamma, std::int64_t M, std::int64_t N, double height) {
  bool ok = true;
  for_each_in_ball(height, [&](const IntMatrix2& g) {
    if (!ok || !contains(gamma, g)) return;
    if (g.c() == 0) {
      // +-T^b moves ]0, M] off itself unless 0 < |b| < M.
      if (g.b() != 0 && std::abs(g.b()) < M) ok = false;
    } else if (std::abs(g.c()) < N) {
      // Im(g.tau) <= 1/(c^2 y) exceeds 1/N somewhere on y > 1/N.
      ok = false;
    }
  });
  return ok;
}

CriterionReport region_test_A(double k, std::int64_t M, std::int64_t N, int nu, double m,
                              const RegionAOptions& opts) {
  require_weight(k, "region_test_A");
  if (M < 1 || N < 1 || nu < 0 || !(m > 0.0 && m <= 1.0))
    throw ArgumentError("region_test_A: need M, N >= 1, nu >= 0, m in (0, 1]");
  CriterionReport r;
  r.criterion = "regionA";
  r.inputs = {{"k", k}, {"M", double(M)}, {"N", double(N)}, {"nu", double(nu)}, {"m", m}};
  const double s = 0.5 * k - 1.0;
  const double rate = kTwoPi * (nu + m) / double(M);
  const double Y = 1.0 / double(N);
  QuadOptions q;
  q.abs_tol = 0.0;
  q.rel_tol = 1e-13;
  // |f| Im^{k/2} dv = e^{-rate y} y^{s-1} dx dy on the strip; y = Y u^{1/s} below Y.
  const double lower =
      double(M) * std::pow(Y, s) / s *
      integrate([&](double u) { return std::exp(-rate * Y * std::pow(u, 1.0 / s)); }, 0.0, 1.0, q)
          .value;
  const double upper =
      double(M) *
      integrate_to_infinity(
          [&](double y) { return std::exp(-rate * y + (s - 1.0) * std::log(y)); }, Y, q)
          .value;
  r.margin = (upper - lower) / (upper + lower);
  r.satisfied = r.margin > 0.0;
  r.details = {{"lower", lower},
               {"upper", upper},
               {"x", rate * Y},
               {"incomplete_gamma_margin", 1.0 - 2.0 * regularized_incomplete_gamma(s, rate * Y)}};
  if (opts.check_A1) {
    if (!opts.gamma) throw ArgumentError("region_test_A: the A1 check needs a group");
    const bool a1 = check_strip_A1(*opts.gamma, M, N, opts.A1_height);
    r.flags["A1_checked"] = a1;
    if (!a1) {
      r.satisfied = false;
      r.notes.push_back("A1 fails: found Gamma-equivalent points in A");
    }
  } else {
    r.flags["A1_assumed"] = true;
    r.notes.push_back("A1 assumed: holds for Gamma0(N), Gamma1pm(N), GammaNpm(N) with the strip of width M");
  }
  return r;
}

CriterionReport region_test_A(const SeedFn& seed, const GroupSpec& gamma, double k,
                              const RegionAOptions& opts) {
  if (!seed.is_classical()) throw ArgumentError("region_test_A: needs a classical seed");
  const auto& c = seed.as_classical();
  RegionAOptions o = opts;
  if (!o.gamma) o.gamma = gamma;
  return region_test_A(k, c.split.M, gamma.level(), c.nu, c.split.m[c.j - 1], o);
}

CriterionReport region_test_C(double k, int nu, std::int64_t N, double r) {
  require_weight(k, "region_test_C");
  if (N < 2 || nu < 0) throw ArgumentError("region_test_C: need N >= 2 and nu >= 0");
  if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("region_test_C: need r > 0");
  CriterionReport rep;
  rep.criterion = "regionC";
  rep.inputs = {{"k", k}, {"N", double(N)}, {"nu", double(nu)}, {"r", r}};
  const double n2 = double(N) * double(N);
  const double r_max = std::acosh((n2 + 2.0) / 2.0) / 4.0;
  const bool radius_bound = 2.0 * std::cosh(4.0 * r) < n2 + 2.0;

  const double a = 0.5 * nu + 1.0;
  const double b = 0.5 * k - 1.0;
  QuadOptions q;
  q.abs_tol = 0.0;
  q.rel_tol = 1e-13;
  const double head =
      integrate(
          [&](double t) {
            if (t == 0.0) return 0.0;
            return std::exp(nu * std::log(std::tanh(t)) - k * std::log(std::cosh(t))) *
                   std::sinh(2.0 * t);
          },
          0.0, r, q)
          .value;
  // s = tanh^2 t turns the integrand into s^{a-1} (1-s)^{b-1} ds.
  const double th = std::tanh(r);
  const double tail =
      std::exp(log_beta(a, b)) * (1.0 - regularized_incomplete_beta(a, b, th * th));
  const bool mass_balance = head > tail;
  const double slack40 = (r_max - r) / r_max;
  const double slack41 = (head - tail) / (head + tail);
  rep.margin = std::min(slack40, slack41);
  rep.satisfied = radius_bound && mass_balance;
  rep.details = {{"r_max", r_max}, {"head", head}, {"tail", tail},
                 {"slack40", slack40}, {"slack41", slack41}};
  rep.flags = {{"radius_bound", radius_bound}, {"mass_balance", mass_balance}};
  return rep;
}

std::optional<double> find_radius(double k, int nu, std::int64_t N) {
  require_weight(k, "find_radius");
  if (N < 2 || nu < 0) throw ArgumentError("find_radius: need N >= 2 and nu >= 0");
  const double a = 0.5 * nu + 1.0;
  const double b = 0.5 * k - 1.0;
  auto g = [a, b](double r) {
    const double th = std::tanh(r);
    return regularized_incomplete_beta(a, b, th * th) - 0.5;
  };
  double hi = 1.0;
  while (g(hi) <= 0.0 && hi < 40.0) hi *= 2.0;
  const double r_star = bisect(g, 0.0, hi);
  const double n2 = double(N) * double(N);
  const double r_max = std::acosh((n2 + 2.0) / 2.0) / 4.0;
  if (!(r_star < r_max)) return std::nullopt;
  return 0.5 * (r_star + r_max);
}

}  // namespace vvps
