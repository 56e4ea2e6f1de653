#include "vvps/modgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace vvps {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// x*a + y*b = g with g = gcd(a, b) up to sign.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_tuple(b, a - q * b);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
  }
  x = x0;
  y = y0;
  return a;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

// Congruence membership; only the residues of the entries mod the level matter.
bool congruence_member(GroupSpec::Kind kind, std::int64_t n, std::int64_t a, std::int64_t b,
                       std::int64_t c, std::int64_t d) {
  using K = GroupSpec::Kind;
  switch (kind) {
    case K::SL2Z:
      return true;
    case K::Gamma0:
      return mod(c, n) == 0;
    case K::Gamma1pm: {
      if (mod(c, n) != 0) return false;
      const bool plus = mod(a, n) == mod(1, n) && mod(d, n) == mod(1, n);
      const bool minus = mod(a, n) == mod(-1, n) && mod(d, n) == mod(-1, n);
      return plus || minus;
    }
    case K::GammaNpm: {
      if (mod(b, n) != 0 || mod(c, n) != 0) return false;
      const bool plus = mod(a, n) == mod(1, n) && mod(d, n) == mod(1, n);
      const bool minus = mod(a, n) == mod(-1, n) && mod(d, n) == mod(-1, n);
      return plus || minus;
    }
    default:
      return false;
  }
}

bool norm_then_lex(const IntMatrix2& l, const IntMatrix2& r) {
  if (l.norm_sq() != r.norm_sq()) return l.norm_sq() < r.norm_sq();
  return l < r;
}

}  // namespace

// ---------------------------------------------------------------------------

IntMatrix2::IntMatrix2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c != 1) {
    std::ostringstream os;
    os << "IntMatrix2: determinant of (" << a << "," << b << ";" << c << "," << d
       << ") is not 1";
    throw ArgumentError(os.str());
  }
}

double IntMatrix2::frobenius_norm() const { return std::sqrt(double(norm_sq())); }

IntMatrix2 operator*(const IntMatrix2& l, const IntMatrix2& r) {
  return {l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
          l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_};
}

bool operator<(const IntMatrix2& l, const IntMatrix2& r) {
  return std::tie(l.a_, l.b_, l.c_, l.d_) < std::tie(r.a_, r.b_, r.c_, r.d_);
}

std::ostream& operator<<(std::ostream& os, const IntMatrix2& g) {
  return os << "(" << g.a() << "," << g.b() << ";" << g.c() << "," << g.d() << ")";
}

double RealMatrix2::frobenius_norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

RealMatrix2 RealMatrix2::inverse() const { return {d, -b, -c, a}; }

RealMatrix2 operator*(const RealMatrix2& l, const RealMatrix2& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
          l.c * r.b + l.d * r.d};
}

RealMatrix2 RealMatrix2::translation(double x) { return {1.0, x, 0.0, 1.0}; }
RealMatrix2 RealMatrix2::dilation(double y) {
  const double s = std::sqrt(y);
  return {s, 0.0, 0.0, 1.0 / s};
}
RealMatrix2 RealMatrix2::hyperbolic(double t) { return {std::exp(t), 0.0, 0.0, std::exp(-t)}; }
RealMatrix2 RealMatrix2::rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, -s, s, c};
}

double distance(const RealMatrix2& l, const RealMatrix2& r) {
  return RealMatrix2(l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d).frobenius_norm();
}

Point::Point(double x, double y) : z_(x, y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw ArgumentError("Point: imaginary part must be positive and finite");
}

namespace {
template <typename M>
Point act(const M& g, const Point& tau) {
  const Complex z = tau.z();
  const Complex j = double(g.c) * z + double(g.d);
  const Complex w = (double(g.a) * z + double(g.b)) / j;
  // Imaginary part through Im(g.z) = Im(z)/|j|^2, which stays positive.
  return Point(w.real(), tau.y() / std::norm(j));
}
struct IntView {
  double a, b, c, d;
};
}  // namespace

Point mobius_act(const IntMatrix2& g, const Point& tau) {
  return act(IntView{double(g.a()), double(g.b()), double(g.c()), double(g.d())}, tau);
}
Point mobius_act(const RealMatrix2& g, const Point& tau) { return act(g, tau); }

Complex cocycle_j(const IntMatrix2& g, const Point& tau) {
  return double(g.c()) * tau.z() + double(g.d());
}
Complex cocycle_j(const RealMatrix2& g, const Point& tau) { return g.c * tau.z() + g.d; }

Complex real_power(Complex z, double k) {
  if (z == Complex(0.0, 0.0)) throw DomainError("real_power: zero base");
  if (k == std::floor(k) && std::abs(k) <= 4096.0) {
    long n = static_cast<long>(std::abs(k));
    Complex result(1.0, 0.0);
    Complex base = z;
    while (n > 0) {
      if (n & 1) result *= base;
      base *= base;
      n >>= 1;
    }
    return k < 0 ? 1.0 / result : result;
  }
  double arg = std::arg(z);
  if (arg <= -kPi) arg = kPi;  // atan2(-0.0, x<0) reports -pi
  return std::polar(std::pow(std::abs(z), k), k * arg);
}

IwasawaCoords iwasawa_decompose(const RealMatrix2& g) {
  const double r2 = g.c * g.c + g.d * g.d;
  return {(g.a * g.c + g.b * g.d) / r2, 1.0 / r2, std::atan2(g.c, g.d)};
}

RealMatrix2 iwasawa_compose(const IwasawaCoords& c) {
  return RealMatrix2::translation(c.x) * RealMatrix2::dilation(c.y) *
         RealMatrix2::rotation(c.theta);
}

CartanCoords cartan_decompose(const RealMatrix2& g) {
  const double n2 = g.a * g.a + g.b * g.b + g.c * g.c + g.d * g.d;
  // Singular values s, 1/s with s^2 + s^-2 = n2.
  const double plus = std::sqrt(n2 + 2.0);
  const double minus = std::sqrt(std::max(0.0, n2 - 2.0));
  const double t = std::log(0.5 * (plus + minus));
  // Major axis of g g^T.
  const double p = g.a * g.a + g.b * g.b;
  const double q = g.a * g.c + g.b * g.d;
  const double r = g.c * g.c + g.d * g.d;
  double theta1 = 0.5 * std::atan2(2.0 * q, p - r);
  const RealMatrix2 k2 =
      RealMatrix2::hyperbolic(-t) * RealMatrix2::rotation(-theta1) * g;
  double theta2 = std::atan2(k2.c, k2.a);
  // kappa_{theta+pi} = -kappa_theta: move theta1 into [0, pi).
  if (theta1 < 0.0) {
    theta1 += kPi;
    theta2 += kPi;
  }
  if (theta1 >= kPi) {
    theta1 -= kPi;
    theta2 -= kPi;
  }
  theta2 = std::fmod(theta2, kTwoPi);
  if (theta2 < 0.0) theta2 += kTwoPi;
  if (theta2 >= kTwoPi) theta2 -= kTwoPi;
  return {theta1, t, theta2};
}

RealMatrix2 cartan_compose(const CartanCoords& c) {
  return RealMatrix2::rotation(c.theta1) * RealMatrix2::hyperbolic(c.t) *
         RealMatrix2::rotation(c.theta2);
}

// ---------------------------------------------------------------------------

GroupSpec::GroupSpec(Kind kind, std::int64_t level) : kind_(kind), level_(level) {
  if (level < 1) throw ArgumentError("GroupSpec: level must be a positive integer");
  if (kind == Kind::SL2Z || kind == Kind::PlusMinusIdentity) level_ = 1;
}

bool GroupSpec::finite_index() const {
  return kind_ != Kind::GammaInfinity && kind_ != Kind::PlusMinusIdentity;
}

std::string GroupSpec::kind_name(Kind k) {
  switch (k) {
    case Kind::SL2Z: return "SL2Z";
    case Kind::Gamma0: return "Gamma0";
    case Kind::Gamma1pm: return "Gamma1pm";
    case Kind::GammaNpm: return "GammaNpm";
    case Kind::GammaInfinity: return "GammaInfinity";
    case Kind::PlusMinusIdentity: return "PlusMinusIdentity";
  }
  return "?";
}

GroupSpec::Kind GroupSpec::kind_from_name(const std::string& s) {
  for (Kind k : {Kind::SL2Z, Kind::Gamma0, Kind::Gamma1pm, Kind::GammaNpm,
                 Kind::GammaInfinity, Kind::PlusMinusIdentity}) {
    if (kind_name(k) == s) return k;
  }
  throw ArgumentError("unknown group kind '" + s + "'");
}

std::string GroupSpec::name() const {
  switch (kind_) {
    case Kind::SL2Z:
    case Kind::PlusMinusIdentity:
      return kind_name(kind_);
    default:
      return kind_name(kind_) + "(" + std::to_string(level_) + ")";
  }
}

bool contains(const GroupSpec& group, const IntMatrix2& g) {
  using K = GroupSpec::Kind;
  switch (group.kind()) {
    case K::GammaInfinity:
      return g.c() == 0 && mod(g.b(), group.level()) == 0;
    case K::PlusMinusIdentity:
      return g.b() == 0 && g.c() == 0 && g.a() == g.d();
    default:
      return congruence_member(group.kind(), group.level(), g.a(), g.b(), g.c(), g.d());
  }
}

std::int64_t index_in_sl2z(const GroupSpec& group) {
  using K = GroupSpec::Kind;
  const std::int64_t n = group.level();
  auto gamma0_index = [](std::int64_t n) {
    std::int64_t idx = n;
    for (auto p : prime_factors(n)) idx = idx / p * (p + 1);
    return idx;
  };
  switch (group.kind()) {
    case K::SL2Z:
      return 1;
    case K::Gamma0:
      return gamma0_index(n);
    case K::Gamma1pm:
      return n <= 2 ? gamma0_index(n) : gamma0_index(n) * euler_phi(n) / 2;
    case K::GammaNpm: {
      if (n == 1) return 1;
      std::int64_t order = n * n * n;  // |SL2(Z/nZ)|
      for (auto p : prime_factors(n)) order = order / (p * p) * (p * p - 1);
      return n == 2 ? order : order / 2;
    }
    default:
      throw ArgumentError(group.name() + " has infinite index in SL2(Z)");
  }
}

bool is_subgroup(const GroupSpec& sub, const GroupSpec& super) {
  using K = GroupSpec::Kind;
  if (super.kind() == K::SL2Z || sub.kind() == K::PlusMinusIdentity) return true;
  if (sub.kind() == K::GammaInfinity) return contains(super, IntMatrix2::T(sub.level()));
  if (!super.finite_index()) return false;
  // Both have finite index: compare images mod L.
  const std::int64_t L = std::lcm(sub.level(), super.level());
  if (L <= 48) {
    for (std::int64_t a = 0; a < L; ++a)
      for (std::int64_t b = 0; b < L; ++b)
        for (std::int64_t c = 0; c < L; ++c)
          for (std::int64_t d = 0; d < L; ++d) {
            if (mod(a * d - b * c, L) != mod(1, L)) continue;
            if (congruence_member(sub.kind(), sub.level(), a, b, c, d) &&
                !congruence_member(super.kind(), super.level(), a, b, c, d))
              return false;
          }
    return true;
  }
  // Large levels: every residue class mod L has a lift of norm well below 4L.
  bool ok = true;
  for_each_in_ball(4.0 * double(L), [&](const IntMatrix2& g) {
    if (ok && contains(sub, g) && !contains(super, g)) ok = false;
  });
  return ok;
}

// ---------------------------------------------------------------------------

Word word_in_ST(const IntMatrix2& g) {
  Word w;
  std::int64_t a = g.a(), b = g.b(), c = g.c(), d = g.d();
  auto push_power = [&w](std::int64_t q) {
    const Letter l = q > 0 ? Letter::T : Letter::Tinv;
    for (std::int64_t i = 0; i < std::abs(q); ++i) w.letters.push_back(l);
  };
  while (c != 0) {
    std::int64_t q = floor_div(a, c);
    const std::int64_t r = a - q * c;
    if (2 * std::abs(r) > std::abs(c)) ++q;
    // current = T^q * current', current' = T^-q * current
    push_power(q);
    a -= q * c;
    b -= q * d;
    // current' = -S * (S current')
    w.letters.push_back(Letter::S);
    w.sign = -w.sign;
    std::tie(a, b, c, d) = std::make_tuple(-c, -d, a, b);
  }
  // current = a * T^(a b) with a = d = +-1
  w.sign *= static_cast<int>(a);
  push_power(a * b);
  return w;
}

IntMatrix2 evaluate_word(const Word& w) {
  IntMatrix2 g;
  for (Letter l : w.letters) {
    switch (l) {
      case Letter::S: g = g * IntMatrix2::S(); break;
      case Letter::T: g = g * IntMatrix2::T(1); break;
      case Letter::Tinv: g = g * IntMatrix2::T(-1); break;
    }
  }
  return w.sign < 0 ? -g : g;
}

IntMatrix2 random_element(std::mt19937_64& rng, int max_letters) {
  std::uniform_int_distribution<int> length(0, std::max(0, max_letters));
  std::uniform_int_distribution<int> letter(0, 2);
  IntMatrix2 g = (rng() & 1) ? IntMatrix2::minus_identity() : IntMatrix2::identity();
  const int n = length(rng);
  for (int i = 0; i < n; ++i) {
    switch (letter(rng)) {
      case 0: g = g * IntMatrix2::S(); break;
      case 1: g = g * IntMatrix2::T(1); break;
      default: g = g * IntMatrix2::T(-1); break;
    }
  }
  return g;
}

void for_each_in_ball(double height, const std::function<void(const IntMatrix2&)>& visit) {
  if (!(height * height >= 2.0)) return;
  const std::int64_t r2 = static_cast<std::int64_t>(std::floor(height * height + 1e-9));
  const std::int64_t cmax = static_cast<std::int64_t>(std::floor(std::sqrt(double(r2 - 1))));
  for (std::int64_t c = -cmax; c <= cmax; ++c) {
    for (std::int64_t d = -cmax; d <= cmax; ++d) {
      const std::int64_t cd = c * c + d * d;
      if (cd == 0 || cd > r2 - 1) continue;
      if (std::gcd(c, d) != 1) continue;
      std::int64_t x, y;
      const std::int64_t g = ext_gcd(d, c, x, y);  // x d + y c = g = +-1
      const std::int64_t a0 = x * g;
      const std::int64_t b0 = -y * g;
      // (a0 + t c)^2 + (b0 + t d)^2 <= r2 - cd
      const double A = double(cd);
      const double B = double(a0 * c + b0 * d);
      const double C = double(a0 * a0 + b0 * b0) - double(r2 - cd);
      const double disc = B * B - A * C;
      if (disc < 0.0) continue;
      const double root = std::sqrt(disc);
      const auto t_lo = static_cast<std::int64_t>(std::floor((-B - root) / A)) - 1;
      const auto t_hi = static_cast<std::int64_t>(std::ceil((-B + root) / A)) + 1;
      for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        const std::int64_t a = a0 + t * c;
        const std::int64_t b = b0 + t * d;
        if (a * a + b * b + cd <= r2) visit(IntMatrix2(a, b, c, d));
      }
    }
  }
}

IntMatrix2 canonical_coset_rep(const GroupSpec& lambda, const IntMatrix2& g) {
  using K = GroupSpec::Kind;
  IntMatrix2 h = g;
  const std::int64_t lead = g.c() != 0 ? g.c() : (g.d() != 0 ? g.d() : g.a());
  if (lead < 0) h = -h;
  if (lambda.kind() == K::PlusMinusIdentity) return h;
  if (lambda.kind() != K::GammaInfinity)
    throw ArgumentError("canonical_coset_rep: lambda must be GammaInfinity or PlusMinusIdentity");
  const std::int64_t u = lambda.level() * h.c();
  const std::int64_t v = lambda.level() * h.d();
  const double nstar = -double(h.a() * u + h.b() * v) / double(u * u + v * v);
  const auto n0 = static_cast<std::int64_t>(std::floor(nstar));
  IntMatrix2 best = h;
  bool have = false;
  for (std::int64_t n = n0 - 1; n <= n0 + 2; ++n) {
    const IntMatrix2 cand(h.a() + n * u, h.b() + n * v, h.c(), h.d());
    if (!have || cand.norm_sq() < best.norm_sq() ||
        (cand.norm_sq() == best.norm_sq() && cand < best)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

CosetTable enumerate_cosets(const GroupSpec& lambda, const GroupSpec& gamma, double height) {
  using K = GroupSpec::Kind;
  if (lambda.kind() != K::GammaInfinity && lambda.kind() != K::PlusMinusIdentity)
    throw ArgumentError("enumerate_cosets: lambda must be GammaInfinity or PlusMinusIdentity");
  if (!is_subgroup(lambda, gamma))
    throw ArgumentError("enumerate_cosets: " + lambda.name() + " is not contained in " +
                        gamma.name());
  CosetTable table;
  table.lambda = lambda;
  table.gamma = gamma;
  table.height = height;
  std::set<IntMatrix2> seen;
  for_each_in_ball(height, [&](const IntMatrix2& g) {
    if (contains(gamma, g)) seen.insert(canonical_coset_rep(lambda, g));
  });
  table.reps.assign(seen.begin(), seen.end());
  std::sort(table.reps.begin(), table.reps.end(), norm_then_lex);
  return table;
}

std::vector<IntMatrix2> right_coset_representatives(const GroupSpec& gamma) {
  const std::int64_t index = index_in_sl2z(gamma);
  std::vector<IntMatrix2> reps{IntMatrix2::identity()};
  double height = 2.0;
  while (static_cast<std::int64_t>(reps.size()) < index) {
    std::vector<IntMatrix2> ball;
    for_each_in_ball(height, [&ball](const IntMatrix2& g) { ball.push_back(g); });
    std::sort(ball.begin(), ball.end(), norm_then_lex);
    for (const auto& g : ball) {
      const bool fresh = std::none_of(reps.begin(), reps.end(), [&](const IntMatrix2& r) {
        return contains(gamma, g * r.inverse());
      });
      if (fresh) reps.push_back(g);
      if (static_cast<std::int64_t>(reps.size()) == index) break;
    }
    height *= 2.0;
  }
  return reps;
}

std::int64_t cusp_width(const GroupSpec& gamma, const IntMatrix2& sigma) {
  const std::int64_t cap = gamma.finite_index() ? index_in_sl2z(gamma) : gamma.level();
  const IntMatrix2 inv = sigma.inverse();
  for (std::int64_t m = 1; m <= cap; ++m) {
    if (contains(gamma, sigma * IntMatrix2::T(m) * inv)) return m;
  }
  throw ArgumentError("cusp_width: no parabolic element of " + gamma.name() +
                      " fixes this cusp");
}

}  // namespace vvps
