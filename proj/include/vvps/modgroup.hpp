#ifndef VVPS_MODGROUP_HPP
#define VVPS_MODGROUP_HPP

// SL2(Z), its congruence subgroups and their action on the upper half-plane.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "vvps/numerics.hpp"

namespace vvps {

/// Integer 2x2 matrix of determinant one.
class IntMatrix2 {
 public:
  IntMatrix2() = default;  // identity
  IntMatrix2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t d() const { return d_; }

  std::int64_t norm_sq() const { return a_ * a_ + b_ * b_ + c_ * c_ + d_ * d_; }
  double frobenius_norm() const;

  IntMatrix2 inverse() const { return {d_, -b_, -c_, a_}; }
  IntMatrix2 operator-() const { return {-a_, -b_, -c_, -d_}; }
  friend IntMatrix2 operator*(const IntMatrix2& l, const IntMatrix2& r);
  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
  /// Lexicographic on (a, b, c, d).
  friend bool operator<(const IntMatrix2& l, const IntMatrix2& r);

  static IntMatrix2 identity() { return {}; }
  static IntMatrix2 minus_identity() { return {-1, 0, 0, -1}; }
  static IntMatrix2 S() { return {0, -1, 1, 0}; }
  static IntMatrix2 T(std::int64_t n = 1) { return {1, n, 0, 1}; }

 private:
  std::int64_t a_ = 1;
  std::int64_t b_ = 0;
  std::int64_t c_ = 0;
  std::int64_t d_ = 1;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix2& g);

/// Real 2x2 matrix; the SL2(R) elements n_x, a_y, h_t and kappa_theta.
struct RealMatrix2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  RealMatrix2() = default;
  RealMatrix2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}
  explicit RealMatrix2(const IntMatrix2& g)
      : a(double(g.a())), b(double(g.b())), c(double(g.c())), d(double(g.d())) {}

  double det() const { return a * d - b * c; }
  double frobenius_norm() const;
  RealMatrix2 inverse() const;  // assumes det 1
  friend RealMatrix2 operator*(const RealMatrix2& l, const RealMatrix2& r);

  static RealMatrix2 translation(double x);  // n_x
  static RealMatrix2 dilation(double y);     // a_y
  static RealMatrix2 hyperbolic(double t);   // h_t
  static RealMatrix2 rotation(double theta); // kappa_theta
};

double distance(const RealMatrix2& l, const RealMatrix2& r);  // Frobenius

/// A point of the upper half-plane.
class Point {
 public:
  Point(double x, double y);
  explicit Point(Complex z) : Point(z.real(), z.imag()) {}

  double x() const { return z_.real(); }
  double y() const { return z_.imag(); }
  Complex z() const { return z_; }

 private:
  Complex z_;
};

Point mobius_act(const IntMatrix2& g, const Point& tau);
Point mobius_act(const RealMatrix2& g, const Point& tau);

Complex cocycle_j(const IntMatrix2& g, const Point& tau);
Complex cocycle_j(const RealMatrix2& g, const Point& tau);

/// z^k = |z|^k exp(i k arg z) with arg z in (-pi, pi].
Complex real_power(Complex z, double k);

struct IwasawaCoords {
  double x;
  double y;
  double theta;
};
/// g = n_x a_y kappa_theta.
IwasawaCoords iwasawa_decompose(const RealMatrix2& g);
RealMatrix2 iwasawa_compose(const IwasawaCoords& c);

struct CartanCoords {
  double theta1;  // [0, pi)
  double t;       // >= 0
  double theta2;  // [0, 2 pi)
};
/// g = kappa_theta1 h_t kappa_theta2.
CartanCoords cartan_decompose(const RealMatrix2& g);
RealMatrix2 cartan_compose(const CartanCoords& c);

/// The supported subgroups. Each one contains -I.
class GroupSpec {
 public:
  enum class Kind { SL2Z, Gamma0, Gamma1pm, GammaNpm, GammaInfinity, PlusMinusIdentity };

  static GroupSpec sl2z() { return GroupSpec(Kind::SL2Z, 1); }
  static GroupSpec gamma0(std::int64_t n) { return GroupSpec(Kind::Gamma0, n); }
  static GroupSpec gamma1pm(std::int64_t n) { return GroupSpec(Kind::Gamma1pm, n); }
  static GroupSpec gamma_npm(std::int64_t n) { return GroupSpec(Kind::GammaNpm, n); }
  static GroupSpec gamma_infinity(std::int64_t width) { return GroupSpec(Kind::GammaInfinity, width); }
  static GroupSpec plus_minus_identity() { return GroupSpec(Kind::PlusMinusIdentity, 1); }

  Kind kind() const { return kind_; }
  /// Level N for congruence kinds, width M for GammaInfinity, 1 otherwise.
  std::int64_t level() const { return level_; }
  bool finite_index() const;
  std::string name() const;
  static std::string kind_name(Kind k);
  static Kind kind_from_name(const std::string& s);

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(Kind kind, std::int64_t level);
  Kind kind_;
  std::int64_t level_;
};

bool contains(const GroupSpec& group, const IntMatrix2& g);

/// [SL2(Z) : group] for finite-index kinds.
std::int64_t index_in_sl2z(const GroupSpec& group);

/// Decides sub <= super. Finite-index pairs are compared through their images
/// in SL2(Z/LZ), L the lcm of the levels.
bool is_subgroup(const GroupSpec& sub, const GroupSpec& super);

enum class Letter { S, T, Tinv };

struct Word {
  std::vector<Letter> letters;
  int sign = 1;  // product of the letters equals sign * g
};

Word word_in_ST(const IntMatrix2& g);
IntMatrix2 evaluate_word(const Word& w);  // product of the letters, sign applied

/// Product of up to max_letters random letters from {S, T, T^-1}, random sign.
IntMatrix2 random_element(std::mt19937_64& rng, int max_letters);

/// Calls visit(g) for every g in SL2(Z) with Frobenius norm <= height.
void for_each_in_ball(double height, const std::function<void(const IntMatrix2&)>& visit);

struct CosetTable {
  GroupSpec lambda = GroupSpec::plus_minus_identity();
  GroupSpec gamma = GroupSpec::sl2z();
  double height = 0.0;
  std::vector<IntMatrix2> reps;  // sorted by norm, then lexicographically
};

/// Canonical element of the coset lambda * g: sign fixed so the first nonzero of
/// (c, d, a) is positive; for lambda = <+-T^M> also the minimal-norm member of
/// the coset (ties to the lexicographically smaller (a, b)).
IntMatrix2 canonical_coset_rep(const GroupSpec& lambda, const IntMatrix2& g);

/// One representative per lambda-coset of gamma meeting the norm ball.
CosetTable enumerate_cosets(const GroupSpec& lambda, const GroupSpec& gamma, double height);

/// Representatives g_1 = I, g_2, ... with SL2(Z) = disjoint union of gamma * g_j,
/// chosen in order of increasing norm.
std::vector<IntMatrix2> right_coset_representatives(const GroupSpec& gamma);

/// Smallest M > 0 with sigma T^M sigma^{-1} in gamma.
std::int64_t cusp_width(const GroupSpec& gamma, const IntMatrix2& sigma);

}  // namespace vvps

#endif  // VVPS_MODGROUP_HPP
