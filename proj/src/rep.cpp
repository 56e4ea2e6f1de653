#include "vvps/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace vvps {
namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kRootTol = 1e-8;

bool is_unitary(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const CMatrix id = CMatrix::Identity(a.rows(), a.cols());
  return max_abs_diff(a * a.adjoint(), id) <= tol;
}

CMatrix unitary_power(const CMatrix& a, std::int64_t n) {
  CMatrix base = n < 0 ? CMatrix(a.adjoint()) : a;
  CMatrix result = CMatrix::Identity(a.rows(), a.cols());
  for (std::int64_t e = std::abs(n); e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

// Smallest n <= max_order with lambda within tol of an n-th root of unity; 0 if none.
std::int64_t root_order(Complex lambda, std::int64_t max_order, double* turns_out) {
  double turns = std::arg(lambda) / kTwoPi;
  if (turns <= 0.0) turns += 1.0;  // (0, 1]
  for (std::int64_t n = 1; n <= max_order; ++n) {
    const double r = std::round(turns * double(n));
    if (std::abs(lambda - std::polar(1.0, kTwoPi * r / double(n))) < kRootTol) {
      if (turns_out) *turns_out = (r == 0.0 ? double(n) : r) / double(n);
      return n;
    }
  }
  return 0;
}

bool lex_less(const CVector& l, const CVector& r) {
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (l[i].real() != r[i].real()) return l[i].real() < r[i].real();
    if (l[i].imag() != r[i].imag()) return l[i].imag() < r[i].imag();
  }
  return false;
}

}  // namespace

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

std::string RepSpec::recipe_name(Recipe r) {
  switch (r) {
    case Recipe::Trivial: return "trivial";
    case Recipe::Dirichlet: return "dirichlet";
    case Recipe::STGenerated: return "st_generated";
    case Recipe::Induced: return "induced";
  }
  return "?";
}

RepSpec RepSpec::trivial(int p, const GroupSpec& domain) {
  if (p < 1) throw ArgumentError("trivial rep: dimension must be positive");
  return RepSpec(Recipe::Trivial, p, domain);
}

RepSpec RepSpec::dirichlet(std::int64_t modulus, std::vector<Complex> chi) {
  if (modulus < 1 || static_cast<std::int64_t>(chi.size()) != modulus)
    throw ArgumentError("dirichlet rep: character table must have one entry per residue");
  for (std::int64_t r = 0; r < modulus; ++r) {
    if (std::gcd(r, modulus) != 1) {
      chi[r] = 0.0;
      continue;
    }
    if (std::abs(std::abs(chi[r]) - 1.0) > 1e-12)
      throw ArgumentError("dirichlet rep: character values on units must have modulus 1");
    for (std::int64_t s = 0; s < modulus; ++s) {
      if (std::gcd(s, modulus) != 1) continue;
      if (std::abs(chi[(r * s) % modulus] - chi[r] * chi[s]) > 1e-12)
        throw ArgumentError("dirichlet rep: table is not multiplicative");
    }
  }
  RepSpec rep(Recipe::Dirichlet, 1, GroupSpec::gamma0(modulus));
  rep.chi_ = std::move(chi);
  return rep;
}

RepSpec RepSpec::st_generated(CMatrix rho_s, CMatrix rho_t) {
  const auto p = rho_s.rows();
  if (p < 1 || rho_s.cols() != p || rho_t.rows() != p || rho_t.cols() != p)
    throw ArgumentError("st_generated rep: images must be square of equal size");
  if (!is_unitary(rho_s, kUnitaryTol) || !is_unitary(rho_t, kUnitaryTol))
    throw ArgumentError("st_generated rep: images must be unitary");
  const CMatrix id = CMatrix::Identity(p, p);
  const CMatrix s2 = rho_s * rho_s;
  const CMatrix st = rho_s * rho_t;
  // SL2(Z) = <S, T | S^4 = 1, (ST)^3 = S^2>.
  if (max_abs_diff(s2 * s2, id) > kUnitaryTol || max_abs_diff(st * st * st, s2) > kUnitaryTol)
    throw ArgumentError("st_generated rep: images violate S^4 = 1, (ST)^3 = S^2");
  RepSpec rep(Recipe::STGenerated, static_cast<int>(p), GroupSpec::sl2z());
  rep.rho_s_ = std::move(rho_s);
  rep.rho_t_ = std::move(rho_t);
  return rep;
}

RepSpec RepSpec::induce(const RepSpec& inner, std::vector<IntMatrix2> cosets) {
  const GroupSpec& gamma = inner.domain();
  if (!gamma.finite_index())
    throw ArgumentError("induce: inner representation must live on a finite-index subgroup");
  const auto d = static_cast<std::size_t>(index_in_sl2z(gamma));
  if (cosets.size() != d)
    throw ArgumentError("induce: expected " + std::to_string(d) + " coset representatives");
  if (!(cosets.front() == IntMatrix2::identity()))
    throw ArgumentError("induce: the first coset representative must be I");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (contains(gamma, cosets[i] * cosets[j].inverse()))
        throw ArgumentError("induce: representatives lie in the same coset");
  RepSpec rep(Recipe::Induced, inner.dim() * static_cast<int>(d), GroupSpec::sl2z());
  rep.inner_ = std::make_shared<const RepSpec>(inner);
  rep.cosets_ = std::move(cosets);
  return rep;
}

std::vector<int> permutation_ell(const GroupSpec& gamma, const IntMatrix2& g,
                                 const std::vector<IntMatrix2>& cosets) {
  const IntMatrix2 g_inv = g.inverse();
  std::vector<int> ell(cosets.size(), -1);
  for (std::size_t j = 0; j < cosets.size(); ++j) {
    const IntMatrix2 h = cosets[j] * g_inv;
    for (std::size_t l = 0; l < cosets.size(); ++l) {
      if (contains(gamma, h * cosets[l].inverse())) {
        ell[j] = static_cast<int>(l);
        break;
      }
    }
    if (ell[j] < 0) throw ArgumentError("permutation_ell: coset system is incomplete");
  }
  return ell;
}

CMatrix RepSpec::evaluate(const IntMatrix2& g) const {
  if (!contains(domain_, g)) {
    std::ostringstream os;
    os << "rep: element " << g << " is not in " << domain_.name();
    throw ArgumentError(os.str());
  }
  switch (recipe_) {
    case Recipe::Trivial:
      return CMatrix::Identity(p_, p_);
    case Recipe::Dirichlet: {
      const std::int64_t n = domain_.level();
      const std::int64_t r = ((g.d() % n) + n) % n;
      return CMatrix::Constant(1, 1, chi_[r]);
    }
    case Recipe::STGenerated: {
      const Word w = word_in_ST(g);
      CMatrix out = CMatrix::Identity(p_, p_);
      std::size_t i = 0;
      while (i < w.letters.size()) {
        if (w.letters[i] == Letter::S) {
          out = out * rho_s_;
          ++i;
          continue;
        }
        std::int64_t q = 0;
        while (i < w.letters.size() && w.letters[i] != Letter::S) {
          q += w.letters[i] == Letter::T ? 1 : -1;
          ++i;
        }
        out = out * unitary_power(rho_t_, q);
      }
      // rho(-I) = rho(S)^2
      return w.sign < 0 ? CMatrix(rho_s_ * rho_s_ * out) : out;
    }
    case Recipe::Induced: {
      const GroupSpec& gamma = inner_->domain();
      const std::vector<int> ell = permutation_ell(gamma, g, cosets_);
      const int q = inner_->dim();
      CMatrix out = CMatrix::Zero(p_, p_);
      for (std::size_t s = 0; s < cosets_.size(); ++s) {
        const auto r = static_cast<std::size_t>(ell[s]);
        out.block(r * q, s * q, q, q) = inner_->evaluate(cosets_[r] * g * cosets_[s].inverse());
      }
      return out;
    }
  }
  return {};
}

NormalityReport check_normal(const RepSpec& rep, const MultiplierSystem& ms, const GroupSpec& gamma,
                             const IntMatrix2& sigma, std::int64_t max_order) {
  NormalityReport report;
  const int p = rep.dim();
  report.n1 = max_abs_diff(rep.evaluate(IntMatrix2::minus_identity()), CMatrix::Identity(p, p)) <=
              kUnitaryTol;
  report.width = cusp_width(gamma, sigma);
  const IntMatrix2 parabolic = sigma * IntMatrix2::T(report.width) * sigma.inverse();
  const CMatrix a =
      std::polar(1.0, kTwoPi * ms.kappa() * double(report.width)) * rep.evaluate(parabolic);
  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  std::int64_t order = 1;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::int64_t n = root_order(solver.eigenvalues()[i], max_order, nullptr);
    if (n == 0) return report;
    order = std::lcm(order, n);
  }
  report.n2 = order <= max_order;
  report.order = report.n2 ? order : 0;
  return report;
}

SpectralSplit spectral_split(const RepSpec& rep, const MultiplierSystem& ms, std::int64_t M,
                             std::int64_t max_order) {
  if (M < 1) throw ArgumentError("spectral_split: width must be positive");
  const IntMatrix2 tm = IntMatrix2::T(M);
  if (!contains(rep.domain(), tm))
    throw ArgumentError("spectral_split: T^M is not in the domain of the representation");
  const int p = rep.dim();
  const CMatrix a = std::polar(1.0, kTwoPi * ms.kappa() * double(M)) * rep.evaluate(tm);
  Eigen::ComplexSchur<CMatrix> schur(a);
  const CMatrix& q = schur.matrixU();
  const CVector lambda = schur.matrixT().diagonal();

  // Group numerically equal eigenvalues; each group spans one eigenspace.
  std::vector<int> assigned(p, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < p; ++i) {
    if (assigned[i] >= 0) continue;
    clusters.push_back({i});
    assigned[i] = static_cast<int>(clusters.size()) - 1;
    for (int j = i + 1; j < p; ++j) {
      if (assigned[j] < 0 && std::abs(lambda[i] - lambda[j]) < 1e-6) {
        clusters.back().push_back(j);
        assigned[j] = assigned[i];
      }
    }
  }

  struct Entry {
    double m;
    CVector v;
  };
  std::vector<Entry> entries;
  SpectralSplit split;
  split.M = M;
  for (const auto& cl : clusters) {
    Complex mean(0.0, 0.0);
    for (int i : cl) mean += lambda[i];
    mean /= double(cl.size());
    double m = 0.0;
    const std::int64_t n = root_order(mean / std::abs(mean), max_order, &m);
    if (n == 0)
      throw ArgumentError("spectral_split: cusp monodromy has no root-of-unity eigenvalues "
                          "of order <= " + std::to_string(max_order));
    split.order = std::lcm(split.order, n);

    // Canonical basis: Gram-Schmidt on the projections of e_0, e_1, ...
    CMatrix qc(p, static_cast<Eigen::Index>(cl.size()));
    for (std::size_t c = 0; c < cl.size(); ++c) qc.col(c) = q.col(cl[c]);
    const CMatrix proj = qc * qc.adjoint();
    std::vector<CVector> basis;
    for (int i = 0; i < p && basis.size() < cl.size(); ++i) {
      CVector v = proj.col(i);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) v -= b * b.dot(v);
      const double nv = v.norm();
      if (nv > 1e-6) basis.push_back(v / nv);
    }
    for (auto& v : basis) entries.push_back({m, std::move(v)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    if (l.m != r.m) return l.m < r.m;
    return lex_less(l.v, r.v);
  });
  split.U.resize(p, p);
  for (int j = 0; j < p; ++j) {
    split.U.row(j) = entries[j].v.adjoint();
    split.m.push_back(entries[j].m);
  }
  return split;
}

}  // namespace vvps
