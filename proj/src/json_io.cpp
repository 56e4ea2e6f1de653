#include "vvps/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace vvps {
namespace {

// Wraps nlohmann's type errors so malformed documents surface as ArgumentError.
template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ArgumentError(std::string(what) + ": " + e.what());
  }
}

Json encode_vector(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v[i]));
  return out;
}

CVector decode_vector(const Json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = decode_complex(j[i]);
  return v;
}

}  // namespace

Json encode(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex decode_complex(const Json& j) {
  return guarded("complex", [&] {
    if (!j.is_array() || j.size() != 2) throw ArgumentError("complex: expected [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
  });
}

Json encode(const IntMatrix2& g) { return Json::array({g.a(), g.b(), g.c(), g.d()}); }

IntMatrix2 decode_matrix(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.size() != 4) throw ArgumentError("matrix: expected [a, b, c, d]");
    return IntMatrix2(j[0].get<std::int64_t>(), j[1].get<std::int64_t>(),
                      j[2].get<std::int64_t>(), j[3].get<std::int64_t>());
  });
}

Json encode(const GroupSpec& g) {
  return {{"kind", GroupSpec::kind_name(g.kind())}, {"level", g.level()}};
}

GroupSpec decode_group(const Json& j) {
  return guarded("group", [&] {
    using K = GroupSpec::Kind;
    const K kind = GroupSpec::kind_from_name(j.at("kind").get<std::string>());
    const std::int64_t n = j.value("level", std::int64_t{1});
    switch (kind) {
      case K::SL2Z: return GroupSpec::sl2z();
      case K::Gamma0: return GroupSpec::gamma0(n);
      case K::Gamma1pm: return GroupSpec::gamma1pm(n);
      case K::GammaNpm: return GroupSpec::gamma_npm(n);
      case K::GammaInfinity: return GroupSpec::gamma_infinity(n);
      case K::PlusMinusIdentity: break;
    }
    return GroupSpec::plus_minus_identity();
  });
}

Json encode(const CosetTable& t) {
  Json reps = Json::array();
  for (const auto& g : t.reps) reps.push_back(encode(g));
  return {{"lambda", encode(t.lambda)},
          {"gamma", encode(t.gamma)},
          {"height", t.height},
          {"reps", reps}};
}

CosetTable decode_cosets(const Json& j) {
  return guarded("cosets", [&] {
    CosetTable t;
    t.lambda = decode_group(j.at("lambda"));
    t.gamma = decode_group(j.at("gamma"));
    t.height = j.at("height").get<double>();
    for (const auto& r : j.at("reps")) t.reps.push_back(decode_matrix(r));
    return t;
  });
}

Json encode(const MultiplierSystem& ms) {
  return {{"family", MultiplierSystem::family_name(ms.family())}, {"k", ms.k()}};
}

MultiplierSystem decode_multiplier(const Json& j) {
  return guarded("multiplier", [&] {
    return MultiplierSystem::make(
        MultiplierSystem::family_from_name(j.at("family").get<std::string>()),
        j.at("k").get<double>());
  });
}

Json encode(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(encode(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMatrix decode_cmatrix(const Json& j) {
  return guarded("complex matrix", [&] {
    if (!j.is_array() || j.empty()) throw ArgumentError("complex matrix: expected rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (static_cast<Eigen::Index>(j[r].size()) != cols)
        throw ArgumentError("complex matrix: ragged rows");
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = decode_complex(j[r][c]);
    }
    return m;
  });
}

Json encode(const RepSpec& rep) {
  using R = RepSpec::Recipe;
  Json out = {{"recipe", RepSpec::recipe_name(rep.recipe())}, {"p", rep.dim()}};
  switch (rep.recipe()) {
    case R::Trivial:
      out["domain"] = encode(rep.domain());
      break;
    case R::Dirichlet: {
      Json chi = Json::array();
      for (auto c : rep.character()) chi.push_back(encode(c));
      out["modulus"] = rep.domain().level();
      out["character"] = chi;
      break;
    }
    case R::STGenerated:
      out["matrices"] = {{"S", encode(rep.rho_s())}, {"T", encode(rep.rho_t())}};
      break;
    case R::Induced: {
      Json cosets = Json::array();
      for (const auto& g : rep.cosets()) cosets.push_back(encode(g));
      out["inner"] = encode(rep.inner());
      out["cosets"] = cosets;
      break;
    }
  }
  return out;
}

RepSpec decode_rep(const Json& j) {
  return guarded("rep", [&]() -> RepSpec {
    const std::string recipe = j.at("recipe").get<std::string>();
    if (recipe == "trivial") {
      const GroupSpec domain = j.contains("domain") ? decode_group(j["domain"]) : GroupSpec::sl2z();
      return RepSpec::trivial(j.at("p").get<int>(), domain);
    }
    if (recipe == "dirichlet") {
      std::vector<Complex> chi;
      for (const auto& c : j.at("character")) chi.push_back(decode_complex(c));
      return RepSpec::dirichlet(j.at("modulus").get<std::int64_t>(), std::move(chi));
    }
    if (recipe == "st_generated") {
      const Json& m = j.at("matrices");
      return RepSpec::st_generated(decode_cmatrix(m.at("S")), decode_cmatrix(m.at("T")));
    }
    if (recipe == "induced") {
      std::vector<IntMatrix2> cosets;
      for (const auto& g : j.at("cosets")) cosets.push_back(decode_matrix(g));
      return RepSpec::induce(decode_rep(j.at("inner")), std::move(cosets));
    }
    throw ArgumentError("rep: unknown recipe '" + recipe + "'");
  });
}

Json encode(const SpectralSplit& s) {
  return {{"M", s.M}, {"m", s.m}, {"order", s.order}, {"U", encode(s.U)}};
}

SpectralSplit decode_split(const Json& j) {
  return guarded("split", [&] {
    SpectralSplit s;
    s.M = j.at("M").get<std::int64_t>();
    s.m = j.at("m").get<std::vector<double>>();
    s.order = j.value("order", std::int64_t{1});
    s.U = decode_cmatrix(j.at("U"));
    if (s.U.rows() != static_cast<Eigen::Index>(s.m.size()) || s.U.cols() != s.U.rows())
      throw ArgumentError("split: U and m sizes differ");
    return s;
  });
}

Json encode(const SeedFn& f) {
  if (f.is_classical()) {
    const auto& c = f.as_classical();
    return {{"variant", "classical"}, {"nu", c.nu}, {"j", c.j}, {"split", encode(c.split)}};
  }
  const auto& e = f.as_elliptic();
  return {{"variant", "elliptic"},
          {"nu", e.nu},
          {"xi", Json::array({e.xi.x(), e.xi.y()})},
          {"u", encode_vector(e.u)},
          {"k", e.k}};
}

SeedFn decode_seed(const Json& j) {
  return guarded("seed", [&] {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "classical")
      return SeedFn::classical(j.at("nu").get<int>(), j.at("j").get<int>(),
                               decode_split(j.at("split")));
    if (variant == "elliptic") {
      const Json& xi = j.at("xi");
      return SeedFn::elliptic(j.at("nu").get<int>(), Point(xi.at(0).get<double>(), xi.at(1).get<double>()),
                              decode_vector(j.at("u")), j.at("k").get<double>());
    }
    throw ArgumentError("seed: unknown variant '" + variant + "'");
  });
}

Json encode(const Point& tau, const SeriesValue& v) {
  return {{"tau", Json::array({tau.x(), tau.y()})},
          {"value", encode_vector(v.value)},
          {"tail", v.tail},
          {"height", v.height},
          {"terms", v.terms}};
}

SeriesValue decode_series_value(const Json& j, Point* tau) {
  return guarded("series value", [&] {
    SeriesValue v;
    v.value = decode_vector(j.at("value"));
    v.tail = j.at("tail").get<double>();
    v.height = j.at("height").get<double>();
    v.terms = j.value("terms", std::size_t{0});
    if (tau) *tau = Point(j.at("tau").at(0).get<double>(), j.at("tau").at(1).get<double>());
    return v;
  });
}

Json encode(const FourierTable& t) {
  Json b = Json::array();
  for (Eigen::Index j = 0; j < t.b.rows(); ++j)
    for (int n = t.n_min; n <= t.n_max; ++n)
      b.push_back({{"j", j + 1}, {"n", n}, {"value", encode(t.b(j, n - t.n_min))}});
  return {{"M", t.M}, {"m", t.m}, {"sigma", encode(t.sigma)}, {"y0", t.y0}, {"b", b}};
}

FourierTable decode_fourier(const Json& j) {
  return guarded("fourier", [&] {
    FourierTable t;
    t.M = j.at("M").get<std::int64_t>();
    t.m = j.at("m").get<std::vector<double>>();
    t.sigma = decode_matrix(j.at("sigma"));
    t.y0 = j.at("y0").get<double>();
    const Json& b = j.at("b");
    if (b.empty()) throw ArgumentError("fourier: no coefficients");
    t.n_min = t.n_max = b[0].at("n").get<int>();
    for (const auto& e : b) {
      t.n_min = std::min(t.n_min, e.at("n").get<int>());
      t.n_max = std::max(t.n_max, e.at("n").get<int>());
    }
    t.b = CMatrix::Zero(static_cast<Eigen::Index>(t.m.size()), t.n_max - t.n_min + 1);
    for (const auto& e : b)
      t.b(e.at("j").get<int>() - 1, e.at("n").get<int>() - t.n_min) = decode_complex(e.at("value"));
    return t;
  });
}

std::string fourier_csv(const FourierTable& t) {
  std::ostringstream os;
  os.precision(17);
  os << "j,n,re,im\n";
  for (Eigen::Index j = 0; j < t.b.rows(); ++j)
    for (int n = t.n_min; n <= t.n_max; ++n) {
      const Complex z = t.b(j, n - t.n_min);
      os << j + 1 << ',' << n << ',' << z.real() << ',' << z.imag() << '\n';
    }
  return os.str();
}

Json encode(const CriterionReport& r) {
  Json details = Json::object();
  for (const auto& [key, v] : r.details) details[key] = v;
  for (const auto& [key, v] : r.flags) details[key] = v;
  return {{"criterion", r.criterion},
          {"satisfied", r.satisfied},
          {"margin", r.margin},
          {"inputs", r.inputs},
          {"details", details},
          {"notes", r.notes}};
}

CriterionReport decode_report(const Json& j) {
  return guarded("report", [&] {
    CriterionReport r;
    r.criterion = j.at("criterion").get<std::string>();
    r.satisfied = j.at("satisfied").get<bool>();
    r.margin = j.at("margin").get<double>();
    r.inputs = j.at("inputs").get<std::map<std::string, double>>();
    for (const auto& [key, v] : j.at("details").items()) {
      if (v.is_boolean())
        r.flags[key] = v.get<bool>();
      else
        r.details[key] = v.get<double>();
    }
    r.notes = j.value("notes", std::vector<std::string>{});
    return r;
  });
}

}  // namespace vvps
