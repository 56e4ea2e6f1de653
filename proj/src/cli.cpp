#include "vvps/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vvps/json_io.hpp"

namespace vvps::cli {
namespace {

GroupSpec make_group(const std::string& kind, std::int64_t level) {
  using K = GroupSpec::Kind;
  switch (GroupSpec::kind_from_name(kind)) {
    case K::SL2Z: return GroupSpec::sl2z();
    case K::Gamma0: return GroupSpec::gamma0(level);
    case K::Gamma1pm: return GroupSpec::gamma1pm(level);
    case K::GammaNpm: return GroupSpec::gamma_npm(level);
    default: break;
  }
  throw ArgumentError("--group must be a finite-index family (SL2Z, Gamma0, Gamma1pm, GammaNpm)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ArgumentError("'" + path + "' is not valid JSON: " + e.what());
  }
}

RepSpec make_rep(const JobConfig& c, const GroupSpec& gamma) {
  if (c.rep == "trivial") return RepSpec::trivial(c.p, gamma);
  return decode_rep(read_json_file(c.rep));
}

struct Setup {
  GroupSpec gamma;
  RepSpec rep;
  MultiplierSystem ms;
  SeedFn seed;
  std::optional<SpectralSplit> split;
};

Setup make_setup(const JobConfig& c) {
  const GroupSpec gamma = make_group(c.group, c.level);
  RepSpec rep = make_rep(c, gamma);
  const MultiplierSystem ms =
      MultiplierSystem::make(MultiplierSystem::family_from_name(c.family), c.k);
  if (c.variant == "classical") {
    const std::int64_t M = cusp_width(gamma, IntMatrix2::identity());
    SpectralSplit split = spectral_split(rep, ms, M);
    SeedFn seed = SeedFn::classical(c.nu, c.j, split);
    return {gamma, std::move(rep), ms, std::move(seed), std::move(split)};
  }
  CVector u = CVector::Zero(rep.dim());
  if (c.j < 1 || c.j > rep.dim()) throw ArgumentError("--j must lie in 1..p");
  u[c.j - 1] = 1.0;
  SeedFn seed = SeedFn::elliptic(c.nu, Point(c.xi[0], c.xi[1]), std::move(u), c.k);
  return {gamma, std::move(rep), ms, std::move(seed), std::nullopt};
}

SeriesHandle make_series(const Setup& s, double height) {
  const GroupSpec lambda = s.seed.is_classical() ? GroupSpec::gamma_infinity(s.seed.width())
                                                 : GroupSpec::plus_minus_identity();
  return SeriesHandle(s.seed, lambda, s.gamma, s.rep, s.ms, height);
}

Json pair_job(const JobConfig& c) {
  const Setup s = make_setup(c);
  const SeriesHandle series = make_series(s, c.height);
  const VectorField F = series.field();
  const PairingResult strip = petersson_strip(F, s.seed, series.lambda(), c.k, c.quad);
  Complex b;
  Complex closed;
  if (s.seed.is_classical()) {
    const FourierTable t = fourier_coefficients(F, *s.split, s.ms, IntMatrix2::identity(), c.nu,
                                                c.nu, c.y0, c.fourier_nx);
    b = t.at(c.j, c.nu);
    closed = classical_pairing_closed_form(b, s.split->M, c.k, c.nu, s.split->m[c.j - 1]);
  } else {
    const Point xi(c.xi[0], c.xi[1]);
    const int jj = c.j - 1;
    const auto coeffs = elliptic_expansion_coeffs(
        [&](const Point& t) { return F(t)[jj]; }, xi, c.k, c.nu, c.r0);
    b = coeffs[c.nu];
    closed = elliptic_pairing_closed_form(b, c.k, c.nu, xi);
  }
  return {{"variant", c.variant},
          {"strip", encode(strip.value)},
          {"strip_error", strip.error},
          {"coefficient", encode(b)},
          {"closed_form", encode(closed)},
          {"relative_difference", std::abs(strip.value - closed) / std::abs(closed)},
          {"height", c.height},
          {"terms", series.cosets().reps.size()}};
}

CriterionReport criterion_job(const JobConfig& c) {
  const std::int64_t N = c.level;
  if (c.criterion == "classical") return classical_criterion(c.k, c.M, N, c.nu, c.m);
  if (c.criterion == "elliptic") return elliptic_criterion(c.k, N, c.nu);
  if (c.criterion == "regionA") {
    RegionAOptions opts;
    opts.check_A1 = c.check_A1;
    if (c.check_A1) opts.gamma = make_group(c.group, c.level);
    return region_test_A(c.k, c.M, N, c.nu, c.m, opts);
  }
  if (c.criterion == "regionC") {
    double r = 0.0;
    if (c.radius) {
      r = *c.radius;
    } else if (auto found = find_radius(c.k, c.nu, N)) {
      r = *found;
    } else {
      // Infeasible: report at the midpoint of [r_min, r_max] anyway, which violates the radius bound.
      const CriterionReport e = elliptic_criterion(c.k, N, c.nu);
      r = 0.5 * (e.details.at("r_min") + e.details.at("r_max"));
    }
    CriterionReport rep = region_test_C(c.k, c.nu, N, r);
    if (!c.radius) rep.notes.push_back("radius chosen by find_radius");
    return rep;
  }
  throw ArgumentError("criterion must be one of classical, elliptic, regionA, regionC");
}

Json cosets_job(const JobConfig& c) {
  const GroupSpec gamma = make_group(c.group, c.level);
  GroupSpec lambda = GroupSpec::plus_minus_identity();
  if (c.lambda == "GammaInfinity") {
    lambda = GroupSpec::gamma_infinity(c.width ? *c.width : cusp_width(gamma, IntMatrix2::identity()));
  } else if (c.lambda != "PlusMinusIdentity") {
    throw ArgumentError("--lambda must be GammaInfinity or PlusMinusIdentity");
  }
  return encode(enumerate_cosets(lambda, gamma, c.height));
}

Json induce_job(const JobConfig& c) {
  const GroupSpec gamma = make_group(c.group, c.level);
  const RepSpec inner = make_rep(c, gamma);
  const RepSpec induced = RepSpec::induce(inner, right_coset_representatives(gamma));
  const RepSpec out =
      RepSpec::st_generated(induced.evaluate(IntMatrix2::S()), induced.evaluate(IntMatrix2::T()));
  Json cosets = Json::array();
  for (const auto& g : induced.cosets()) cosets.push_back(encode(g));
  Json j = encode(out);
  j["cosets"] = cosets;
  return j;
}

struct Check {
  std::string name;
  double residual;
  double tolerance;
};

Json selftest_job(const JobConfig& c, bool& all_pass) {
  std::mt19937_64 rng(c.rng_seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::uniform_real_distribution<double> uy(0.3, 2.0);
  std::vector<Check> checks;

  double cocycle = 0.0;
  double words = 0.0;
  for (int i = 0; i < 200; ++i) {
    const IntMatrix2 g1 = random_element(rng, 30);
    const IntMatrix2 g2 = random_element(rng, 30);
    const Point tau(ux(rng), uy(rng));
    const Complex lhs = cocycle_j(g1 * g2, tau);
    const Complex rhs = cocycle_j(g1, mobius_act(g2, tau)) * cocycle_j(g2, tau);
    cocycle = std::max(cocycle, std::abs(lhs - rhs) / (1.0 + std::norm(lhs)));
    if (!(evaluate_word(word_in_ST(g1)) == g1)) words += 1.0;
  }
  checks.push_back({"cocycle", cocycle, 1e-12});
  checks.push_back({"word_in_ST", words, 0.0});
  checks.push_back({"eta_multiplier", check_consistency(MultiplierSystem::eta_power(0.5), 200, c.rng_seed), 1e-10});

  const GroupSpec g02 = GroupSpec::gamma0(2);
  const RepSpec induced = RepSpec::induce(RepSpec::trivial(1, g02), right_coset_representatives(g02));
  double hom = 0.0;
  for (int i = 0; i < 100; ++i) {
    const IntMatrix2 g1 = random_element(rng, 30);
    const IntMatrix2 g2 = random_element(rng, 30);
    hom = std::max(hom, max_abs_diff(induced.evaluate(g1 * g2), induced.evaluate(g1) * induced.evaluate(g2)));
  }
  checks.push_back({"induced_homomorphism", hom, 1e-12});

  CMatrix t(1, 1);
  t(0, 0) = Complex(0.0, 1.0);
  CMatrix s(1, 1);
  s(0, 0) = Complex(0.0, 1.0);
  const SpectralSplit sp = spectral_split(RepSpec::st_generated(s, t), MultiplierSystem::trivial_even(0.0), 1);
  checks.push_back({"spectral_split_diag_i", std::abs(sp.m[0] - 0.25), 1e-12});

  checks.push_back({"gamma_median_1", std::abs(gamma_median(1.0) - std::log(2.0)), 1e-12});
  checks.push_back({"beta_median_1_5", std::abs(beta_median(1.0, 5.0) - (1.0 - std::pow(2.0, -0.2))), 1e-12});

  double mismatches = 0.0;
  for (double k : {4.0, 6.0, 12.0, 20.5})
    for (std::int64_t N : {2, 3, 5, 11})
      for (int nu = 0; nu <= 6; ++nu) {
        const bool sharp = classical_criterion(k, 1, N, nu, 1.0).flags.at("sharp_satisfied");
        if (region_test_A(k, 1, N, nu, 1.0).satisfied != sharp) mismatches += 1.0;
        if (find_radius(k, nu, N).has_value() != elliptic_criterion(k, N, nu).satisfied) mismatches += 1.0;
      }
  checks.push_back({"criterion_equivalences", mismatches, 0.0});

  all_pass = true;
  Json list = Json::array();
  for (const auto& ch : checks) {
    const bool pass = ch.residual <= ch.tolerance;
    all_pass = all_pass && pass;
    list.push_back({{"name", ch.name}, {"residual", ch.residual}, {"tolerance", ch.tolerance}, {"pass", pass}});
  }
  return {{"checks", list}, {"pass", all_pass}, {"rng_seed", c.rng_seed}};
}

void emit(const JobConfig& c, const std::string& text, std::ostream& out) {
  if (c.out) {
    std::ofstream f(*c.out);
    if (!f) throw ArgumentError("cannot write '" + *c.out + "'");
    f << text;
  } else {
    out << text;
  }
}

std::string error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() + "\n";
}

}  // namespace

void JobConfig::validate() const {
  static const std::vector<std::string> commands = {"eval", "fourier", "pair", "criterion",
                                                    "induce", "cosets", "selftest", "table"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw ArgumentError("unknown command '" + command + "'");
  if (format != "json" && format != "csv") throw ArgumentError("--format must be json or csv");
  if (format == "csv" && command != "fourier" && command != "table")
    throw ArgumentError(command + ": csv output is only available for fourier and table");
  if (level < 1) throw ArgumentError("--level must be positive");
  if (!std::isfinite(k)) throw ArgumentError("--k must be finite");
  if (variant != "classical" && variant != "elliptic")
    throw ArgumentError("--variant must be classical or elliptic");
  if (nu < 0) throw ArgumentError("--nu must be nonnegative");
  if (p < 1) throw ArgumentError("--p must be positive");
  if (xi.size() != 2 || !(xi[1] > 0.0)) throw ArgumentError("--xi must be x,y with y > 0");
  if (tau.size() != 2 || !(tau[1] > 0.0)) throw ArgumentError("--tau must be x,y with y > 0");
  if (command == "eval" || command == "fourier" || command == "pair" || command == "cosets")
    if (!(height > 0.0)) throw ArgumentError("--height must be positive");
  if (command == "pair") quad.validate();
  if (command == "fourier" && n_max < n_min) throw ArgumentError("--nmax must be >= --nmin");
  if (command == "table" && (k_values.empty() || N_values.empty() || nu_values.empty()))
    throw ArgumentError("table: --k-values, --N-values and --nu-values must be nonempty");
  if (command == "criterion" && criterion.empty())
    throw ArgumentError("criterion: kind (classical, elliptic, regionA, regionC) is required");
}

std::string emit_threshold_table(const std::vector<double>& ks, const std::vector<std::int64_t>& Ns,
                                 const std::vector<int>& nus) {
  if (ks.empty() || Ns.empty() || nus.empty()) throw ArgumentError("table: empty range");
  std::ostringstream os;
  os.precision(17);
  os << "k,N,nu,classical_margin,elliptic_margin,sharp_classical\n";
  for (double k : ks)
    for (std::int64_t N : Ns)
      for (int nu : nus) {
        const CriterionReport cl = classical_criterion(k, 1, N, nu, 1.0);
        os << k << ',' << N << ',' << nu << ',' << cl.margin << ',';
        if (N >= 2) os << elliptic_criterion(k, N, nu).margin;
        os << ',' << (cl.flags.at("sharp_satisfied") ? "true" : "false") << '\n';
      }
  return os.str();
}

int run(const JobConfig& c, std::ostream& out) {
  c.validate();
  if (c.command == "table") {
    emit(c, emit_threshold_table(c.k_values, c.N_values, c.nu_values), out);
    return 0;
  }
  if (c.command == "fourier") {
    const Setup s = make_setup(c);
    if (!s.split) throw ArgumentError("fourier: needs --variant classical");
    const SeriesHandle series = make_series(s, c.height);
    const FourierTable t = fourier_coefficients(series.field(), *s.split, s.ms, IntMatrix2::identity(),
                                                c.n_min, c.n_max, c.y0, c.fourier_nx);
    emit(c, c.format == "csv" ? fourier_csv(t) : encode(t).dump(2) + "\n", out);
    return 0;
  }
  Json result;
  int status = 0;
  if (c.command == "eval") {
    const Setup s = make_setup(c);
    const Point tau(c.tau[0], c.tau[1]);
    result = encode(tau, make_series(s, c.height).evaluate(tau));
  } else if (c.command == "pair") {
    result = pair_job(c);
  } else if (c.command == "criterion") {
    result = encode(criterion_job(c));
  } else if (c.command == "induce") {
    result = induce_job(c);
  } else if (c.command == "cosets") {
    result = cosets_job(c);
  } else if (c.command == "selftest") {
    bool pass = false;
    result = selftest_job(c, pass);
    status = pass ? 0 : 1;
  }
  emit(c, result.dump(2) + "\n", out);
  return status;
}

int main(int argc, char** argv) {
  JobConfig c;
  CLI::App app{"Vector-valued Poincare series workbench"};
  app.require_subcommand(1);

  auto common = [&c](CLI::App* sub) {
    sub->add_option("--group", c.group, "SL2Z, Gamma0, Gamma1pm or GammaNpm")->capture_default_str();
    sub->add_option("--level,--N", c.level, "level N")->capture_default_str();
    sub->add_option("--k", c.k, "weight")->capture_default_str();
    sub->add_option("--family", c.family, "trivial_even or eta_power")->capture_default_str();
    sub->add_option("--rep", c.rep, "trivial or a RepSpec JSON file")->capture_default_str();
    sub->add_option("--p", c.p, "dimension of the trivial representation")->capture_default_str();
    sub->add_option("--variant", c.variant, "classical or elliptic seed")->capture_default_str();
    sub->add_option("--nu", c.nu, "seed index nu")->capture_default_str();
    sub->add_option("--j", c.j, "component index, 1-based")->capture_default_str();
    sub->add_option("--xi", c.xi, "elliptic point x,y")->delimiter(',')->expected(2);
    sub->add_option("--height", c.height, "Frobenius-norm truncation")->capture_default_str();
    sub->add_option("--out", c.out, "artifact path (default: stdout)");
    sub->add_option("--format", c.format, "json or csv")->capture_default_str();
    sub->add_option("--rng-seed", c.rng_seed, "seed for sampled checks")->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "evaluate a truncated Poincare series");
  common(eval);
  eval->add_option("--tau", c.tau, "point x,y")->delimiter(',')->expected(2);

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients at the cusp infinity");
  common(fourier);
  fourier->add_option("--y0", c.y0, "extraction height")->capture_default_str();
  fourier->add_option("--nmin", c.n_min, "first coefficient index")->capture_default_str();
  fourier->add_option("--nmax", c.n_max, "last coefficient index")->capture_default_str();
  fourier->add_option("--nx", c.fourier_nx, "trapezoid nodes")->capture_default_str();

  auto* pair = app.add_subcommand("pair", "strip pairing against the closed form");
  common(pair);
  pair->add_option("--ymin", c.quad.y_min, "lower y cutoff")->capture_default_str();
  pair->add_option("--ymax", c.quad.y_max, "upper y cutoff")->capture_default_str();
  pair->add_option("--nx", c.quad.nx, "x nodes")->capture_default_str();
  pair->add_option("--ny", c.quad.ny, "minimum y nodes")->capture_default_str();
  pair->add_option("--rel-tol", c.quad.rel_tol, "relative tolerance in y")->capture_default_str();
  pair->add_option("--y0", c.y0, "Fourier extraction height")->capture_default_str();
  pair->add_option("--r0", c.r0, "disk radius for elliptic coefficients")->capture_default_str();

  auto* criterion = app.add_subcommand("criterion", "non-vanishing criteria");
  common(criterion);
  criterion->add_option("kind", c.criterion, "classical, elliptic, regionA or regionC")->required();
  criterion->add_option("--M", c.M, "cusp width")->capture_default_str();
  criterion->add_option("--m", c.m, "exponent m_j in (0, 1]")->capture_default_str();
  criterion->add_option("--r", c.radius, "Cartan radius for regionC");
  criterion->add_flag("--check-A1", c.check_A1, "verify the strip condition numerically for --group");

  auto* induce = app.add_subcommand("induce", "induce a representation to SL2(Z)");
  common(induce);

  auto* cosets = app.add_subcommand("cosets", "coset representatives in a norm ball");
  common(cosets);
  cosets->add_option("--lambda", c.lambda, "GammaInfinity or PlusMinusIdentity")->capture_default_str();
  cosets->add_option("--width", c.width, "width M of GammaInfinity (default: cusp width)");

  auto* selftest = app.add_subcommand("selftest", "run the invariant checks");
  common(selftest);

  auto* table = app.add_subcommand("table", "threshold table as CSV");
  common(table);
  table->add_option("--k-values", c.k_values, "weights, comma separated")->delimiter(',');
  table->add_option("--N-values", c.N_values, "levels, comma separated")->delimiter(',');
  table->add_option("--nu-values", c.nu_values, "seed indices, comma separated")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_json("invalid_config", e.what());
    return 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.command == "table") c.format = "csv";

  try {
    return run(c, std::cout);
  } catch (const ArgumentError& e) {
    std::cerr << error_json("invalid_config", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::cerr << error_json("numeric_refusal", e.what());
    return 3;
  }
}

}  // namespace vvps::cli
