#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vvps/cli.hpp"
#include "vvps/json_io.hpp"

using namespace vvps;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "vvps_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome run_cli(const std::string& args) {
  const auto err_path = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string(VVPS_CLI_PATH) + " " + args + " 2>" + err_path.string();
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.err = slurp(err_path);
  return o;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval matches the library bit for bit") {
  const auto o = run_cli("eval --group Gamma0 --N 5 --k 12 --tau 0.3,1.1 --height 60");
  REQUIRE(o.status == 0);
  Point tau(0.0, 1.0);
  const SeriesValue v = decode_series_value(Json::parse(o.out), &tau);

  const auto g = GroupSpec::gamma0(5);
  const auto ms = MultiplierSystem::trivial_even(12.0);
  const auto rep = RepSpec::trivial(1, g);
  const SeriesHandle h(SeedFn::classical(0, 1, spectral_split(rep, ms, 1)),
                       GroupSpec::gamma_infinity(1), g, rep, ms, 60.0);
  const SeriesValue direct = h.evaluate(Point(0.3, 1.1));
  CHECK(tau.x() == 0.3);
  CHECK(tau.y() == 1.1);
  CHECK(v.value == direct.value);
  CHECK(v.tail == direct.tail);
  CHECK(v.terms == direct.terms);

  // Same configuration, same bytes.
  CHECK(run_cli("eval --group Gamma0 --N 5 --k 12 --tau 0.3,1.1 --height 60").out == o.out);
}

TEST_CASE("criterion output") {
  const auto o = run_cli("criterion classical --k 12 --N 5 --nu 2 --m 1 --M 1");
  REQUIRE(o.status == 0);
  const auto r = decode_report(Json::parse(o.out));
  CHECK(r.satisfied);
  CHECK(r.criterion == "classical");
  CHECK(r.margin == doctest::Approx(35.0 / (3.0 * kPi) - 3.0));
  CHECK(r.flags.at("sharp_satisfied"));

  const auto c = run_cli("criterion regionC --k 12 --N 2 --nu 0");
  REQUIRE(c.status == 0);
  CHECK(decode_report(Json::parse(c.out)).satisfied);
  const auto a = run_cli("criterion regionA --k 12 --N 5 --nu 0 --group Gamma0 --check-A1");
  REQUIRE(a.status == 0);
  CHECK(decode_report(Json::parse(a.out)).flags.at("A1_checked"));
}

TEST_CASE("selftest passes") {
  const auto o = run_cli("selftest");
  CHECK(o.status == 0);
  const Json j = Json::parse(o.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("checks").size() >= 8);
}

TEST_CASE("threshold table") {
  const auto o = run_cli("table --k-values 12 --N-values 5 --nu-values 2");
  REQUIRE(o.status == 0);
  std::istringstream in(o.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "k,N,nu,classical_margin,elliptic_margin,sharp_classical");
  CHECK(row.rfind("12,5,2,", 0) == 0);
  const double margin = std::stod(row.substr(7));
  CHECK(margin == doctest::Approx(0.7136).epsilon(1e-4));
  CHECK(o.out == cli::emit_threshold_table({12.0}, {5}, {2}));
  const auto e = run_cli("table --k-values 12 --N-values 5");
  CHECK(e.status == 2);
}

TEST_CASE("errors are reported as JSON with distinct exit codes") {
  auto o = run_cli("eval --k 12 --tau 0.3,0.01 --height 20");
  CHECK(o.status == 3);
  CHECK(Json::parse(o.err).at("error").at("kind") == "numeric_refusal");
  o = run_cli("eval --group Gamma7 --k 12");
  CHECK(o.status == 2);
  CHECK(Json::parse(o.err).at("error").at("kind") == "invalid_config");
  o = run_cli("eval --k 12 --format csv");
  CHECK(o.status == 2);
  o = run_cli("eval --k 13");
  CHECK(o.status == 2);
  o = run_cli("eval --k 2");
  CHECK(o.status == 3);
  o = run_cli("eval --no-such-flag");
  CHECK(o.status == 2);
  CHECK(Json::parse(o.err).contains("error"));
  o = run_cli("fourier --k 12 --nmin 3 --nmax 1");
  CHECK(o.status == 2);
}

TEST_CASE("induce output feeds back in as a representation") {
  const auto dir = scratch_dir();
  const auto rep_path = dir / "rep.json";
  auto o = run_cli("induce --group Gamma0 --N 2 --out " + rep_path.string());
  REQUIRE(o.status == 0);
  const RepSpec rep = decode_rep(Json::parse(slurp(rep_path)));
  CHECK(rep.dim() == 3);
  CHECK(rep.recipe() == RepSpec::Recipe::STGenerated);

  o = run_cli("eval --group SL2Z --k 12 --rep " + rep_path.string() + " --j 2 --tau 0.1,1.2 --height 30");
  REQUIRE(o.status == 0);
  const SeriesValue v = decode_series_value(Json::parse(o.out));
  CHECK(v.value.size() == 3);
  CHECK(v.value.norm() > 0.0);
}

TEST_CASE("fourier and cosets") {
  auto o = run_cli("fourier --group SL2Z --k 12 --height 40 --nmin 0 --nmax 2");
  REQUIRE(o.status == 0);
  const FourierTable t = decode_fourier(Json::parse(o.out));
  CHECK(std::abs(t.at(1, 1) / t.at(1, 0) + 24.0) < 1e-2);
  o = run_cli("fourier --group SL2Z --k 12 --height 40 --nmin 0 --nmax 2 --format csv");
  REQUIRE(o.status == 0);
  CHECK(o.out.rfind("j,n,re,im\n", 0) == 0);

  o = run_cli("cosets --group Gamma0 --N 2 --height 6");
  REQUIRE(o.status == 0);
  const CosetTable c = decode_cosets(Json::parse(o.out));
  CHECK(c.reps == enumerate_cosets(GroupSpec::gamma_infinity(1), GroupSpec::gamma0(2), 6.0).reps);
}

TEST_CASE("in-process run") {
  cli::JobConfig c;
  c.command = "criterion";
  c.criterion = "elliptic";
  c.k = 12.0;
  c.level = 2;
  std::ostringstream out;
  CHECK(cli::run(c, out) == 0);
  CHECK(decode_report(Json::parse(out.str())).satisfied);

  c.command = "bogus";
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c.command = "pair";
  c.quad.nx = 4;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
}

}  // TEST_SUITE
