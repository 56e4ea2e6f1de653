#ifndef VVPS_CLI_HPP
#define VVPS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vvps/analysis.hpp"

namespace vvps::cli {

struct JobConfig {
  std::string command;    // eval fourier pair criterion induce cosets selftest table
  std::string criterion;  // classical elliptic regionA regionC

  std::string group = "Gamma0";
  std::int64_t level = 1;
  double k = 12.0;
  std::string family = "trivial_even";
  std::string rep = "trivial";  // "trivial" or a path to a RepSpec JSON file
  int p = 1;

  std::string variant = "classical";
  int nu = 0;
  int j = 1;
  std::vector<double> xi{0.0, 1.0};
  std::vector<double> tau{0.3, 1.1};

  double height = 60.0;
  QuadratureSpec quad;
  double y0 = 1.0;
  int n_min = 0;
  int n_max = 4;
  int fourier_nx = 64;
  double r0 = 0.4;

  std::int64_t M = 1;
  double m = 1.0;
  std::optional<double> radius;
  bool check_A1 = false;

  std::string lambda = "GammaInfinity";
  std::optional<std::int64_t> width;

  std::vector<double> k_values;
  std::vector<std::int64_t> N_values;
  std::vector<int> nu_values;

  std::optional<std::string> out;
  std::string format = "json";
  std::uint64_t rng_seed = 1;

  /// Throws ArgumentError on inconsistent settings.
  void validate() const;
};

/// Executes one job; the artifact goes to config.out or to `out`.
/// Returns 0 on success, 1 when a selftest check fails.
int run(const JobConfig& config, std::ostream& out);

/// CSV with columns k,N,nu,classical_margin,elliptic_margin,sharp_classical
/// (classical columns at M = 1, m = 1).
std::string emit_threshold_table(const std::vector<double>& ks, const std::vector<std::int64_t>& Ns,
                                 const std::vector<int>& nus);

/// Parses argv and runs; exit status 2 for invalid configurations, 3 for numeric refusals.
int main(int argc, char** argv);

}  // namespace vvps::cli

#endif  // VVPS_CLI_HPP
