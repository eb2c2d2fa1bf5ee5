#pragma once

// Command-line front end over the C interface.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpkit::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;     // aps, ss-scan, pair-scan, modpoly, locus, height, ledger
  std::string subcommand;  // modpoly: compute|eval|kronecker|search; locus: check|search|generic|singular; ledger: thm1|thm2
  std::string format = "json";
  std::string cache_path;
  unsigned threads = 1;
  std::uint64_t exhaustive_below = 10000;

  // Curves and scans.
  std::vector<std::string> curves;
  std::uint64_t xmax = 0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::string> fits;
  std::optional<std::vector<double>> margin;  // A, D[, field degree]
  std::string csv_path;

  // Modular polynomials and loci.
  int level = 0;
  std::string x, y, j1, j2;
  int bound = 13;
  std::string out_path;
  std::string point;
  std::vector<int> I, J, levels;
  int j = 0;
  std::string mode;
  std::string value;

  // Heights.
  std::string rational, minpoly;
  double eps = 0;

  // Ledger.
  std::string curves_file;
  std::int64_t c_bad = -1;
  std::int64_t field_degree = 1;
  std::int64_t base_degree = 1;
  std::optional<double> h_s;
  std::optional<std::int64_t> pi_K;
  std::optional<std::vector<double>> claim;  // C1, D, C0
  bool scan = false;
  std::vector<double> ab;                    // c1, c2
  std::uint64_t scan_cap = 10'000'000;
};

/// Parses argv[1..]. Throws UsageError; help requests throw HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;  // what() holds the help text
};

/// Runs a parsed configuration; returns 0 on success, 1 on a computation error.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + execute with exit codes 0, 1 and 2 (usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1e5", "100000": a positive integer count. Throws UsageError.
std::uint64_t parse_count(const std::string& text, const std::string& what);

}  // namespace zpkit::cli
