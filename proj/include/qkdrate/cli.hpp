#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkdrate/exponents.hpp"
#include "qkdrate/finite_n.hpp"
#include "qkdrate/rates.hpp"

namespace qkdrate::cli {

/// Raised for flag combinations that fail validation; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  ///< sweep | optimize | finite-n | simulate | audit

  double q = 0.05;
  double q_start = 0.005;
  double q_end = 0.11;
  double q_step = 0.005;
  double c = 1e-4;
  std::string mode = "both";  ///< asymmetric | symmetric | both
  PhaseModel phase_model = PhaseModel::bit_formula;
  bool audit = false;         ///< optimize: append closed-form cross-checks
  unsigned threads = 0;

  // finite-n
  std::vector<std::int64_t> n_values{1000, 10000, 100000};
  double p1 = 0.1;
  double p2 = 0.3;
  Basis basis = Basis::phase;
  std::optional<double> s;  ///< default: S(C) by inversion
  SumRange range = SumRange::total;
  BoundForm bound = BoundForm::sandwich;

  // simulate
  std::int64_t n_sample = 50;
  std::int64_t n_pop = 50;
  std::int64_t errors = 10;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 42;

  // audit
  std::vector<double> audit_c;  ///< default: {c, 0.01, 0.05}

  std::string format = "csv";  ///< csv | json
  std::string output;          ///< empty: standard output
};

/// Throws UsageError when the config violates a documented invariant.
void validate(const RunConfig& config);

/// Executes a validated config. Returns 0, or 1 if any row failed.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, validates, runs. Returns the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Resolves --output against $QKDRATE_OUTPUT_DIR when the path is relative.
std::string resolve_output_path(const std::string& output);

}  // namespace qkdrate::cli
