#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qkdrate/rates.hpp"

namespace qkdrate {

enum class Mode { asymmetric, symmetric };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

struct OptimizerConfig {
  int coarse_divisions = 32;      ///< grid step = (1/2) / coarse_divisions
  int refine_rounds = 3;          ///< coordinate-wise golden-section rounds
  double improvement_tol = 1e-9;  ///< stop refining once a round gains less than this
  double line_tol = 1e-9;         ///< bracket width of each golden-section line search

  double coarse_step() const { return 0.5 / coarse_divisions; }
  void validate() const;
};

struct OptimizationResult {
  double q = 0.0;
  double c = 0.0;
  Mode mode = Mode::asymmetric;
  PhaseModel phase_model = PhaseModel::bit_formula;
  RatePoint best;
  double argmax_p1 = 0.0;
  double argmax_p2 = 0.0;
  double coarse_grid_step = 0.0;
  int refinement_iters = 0;
  double coarse_best_r_raw = 0.0;  ///< best R_raw among coarse grid points
};

/// max over (p1, p2) in [0,1/2]^2 of R_raw at q_plus = q_times = q.
///
/// Coarse grid seeding (ties to smaller p1, then smaller p2), then alternating
/// golden-section line searches within one grid step of the incumbent.
OptimizationResult optimize_asymmetric(double q, double c, const ToleranceConfig& cfg = {},
                                       const OptimizerConfig& opt = {});

/// max over p1 in [0,1/2] of the symmetric rate at q_plus = q_times = q.
OptimizationResult optimize_symmetric(double q, double c,
                                      PhaseModel model = PhaseModel::bit_formula,
                                      const ToleranceConfig& cfg = {},
                                      const OptimizerConfig& opt = {});

struct SweepRow {
  double q = 0.0;
  Mode mode = Mode::asymmetric;
  std::optional<OptimizationResult> result;
  std::string error;  ///< set when the point failed; the sweep continues
};

/// One row per (q, mode), q-major in input order. Points are evaluated on
/// `threads` workers (0 = hardware concurrency); output is independent of it.
std::vector<SweepRow> sweep(std::span<const double> q_grid, double c,
                            std::span<const Mode> modes,
                            PhaseModel model = PhaseModel::bit_formula,
                            const ToleranceConfig& cfg = {}, const OptimizerConfig& opt = {},
                            unsigned threads = 0);

/// start, start + step, ..., up to end inclusive (with 1e-9 slack).
std::vector<double> make_q_grid(double start, double end, double step);

}  // namespace qkdrate
