#include "qkdrate/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "qkdrate/errors.hpp"

namespace qkdrate {

namespace {

void require_inputs(double q, double c) {
  if (!(q > 0.0 && q < 0.5)) throw DomainError("optimizer requires 0 < q < 1/2");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("exponent constraint C must be >= 0");
}

using RateFn = std::function<RatePoint(double p1, double p2)>;

struct Incumbent {
  RatePoint point;
  double p1 = 0.0;
  double p2 = 0.0;
};

/// Golden-section on one coordinate within one coarse step of the incumbent.
void line_search(const RateFn& rate, Incumbent& best, bool along_p1, double step,
                 const ToleranceConfig& line_cfg) {
  const double center = along_p1 ? best.p1 : best.p2;
  const double a = std::max(0.0, center - step);
  const double b = std::min(0.5, center + step);
  auto at = [&](double x) { return along_p1 ? rate(x, best.p2) : rate(best.p1, x); };
  const ScalarMinimum m =
      golden_section([&](double x) { return -at(x).r_raw; }, a, b, line_cfg);
  if (-m.min > best.point.r_raw) {
    best.point = at(m.argmin);
    (along_p1 ? best.p1 : best.p2) = m.argmin;
  }
}

OptimizationResult optimize(const RateFn& rate, bool free_p2, double q, double c, Mode mode,
                            PhaseModel model, const OptimizerConfig& opt) {
  opt.validate();
  const double step = opt.coarse_step();
  const std::vector<double> axis = uniform_grid(0.0, 0.5, opt.coarse_divisions + 1);
  const std::vector<double> p2_axis = free_p2 ? axis : std::vector<double>{0.5};

  std::optional<Incumbent> best;
  for (double p1 : axis) {
    for (double p2 : p2_axis) {
      RatePoint point = rate(p1, p2);
      if (!best || point.r_raw > best->point.r_raw) best = Incumbent{point, p1, p2};
    }
  }

  OptimizationResult out;
  out.q = q;
  out.c = c;
  out.mode = mode;
  out.phase_model = model;
  out.coarse_grid_step = step;
  out.coarse_best_r_raw = best->point.r_raw;

  ToleranceConfig line_cfg;
  line_cfg.root_tol = opt.line_tol;
  for (int round = 0; round < opt.refine_rounds; ++round) {
    const double before = best->point.r_raw;
    line_search(rate, *best, true, step, line_cfg);
    if (free_p2) line_search(rate, *best, false, step, line_cfg);
    ++out.refinement_iters;
    if (best->point.r_raw - before < opt.improvement_tol) break;
  }

  out.best = best->point;
  out.argmax_p1 = best->p1;
  out.argmax_p2 = best->p2;
  return out;
}

}  // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::asymmetric ? "asymmetric" : "symmetric";
}

Mode parse_mode(std::string_view name) {
  if (name == "asymmetric") return Mode::asymmetric;
  if (name == "symmetric") return Mode::symmetric;
  throw DomainError("unknown mode '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
  if (coarse_divisions < 1) throw DomainError("coarse_divisions must be at least 1");
  if (refine_rounds < 0) throw DomainError("refine_rounds must be nonnegative");
  if (!(improvement_tol >= 0.0)) throw DomainError("improvement_tol must be nonnegative");
  if (!(line_tol > 0.0)) throw DomainError("line_tol must be positive");
}

OptimizationResult optimize_asymmetric(double q, double c, const ToleranceConfig& cfg,
                                       const OptimizerConfig& opt) {
  require_inputs(q, c);
  const ErrorRates rates{q, q};
  RateFn rate = [&](double p1, double p2) {
    return rate_asymmetric(ProtocolParams(p1, p2), rates, c, cfg);
  };
  return optimize(rate, true, q, c, Mode::asymmetric, PhaseModel::bit_formula, opt);
}

OptimizationResult optimize_symmetric(double q, double c, PhaseModel model,
                                      const ToleranceConfig& cfg, const OptimizerConfig& opt) {
  require_inputs(q, c);
  const ErrorRates rates{q, q};
  RateFn rate = [&](double p1, double) { return rate_symmetric(p1, rates, c, model, cfg); };
  return optimize(rate, false, q, c, Mode::symmetric, model, opt);
}

std::vector<SweepRow> sweep(std::span<const double> q_grid, double c,
                            std::span<const Mode> modes, PhaseModel model,
                            const ToleranceConfig& cfg, const OptimizerConfig& opt,
                            unsigned threads) {
  if (q_grid.empty()) throw DomainError("sweep: empty q grid");
  if (modes.empty()) throw DomainError("sweep: no modes requested");
  std::vector<SweepRow> rows;
  rows.reserve(q_grid.size() * modes.size());
  for (double q : q_grid) {
    for (Mode mode : modes) rows.push_back(SweepRow{q, mode, std::nullopt, {}});
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        row.result = row.mode == Mode::asymmetric
                         ? optimize_asymmetric(row.q, c, cfg, opt)
                         : optimize_symmetric(row.q, c, model, cfg, opt);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::vector<double> make_q_grid(double start, double end, double step) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  if (!(start <= end)) throw DomainError("grid start must not exceed end");
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12;
  }
  return grid;
}

}  // namespace qkdrate
