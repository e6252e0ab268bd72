#include "qkdrate/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "qkdrate/errors.hpp"
#include "qkdrate/optimizer.hpp"
#include "qkdrate/sacrifice.hpp"
#include "qkdrate/table.hpp"

namespace qkdrate::cli {

namespace {

using Cell = Table::Cell;

std::vector<Mode> modes_of(const std::string& mode) {
  if (mode == "both") return {Mode::asymmetric, Mode::symmetric};
  return {parse_mode(mode)};
}

void require_open_rate(double q, const char* flag) {
  if (!(q > 0.0 && q < 0.5)) throw UsageError(std::string(flag) + " must lie in (0, 1/2)");
}

const std::vector<std::string> kRateColumns = {"q", "mode", "p1_opt", "p2_opt", "S1",
                                               "S2", "R_raw", "R"};

std::vector<Cell> rate_cells(double q, Mode mode, const OptimizationResult* r) {
  std::vector<Cell> row{q, std::string(to_string(mode))};
  if (r) {
    row.insert(row.end(), {r->argmax_p1, r->argmax_p2, r->best.s1, r->best.s2,
                           r->best.r_raw, r->best.r});
  } else {
    row.resize(kRateColumns.size());
  }
  return row;
}

std::vector<Cell> sacrifice_cells(const CrossCheckReport& rep) {
  if (!rep.error.empty() || !rep.closed || !rep.inversion) return {std::monostate{}, std::monostate{}, std::monostate{}};
  return {rep.closed->s, std::string(to_string(rep.closed->branch)), rep.discrepancy};
}

int run_sweep(const RunConfig& cfg, Table& table) {
  const std::vector<double> grid = make_q_grid(cfg.q_start, cfg.q_end, cfg.q_step);
  const std::vector<Mode> modes = modes_of(cfg.mode);
  const auto rows = sweep(grid, cfg.c, modes, cfg.phase_model, {}, {}, cfg.threads);
  int status = 0;
  for (const auto& row : rows) {
    auto cells = rate_cells(row.q, row.mode, row.result ? &*row.result : nullptr);
    cells.emplace_back(row.error);
    if (!row.error.empty()) status = 1;
    table.add_row(std::move(cells));
  }
  return status;
}

int run_optimize(const RunConfig& cfg, Table& table) {
  for (Mode mode : modes_of(cfg.mode)) {
    const OptimizationResult r = mode == Mode::asymmetric
                                     ? optimize_asymmetric(cfg.q, cfg.c)
                                     : optimize_symmetric(cfg.q, cfg.c, cfg.phase_model);
    auto cells = rate_cells(cfg.q, mode, &r);
    cells.emplace_back(r.coarse_grid_step);
    cells.emplace_back(static_cast<std::int64_t>(r.refinement_iters));
    if (cfg.audit) {
      const ProtocolParams params(r.argmax_p1, r.argmax_p2);
      const Basis second = mode == Mode::symmetric && cfg.phase_model == PhaseModel::bit_formula
                               ? Basis::bit
                               : Basis::phase;
      for (const Basis basis : {Basis::bit, second}) {
        const auto rep = cross_check(basis, params, cfg.q, cfg.c);
        for (auto& cell : sacrifice_cells(rep)) cells.push_back(std::move(cell));
      }
    }
    table.add_row(std::move(cells));
  }
  return 0;
}

int run_finite_n(const RunConfig& cfg, Table& table) {
  const ProtocolParams params(cfg.p1, cfg.p2);
  const double s = cfg.s ? *cfg.s : s_by_inversion(cfg.basis, params, cfg.q, cfg.c).s;
  for (std::int64_t n : cfg.n_values) {
    const FiniteNResult r = b_exact(cfg.basis, n, params, cfg.q, s, {}, cfg.range, cfg.bound);
    table.add_row({r.n, std::string(to_string(cfg.basis)), std::string(to_string(cfg.range)),
                   std::string(to_string(cfg.bound)), s, r.log2_b, r.empirical_exponent,
                   r.asymptotic_exponent});
  }
  return 0;
}

int run_simulate(const RunConfig& cfg, Table& table) {
  const CountLayout layout{cfg.n_sample + cfg.n_pop, cfg.n_sample, cfg.n_pop};
  const EstimationTable sim =
      simulate_estimation(layout, cfg.errors, cfg.trials, cfg.seed, cfg.threads);
  for (const auto& cell : sim.cells) {
    table.add_row({cell.k_sample, cell.k_pop, static_cast<std::int64_t>(cell.count),
                   cell.frequency, cell.exact_pmf, cell.z_score});
  }
  return 0;
}

int run_audit(const RunConfig& cfg, Table& table) {
  std::vector<double> cs = cfg.audit_c;
  if (cs.empty()) cs = {cfg.c, 0.01, 0.05};
  int status = 0;
  for (Basis basis : {Basis::bit, Basis::phase}) {
    for (double p1 : {0.05, 0.1, 0.25, 0.5}) {
      for (double p2 : {0.1, 0.3, 0.5}) {
        for (double q : {0.01, 0.05, 0.1}) {
          for (double c : cs) {
            const auto rep = cross_check(basis, ProtocolParams(p1, p2), q, c);
            std::vector<Cell> row{std::string(to_string(basis)), p1, p2, q, c};
            if (rep.error.empty()) {
              row.insert(row.end(),
                         {std::string(to_string(rep.closed->branch)), rep.closed->s,
                          std::string(to_string(rep.inversion->branch)), rep.inversion->s,
                          rep.discrepancy});
              row.push_back(rep.stationary_corrected ? Cell{*rep.stationary_corrected}
                                                     : Cell{});
            } else {
              status = 1;
              row.resize(11);
            }
            row.emplace_back(rep.error);
            table.add_row(std::move(row));
          }
        }
      }
    }
  }
  return status;
}

Table make_table(const RunConfig& cfg) {
  if (cfg.command == "sweep") {
    auto cols = kRateColumns;
    cols.push_back("error");
    return Table(cols);
  }
  if (cfg.command == "optimize") {
    auto cols = kRateColumns;
    cols.insert(cols.end(), {"coarse_grid_step", "refinement_iters"});
    if (cfg.audit) {
      cols.insert(cols.end(), {"S1_closed", "S1_branch", "S1_discrepancy", "S2_closed",
                               "S2_branch", "S2_discrepancy"});
    }
    return Table(cols);
  }
  if (cfg.command == "finite-n") {
    return Table({"N", "basis", "range", "bound", "S", "log2_B", "empirical_exponent",
                  "asymptotic_exponent"});
  }
  if (cfg.command == "simulate") {
    return Table({"k_sample", "k_pop", "count", "frequency", "exact_pmf", "z_score"});
  }
  return Table({"basis", "p1", "p2", "q", "C", "closed_branch", "S_closed", "inversion_branch",
                "S_inversion", "discrepancy", "S_stationary_corrected", "error"});
}

}  // namespace

std::string resolve_output_path(const std::string& output) {
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("QKDRATE_OUTPUT_DIR"); dir && *dir) {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path.string();
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands{"sweep", "optimize", "finite-n", "simulate",
                                                 "audit"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw UsageError("unknown command '" + cfg.command + "'");
  }
  if (!(cfg.c >= 0.0) || !std::isfinite(cfg.c)) throw UsageError("--c must be >= 0");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cfg.mode != "both" && cfg.mode != "asymmetric" && cfg.mode != "symmetric") {
    throw UsageError("--mode must be asymmetric, symmetric or both");
  }
  if (cfg.command == "sweep") {
    if (!(cfg.q_step > 0.0)) throw UsageError("--q-step must be positive");
    if (!(cfg.q_start <= cfg.q_end)) throw UsageError("--q-start must not exceed --q-end");
    require_open_rate(cfg.q_start, "--q-start");
    require_open_rate(cfg.q_end, "--q-end");
  } else if (cfg.command == "optimize") {
    require_open_rate(cfg.q, "--q");
  } else if (cfg.command == "finite-n") {
    if (!(cfg.q >= 0.0 && cfg.q <= 0.5)) throw UsageError("--q must lie in [0, 1/2]");
    if (!(cfg.p1 >= 0.0 && cfg.p1 <= 0.5)) throw UsageError("--p1 must lie in [0, 1/2]");
    if (!(cfg.p2 >= 0.0 && cfg.p2 <= 0.5)) throw UsageError("--p2 must lie in [0, 1/2]");
    if (cfg.n_values.empty()) throw UsageError("--n needs at least one value");
    for (auto n : cfg.n_values) {
      if (n < 1) throw UsageError("--n values must be >= 1");
    }
    if (cfg.s && !(*cfg.s >= 0.0)) throw UsageError("--s must be >= 0");
  } else if (cfg.command == "simulate") {
    if (cfg.n_sample < 0 || cfg.n_pop < 0) throw UsageError("sizes must be nonnegative");
    if (cfg.errors < 0 || cfg.errors > cfg.n_sample + cfg.n_pop) {
      throw UsageError("--errors must lie in [0, n_sample + n_pop]");
    }
    if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  } else if (cfg.command == "audit") {
    for (double c : cfg.audit_c) {
      if (!(c >= 0.0)) throw UsageError("--c-values must be >= 0");
    }
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table table = make_table(cfg);
  int status = 0;
  if (cfg.command == "sweep") status = run_sweep(cfg, table);
  else if (cfg.command == "optimize") status = run_optimize(cfg, table);
  else if (cfg.command == "finite-n") status = run_finite_n(cfg, table);
  else if (cfg.command == "simulate") status = run_simulate(cfg, table);
  else status = run_audit(cfg, table);

  const std::string payload = cfg.format == "json" ? table.to_json() : table.to_csv();
  if (cfg.output.empty()) {
    out << payload;
  } else {
    const std::string path = resolve_output_path(cfg.output);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << path << " for writing\n";
      return 1;
    }
    file << payload;
  }
  return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Key-rate analysis of asymmetric-basis BB84 under exponential constraints"};
  app.require_subcommand(1);

  std::string phase_model = "bit";
  std::string basis = "phase";
  std::string range = "total";
  std::string bound = "sandwich";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--c", cfg.c, "exponent constraint C (bits per qubit)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", cfg.output,
                    "output file (relative paths resolve against $QKDRATE_OUTPUT_DIR)");
  };

  auto* sweep_cmd = app.add_subcommand("sweep", "optimal rates over a q grid (figure data)");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--q-start", cfg.q_start);
  sweep_cmd->add_option("--q-end", cfg.q_end);
  sweep_cmd->add_option("--q-step", cfg.q_step);
  sweep_cmd->add_option("--mode", cfg.mode, "asymmetric, symmetric or both");
  sweep_cmd->add_option("--phase-model", phase_model, "bit or phase (symmetric mode)");
  sweep_cmd->add_option("--threads", cfg.threads, "0 = hardware concurrency");

  auto* opt_cmd = app.add_subcommand("optimize", "optimal (p1, p2) at one q");
  add_common(opt_cmd);
  opt_cmd->add_option("--q", cfg.q);
  opt_cmd->add_option("--mode", cfg.mode, "asymmetric (default), symmetric or both");
  opt_cmd->add_option("--phase-model", phase_model);
  opt_cmd->add_flag("--audit", cfg.audit, "cross-check closed-form sacrificed rates");

  auto* fin_cmd = app.add_subcommand("finite-n", "exact finite-N failure bounds");
  add_common(fin_cmd);
  fin_cmd->add_option("--n", cfg.n_values, "block lengths N")->delimiter(',');
  fin_cmd->add_option("--p1", cfg.p1);
  fin_cmd->add_option("--p2", cfg.p2);
  fin_cmd->add_option("--q", cfg.q);
  fin_cmd->add_option("--basis", basis, "bit or phase");
  fin_cmd->add_option("--s", cfg.s, "sacrificed-bit rate (default: S at --c)");
  fin_cmd->add_option("--range", range, "total or population");
  fin_cmd->add_option("--bound", bound, "sandwich or printed");

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo of the sampling split");
  add_common(sim_cmd);
  sim_cmd->add_option("--n-sample", cfg.n_sample);
  sim_cmd->add_option("--n-pop", cfg.n_pop);
  sim_cmd->add_option("--errors", cfg.errors);
  sim_cmd->add_option("--trials", cfg.trials);
  sim_cmd->add_option("--seed", cfg.seed);
  sim_cmd->add_option("--threads", cfg.threads);

  auto* audit_cmd = app.add_subcommand("audit", "closed form vs inversion over a grid");
  add_common(audit_cmd);
  audit_cmd->add_option("--c-values", cfg.audit_c, "constraints to audit")->delimiter(',');

  try {
    app.parse(argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "optimize" && !opt_cmd->count("--mode")) cfg.mode = "asymmetric";
    cfg.phase_model = parse_phase_model(phase_model);
    cfg.basis = parse_basis(basis);
    cfg.range = parse_sum_range(range);
    cfg.bound = parse_bound_form(bound);
    validate(cfg);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return run(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qkdrate::cli
