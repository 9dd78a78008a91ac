#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kernel_eig/eigensolve.hpp"
#include "kernel_eig/error.hpp"
#include "kernel_eig/io.hpp"
#include "kernel_eig/reference_tables.hpp"
#include "kernel_eig/verify.hpp"
#include "parallel.hpp"
#include "table.hpp"

namespace kernel_eig::cli {

namespace {

constexpr std::size_t kSolveBasis = 600;
constexpr std::size_t kVerifyBasis = 40;
constexpr std::size_t kRandomDim = 8;
constexpr double kVerifyLambda = 0.1;
constexpr std::size_t kOracleLimit = 1000;
const std::vector<std::size_t> kTable2Truncations = {10, 20, 30, 50, 100, 200, 600};

struct Problem {
  SpectrumSplit split;
  std::optional<double> lambda;
};

bool uses_lambda(const RunSpec& spec) {
  return !spec.matrix && spec.model == ModelKind::oscillator;
}

Problem make_problem(const RunSpec& spec, std::optional<double> lambda,
                     std::size_t default_basis) {
  if (spec.matrix) return {build_from_matrix(load_matrix_json(*spec.matrix)), std::nullopt};
  if (spec.model == ModelKind::random) {
    return {build_random(spec.basis.value_or(kRandomDim), spec.seed), std::nullopt};
  }
  return {build_anharmonic(*lambda, spec.power, spec.basis.value_or(default_basis)), lambda};
}

/// Lambdas to sweep, or a single empty slot for matrix and random inputs.
std::vector<std::optional<double>> lambda_slots(const RunSpec& spec,
                                                std::optional<double> fallback) {
  std::vector<std::optional<double>> out;
  if (!uses_lambda(spec)) return {std::nullopt};
  if (spec.lambdas.empty()) {
    if (!fallback) throw InputError(to_string(spec.command) + " needs --lambda, --matrix or --model random");
    return {fallback};
  }
  for (double l : spec.lambdas) out.emplace_back(l);
  return out;
}

Cell opt_cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }

Cell count_cell(std::size_t v) { return Cell{static_cast<long long>(v)}; }

void check_gamma(const SpectrumSplit& split, std::size_t gamma) {
  if (gamma >= split.dim()) {
    throw InputError("--gamma " + std::to_string(gamma) + " out of range for a basis of " +
                     std::to_string(split.dim()) + " states");
  }
}

// ---------------------------------------------------------------- solve / series

struct SolveRow {
  EigenResult result;
  ResultContext context;
};

SolveRow solve_one(const RunSpec& spec, std::optional<double> lambda) {
  const Problem p = make_problem(spec, lambda, kSolveBasis);
  check_gamma(p.split, spec.gamma);
  SolveRow row;
  row.context.lambda = p.lambda;
  row.context.basis = p.split.dim();
  const bool series = spec.command == Command::series || spec.mode == Mode::series;
  if (spec.command == Command::solve && spec.mode == Mode::oracle) {
    row.result = oracle_level(p.split, spec.gamma);
    return row;
  }
  const KernelContext ctx(p.split, spec.gamma);
  if (series) {
    row.result = eval_series(ctx, spec.jet_order);
  } else {
    RootOptions opts;
    opts.tol = spec.tol;
    row.result = solve_root(ctx, opts);
  }
  if (p.split.dim() <= kOracleLimit) row.context.oracle = oracle_level(p.split, spec.gamma).E_total;
  return row;
}

int run_solve(const RunSpec& spec, std::ostream& out) {
  const auto slots = lambda_slots(spec, std::nullopt);
  std::vector<SolveRow> rows(slots.size());
  parallel_for(slots.size(), spec.threads, [&](std::size_t i) { rows[i] = solve_one(spec, slots[i]); });

  const OutputFormat format = spec.output.value_or(OutputFormat::json);
  const bool series_rows = spec.command == Command::series;
  if (format == OutputFormat::json) {
    for (const auto& r : rows) out << to_json(r.result, r.context) << '\n';
  } else if (series_rows) {
    Table t{{"lambda", "gamma", "m", "term", "partial_sum"}, {}};
    for (const auto& r : rows) {
      for (std::size_t m = 0; m < r.result.terms.size(); ++m) {
        t.rows.push_back({opt_cell(r.context.lambda), count_cell(r.result.gamma), count_cell(m),
                          r.result.terms[m], r.result.partial_sums[m]});
      }
    }
    write_table(t, format, out);
  } else {
    Table t{{"gamma", "lambda", "basis", "method", "E0", "deltaE", "E_total", "iterations",
             "residual", "converged", "oracle"},
            {}};
    for (const auto& r : rows) {
      const auto& e = r.result;
      std::string method = to_string(e.method);
      if (e.method == SolveMethod::series) method += "(" + std::to_string(e.series_order) + ")";
      t.rows.push_back({count_cell(e.gamma), opt_cell(r.context.lambda), count_cell(r.context.basis),
                        method, e.E0, e.deltaE, e.E_total, count_cell(e.iterations), e.residual,
                        e.converged, opt_cell(r.context.oracle)});
    }
    write_table(t, format, out);
  }
  for (const auto& r : rows)
    if (!r.result.converged) return kExitFailed;
  return kExitOk;
}

// ---------------------------------------------------------------- oracle

int run_oracle(const RunSpec& spec, std::ostream& out) {
  const auto slots = lambda_slots(spec, std::nullopt);
  std::vector<std::vector<double>> spectra(slots.size());
  parallel_for(slots.size(), spec.threads, [&](std::size_t i) {
    spectra[i] = diagonalize_oracle(make_problem(spec, slots[i], kSolveBasis).split);
  });
  Table t{{"lambda", "index", "eigenvalue"}, {}};
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (std::size_t j = 0; j < spectra[i].size(); ++j)
      t.rows.push_back({opt_cell(slots[i]), count_cell(j), spectra[i][j]});
  }
  write_table(t, spec.output.value_or(OutputFormat::csv), out);
  return kExitOk;
}

// ---------------------------------------------------------------- table1

std::size_t table1_basis(const RunSpec& spec, std::size_t max_level) {
  if (spec.basis) return *spec.basis;
  const auto min_dim = static_cast<std::size_t>(2 * spec.power + 1);
  switch (spec.convention) {
    case CutConvention::raw_index:
      return std::max(min_dim, max_level + 1);
    case CutConvention::one_based:
      return std::max(min_dim, max_level);
    case CutConvention::coupled_subspace:
      break;
  }
  // Ground state couples only to even states.
  return std::max(min_dim, 2 * max_level + 1);
}

int run_table1(const RunSpec& spec, std::ostream& out) {
  if (spec.matrix || spec.model != ModelKind::oscillator)
    throw InputError("table1 runs on the oscillator model only");
  std::vector<double> lambdas = spec.lambdas;
  if (lambdas.empty()) lambdas.assign(reference::kLambdas.begin(), reference::kLambdas.end());
  std::vector<std::size_t> levels;
  if (spec.cut_n) {
    levels = {*spec.cut_n};
  } else {
    levels.assign(reference::kCutLevels.begin(), reference::kCutLevels.end());
  }
  const std::size_t max_level = *std::max_element(levels.begin(), levels.end());
  const std::size_t basis = table1_basis(spec, max_level);

  std::vector<CutSeriesReport> reports(lambdas.size());
  parallel_for(lambdas.size(), spec.threads, [&](std::size_t i) {
    const auto split = build_anharmonic(lambdas[i], spec.power, basis);
    const std::size_t top = max_cut_label(split, 0, spec.convention);
    if (top < max_level) {
      throw InputError("basis " + std::to_string(basis) + " is too small for cut level n=" +
                       std::to_string(max_level) + " (largest " + to_string(spec.convention) +
                       " label is " + std::to_string(top) + ")");
    }
    reports[i] = cut_series(split, 0, 0.0, max_level, spec.convention);
  });

  Table t{{"lambda", "n", "convention", "state", "R_c", "cumulative", "published", "ratio", "note"}, {}};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto& rep = reports[i];
    for (std::size_t level : levels) {
      const auto pos = std::find(rep.labels.begin(), rep.labels.end(), level) - rep.labels.begin();
      const double value = rep.values[pos];
      const auto published = reference::cut_value(lambdas[i], level);
      Cell ratio, note;
      if (published) {
        const double r = value == 0.0 ? 0.0 : value / *published;
        ratio = r;
        if (!(std::abs(r - 1.0) <= 1e-3)) note = std::string("convention mismatch with published values");
      }
      t.rows.push_back({lambdas[i], count_cell(level), to_string(spec.convention),
                        count_cell(rep.states[pos]), value, rep.cumulative[pos], opt_cell(published),
                        ratio, note});
    }
  }
  write_table(t, spec.output.value_or(OutputFormat::csv), out);
  return kExitOk;
}

// ---------------------------------------------------------------- table2

struct Table2Cell {
  double lambda = 0.0;
  std::size_t truncation = 0;
  std::optional<double> root, oracle;
  std::size_t iterations = 0;
  std::string failure;
};

double known_value_gate(double lambda) { return lambda >= 100.0 ? 1e-6 : 1e-8; }

int run_table2(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.matrix || spec.model != ModelKind::oscillator)
    throw InputError("table2 runs on the oscillator model only");
  std::vector<double> lambdas = spec.lambdas;
  if (lambdas.empty()) {
    lambdas = {0.0};
    lambdas.insert(lambdas.end(), reference::kLambdas.begin(), reference::kLambdas.end());
  }
  const std::vector<std::size_t> truncations =
      spec.basis ? std::vector<std::size_t>{*spec.basis} : kTable2Truncations;

  std::vector<Table2Cell> cells;
  for (double l : lambdas)
    for (std::size_t n : truncations) cells.push_back({l, n, {}, {}, 0, {}});
  parallel_for(cells.size(), spec.threads, [&](std::size_t i) {
    auto& c = cells[i];
    const auto split = build_anharmonic(c.lambda, spec.power, c.truncation);
    try {
      RootOptions opts;
      opts.tol = spec.tol;
      const auto r = solve_root(split, 0, opts);
      c.root = r.E_total;
      c.iterations = r.iterations;
    } catch (const ConvergenceError& e) {
      c.failure = e.what();
    }
    c.oracle = oracle_level(split, 0).E_total;
  });

  bool failed = false;
  Table t{{"lambda", "N", "E_root", "E_oracle", "published_N", "known", "dev_known", "dev_published",
           "iterations", "note"},
          {}};
  for (const auto& c : cells) {
    const auto published = reference::truncated_energy(c.lambda, c.truncation);
    const auto known = spec.power == 2 ? reference::known_energy(c.lambda) : std::nullopt;
    Cell dev_known, dev_published, note;
    if (!c.root) {
      note = std::string("nonconverged");
      err << "lambda=" << c.lambda << " N=" << c.truncation << ": " << c.failure << '\n';
      failed = true;
    } else {
      if (known) dev_known = std::abs(*c.root - *known);
      if (published) dev_published = std::abs(*c.root - *published);
      if (known && c.lambda == 0.0 && *c.root != *known) {
        note = std::string("not exact");
        failed = true;
      } else if (known && c.truncation >= 600 &&
                 std::abs(*c.root - *known) > known_value_gate(c.lambda)) {
        std::ostringstream os;
        os << "exceeds " << known_value_gate(c.lambda);
        note = os.str();
        failed = true;
      }
    }
    t.rows.push_back({c.lambda, count_cell(c.truncation), opt_cell(c.root), opt_cell(c.oracle),
                      opt_cell(published), opt_cell(known), dev_known, dev_published,
                      count_cell(c.iterations), note});
  }
  write_table(t, spec.output.value_or(OutputFormat::csv), out);
  return failed ? kExitFailed : kExitOk;
}

// ---------------------------------------------------------------- verify

struct Check {
  IdentitySet kind;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<double> lambda;
};

std::vector<Check> plan_checks(const RunSpec& spec, const std::vector<std::optional<double>>& slots) {
  std::vector<Check> checks;
  const bool all = spec.identity == IdentitySet::all;
  for (const auto& lambda : slots) {
    if (all || spec.identity == IdentitySet::power) {
      if (spec.n) {
        checks.push_back({IdentitySet::power, *spec.n, 0, lambda});
      } else {
        for (std::size_t n : {2u, 3u, 4u}) checks.push_back({IdentitySet::power, n, 0, lambda});
      }
    }
    if (all || spec.identity == IdentitySet::derivative) {
      if (spec.n && spec.k) {
        checks.push_back({IdentitySet::derivative, *spec.n, *spec.k, lambda});
      } else {
        for (std::size_t k = 0; k <= 7; ++k) {
          if (spec.k && k != *spec.k) continue;
          for (std::size_t n = 1; k + n <= 8; ++n) {
            if (spec.n && n != *spec.n) continue;
            checks.push_back({IdentitySet::derivative, n, k, lambda});
          }
        }
      }
    }
    if (all || spec.identity == IdentitySet::laurent)
      checks.push_back({IdentitySet::laurent, 0, 0, lambda});
  }
  if (all || spec.identity == IdentitySet::rs) checks.push_back({IdentitySet::rs, 0, 0, {}});
  return checks;
}

int run_verify(const RunSpec& spec, std::ostream& out) {
  const auto slots = lambda_slots(spec, kVerifyLambda);
  const auto checks = plan_checks(spec, slots);

  std::vector<std::vector<IdentityReport>> results(checks.size());
  parallel_for(checks.size(), spec.threads, [&](std::size_t i) {
    const Check& c = checks[i];
    if (c.kind == IdentitySet::rs) {
      const auto rs = rs_consistency();
      results[i] = {rs.linear, rs.quadratic};
      return;
    }
    const Problem p = make_problem(spec, c.lambda, kVerifyBasis);
    check_gamma(p.split, spec.gamma);
    switch (c.kind) {
      case IdentitySet::power:
        results[i] = {check_power_relation(p.split, spec.gamma, c.n, spec.jet_order)};
        break;
      case IdentitySet::derivative:
        results[i] = {check_derivative_identity(p.split, spec.gamma, c.k, c.n, spec.jet_order)};
        break;
      default:
        results[i] = {check_laurent(p.split, spec.gamma, spec.jet_order)};
        break;
    }
  });

  bool failed = false;
  const OutputFormat format = spec.output.value_or(OutputFormat::json);
  Table t{{"identity", "n", "k", "residual", "tolerance", "passed", "last_term", "lhs", "rhs",
           "inputs"},
          {}};
  for (const auto& group : results) {
    for (const auto& r : group) {
      failed = failed || !r.passed;
      if (format == OutputFormat::json) {
        out << to_json(r) << '\n';
      } else {
        t.rows.push_back({to_string(r.identity), count_cell(r.n), count_cell(r.k), r.residual,
                          r.tolerance, r.passed, r.last_term, r.lhs, r.rhs, r.inputs});
      }
    }
  }
  if (format != OutputFormat::json) write_table(t, format, out);
  return failed ? kExitFailed : kExitOk;
}

}  // namespace

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  switch (spec.command) {
    case Command::solve:
    case Command::series:
      return run_solve(spec, out);
    case Command::oracle:
      return run_oracle(spec, out);
    case Command::table1:
      return run_table1(spec, out);
    case Command::table2:
      return run_table2(spec, out, err);
    case Command::verify:
      return run_verify(spec, out);
  }
  return kExitInput;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const ParseOutcome parsed = parse_command_line(argc, argv, out, err);
    if (!parsed.spec) return parsed.exit_code;
    return run(*parsed.spec, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace kernel_eig::cli
