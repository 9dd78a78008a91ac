#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "kernel_eig/error.hpp"
#include "kernel_eig/kernel.hpp"
#include "shifted_solver.hpp"

namespace kernel_eig {

namespace {


// Basis state addressed by each label, labels first..max_label.
struct LabelMap {
  std::size_t first = 0;
  std::vector<std::size_t> states;
};

LabelMap label_map(const SpectrumSplit& split, std::size_t gamma, std::size_t max_label,
                   CutConvention convention) {
  LabelMap map;
  const std::size_t limit = max_cut_label(split, gamma, convention);
  if (max_label > limit) {
    throw InputError("cut level " + std::to_string(max_label) + " exceeds the largest level " +
                     std::to_string(limit) + " available in a basis of " +
                     std::to_string(split.dim()) + " (" + to_string(convention) + ")");
  }
  switch (convention) {
    case CutConvention::raw_index:
      map.first = 0;
      for (std::size_t n = 0; n <= max_label; ++n) map.states.push_back(n);
      break;
    case CutConvention::one_based:
      map.first = 1;
      for (std::size_t n = 1; n <= max_label; ++n) map.states.push_back(n - 1);
      break;
    case CutConvention::coupled_subspace: {
      map.first = 1;
      const auto connected = connected_states(split, gamma);
      map.states.assign(connected.begin(),
                        connected.begin() + static_cast<std::ptrdiff_t>(max_label));
      break;
    }
  }
  return map;
}

}  // namespace

std::string to_string(CutConvention c) {
  switch (c) {
    case CutConvention::raw_index:
      return "raw";
    case CutConvention::coupled_subspace:
      return "coupled";
    case CutConvention::one_based:
      return "one-based";
  }
  return "unknown";
}

CutConvention parse_convention(const std::string& name) {
  if (name == "raw" || name == "raw-index") return CutConvention::raw_index;
  if (name == "coupled" || name == "coupled-subspace") return CutConvention::coupled_subspace;
  if (name == "one-based" || name == "one_based") return CutConvention::one_based;
  throw InputError("unknown cut convention '" + name + "' (expected raw, coupled or one-based)");
}

std::size_t max_cut_label(const SpectrumSplit& split, std::size_t gamma,
                          CutConvention convention) {
  switch (convention) {
    case CutConvention::raw_index:
      return split.dim() - 1;
    case CutConvention::one_based:
      return split.dim();
    case CutConvention::coupled_subspace:
      return connected_states(split, gamma).size();
  }
  return 0;
}

double CutSeriesReport::value(std::size_t label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InputError("label " + std::to_string(label) + " not in report");
  return values[static_cast<std::size_t>(it - labels.begin())];
}

double CutSeriesReport::cumulative_at(std::size_t label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InputError("label " + std::to_string(label) + " not in report");
  return cumulative[static_cast<std::size_t>(it - labels.begin())];
}

std::vector<std::size_t> cut_states(const SpectrumSplit& split, std::size_t gamma,
                                    std::size_t max_label, CutConvention convention) {
  const auto connected = connected_states(split, gamma);
  std::vector<bool> reachable(split.dim(), false);
  for (std::size_t s : connected) reachable[s] = true;
  std::vector<std::size_t> out;
  for (std::size_t s : label_map(split, gamma, max_label, convention).states) {
    if (reachable[s]) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CutSeriesReport cut_series(const SpectrumSplit& split, std::size_t gamma, double z,
                           std::size_t max_label, CutConvention convention) {
  if (gamma >= split.dim()) throw InputError("state index out of range");
  const LabelMap map = label_map(split, gamma, max_label, convention);
  const auto connected = connected_states(split, gamma);
  std::vector<bool> reachable(split.dim(), false);
  for (std::size_t s : connected) reachable[s] = true;

  CutSeriesReport report;
  report.gamma = gamma;
  report.z = z;
  report.convention = convention;

  const double shifted = split.energy(gamma) - z;
  std::vector<std::size_t> admitted;
  double running = 0.0;

  // Adding state s to the admitted set P changes v^T (D - G)^-1 v by the
  // Schur-complement term (c + b^T M^-1 a)^2 / (d - b^T M^-1 b), which is
  // exactly the sum over paths whose largest label is s's.
  for (std::size_t idx = 0; idx < map.states.size(); ++idx) {
    const std::size_t label = map.first + idx;
    const std::size_t s = map.states[idx];
    double value = 0.0;
    if (s != gamma && reachable[s]) {
      const auto n = static_cast<Eigen::Index>(admitted.size());
      const double c = split.coupling(gamma, s);
      const double d = shifted - split.energy(s);
      double numer = c;
      double denom = d;
      if (n > 0) {
        Eigen::MatrixXd m(n, n);
        Eigen::VectorXd a(n);
        Eigen::VectorXd b(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          const std::size_t si = admitted[static_cast<std::size_t>(i)];
          a(i) = split.coupling(gamma, si);
          b(i) = split.coupling(s, si);
          for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = -split.coupling(si, admitted[static_cast<std::size_t>(j)]);
          }
          m(i, i) = shifted - split.energy(si);
        }
        const detail::ShiftedSolver solver(m, 0.0);
        if (!(solver.rcond() > 1e-15)) {
          throw PoleError("z is an eigenvalue of the truncated intermediate block at level " +
                              std::to_string(label),
                          z);
        }
        const Eigen::VectorXd mb = solver.solve(b);
        numer += mb.dot(a);
        denom -= mb.dot(b);
      }
      if (denom == 0.0) {
        throw PoleError("z is a pole of the kernel truncated at level " + std::to_string(label), z);
      }
      value = numer * numer / denom;
      admitted.push_back(s);
    }
    running += value;
    report.labels.push_back(label);
    report.states.push_back(s);
    report.values.push_back(value);
    report.cumulative.push_back(running);
  }
  return report;
}

std::string to_csv(const CutSeriesReport& report) {
  std::ostringstream os;
  os << "n,R_c,cumulative\n";
  char buf[96];
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.14e,%.14e\n", report.labels[i], report.values[i],
                  report.cumulative[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace kernel_eig
