#include "kernel_eig/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "kernel_eig/error.hpp"

namespace kernel_eig {

namespace {

void check_distinct(const Eigen::VectorXd& energies, double gap) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(energies.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return energies(a) < energies(b); });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double d = energies(order[i]) - energies(order[i - 1]);
    if (!(d > gap)) {
      std::ostringstream os;
      os << "degenerate case unsupported: E[" << order[i - 1] << "] = " << energies(order[i - 1])
         << " and E[" << order[i] << "] = " << energies(order[i]) << " differ by " << d
         << " (minimum gap " << gap << ")";
      throw DegenerateSpectrumError(os.str());
    }
  }
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SpectrumSplit::SpectrumSplit(Eigen::VectorXd energies, Eigen::MatrixXd coupling, ModelInfo meta,
                             double degeneracy_gap)
    : energies_(std::move(energies)), coupling_(std::move(coupling)), meta_(std::move(meta)) {
  const Eigen::Index k = energies_.size();
  if (k < 1) throw InputError("a spectrum split needs at least one state");
  if (coupling_.rows() != k || coupling_.cols() != k) {
    throw InputError("coupling must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  if (!energies_.allFinite() || !coupling_.allFinite()) {
    throw InputError("non-finite entry in Hamiltonian");
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    if (coupling_(i, i) != 0.0) throw InputError("coupling diagonal must be zero");
    for (Eigen::Index j = i + 1; j < k; ++j) {
      if (coupling_(i, j) != coupling_(j, i)) {
        throw InputError("coupling not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
  check_distinct(energies_, degeneracy_gap);
}

Eigen::MatrixXd SpectrumSplit::hamiltonian() const {
  Eigen::MatrixXd h = coupling_;
  h.diagonal() = energies_;
  return h;
}

Eigen::MatrixXd position_power(int power, std::size_t dim, std::size_t pad) {
  if (power < 0) throw InputError("negative power of x");
  const auto n = static_cast<Eigen::Index>(dim + pad);
  // Off-diagonal of the tridiagonal x: <i|x|i+1> = sqrt((i+1)/2).
  Eigen::VectorXd band(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) band(i) = std::sqrt(0.5 * static_cast<double>(i + 1));

  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd next(n, n);
  for (int p = 0; p < power; ++p) {
    // next = x * acc, using only the two nonzero bands of x.
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        double v = 0.0;
        if (i > 0) v += band(i - 1) * acc(i - 1, j);
        if (i + 1 < n) v += band(i) * acc(i + 1, j);
        next(i, j) = v;
      }
    }
    acc.swap(next);
  }
  const auto k = static_cast<Eigen::Index>(dim);
  return acc.topLeftCorner(k, k);
}

SpectrumSplit build_anharmonic(double lambda, int power, std::size_t dim,
                               std::optional<std::size_t> pad, double degeneracy_gap) {
  if (power < 2) throw InputError("anharmonic power m must be >= 2");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InputError("coupling constant lambda must be finite and non-negative");
  }
  const auto two_m = static_cast<std::size_t>(2 * power);
  if (dim < two_m + 1) {
    throw InputError("basis size " + std::to_string(dim) + " too small for x^" +
                     std::to_string(two_m) + "; need at least " + std::to_string(two_m + 1));
  }
  const Eigen::MatrixXd xp = position_power(static_cast<int>(two_m), dim, pad.value_or(two_m));
  const auto k = static_cast<Eigen::Index>(dim);

  Eigen::VectorXd energies(k);
  Eigen::MatrixXd coupling = lambda * xp;
  for (Eigen::Index i = 0; i < k; ++i) {
    energies(i) = static_cast<double>(2 * i + 1) + lambda * xp(i, i);
    coupling(i, i) = 0.0;
  }
  // The banded product is symmetric up to summation order; pin it exactly.
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) coupling(j, i) = coupling(i, j);
  }

  ModelInfo meta;
  meta.name = power == 2 ? "quartic" : "anharmonic";
  meta.lambda = lambda;
  meta.power = power;
  return SpectrumSplit(std::move(energies), std::move(coupling), std::move(meta), degeneracy_gap);
}

SpectrumSplit build_from_matrix(const Eigen::MatrixXd& h, double degeneracy_gap) {
  if (h.rows() != h.cols()) {
    throw InputError("matrix is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                     ", expected square");
  }
  if (h.rows() == 0) throw InputError("matrix is empty");
  if (!h.allFinite()) throw InputError("matrix has non-finite entries");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < h.cols(); ++j) {
      if (std::abs(h(i, j) - h(j, i)) > kSymmetryTolerance * scale) {
        std::ostringstream os;
        os << "matrix not symmetric at (" << i << ", " << j << "): " << h(i, j) << " vs "
           << h(j, i);
        throw InputError(os.str());
      }
    }
  }
  Eigen::VectorXd energies = h.diagonal();
  // Exactly symmetric input is split as-is; inputs within tolerance take the
  // upper triangle.
  Eigen::MatrixXd coupling = h.triangularView<Eigen::StrictlyUpper>();
  coupling += coupling.transpose().eval();
  return SpectrumSplit(std::move(energies), std::move(coupling), ModelInfo{}, degeneracy_gap);
}

SpectrumSplit build_random(std::size_t dim, std::uint64_t seed, double scale, double jitter) {
  if (dim == 0) throw InputError("random split needs dim >= 1");
  std::mt19937_64 rng(seed);
  const auto k = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd energies(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    energies(i) = static_cast<double>(i + 1) + jitter * unit_uniform(rng);
  }
  Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double g = scale * (2.0 * unit_uniform(rng) - 1.0);
      coupling(i, j) = g;
      coupling(j, i) = g;
    }
  }
  ModelInfo meta;
  meta.name = "random";
  meta.seed = seed;
  return SpectrumSplit(std::move(energies), std::move(coupling), std::move(meta));
}

}  // namespace kernel_eig
