#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace kernel_eig {

inline constexpr double kDefaultDegeneracyGap = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;

/// Where a split came from. `lambda` and `power` are only meaningful for the
/// anharmonic family.
struct ModelInfo {
  std::string name = "custom";
  std::optional<double> lambda;
  int power = 0;
  std::optional<std::uint64_t> seed;
};

/// A truncated Hamiltonian separated into its diagonal (the unperturbed
/// energies) and its zero-diagonal symmetric off-diagonal coupling.
///
/// Instances are immutable; the constructor enforces symmetry, zero diagonal
/// and pairwise-distinct energies.
class SpectrumSplit {
 public:
  SpectrumSplit(Eigen::VectorXd energies, Eigen::MatrixXd coupling, ModelInfo meta,
                double degeneracy_gap = kDefaultDegeneracyGap);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(energies_.size()); }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }
  const Eigen::MatrixXd& coupling() const noexcept { return coupling_; }
  const ModelInfo& meta() const noexcept { return meta_; }

  double energy(std::size_t i) const { return energies_(static_cast<Eigen::Index>(i)); }
  double coupling(std::size_t i, std::size_t j) const {
    return coupling_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// diag(energies) + coupling.
  Eigen::MatrixXd hamiltonian() const;

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd coupling_;
  ModelInfo meta_;
};

/// Matrix of x^power in the harmonic-oscillator basis, x = (a + a^dagger)/sqrt(2),
/// computed on a basis of dim + pad states and cropped to dim x dim. Entries of
/// the crop are exact once pad >= power/2.
Eigen::MatrixXd position_power(int power, std::size_t dim, std::size_t pad);

/// H = p^2 + x^2 + lambda x^(2m) truncated to the lowest `dim` oscillator states.
/// Unperturbed energies are 2n+1; the diagonal of lambda x^(2m) is folded into
/// the energies. `pad` defaults to 2m.
SpectrumSplit build_anharmonic(double lambda, int power, std::size_t dim,
                               std::optional<std::size_t> pad = std::nullopt,
                               double degeneracy_gap = kDefaultDegeneracyGap);

/// Split a dense symmetric matrix into diagonal and off-diagonal parts.
SpectrumSplit build_from_matrix(const Eigen::MatrixXd& h,
                                double degeneracy_gap = kDefaultDegeneracyGap);

/// Seeded random split: energies 1..dim (plus `jitter` * U[0,1) each), couplings
/// U[-scale, scale]. Deterministic for a given (dim, seed, scale, jitter).
SpectrumSplit build_random(std::size_t dim, std::uint64_t seed, double scale = 0.2,
                           double jitter = 0.0);

}  // namespace kernel_eig
