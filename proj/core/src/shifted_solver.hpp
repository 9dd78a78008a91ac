#pragma once

#include <variant>

#include <Eigen/Dense>

namespace kernel_eig::detail {

/// Factorization of A = S - shift * I for a symmetric S.
///
/// Definite shifts (the ground-state branch, and z = 0 at weak coupling) use a
/// Cholesky factor of +A or -A, which keeps componentwise accuracy on the
/// strongly graded oscillator matrices. Indefinite shifts fall back to LU with
/// partial pivoting.
class ShiftedSolver {
 public:
  ShiftedSolver(const Eigen::MatrixXd& s, double shift);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  /// Reciprocal condition estimate; tiny values mean the shift sits on a pole.
  double rcond() const;

 private:
  double sign_ = 1.0;
  std::variant<Eigen::LLT<Eigen::MatrixXd>, Eigen::PartialPivLU<Eigen::MatrixXd>> factor_;
};

}  // namespace kernel_eig::detail
