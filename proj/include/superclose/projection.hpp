#pragma once

#include <cstddef>
#include <memory>

#include <Eigen/Core>

#include "superclose/forms.hpp"
#include "superclose/function_spec.hpp"
#include "superclose/space.hpp"

namespace superclose {

enum class SolverMethod {
  automatic,  ///< dense direct up to kDenseLimit free DOFs, iterative above
  direct,
  iterative_cg,
};

/// Systems with at most this many unknowns are factored densely.
inline constexpr std::size_t kDenseLimit = 2000;

struct SolverConfig {
  SolverMethod method = SolverMethod::automatic;
  /// Relative residual bound for the iterative solvers.
  double tolerance = 1e-13;
  /// 0 selects 10 * n.
  std::size_t max_iterations = 0;

  void validate() const;
};

struct SolveStats {
  SolverMethod method_used = SolverMethod::direct;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A x = b. Direct: dense Cholesky/LU up to kDenseLimit unknowns,
/// sparse Cholesky/LU above. Iterative: Jacobi-preconditioned CG for
/// symmetric A, Jacobi-preconditioned BiCGSTAB otherwise.
Eigen::VectorXd solve(const SparseMatrix& a, const Eigen::VectorXd& b, bool symmetric,
                      const SolverConfig& cfg, SolveStats* stats = nullptr);

/// r_h u: the element of the space with a_h(r_h u - u, w_h) = 0 for all w_h.
FeFunction project(std::shared_ptr<const FeSpace> space, const BilinearFormSpec& form,
                   const FunctionSpec& u, const SolverConfig& cfg = {},
                   SolveStats* stats = nullptr);

}  // namespace superclose
