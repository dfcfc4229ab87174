#include "superclose/projection.hpp"

#include <string>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "format.hpp"

namespace superclose {

void SolverConfig::validate() const {
  require(tolerance > 0.0 && tolerance <= 1e-6, "solver tolerance must be in (0, 1e-6]");
}

namespace {

Eigen::VectorXd solve_direct(const SparseMatrix& a, const Eigen::VectorXd& b, bool symmetric) {
  if (static_cast<std::size_t>(a.rows()) <= kDenseLimit) {
    const Eigen::MatrixXd dense(a);
    if (symmetric) {
      Eigen::LLT<Eigen::MatrixXd> llt(dense);
      if (llt.info() != Eigen::Success) {
        fail(ErrorCode::coercivity_violation, "dense Cholesky factorization failed");
      }
      return llt.solve(b);
    }
    return Eigen::PartialPivLU<Eigen::MatrixXd>(dense).solve(b);
  }
  if (symmetric) {
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(a);
    if (ldlt.info() != Eigen::Success) {
      fail(ErrorCode::coercivity_violation, "sparse LDLT factorization failed");
    }
    return ldlt.solve(b);
  }
  Eigen::SparseLU<SparseMatrix> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) fail(ErrorCode::solver_failure, "sparse LU factorization failed");
  return lu.solve(b);
}

template <class Solver>
Eigen::VectorXd solve_iterative(Solver& solver, const SparseMatrix& a, const Eigen::VectorXd& b,
                                const SolverConfig& cfg, SolveStats& stats) {
  const std::size_t max_it = cfg.max_iterations ? cfg.max_iterations : 10 * static_cast<std::size_t>(a.rows());
  solver.setTolerance(cfg.tolerance);
  solver.setMaxIterations(static_cast<Eigen::Index>(max_it));
  solver.compute(a);
  Eigen::VectorXd x = solver.solve(b);
  stats.iterations = static_cast<std::size_t>(solver.iterations());
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::solver_failure, "iterative solver did not reach relative residual " +
                                        fmt_double(cfg.tolerance) + " within " +
                                        std::to_string(max_it) + " iterations (error " +
                                        fmt_double(solver.error()) + ")");
  }
  return x;
}

}  // namespace

Eigen::VectorXd solve(const SparseMatrix& a, const Eigen::VectorXd& b, bool symmetric,
                      const SolverConfig& cfg, SolveStats* stats_out) {
  cfg.validate();
  require(a.rows() == a.cols() && a.rows() == b.size(), "solve: dimension mismatch");
  SolveStats stats;
  const bool direct = cfg.method == SolverMethod::direct ||
                      (cfg.method == SolverMethod::automatic &&
                       static_cast<std::size_t>(a.rows()) <= kDenseLimit);
  Eigen::VectorXd x;
  if (direct) {
    stats.method_used = SolverMethod::direct;
    x = solve_direct(a, b, symmetric);
  } else {
    stats.method_used = SolverMethod::iterative_cg;
    if (symmetric) {
      Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper,
                               Eigen::DiagonalPreconditioner<double>>
          cg;
      x = solve_iterative(cg, a, b, cfg, stats);
    } else {
      Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>> bicg;
      x = solve_iterative(bicg, a, b, cfg, stats);
    }
  }
  const double bn = b.norm();
  stats.relative_residual = bn > 0.0 ? (a * x - b).norm() / bn : (a * x).norm();
  if (stats_out) *stats_out = stats;
  return x;
}

FeFunction project(std::shared_ptr<const FeSpace> space, const BilinearFormSpec& form,
                   const FunctionSpec& u, const SolverConfig& cfg, SolveStats* stats) {
  require(space != nullptr, "project: null space");
  const SparseMatrix a = assemble_matrix(*space, form);
  const Eigen::VectorXd b = assemble_load(*space, form, u);
  const Eigen::VectorXd x = solve(a, b, form.symmetric(), cfg, stats);
  return FeFunction::from_free(std::move(space), std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

}  // namespace superclose
