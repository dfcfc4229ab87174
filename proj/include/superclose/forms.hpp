#pragma once

#include <memory>
#include <optional>
#include <string>

#include <Eigen/SparseCore>

#include "superclose/core.hpp"
#include "superclose/function_spec.hpp"
#include "superclose/quadrature.hpp"
#include "superclose/space.hpp"

namespace superclose {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class FormKind { mass, stiffness, adr, perturbed };

std::string to_string(FormKind kind);

/// Declarative description of a bilinear form a_h(u, w).
///
///   mass       int u w
///   stiffness  int grad u . grad w
///   adr        int grad u . grad w - int (v . grad u) w + kappa int u w
///   perturbed  base(u, w) + h^delta perturbation(u, w)
///
/// mu, nu and q are the exponents of the perturbation bound
/// |a_h⁺(v,w) - a_h(v,w)| <= C h^delta |v|_{mu,eta} |w|_{nu,q}; they are
/// metadata consumed by the rate predictors.
struct BilinearFormSpec {
  FormKind kind = FormKind::mass;
  double kappa = 1.0;
  VectorField velocity;  ///< adr only; empty means v = 0
  std::shared_ptr<const BilinearFormSpec> base;
  std::shared_ptr<const BilinearFormSpec> perturbation;
  Delta delta = Delta::infinite();
  int mu = 0;
  int nu = 0;
  double q = 2.0;

  static BilinearFormSpec mass();
  static BilinearFormSpec stiffness();
  static BilinearFormSpec adr(double kappa, VectorField velocity);
  static BilinearFormSpec perturbed(const BilinearFormSpec& base, Delta delta,
                                    const BilinearFormSpec& perturbation);

  /// Sobolev order s of the form (0 for mass, 1 otherwise).
  int order() const;
  bool symmetric() const;
};

/// Pointwise coefficients: a(u,w) = int stiffness grad u.grad w
///                                 + (advection . grad u) w + mass u w.
struct FormCoefficients {
  double mass = 0.0;
  double stiffness = 0.0;
  Vec2 advection;
};

FormCoefficients form_coefficients(const BilinearFormSpec& form, const Vec2& x, double h);

/// Default quadrature exactness used by assembly: 2 degree + 4.
int assembly_exactness(int degree);

/// Matrix A_ij = a_h(N_j, N_i) over free DOFs. Throws coercivity_violation if
/// the symmetric part fails a Cholesky factorization.
SparseMatrix assemble_matrix(const FeSpace& space, const BilinearFormSpec& form);

/// Vector b_i = a_h(u, N_i) over free DOFs, integrated with the true u.
/// `exactness` overrides the default quadrature degree (must be >= default).
Eigen::VectorXd assemble_load(const FeSpace& space, const BilinearFormSpec& form,
                              const FunctionSpec& u, std::optional<int> exactness = {});

/// a_h(v, w) for two functions of the same space, same quadrature as assembly.
double form_value(const BilinearFormSpec& form, const FeFunction& v, const FeFunction& w);

/// a_h(u, w) for an exact u and a discrete w.
double form_value(const BilinearFormSpec& form, const FunctionSpec& u, const FeFunction& w);

}  // namespace superclose
