#pragma once

#include <Eigen/Dense>

// Pointwise kernels of 2D isotropic elastostatics: the Kelvin fundamental
// matrix, its first and second derivatives, the traction (double layer)
// kernel and the entrywise normal-derivative kernel.

namespace tie {

using Eigen::Matrix2d;
using Eigen::Vector2d;

struct LameParams {
  double lambda = 0.0;
  double mu = 0.0;
  double A = 0.0;  // (1/2)(1/mu + 1/(2mu+lambda))
  double B = 0.0;  // (1/2)(1/mu - 1/(2mu+lambda))

  LameParams() = default;
  LameParams(double lambda_, double mu_);

  bool operator==(const LameParams& o) const { return lambda == o.lambda && mu == o.mu; }
};

struct MaterialTriple {
  LameParams background;  // lambda0, mu0
  LameParams core;        // lambda1, mu1
  LameParams layer;       // lambda2, mu2

  // Enforces the standing contrast assumptions
  // (lambda0-lambdaj)(mu0-muj) >= 0 and (lambda0-lambdaj)^2+(mu0-muj)^2 != 0.
  static MaterialTriple checked(LameParams bg, LameParams core, LameParams layer);
  // Skips the nonzero-contrast requirement (identity / zero-contrast tests).
  static MaterialTriple unchecked(LameParams bg, LameParams core, LameParams layer);
};

struct IsotropicTensor {
  double lambda = 0.0;
  double mu = 0.0;
  IsotropicTensor(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {}
  explicit IsotropicTensor(const LameParams& p) : lambda(p.lambda), mu(p.mu) {}
};

// C E = lambda tr(E) I + 2 mu E for symmetric E; rejects asymmetric input.
Matrix2d tensor_apply(const IsotropicTensor& t, const Matrix2d& strain);

// Gamma(x) = (A/2pi) log|x| I - (B/2pi) x x^T / |x|^2, x != 0.
Matrix2d kelvin_matrix(const LameParams& p, const Vector2d& x);

// d Gamma_{ik} / d x_l.
void kelvin_gradient(const LameParams& p, const Vector2d& x, Matrix2d dgamma[2]);

// d^2 Gamma_{ik} / d x_l d x_m; hess[i][k](l, m).
void kelvin_hessian(const LameParams& p, const Vector2d& x, Matrix2d hess[2][2]);

// Traction kernel K_j of the double layer: column k is the conormal
// derivative in y (with normal n_y) of the k-th column of Gamma(x - y).
Matrix2d traction_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                         const Vector2d& n_y);

// Entrywise normal derivative d Gamma(x-y) / d n(y) (kernel of D-sharp).
Matrix2d sharp_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                      const Vector2d& n_y);

// d Gamma(x-y) / d n(x) (kernel of the adjoint of K-sharp).
Matrix2d sharp_star_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                           const Vector2d& n_x);

// Traction at x of the field y -> Gamma(x-y) columns: the kernel whose
// integral against a density gives the conormal of the single layer.
Matrix2d traction_at_target_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                                   const Vector2d& n_x);

// Conormal vector lambda tr(G) n + mu (G + G^T) n from a displacement
// gradient G = grad u.
Vector2d conormal(const LameParams& p, const Matrix2d& grad_u, const Vector2d& n);

// Entrywise gradient of Gamma(x-y) in x applied later to densities:
// grad_x of the k-th column, for field-gradient evaluation off curve.
// out[k](i, l) = d Gamma_{ik}(x-y) / d x_l.
void kelvin_column_gradients(const LameParams& p, const Vector2d& z, Matrix2d out[2]);

// grad_x of the sharp kernel columns: out[k](i, l) = d/dx_l [dGamma/dn(y)]_{ik}.
void sharp_column_gradients(const LameParams& p, const Vector2d& z, const Vector2d& n_y,
                            Matrix2d out[2]);

}  // namespace tie
