#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tie/elastic_kernels.hpp"
#include "tie/geometry.hpp"

// Nystrom discretization of the boundary operators of 2D elastostatics on a
// smooth closed curve: the single layer S (weakly singular, Kress log
// splitting), the principal-value operators K, K*, K-sharp, (K-sharp)* (cot
// circulant with analytic diagonal limits), cross-curve operators, off-curve
// field evaluation, and spectral on-curve trace machinery.
//
// Vector fields on a curve with n nodes are stored interleaved:
// v[2i], v[2i+1] are the components at node i. Operator matrices act on that
// layout, so they are 2 n_target x 2 n_source.

namespace tie {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Exec { serial, parallel };
enum class Side { interior, exterior };

inline double side_sign(Side s) { return s == Side::exterior ? 1.0 : -1.0; }

struct BoundaryField {
  VectorXd v;  // interleaved, size 2n

  BoundaryField() = default;
  explicit BoundaryField(int n) : v(VectorXd::Zero(2 * n)) {}
  explicit BoundaryField(VectorXd values) : v(std::move(values)) {}

  int nodes() const { return static_cast<int>(v.size()) / 2; }
  Vector2d at(int i) const { return Vector2d(v[2 * i], v[2 * i + 1]); }
  void set(int i, const Vector2d& p) {
    v[2 * i] = p.x();
    v[2 * i + 1] = p.y();
  }
};

// Moments against the rigid motions theta_1, theta_2, theta_3 in the
// discrete d-sigma inner product.
Eigen::Vector3d psi_moments(const ClosedCurve& curve, const VectorXd& field);

// Nodal samples of a rigid motion as an interleaved field.
VectorXd rigid_motion_field(const ClosedCurve& curve, int m);

// d sigma inner product of two interleaved fields.
double curve_inner(const ClosedCurve& curve, const VectorXd& f, const VectorXd& g);

enum class OpKind {
  single_layer,
  dlp_k,
  dlp_kstar,
  ksharp,
  ksharp_star,
  cross_value,
  cross_traction
};

struct OperatorMatrix {
  MatrixXd entries;
  OpKind kind;
};

OperatorMatrix assemble_single_layer(const LameParams& p, const ClosedCurve& c,
                                     Exec exec = Exec::parallel);
OperatorMatrix assemble_k(const LameParams& p, const ClosedCurve& c, Exec exec = Exec::parallel);
OperatorMatrix assemble_kstar(const LameParams& p, const ClosedCurve& c,
                              Exec exec = Exec::parallel);
OperatorMatrix assemble_ksharp(const LameParams& p, const ClosedCurve& c,
                               Exec exec = Exec::parallel);
OperatorMatrix assemble_ksharp_star(const LameParams& p, const ClosedCurve& c,
                                    Exec exec = Exec::parallel);

// Bundle of the on-curve operators for one (material, curve) pair plus the
// jump-relation traces built from them.
struct CurveOps {
  LameParams mat;
  const ClosedCurve* curve = nullptr;
  MatrixXd S;           // single layer values
  MatrixXd K;           // p.v. double layer
  MatrixXd Kstar;       // p.v. adjoint
  MatrixXd Ksharp;      // p.v. entrywise-normal double layer
  MatrixXd KsharpStar;  // p.v. adjoint of K-sharp

  MatrixXd conormal_trace(Side s) const;      // (+-1/2 I + K*)
  MatrixXd normal_deriv_trace(Side s) const;  // (+-1/(2mu) I -+ B nn^T + (K-sharp)*)
  MatrixXd dsharp_trace(Side s) const;        // (-+1/(2mu) I +- B nn^T + K-sharp)
  MatrixXd dlp_trace(Side s) const;           // (-+1/2 I + K)
};

CurveOps assemble_curve_ops(const LameParams& p, const ClosedCurve& c,
                            Exec exec = Exec::parallel);

// Smooth cross-curve operators: values and target-conormal traces of the
// single layer from source onto target (disjoint curves). The source
// quadrature is internally refined (trig upsampling) until the nearly
// singular trapezoid error is below roughly 1e-12.
struct CrossOps {
  MatrixXd value;     // S_{p,source} evaluated at target nodes
  MatrixXd traction;  // conormal at target nodes, with the target's normals
};
CrossOps cross_ops(const LameParams& p, const ClosedCurve& source, const ClosedCurve& target,
                   Exec exec = Exec::parallel);

// Number of upsampled quadrature nodes needed for a target at the given
// parameter-plane distance from the source curve.
int quadrature_nodes_for_distance(const ClosedCurve& source, double geom_distance, int minimum);

// Off-curve evaluation (plain trapezoid with internal upsampling chosen from
// the target-to-curve distance). Points closer than 5 mesh widths to the
// curve are rejected; use the *_near variants with an explicit quadrature
// size for deliberate near-curve probing in tests.
Matrix2Xd eval_single_layer(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                            const Matrix2Xd& pts, Exec exec = Exec::parallel);
Matrix2Xd eval_dsharp(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                      const Matrix2Xd& pts, Exec exec = Exec::parallel);
Matrix2Xd eval_double_layer(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                            const Matrix2Xd& pts, Exec exec = Exec::parallel);
std::vector<Matrix2d> eval_single_layer_gradient(const LameParams& p, const ClosedCurve& c,
                                                 const VectorXd& density, const Matrix2Xd& pts,
                                                 Exec exec = Exec::parallel);
std::vector<Matrix2d> eval_dsharp_gradient(const LameParams& p, const ClosedCurve& c,
                                           const VectorXd& density, const Matrix2Xd& pts,
                                           Exec exec = Exec::parallel);

Matrix2Xd eval_single_layer_near(const LameParams& p, const ClosedCurve& c,
                                 const VectorXd& density, const Matrix2Xd& pts, int m_quad);
Matrix2Xd eval_dsharp_near(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                           const Matrix2Xd& pts, int m_quad);
Matrix2Xd eval_double_layer_near(const LameParams& p, const ClosedCurve& c,
                                 const VectorXd& density, const Matrix2Xd& pts, int m_quad);
std::vector<Matrix2d> eval_single_layer_gradient_near(const LameParams& p, const ClosedCurve& c,
                                                      const VectorXd& density,
                                                      const Matrix2Xd& pts, int m_quad);
std::vector<Matrix2d> eval_dsharp_gradient_near(const LameParams& p, const ClosedCurve& c,
                                                const VectorXd& density, const Matrix2Xd& pts,
                                                int m_quad);

// One-sided surface gradient of the single-layer field at the curve nodes:
// tangential part by spectral differentiation of the trace, normal part from
// the jump relation for d S / d n.
std::vector<Matrix2d> single_layer_surface_gradient(const CurveOps& ops, const VectorXd& density,
                                                    Side side);

// Completes one-sided surface gradients of a Lame-harmonic field to full
// second derivatives: tangential derivatives of the gradient are spectral,
// the normal-normal entries come from the PDE written in the surface frame.
struct SurfaceHessian {
  Matrix2d h[2];  // h[i](l, m) = d^2 u_i / dx_l dx_m
};
std::vector<SurfaceHessian> complete_hessians(const LameParams& p, const ClosedCurve& c,
                                              const std::vector<Matrix2d>& grads);

// One-sided conormal trace of D-sharp[g] on the curve, computed through the
// identity D-sharp[g] = -sum_l d_l S[n_l g] and Hessian completion of the
// two single-layer fields.
VectorXd dsharp_conormal_trace(const CurveOps& ops, const VectorXd& g, Side side);

// Arclength derivative of an interleaved nodal field.
VectorXd tangential_derivative(const ClosedCurve& curve, const VectorXd& field);

}  // namespace tie
