#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

// Smooth closed curves sampled on the uniform parameter grid t_i = 2*pi*i/n.
//
// Curvature convention (used consistently everywhere): with the arclength
// parametrization X, unit tangent tau = X', outward normal
// n = R_{-pi/2} tau (rotation (x,y) -> (y,-x)), curvature is defined by
// X'' = kappa n. A counterclockwise unit circle has kappa = -1, the opposite
// of the usual differential-geometry sign.

namespace tie {

using Eigen::Matrix2Xd;
using Eigen::Vector2d;
using Eigen::VectorXd;

// Rotation by -pi/2: (x, y) -> (y, -x). Maps tangent to outward normal.
inline Vector2d rotate_cw(const Vector2d& v) { return Vector2d(v.y(), -v.x()); }

struct ClosedCurve {
  int n = 0;             // number of nodes
  double length = 0.0;   // total arclength (the parameter period in arclength)
  Matrix2Xd x;           // positions Y(t_i)
  Matrix2Xd tau;         // unit tangents
  Matrix2Xd nrm;         // outward unit normals, nrm = R_{-pi/2} tau
  VectorXd kappa;        // curvature, X'' = kappa n
  VectorXd speed;        // |dY/dt|; equals length/(2 pi) for arclength curves
  VectorXd dspeed;       // d(speed)/dt; zero for arclength curves

  // Regenerates the same curve at a different node count from the analytic
  // parametrization; set by the constructors. resample() prefers this over
  // trigonometric interpolation of the samples.
  std::function<ClosedCurve(int)> regenerate;

  // Trapezoid weight of node i for integrals in arclength.
  double weight(int i) const { return speed[i] * 2.0 * M_PI / n; }
  VectorXd weights() const;

  // Shortest distance from p to the sampled nodes.
  double distance_to(const Vector2d& p) const;
  double mesh_width() const { return length / n; }
  Vector2d centroid() const;
};

struct ThicknessProfile {
  VectorXd h;       // h at curve nodes, must be >= some C > 0
  VectorXd dh_ds;   // tangential (arclength) derivative of h
  double min_value = 0.0;  // the recorded lower bound C
};

struct PerturbedCurve {
  ClosedCurve base;
  ThicknessProfile profile;
  double epsilon = 0.0;
  ClosedCurve curve;  // exact geometry of x + eps h n, same parameter grid
};

// Smooth parametrization of a closed curve on [0, 2 pi): position and two
// derivatives with respect to the raw parameter.
struct CurveParam {
  std::function<Vector2d(double)> pos;
  std::function<Vector2d(double)> d1;
  std::function<Vector2d(double)> d2;
};

ClosedCurve make_circle(double radius, int n_nodes);

// Reparametrizes an arbitrary C^2 simple closed curve to arclength
// (|X'| = 1 within 1e-10) with equispaced-in-arclength nodes.
ClosedCurve make_smooth_curve(const CurveParam& param, int n_nodes);

CurveParam ellipse_param(double a, double b);
CurveParam kite_param();  // (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)

// Truncated Fourier series h(t) = c0 + sum_k (ck cos kt + sk sin kt) in the
// curve's normalized arclength parameter; derivatives are exact term-wise.
ThicknessProfile make_profile_fourier(const ClosedCurve& curve, double c0,
                                      const std::vector<double>& cos_coeffs,
                                      const std::vector<double>& sin_coeffs);

// Spectral differentiation of arbitrary nodal samples.
ThicknessProfile make_profile_samples(const ClosedCurve& curve, const VectorXd& h);

// The perturbed boundary {x + eps h(x) n(x)}; all geometric quantities are
// computed from the exact perturbed parametrization, never from the first
// order expansions of n and d sigma (those are test subjects).
PerturbedCurve perturb(const ClosedCurve& base, const ThicknessProfile& profile, double epsilon);

// Trigonometric resampling of the curve to m >= n nodes; recomputes tangent,
// normal, curvature and speed from the interpolated positions.
ClosedCurve resample(const ClosedCurve& curve, int m);

// Signed enclosed area (positive for counterclockwise orientation).
double signed_area(const ClosedCurve& curve);

// Rigid motions theta_1 = e1, theta_2 = e2, theta_3 = (x2, -x1) evaluated at p.
Vector2d rigid_motion(int m, const Vector2d& p);

}  // namespace tie
