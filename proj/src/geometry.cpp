#include "tie/geometry.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "tie/fourier.hpp"

namespace tie {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

void require_node_count(int n) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("node count must be even and >= 8");
}

// Fills tau, nrm, kappa, speed, dspeed from positions via spectral
// differentiation of the trigonometric interpolant.
void finish_from_positions(ClosedCurve& c) {
  const int n = c.n;
  VectorXd d1x = spectral_derivative(c.x.row(0).transpose());
  VectorXd d1y = spectral_derivative(c.x.row(1).transpose());
  VectorXd d2x = spectral_derivative(d1x);
  VectorXd d2y = spectral_derivative(d1y);
  c.tau.resize(2, n);
  c.nrm.resize(2, n);
  c.kappa.resize(n);
  c.speed.resize(n);
  for (int i = 0; i < n; ++i) {
    const Vector2d d1(d1x[i], d1y[i]);
    const Vector2d d2(d2x[i], d2y[i]);
    const double j = d1.norm();
    if (j <= 0.0) throw std::invalid_argument("degenerate parametrization (zero speed)");
    c.speed[i] = j;
    c.tau.col(i) = d1 / j;
    c.nrm.col(i) = rotate_cw(c.tau.col(i));
    c.kappa[i] = d2.dot(rotate_cw(d1)) / (j * j * j);
  }
  c.dspeed = spectral_derivative(c.speed);
  double len = 0.0;
  for (int i = 0; i < n; ++i) len += c.speed[i];
  c.length = len * kTwoPi / n;
}

void check_simple(const ClosedCurve& c, const char* what) {
  // Best-effort: distinct nodes must not come closer than a fraction of the
  // local arc spacing unless they are parameter neighbours. Skipped at
  // resampling sizes; validation happens at construction resolution.
  const int n = c.n;
  if (n > 4096) return;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      const int gap = std::min(j - i, n - (j - i));
      if (gap < 2) continue;
      const double d = (c.x.col(i) - c.x.col(j)).norm();
      const double arc = gap * c.mesh_width();
      if (d < 0.25 * std::min(arc, c.length / 4)) {
        throw std::invalid_argument(std::string(what) + ": curve self-intersects or nearly does");
      }
    }
  }
}
}  // namespace

VectorXd ClosedCurve::weights() const {
  VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = weight(i);
  return w;
}

double ClosedCurve::distance_to(const Vector2d& p) const {
  double best = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) best = std::min(best, (x.col(i) - p).norm());
  return best;
}

Vector2d ClosedCurve::centroid() const {
  Vector2d c = Vector2d::Zero();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    c += weight(i) * x.col(i);
    total += weight(i);
  }
  return c / total;
}

ClosedCurve make_circle(double radius, int n_nodes) {
  if (radius <= 0.0) throw std::invalid_argument("circle radius must be positive");
  require_node_count(n_nodes);
  ClosedCurve c;
  c.n = n_nodes;
  c.length = kTwoPi * radius;
  c.x.resize(2, n_nodes);
  c.tau.resize(2, n_nodes);
  c.nrm.resize(2, n_nodes);
  c.kappa.resize(n_nodes);
  c.speed = VectorXd::Constant(n_nodes, radius);
  c.dspeed = VectorXd::Zero(n_nodes);
  for (int i = 0; i < n_nodes; ++i) {
    const double t = kTwoPi * i / n_nodes;
    c.x.col(i) = radius * Vector2d(std::cos(t), std::sin(t));
    c.tau.col(i) = Vector2d(-std::sin(t), std::cos(t));
    c.nrm.col(i) = Vector2d(std::cos(t), std::sin(t));
    c.kappa[i] = -1.0 / radius;
  }
  c.regenerate = [radius](int m) { return make_circle(radius, m); };
  return c;
}

ClosedCurve make_smooth_curve(const CurveParam& param, int n_nodes) {
  require_node_count(n_nodes);
  const Vector2d gap = param.pos(0.0) - param.pos(kTwoPi);
  if (gap.norm() > 1e-9) throw std::invalid_argument("parametrization is not closed");

  // Arclength s(theta) via the trigonometric interpolant of the speed on a
  // fine grid, then per-node Newton sweeps for s(theta_i) = i L / n.
  const int m = std::clamp(8 * n_nodes, 512, 4096);
  VectorXd sp(m);
  for (int i = 0; i < m; ++i) {
    const double th = kTwoPi * i / m;
    const double v = param.d1(th).norm();
    if (v < 1e-12) throw std::invalid_argument("degenerate parametrization (zero speed)");
    sp[i] = v;
  }
  const auto coeffs = fourier_coeffs(sp);
  const int half = m / 2;
  const double mean = coeffs[half].real();  // mode 0
  const double total_len = kTwoPi * mean;
  auto speed_at = [&](double th) {
    cplx acc(0.0, 0.0);
    for (int k = -half; k < half; ++k) {
      if (k == -half) {
        acc += coeffs[0] * std::cos(0.5 * m * th);
      } else {
        acc += coeffs[k + half] * cplx(std::cos(k * th), std::sin(k * th));
      }
    }
    return acc.real();
  };
  auto arclen_at = [&](double th) {
    // Termwise antiderivative of the interpolant.
    double s = mean * th;
    for (int k = 1; k < half; ++k) {
      const cplx c = coeffs[k + half];
      // 2 Re[c (e^{ik th} - 1) / (ik)]
      const double re = c.real(), im = c.imag();
      s += 2.0 * (re * std::sin(k * th) + im * (std::cos(k * th) - 1.0)) / k;
    }
    return s;
  };

  ClosedCurve c;
  c.n = n_nodes;
  c.length = total_len;
  c.x.resize(2, n_nodes);
  c.tau.resize(2, n_nodes);
  c.nrm.resize(2, n_nodes);
  c.kappa.resize(n_nodes);
  c.speed = VectorXd::Constant(n_nodes, total_len / kTwoPi);
  c.dspeed = VectorXd::Zero(n_nodes);
  double theta = 0.0;
  for (int i = 0; i < n_nodes; ++i) {
    const double target = total_len * i / n_nodes;
    for (int it = 0; it < 60; ++it) {
      const double r = arclen_at(theta) - target;
      const double step = r / speed_at(theta);
      theta -= step;
      if (std::abs(step) < 1e-14) break;
    }
    if (std::abs(arclen_at(theta) - target) > 1e-11 * std::max(1.0, total_len))
      throw std::runtime_error("arclength reparametrization did not converge");
    // Exact node data from the analytic parametrization.
    c.x.col(i) = param.pos(theta);
    const Vector2d d1 = param.d1(theta);
    const Vector2d d2 = param.d2(theta);
    const double sg = d1.norm();
    c.tau.col(i) = d1 / sg;
    c.nrm.col(i) = rotate_cw(c.tau.col(i));
    c.kappa[i] = d2.dot(rotate_cw(d1)) / (sg * sg * sg);
  }
  check_simple(c, "make_smooth_curve");
  if (signed_area(c) <= 0.0)
    throw std::invalid_argument("make_smooth_curve: parametrization must be counterclockwise");
  c.regenerate = [param](int mm) { return make_smooth_curve(param, mm); };
  return c;
}

CurveParam ellipse_param(double a, double b) {
  CurveParam p;
  p.pos = [a, b](double t) { return Vector2d(a * std::cos(t), b * std::sin(t)); };
  p.d1 = [a, b](double t) { return Vector2d(-a * std::sin(t), b * std::cos(t)); };
  p.d2 = [a, b](double t) { return Vector2d(-a * std::cos(t), -b * std::sin(t)); };
  return p;
}

CurveParam kite_param() {
  CurveParam p;
  p.pos = [](double t) {
    return Vector2d(std::cos(t) + 0.65 * std::cos(2 * t) - 0.65, 1.5 * std::sin(t));
  };
  p.d1 = [](double t) {
    return Vector2d(-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t));
  };
  p.d2 = [](double t) {
    return Vector2d(-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t));
  };
  return p;
}

ThicknessProfile make_profile_fourier(const ClosedCurve& curve, double c0,
                                      const std::vector<double>& cos_coeffs,
                                      const std::vector<double>& sin_coeffs) {
  const int n = curve.n;
  ThicknessProfile p;
  p.h = VectorXd::Constant(n, c0);
  VectorXd dh_dt = VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    for (size_t k = 0; k < cos_coeffs.size(); ++k) {
      p.h[i] += cos_coeffs[k] * std::cos((k + 1) * t);
      dh_dt[i] -= cos_coeffs[k] * (k + 1) * std::sin((k + 1) * t);
    }
    for (size_t k = 0; k < sin_coeffs.size(); ++k) {
      p.h[i] += sin_coeffs[k] * std::sin((k + 1) * t);
      dh_dt[i] += sin_coeffs[k] * (k + 1) * std::cos((k + 1) * t);
    }
  }
  // d/ds = (2 pi / L) d/dt on arclength curves.
  p.dh_ds = dh_dt * (kTwoPi / curve.length);
  p.min_value = p.h.minCoeff();
  if (p.min_value <= 0.0) throw std::invalid_argument("thickness profile must satisfy h >= C > 0");
  return p;
}

ThicknessProfile make_profile_samples(const ClosedCurve& curve, const VectorXd& h) {
  if (h.size() != curve.n) throw std::invalid_argument("profile sample count mismatch");
  ThicknessProfile p;
  p.h = h;
  p.dh_ds = spectral_derivative(h) * (kTwoPi / curve.length);
  p.min_value = h.minCoeff();
  if (p.min_value <= 0.0) throw std::invalid_argument("thickness profile must satisfy h >= C > 0");
  return p;
}

PerturbedCurve perturb(const ClosedCurve& base, const ThicknessProfile& profile, double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (profile.h.size() != base.n) throw std::invalid_argument("profile not defined on base nodes");
  PerturbedCurve p;
  p.base = base;
  p.profile = profile;
  p.epsilon = epsilon;

  const int n = base.n;
  ClosedCurve c;
  c.n = n;
  c.x.resize(2, n);
  c.tau.resize(2, n);
  c.nrm.resize(2, n);
  c.kappa.resize(n);
  c.speed.resize(n);
  const double j0 = base.length / kTwoPi;
  for (int i = 0; i < n; ++i) {
    c.x.col(i) = base.x.col(i) + epsilon * profile.h[i] * base.nrm.col(i);
    // dY/dt = J0 [(1 - eps kappa h) tau + eps h' n], with h' in arclength.
    const double a = 1.0 - epsilon * base.kappa[i] * profile.h[i];
    const double b = epsilon * profile.dh_ds[i];
    const Vector2d d1 = j0 * (a * base.tau.col(i) + b * base.nrm.col(i));
    const double j = d1.norm();
    if (!(a > 0.0)) throw std::invalid_argument("perturb: epsilon too large, parametrization folds");
    c.speed[i] = j;
    c.tau.col(i) = d1 / j;
    c.nrm.col(i) = rotate_cw(c.tau.col(i));
  }
  // Second derivative and d(speed)/dt spectrally from the exact first
  // derivative samples.
  VectorXd d1x(n), d1y(n);
  for (int i = 0; i < n; ++i) {
    d1x[i] = c.speed[i] * c.tau(0, i);
    d1y[i] = c.speed[i] * c.tau(1, i);
  }
  VectorXd d2x = spectral_derivative(d1x);
  VectorXd d2y = spectral_derivative(d1y);
  for (int i = 0; i < n; ++i) {
    const Vector2d d1(d1x[i], d1y[i]);
    const Vector2d d2(d2x[i], d2y[i]);
    c.kappa[i] = d2.dot(rotate_cw(d1)) / std::pow(c.speed[i], 3);
  }
  c.dspeed = spectral_derivative(c.speed);
  double len = 0.0;
  for (int i = 0; i < n; ++i) len += c.speed[i];
  c.length = len * kTwoPi / n;
  check_simple(c, "perturb");
  const VectorXd h_samples = profile.h;
  c.regenerate = [base, h_samples, epsilon](int m) {
    const ClosedCurve b = resample(base, m);
    const auto prof = make_profile_samples(b, upsample(h_samples, m));
    return perturb(b, prof, epsilon).curve;
  };
  p.curve = c;
  return p;
}

ClosedCurve resample(const ClosedCurve& curve, int m) {
  if (m == curve.n) return curve;
  if (curve.regenerate) return curve.regenerate(m);
  ClosedCurve c;
  c.n = m;
  c.x.resize(2, m);
  c.x.row(0) = upsample(curve.x.row(0).transpose(), m).transpose();
  c.x.row(1) = upsample(curve.x.row(1).transpose(), m).transpose();
  finish_from_positions(c);
  return c;
}

double signed_area(const ClosedCurve& curve) {
  // A = 1/2 Int (x dy - y dx)
  double a = 0.0;
  const double dt = kTwoPi / curve.n;
  for (int i = 0; i < curve.n; ++i) {
    const Vector2d d1 = curve.speed[i] * curve.tau.col(i);
    a += 0.5 * (curve.x(0, i) * d1.y() - curve.x(1, i) * d1.x()) * dt;
  }
  return a;
}

Vector2d rigid_motion(int m, const Vector2d& p) {
  switch (m) {
    case 1: return Vector2d(1.0, 0.0);
    case 2: return Vector2d(0.0, 1.0);
    case 3: return Vector2d(p.y(), -p.x());
    default: throw std::invalid_argument("rigid motion index must be 1, 2 or 3");
  }
}

}  // namespace tie
