#include "tie/boundary_ops.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "tie/fourier.hpp"

namespace tie {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
const Matrix2d kSpin = (Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();  // n tau^T - tau n^T

double grid_t(int i, int n) { return kTwoPi * i / n; }

// (1/2) cot((t_i - t_j)/2) on the grid.
double half_cot(int i, int j, int n) {
  const double u = grid_t(i, n) - grid_t(j, n);
  return 0.5 / std::tan(0.5 * u);
}

template <typename Body>
void row_loop(int n, Exec exec, const Body& body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
  } else {
    for (int i = 0; i < n; ++i) body(i);
  }
}

void set_block(MatrixXd& m, int i, int j, const Matrix2d& b) {
  m(2 * i, 2 * j) = b(0, 0);
  m(2 * i, 2 * j + 1) = b(0, 1);
  m(2 * i + 1, 2 * j) = b(1, 0);
  m(2 * i + 1, 2 * j + 1) = b(1, 1);
}

struct PvParts {
  // Target-side and source-side cot coefficients: the singular model is
  //   left(i) * (1/2)cot((t_i - t_j)/2)  +  (1/2)cot((t_i - t_j)/2) * right(j)
  // (exactly one of the two is used per kernel).
  std::function<Matrix2d(int)> left;
  std::function<Matrix2d(int)> right;
  std::function<Matrix2d(int, int)> offdiag;  // full weighted kernel at (i, j)
  std::function<Matrix2d(int)> diagonal;      // smooth-remainder limit at i
};

MatrixXd assemble_pv(const ClosedCurve& c, const PvParts& parts, Exec exec) {
  const int n = c.n;
  const MatrixXd cot = cot_pv_circulant(n);
  MatrixXd m(2 * n, 2 * n);
  row_loop(n, exec, [&](int i) {
    for (int j = 0; j < n; ++j) {
      Matrix2d singular = Matrix2d::Zero();
      if (parts.left) singular += parts.left(i) * cot(i, j);
      if (parts.right) singular += cot(i, j) * parts.right(j);
      Matrix2d smooth;
      if (i == j) {
        smooth = parts.diagonal(i);
      } else {
        smooth = parts.offdiag(i, j);
        if (parts.left) smooth -= parts.left(i) * half_cot(i, j, n);
        if (parts.right) smooth -= half_cot(i, j, n) * parts.right(j);
      }
      set_block(m, i, j, singular + (kTwoPi / n) * smooth);
    }
  });
  return m;
}

// Shared geometric shorthand at a node.
struct NodeGeo {
  Vector2d tau, nrm;
  double j, dj, kap;
};
NodeGeo geo(const ClosedCurve& c, int i) {
  return NodeGeo{c.tau.col(i), c.nrm.col(i), c.speed[i], c.dspeed[i], c.kappa[i]};
}

MatrixXd pointwise_blocks(const ClosedCurve& c, const std::function<Matrix2d(int)>& f) {
  MatrixXd m = MatrixXd::Zero(2 * c.n, 2 * c.n);
  for (int i = 0; i < c.n; ++i) set_block(m, i, i, f(i));
  return m;
}

// Next power of two, so resampling stays on the fast FFT path.
int round_up_pow2(double x) {
  int m = 2;
  while (m < x) m <<= 1;
  return m;
}

// Quadrature grid (positions, normals, weights) and interleaved density
// prolongation for an upsampled copy of a curve.
struct FineSource {
  ClosedCurve fine;
  MatrixXd prolong;  // 2m x 2n
};
FineSource refine_source(const ClosedCurve& c, int m) {
  FineSource f;
  f.fine = resample(c, m);
  const MatrixXd u = upsample_matrix(c.n, m);
  f.prolong = MatrixXd::Zero(2 * m, 2 * c.n);
  for (int q = 0; q < m; ++q)
    for (int j = 0; j < c.n; ++j) {
      f.prolong(2 * q, 2 * j) = u(q, j);
      f.prolong(2 * q + 1, 2 * j + 1) = u(q, j);
    }
  return f;
}

VectorXd upsample_density(const VectorXd& density, int m) {
  const int n = static_cast<int>(density.size()) / 2;
  VectorXd dx(n), dy(n);
  for (int i = 0; i < n; ++i) {
    dx[i] = density[2 * i];
    dy[i] = density[2 * i + 1];
  }
  const VectorXd ux = upsample(dx, m), uy = upsample(dy, m);
  VectorXd out(2 * m);
  for (int q = 0; q < m; ++q) {
    out[2 * q] = ux[q];
    out[2 * q + 1] = uy[q];
  }
  return out;
}

}  // namespace

Eigen::Vector3d psi_moments(const ClosedCurve& curve, const VectorXd& field) {
  Eigen::Vector3d m = Eigen::Vector3d::Zero();
  for (int i = 0; i < curve.n; ++i) {
    const Vector2d f(field[2 * i], field[2 * i + 1]);
    const double w = curve.weight(i);
    for (int k = 1; k <= 3; ++k) m[k - 1] += w * f.dot(rigid_motion(k, curve.x.col(i)));
  }
  return m;
}

VectorXd rigid_motion_field(const ClosedCurve& curve, int m) {
  VectorXd f(2 * curve.n);
  for (int i = 0; i < curve.n; ++i) {
    const Vector2d v = rigid_motion(m, curve.x.col(i));
    f[2 * i] = v.x();
    f[2 * i + 1] = v.y();
  }
  return f;
}

double curve_inner(const ClosedCurve& curve, const VectorXd& f, const VectorXd& g) {
  double acc = 0.0;
  for (int i = 0; i < curve.n; ++i)
    acc += curve.weight(i) * (f[2 * i] * g[2 * i] + f[2 * i + 1] * g[2 * i + 1]);
  return acc;
}

OperatorMatrix assemble_single_layer(const LameParams& p, const ClosedCurve& c, Exec exec) {
  const int n = c.n;
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  const MatrixXd wlog = log_circulant(n);
  MatrixXd m(2 * n, 2 * n);
  row_loop(n, exec, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const double wj = c.speed[j];
      Matrix2d blk;
      if (i == j) {
        blk = (kTwoPi / n) * wj * (a * std::log(wj) * Matrix2d::Identity() -
                                   b * c.tau.col(i) * c.tau.col(i).transpose());
      } else {
        const Vector2d z = c.x.col(i) - c.x.col(j);
        const double r2 = z.squaredNorm();
        const double u = grid_t(i, n) - grid_t(j, n);
        const double s2 = 4.0 * std::pow(std::sin(0.5 * u), 2);
        blk = (kTwoPi / n) * wj *
              (0.5 * a * std::log(r2 / s2) * Matrix2d::Identity() -
               b * (z * z.transpose()) / r2);
      }
      blk += 0.5 * a * wlog(i, j) * wj * Matrix2d::Identity();
      set_block(m, i, j, blk);
    }
  });
  return OperatorMatrix{std::move(m), OpKind::single_layer};
}

OperatorMatrix assemble_k(const LameParams& p, const ClosedCurve& c, Exec exec) {
  const double b = p.B / kTwoPi;
  const double pc = p.mu / (kTwoPi * (2.0 * p.mu + p.lambda));
  PvParts parts;
  parts.right = [pc](int) { return -pc * kSpin; };
  parts.offdiag = [&, b](int i, int j) {
    return traction_kernel(p, c.x.col(i), c.x.col(j), c.nrm.col(j)) * c.speed[j];
  };
  parts.diagonal = [&, b, pc](int i) {
    const NodeGeo g = geo(c, i);
    Matrix2d d = pc * (g.dj / (2.0 * g.j)) * kSpin;
    d -= pc * 0.5 * g.kap * g.j * Matrix2d::Identity();
    d -= 2.0 * p.mu * b * g.kap * g.j * (g.tau * g.tau.transpose());
    return d;
  };
  return OperatorMatrix{assemble_pv(c, parts, exec), OpKind::dlp_k};
}

OperatorMatrix assemble_kstar(const LameParams& p, const ClosedCurve& c, Exec exec) {
  const double b = p.B / kTwoPi;
  const double pc = p.mu / (kTwoPi * (2.0 * p.mu + p.lambda));
  PvParts parts;
  parts.left = [pc](int) { return -pc * kSpin; };
  parts.offdiag = [&](int i, int j) {
    return traction_at_target_kernel(p, c.x.col(i), c.x.col(j), c.nrm.col(i)) * c.speed[j];
  };
  parts.diagonal = [&, b, pc](int i) {
    const NodeGeo g = geo(c, i);
    Matrix2d d = pc * (g.dj / (2.0 * g.j)) * kSpin;
    d -= pc * 0.5 * g.kap * g.j * Matrix2d::Identity();
    d -= 2.0 * p.mu * b * g.kap * g.j * (g.tau * g.tau.transpose());
    return d;
  };
  return OperatorMatrix{assemble_pv(c, parts, exec), OpKind::dlp_kstar};
}

OperatorMatrix assemble_ksharp(const LameParams& p, const ClosedCurve& c, Exec exec) {
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  PvParts parts;
  parts.right = [&, b](int j) {
    const NodeGeo g = geo(c, j);
    return Matrix2d(b * (g.nrm * g.tau.transpose() + g.tau * g.nrm.transpose()));
  };
  parts.offdiag = [&](int i, int j) {
    return sharp_kernel(p, c.x.col(i), c.x.col(j), c.nrm.col(j)) * c.speed[j];
  };
  parts.diagonal = [&, a, b](int i) {
    const NodeGeo g = geo(c, i);
    Matrix2d d = -0.5 * a * g.kap * g.j * Matrix2d::Identity();
    d += b * g.kap * g.j * (g.nrm * g.nrm.transpose());
    d -= b * (g.dj / (2.0 * g.j)) * (g.nrm * g.tau.transpose() + g.tau * g.nrm.transpose());
    d -= b * g.kap * g.j * (g.tau * g.tau.transpose());
    return d;
  };
  return OperatorMatrix{assemble_pv(c, parts, exec), OpKind::ksharp};
}

OperatorMatrix assemble_ksharp_star(const LameParams& p, const ClosedCurve& c, Exec exec) {
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  PvParts parts;
  parts.left = [&, b](int i) {
    const NodeGeo g = geo(c, i);
    return Matrix2d(-b * (g.nrm * g.tau.transpose() + g.tau * g.nrm.transpose()));
  };
  parts.offdiag = [&](int i, int j) {
    return sharp_star_kernel(p, c.x.col(i), c.x.col(j), c.nrm.col(i)) * c.speed[j];
  };
  parts.diagonal = [&, a, b](int i) {
    const NodeGeo g = geo(c, i);
    Matrix2d d = -0.5 * a * g.kap * g.j * Matrix2d::Identity();
    d += b * (g.dj / (2.0 * g.j)) * (g.nrm * g.tau.transpose() + g.tau * g.nrm.transpose());
    d += b * g.kap * g.j * (g.nrm * g.nrm.transpose());
    d -= b * g.kap * g.j * (g.tau * g.tau.transpose());
    return d;
  };
  return OperatorMatrix{assemble_pv(c, parts, exec), OpKind::ksharp_star};
}

MatrixXd CurveOps::conormal_trace(Side s) const {
  return side_sign(s) * 0.5 * MatrixXd::Identity(Kstar.rows(), Kstar.cols()) + Kstar;
}

MatrixXd CurveOps::normal_deriv_trace(Side s) const {
  const double sg = side_sign(s);
  MatrixXd m = KsharpStar;
  m += pointwise_blocks(*curve, [&](int i) {
    const Vector2d nn = curve->nrm.col(i);
    return Matrix2d(sg * (0.5 / mat.mu) * Matrix2d::Identity() -
                    sg * mat.B * nn * nn.transpose());
  });
  return m;
}

MatrixXd CurveOps::dsharp_trace(Side s) const {
  const double sg = side_sign(s);
  MatrixXd m = Ksharp;
  m += pointwise_blocks(*curve, [&](int i) {
    const Vector2d nn = curve->nrm.col(i);
    return Matrix2d(-sg * (0.5 / mat.mu) * Matrix2d::Identity() +
                    sg * mat.B * nn * nn.transpose());
  });
  return m;
}

MatrixXd CurveOps::dlp_trace(Side s) const {
  return -side_sign(s) * 0.5 * MatrixXd::Identity(K.rows(), K.cols()) + K;
}

CurveOps assemble_curve_ops(const LameParams& p, const ClosedCurve& c, Exec exec) {
  CurveOps ops;
  ops.mat = p;
  ops.curve = &c;
  ops.S = assemble_single_layer(p, c, exec).entries;
  ops.K = assemble_k(p, c, exec).entries;
  ops.Kstar = assemble_kstar(p, c, exec).entries;
  ops.Ksharp = assemble_ksharp(p, c, exec).entries;
  ops.KsharpStar = assemble_ksharp_star(p, c, exec).entries;
  return ops;
}

int quadrature_nodes_for_distance(const ClosedCurve& source, double geom_distance, int minimum) {
  // Trapezoid error for a target at parameter-plane distance d decays like
  // exp(-m d); ask for exp(-26) ~ 5e-12.
  if (geom_distance <= 0.0) throw std::invalid_argument("target point lies on the source curve");
  const double d_param = geom_distance / source.speed.maxCoeff();
  const int m = round_up_pow2(26.0 / d_param);
  return std::max({minimum, source.n, std::min(m, 1 << 16)});
}

CrossOps cross_ops(const LameParams& p, const ClosedCurve& source, const ClosedCurve& target,
                   Exec exec) {
  double dist = std::numeric_limits<double>::max();
  for (int i = 0; i < target.n; ++i) dist = std::min(dist, source.distance_to(target.x.col(i)));
  if (dist < 1e-12) throw std::invalid_argument("cross_ops: curves coincide or touch");
  const int m = quadrature_nodes_for_distance(source, dist, 2 * source.n);
  const FineSource fs = refine_source(source, m);

  MatrixXd kv(2 * target.n, 2 * m), kt(2 * target.n, 2 * m);
  row_loop(target.n, exec, [&](int i) {
    const Vector2d xi = target.x.col(i);
    const Vector2d ni = target.nrm.col(i);
    for (int q = 0; q < m; ++q) {
      const double w = fs.fine.weight(q);
      set_block(kv, i, q, Matrix2d(kelvin_matrix(p, xi - fs.fine.x.col(q)) * w));
      set_block(kt, i, q,
                Matrix2d(traction_at_target_kernel(p, xi, fs.fine.x.col(q), ni) * w));
    }
  });
  CrossOps out;
  out.value = kv * fs.prolong;
  out.traction = kt * fs.prolong;
  return out;
}

namespace {

enum class FieldKind { single, dsharp, dlp };

// Common driver for off-curve values: sums kernel(x, y_q) rho(y_q) w_q over
// an upsampled copy of the curve.
Matrix2Xd eval_field(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                     const Matrix2Xd& pts, int m_quad, FieldKind kind, Exec exec) {
  const ClosedCurve fine = resample(c, m_quad);
  const VectorXd rho = upsample_density(density, m_quad);
  Matrix2Xd out(2, pts.cols());
  row_loop(static_cast<int>(pts.cols()), exec, [&](int i) {
    const Vector2d x = pts.col(i);
    Vector2d acc = Vector2d::Zero();
    for (int q = 0; q < m_quad; ++q) {
      const Vector2d y = fine.x.col(q);
      const Vector2d rq(rho[2 * q], rho[2 * q + 1]);
      Matrix2d ker;
      switch (kind) {
        case FieldKind::single: ker = kelvin_matrix(p, x - y); break;
        case FieldKind::dsharp: ker = sharp_kernel(p, x, y, fine.nrm.col(q)); break;
        case FieldKind::dlp: ker = traction_kernel(p, x, y, fine.nrm.col(q)); break;
      }
      acc += fine.weight(q) * (ker * rq);
    }
    out.col(i) = acc;
  });
  return out;
}

std::vector<Matrix2d> eval_grad(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                                const Matrix2Xd& pts, int m_quad, FieldKind kind, Exec exec) {
  const ClosedCurve fine = resample(c, m_quad);
  const VectorXd rho = upsample_density(density, m_quad);
  std::vector<Matrix2d> out(pts.cols());
  row_loop(static_cast<int>(pts.cols()), exec, [&](int i) {
    const Vector2d x = pts.col(i);
    Matrix2d acc = Matrix2d::Zero();
    Matrix2d colgrad[2];
    for (int q = 0; q < m_quad; ++q) {
      const Vector2d y = fine.x.col(q);
      const Vector2d rq(rho[2 * q], rho[2 * q + 1]);
      if (kind == FieldKind::single) {
        kelvin_column_gradients(p, x - y, colgrad);
      } else {
        sharp_column_gradients(p, x - y, fine.nrm.col(q), colgrad);
      }
      acc += fine.weight(q) * (colgrad[0] * rq[0] + colgrad[1] * rq[1]);
    }
    out[i] = acc;
  });
  return out;
}

int guarded_quadrature(const ClosedCurve& c, const Matrix2Xd& pts) {
  double dist = std::numeric_limits<double>::max();
  for (int i = 0; i < pts.cols(); ++i) dist = std::min(dist, c.distance_to(pts.col(i)));
  if (dist < 5.0 * c.mesh_width())
    throw std::invalid_argument(
        "evaluation point closer than 5 mesh widths to the curve; use the _near variants");
  return quadrature_nodes_for_distance(c, dist, c.n);
}

}  // namespace

Matrix2Xd eval_single_layer(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                            const Matrix2Xd& pts, Exec exec) {
  return eval_field(p, c, density, pts, guarded_quadrature(c, pts), FieldKind::single, exec);
}

Matrix2Xd eval_dsharp(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                      const Matrix2Xd& pts, Exec exec) {
  return eval_field(p, c, density, pts, guarded_quadrature(c, pts), FieldKind::dsharp, exec);
}

Matrix2Xd eval_double_layer(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                            const Matrix2Xd& pts, Exec exec) {
  return eval_field(p, c, density, pts, guarded_quadrature(c, pts), FieldKind::dlp, exec);
}

std::vector<Matrix2d> eval_single_layer_gradient(const LameParams& p, const ClosedCurve& c,
                                                 const VectorXd& density, const Matrix2Xd& pts,
                                                 Exec exec) {
  return eval_grad(p, c, density, pts, guarded_quadrature(c, pts), FieldKind::single, exec);
}

std::vector<Matrix2d> eval_dsharp_gradient(const LameParams& p, const ClosedCurve& c,
                                           const VectorXd& density, const Matrix2Xd& pts,
                                           Exec exec) {
  return eval_grad(p, c, density, pts, guarded_quadrature(c, pts), FieldKind::dsharp, exec);
}

Matrix2Xd eval_single_layer_near(const LameParams& p, const ClosedCurve& c,
                                 const VectorXd& density, const Matrix2Xd& pts, int m_quad) {
  return eval_field(p, c, density, pts, m_quad, FieldKind::single, Exec::parallel);
}

Matrix2Xd eval_dsharp_near(const LameParams& p, const ClosedCurve& c, const VectorXd& density,
                           const Matrix2Xd& pts, int m_quad) {
  return eval_field(p, c, density, pts, m_quad, FieldKind::dsharp, Exec::parallel);
}

Matrix2Xd eval_double_layer_near(const LameParams& p, const ClosedCurve& c,
                                 const VectorXd& density, const Matrix2Xd& pts, int m_quad) {
  return eval_field(p, c, density, pts, m_quad, FieldKind::dlp, Exec::parallel);
}

std::vector<Matrix2d> eval_single_layer_gradient_near(const LameParams& p, const ClosedCurve& c,
                                                      const VectorXd& density,
                                                      const Matrix2Xd& pts, int m_quad) {
  return eval_grad(p, c, density, pts, m_quad, FieldKind::single, Exec::parallel);
}

std::vector<Matrix2d> eval_dsharp_gradient_near(const LameParams& p, const ClosedCurve& c,
                                                const VectorXd& density, const Matrix2Xd& pts,
                                                int m_quad) {
  return eval_grad(p, c, density, pts, m_quad, FieldKind::dsharp, Exec::parallel);
}

VectorXd tangential_derivative(const ClosedCurve& curve, const VectorXd& field) {
  const int n = curve.n;
  VectorXd fx(n), fy(n);
  for (int i = 0; i < n; ++i) {
    fx[i] = field[2 * i];
    fy[i] = field[2 * i + 1];
  }
  const VectorXd dx = spectral_derivative(fx), dy = spectral_derivative(fy);
  VectorXd out(2 * n);
  for (int i = 0; i < n; ++i) {
    out[2 * i] = dx[i] / curve.speed[i];
    out[2 * i + 1] = dy[i] / curve.speed[i];
  }
  return out;
}

std::vector<Matrix2d> single_layer_surface_gradient(const CurveOps& ops, const VectorXd& density,
                                                    Side side) {
  const ClosedCurve& c = *ops.curve;
  const VectorXd trace = ops.S * density;
  const VectorXd dtang = tangential_derivative(c, trace);
  const VectorXd dnorm = ops.normal_deriv_trace(side) * density;
  std::vector<Matrix2d> g(c.n);
  for (int i = 0; i < c.n; ++i) {
    const Vector2d dt(dtang[2 * i], dtang[2 * i + 1]);
    const Vector2d dn(dnorm[2 * i], dnorm[2 * i + 1]);
    g[i] = dt * c.tau.col(i).transpose() + dn * c.nrm.col(i).transpose();
  }
  return g;
}

std::vector<SurfaceHessian> complete_hessians(const LameParams& p, const ClosedCurve& c,
                                              const std::vector<Matrix2d>& grads) {
  const int n = c.n;
  if (static_cast<int>(grads.size()) != n) throw std::invalid_argument("gradient count mismatch");
  // Spectral d/dt of each gradient entry.
  VectorXd comp[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      VectorXd v(n);
      for (int k = 0; k < n; ++k) v[k] = grads[k](i, j);
      comp[i][j] = spectral_derivative(v);
    }
  std::vector<SurfaceHessian> out(n);
  for (int k = 0; k < n; ++k) {
    const Vector2d tau = c.tau.col(k), nrm = c.nrm.col(k);
    const double j = c.speed[k];
    // H_i tau from the chain rule d/dt grad u_i = J H_i tau.
    Vector2d h_tau[2];
    for (int i = 0; i < 2; ++i) h_tau[i] = Vector2d(comp[i][0][k], comp[i][1][k]) / j;
    const double t_tau[2] = {h_tau[0].dot(tau), h_tau[1].dot(tau)};
    const double t_nrm[2] = {h_tau[0].dot(nrm), h_tau[1].dot(nrm)};
    const double k_tau = h_tau[0][0] + h_tau[1][1];
    const double k_nrm = t_nrm[0] * tau[0] + t_nrm[1] * tau[1];
    // mu q + (lambda+mu)(q.n) n = r from the Lame system.
    Vector2d r;
    for (int i = 0; i < 2; ++i)
      r[i] = -p.mu * t_tau[i] - (p.lambda + p.mu) * (k_tau * tau[i] + k_nrm * nrm[i]);
    const Vector2d q =
        (r - ((p.lambda + p.mu) / (p.lambda + 2.0 * p.mu)) * r.dot(nrm) * nrm) / p.mu;
    for (int i = 0; i < 2; ++i) {
      out[k].h[i] = t_tau[i] * tau * tau.transpose() +
                    t_nrm[i] * (tau * nrm.transpose() + nrm * tau.transpose()) +
                    q[i] * nrm * nrm.transpose();
    }
  }
  return out;
}

VectorXd dsharp_conormal_trace(const CurveOps& ops, const VectorXd& g, Side side) {
  const ClosedCurve& c = *ops.curve;
  const int n = c.n;
  // D-sharp[g] = -(d_0 S[n_0 g] + d_1 S[n_1 g]).
  std::vector<SurfaceHessian> hess[2];
  for (int l = 0; l < 2; ++l) {
    VectorXd rho(2 * n);
    for (int i = 0; i < n; ++i) {
      rho[2 * i] = c.nrm(l, i) * g[2 * i];
      rho[2 * i + 1] = c.nrm(l, i) * g[2 * i + 1];
    }
    hess[l] = complete_hessians(ops.mat, c, single_layer_surface_gradient(ops, rho, side));
  }
  VectorXd out(2 * n);
  for (int k = 0; k < n; ++k) {
    Matrix2d grad_d = Matrix2d::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) grad_d(i, j) -= hess[l][k].h[i](j, l);
    const Vector2d nu = conormal(ops.mat, grad_d, c.nrm.col(k));
    out[2 * k] = nu.x();
    out[2 * k + 1] = nu.y();
  }
  return out;
}

}  // namespace tie
