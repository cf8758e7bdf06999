#include "tie/elastic_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace tie {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

void require_nonzero(const Vector2d& z) {
  if (z.squaredNorm() == 0.0) throw std::invalid_argument("kernel evaluated at coincident points");
}
}  // namespace

LameParams::LameParams(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
  if (!(mu > 0.0) || !(lambda + mu > 0.0))
    throw std::invalid_argument("Lame parameters must satisfy mu > 0 and lambda + mu > 0");
  A = 0.5 * (1.0 / mu + 1.0 / (2.0 * mu + lambda));
  B = 0.5 * (1.0 / mu - 1.0 / (2.0 * mu + lambda));
}

MaterialTriple MaterialTriple::checked(LameParams bg, LameParams core, LameParams layer) {
  for (const LameParams* p : {&core, &layer}) {
    const double dl = bg.lambda - p->lambda;
    const double dm = bg.mu - p->mu;
    if (dl * dm < 0.0)
      throw std::invalid_argument("contrast assumption (l0-lj)(m0-mj) >= 0 violated");
    if (dl == 0.0 && dm == 0.0)
      throw std::invalid_argument("zero contrast; use MaterialTriple::unchecked for identity tests");
  }
  return MaterialTriple{bg, core, layer};
}

MaterialTriple MaterialTriple::unchecked(LameParams bg, LameParams core, LameParams layer) {
  for (const LameParams* p : {&core, &layer}) {
    const double dl = bg.lambda - p->lambda;
    const double dm = bg.mu - p->mu;
    if (dl * dm < 0.0)
      throw std::invalid_argument("contrast assumption (l0-lj)(m0-mj) >= 0 violated");
  }
  return MaterialTriple{bg, core, layer};
}

Matrix2d tensor_apply(const IsotropicTensor& t, const Matrix2d& strain) {
  if ((strain - strain.transpose()).norm() > 1e-12 * (1.0 + strain.norm()))
    throw std::invalid_argument("tensor_apply requires a symmetric matrix");
  return t.lambda * strain.trace() * Matrix2d::Identity() + 2.0 * t.mu * strain;
}

Matrix2d kelvin_matrix(const LameParams& p, const Vector2d& x) {
  require_nonzero(x);
  const double r2 = x.squaredNorm();
  const double diag = (p.A / kTwoPi) * 0.5 * std::log(r2);
  const double s = (p.B / kTwoPi) / r2;
  // Entries assigned explicitly so Gamma = Gamma^T = Gamma(-x) holds exactly.
  Matrix2d g;
  g(0, 0) = diag - s * x[0] * x[0];
  g(1, 1) = diag - s * x[1] * x[1];
  g(0, 1) = g(1, 0) = -s * x[0] * x[1];
  return g;
}

void kelvin_gradient(const LameParams& p, const Vector2d& x, Matrix2d dgamma[2]) {
  require_nonzero(x);
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  const double r2 = x.squaredNorm();
  // d Gamma_{ik}/d x_l = a d_{ik} x_l/r^2
  //                     - b[(d_{il} x_k + d_{kl} x_i)/r^2 - 2 x_i x_k x_l / r^4]
  for (int l = 0; l < 2; ++l) {
    Matrix2d m;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        double v = a * (i == k ? x[l] / r2 : 0.0);
        v -= b * (((i == l ? x[k] : 0.0) + (k == l ? x[i] : 0.0)) / r2 -
                  2.0 * x[i] * x[k] * x[l] / (r2 * r2));
        m(i, k) = v;
      }
    dgamma[l] = m;
  }
}

void kelvin_hessian(const LameParams& p, const Vector2d& x, Matrix2d hess[2][2]) {
  require_nonzero(x);
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  const double r2 = x.squaredNorm();
  const double r4 = r2 * r2, r6 = r4 * r2;
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      Matrix2d m;
      for (int l = 0; l < 2; ++l)
        for (int mm = 0; mm < 2; ++mm) {
          double v = a * d(i, k) * (d(l, mm) / r2 - 2.0 * x[l] * x[mm] / r4);
          v -= b * ((d(i, l) * d(k, mm) + d(k, l) * d(i, mm)) / r2 -
                    2.0 *
                        ((d(i, l) * x[k] + d(k, l) * x[i]) * x[mm] + d(i, mm) * x[k] * x[l] +
                         d(k, mm) * x[i] * x[l] + d(l, mm) * x[i] * x[k]) /
                        r4 +
                    8.0 * x[i] * x[k] * x[l] * x[mm] / r6);
          m(l, mm) = v;
        }
      hess[i][k] = m;
    }
}

Matrix2d traction_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                         const Vector2d& n_y) {
  const Vector2d z = x - y;
  require_nonzero(z);
  // Somigliana double-layer kernel: the transpose of the conormal derivative
  // in y of the Kelvin columns. Grouped closed form
  //   K = pc (z (x) n - n (x) z - (z.n) I)/r^2 - 4 mu b (z.n)(z (x) z)/r^4,
  // pc = mu / (2 pi (2 mu + lambda)), with n = n(y).
  const double b = p.B / kTwoPi;
  const double pc = p.mu / (kTwoPi * (2.0 * p.mu + p.lambda));
  const double r2 = z.squaredNorm();
  const double zn = z.dot(n_y);
  Matrix2d k = pc * (z * n_y.transpose() - n_y * z.transpose() - zn * Matrix2d::Identity()) / r2;
  k -= 4.0 * p.mu * b * zn * (z * z.transpose()) / (r2 * r2);
  return k;
}

Matrix2d sharp_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                      const Vector2d& n_y) {
  const Vector2d z = x - y;
  require_nonzero(z);
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  const double r2 = z.squaredNorm();
  const double zn = z.dot(n_y);
  return -a * zn / r2 * Matrix2d::Identity() +
         b * (n_y * z.transpose() + z * n_y.transpose()) / r2 -
         2.0 * b * zn * (z * z.transpose()) / (r2 * r2);
}

Matrix2d sharp_star_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                           const Vector2d& n_x) {
  const Vector2d z = x - y;
  require_nonzero(z);
  const double a = p.A / kTwoPi, b = p.B / kTwoPi;
  const double r2 = z.squaredNorm();
  const double zn = z.dot(n_x);
  return a * zn / r2 * Matrix2d::Identity() -
         b * (n_x * z.transpose() + z * n_x.transpose()) / r2 +
         2.0 * b * zn * (z * z.transpose()) / (r2 * r2);
}

Matrix2d traction_at_target_kernel(const LameParams& p, const Vector2d& x, const Vector2d& y,
                                   const Vector2d& n_x) {
  // Conormal at x of the Kelvin columns: differentiation in x flips the sign
  // of every Gamma derivative, so this is minus the transposed traction
  // kernel with the normal taken at the target.
  return -traction_kernel(p, x, y, n_x).transpose();
}

Vector2d conormal(const LameParams& p, const Matrix2d& grad_u, const Vector2d& n) {
  return p.lambda * grad_u.trace() * n + p.mu * (grad_u + grad_u.transpose()) * n;
}

void kelvin_column_gradients(const LameParams& p, const Vector2d& z, Matrix2d out[2]) {
  Matrix2d dg[2];
  kelvin_gradient(p, z, dg);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int l = 0; l < 2; ++l) out[k](i, l) = dg[l](i, k);
}

void sharp_column_gradients(const LameParams& p, const Vector2d& z, const Vector2d& n_y,
                            Matrix2d out[2]) {
  Matrix2d hess[2][2];
  kelvin_hessian(p, z, hess);
  // [dGamma/dn(y)]_{ik} = -sum_l n_l dGamma_{ik}/dz_l, so its x-gradient is
  // -sum_l n_l d^2 Gamma_{ik}/dz_l dz_m.
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int m = 0; m < 2; ++m) {
        double v = 0.0;
        for (int l = 0; l < 2; ++l) v -= n_y[l] * hess[i][k](l, m);
        out[k](i, m) = v;
      }
}

}  // namespace tie
