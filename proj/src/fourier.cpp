#include "tie/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace tie {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

void require_even(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("grid size must be even and >= 2");
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT (sign = -1 forward, +1 inverse, unscaled).
void fft_pow2(std::vector<cplx>& a, int sign) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / len;
    const cplx wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (int j = 0; j < len / 2; ++j) {
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::vector<cplx> dft(const VectorXd& f) {
  const int n = static_cast<int>(f.size());
  std::vector<cplx> a(n);
  for (int j = 0; j < n; ++j) a[j] = cplx(f[j], 0.0);
  if (is_pow2(n)) {
    fft_pow2(a, -1);
    return a;
  }
  std::vector<cplx> out(n);
  for (int m = 0; m < n; ++m) {
    cplx acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const double ang = -kTwoPi * double(m) * j / n;
      acc += a[j] * cplx(std::cos(ang), std::sin(ang));
    }
    out[m] = acc;
  }
  return out;
}
}  // namespace

std::vector<cplx> fourier_coeffs(const VectorXd& f) {
  const int n = static_cast<int>(f.size());
  require_even(n);
  const auto bins = dft(f);  // bins[m] for m = 0..n-1
  std::vector<cplx> c(n);
  for (int m = -n / 2; m < n / 2; ++m) {
    c[m + n / 2] = bins[(m + n) % n] / double(n);
  }
  return c;
}

VectorXd fourier_eval_grid(const std::vector<cplx>& coeffs, int m) {
  const int n = static_cast<int>(coeffs.size());
  if (is_pow2(m) && m >= n) {
    // Zero-padded inverse FFT; the Nyquist coefficient splits evenly across
    // +-n/2 so the interpolant stays the real cos(n t / 2) convention.
    std::vector<cplx> bins(m, cplx(0.0, 0.0));
    for (int k = -n / 2 + 1; k < n / 2; ++k) bins[(k + m) % m] = coeffs[k + n / 2];
    if (m > n) {
      bins[(m - n / 2) % m] = 0.5 * coeffs[0];
      bins[n / 2] = 0.5 * coeffs[0];
    } else {
      bins[n / 2] = coeffs[0];
    }
    fft_pow2(bins, +1);
    VectorXd out(m);
    for (int i = 0; i < m; ++i) out[i] = bins[i].real();
    return out;
  }
  VectorXd out(m);
  for (int i = 0; i < m; ++i) {
    const double t = kTwoPi * i / m;
    cplx acc(0.0, 0.0);
    for (int k = -n / 2; k < n / 2; ++k) {
      // The unpaired Nyquist mode enters as cos(n t / 2) to keep the
      // interpolant real-valued off the source grid.
      if (k == -n / 2) {
        acc += coeffs[0] * std::cos(0.5 * n * t);
      } else {
        const double ang = k * t;
        acc += coeffs[k + n / 2] * cplx(std::cos(ang), std::sin(ang));
      }
    }
    out[i] = acc.real();
  }
  return out;
}

VectorXd spectral_derivative(const VectorXd& f) {
  const int n = static_cast<int>(f.size());
  require_even(n);
  auto c = fourier_coeffs(f);
  for (int m = -n / 2; m < n / 2; ++m) {
    if (m == -n / 2) {
      c[0] = cplx(0.0, 0.0);
    } else {
      c[m + n / 2] *= cplx(0.0, double(m));
    }
  }
  return fourier_eval_grid(c, n);
}

VectorXd upsample(const VectorXd& f, int m) {
  const int n = static_cast<int>(f.size());
  require_even(n);
  if (m == n) return f;
  if (m < n) throw std::invalid_argument("upsample target must be >= source size");
  return fourier_eval_grid(fourier_coeffs(f), m);
}

MatrixXd derivative_matrix(int n) {
  require_even(n);
  MatrixXd d(n, n);
  VectorXd e = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    d.col(j) = spectral_derivative(e);
    e[j] = 0.0;
  }
  return d;
}

MatrixXd upsample_matrix(int n, int m) {
  require_even(n);
  MatrixXd u(m, n);
  VectorXd e = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    e[j] = 1.0;
    u.col(j) = upsample(e, m);
    e[j] = 0.0;
  }
  return u;
}

MatrixXd log_circulant(int n) {
  require_even(n);
  // Integrate the cardinal interpolation basis against the kernel using
  //   Int log(4 sin^2(u/2)) e^{imu} du = -2 pi / |m|  (m != 0), 0 for m = 0;
  // the cardinal function carries an extra cos(n u / 2)/n Nyquist term.
  // These are the classical Kress weights R_{|i-j|}.
  VectorXd w(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int m = 1; m <= n / 2 - 1; ++m) acc += std::cos(kTwoPi * m * k / n) / m;
    w[k] = -(4.0 * M_PI / n) * acc - (4.0 * M_PI / (n * n)) * ((k % 2 == 0) ? 1.0 : -1.0);
  }
  MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = w[(i - j + n) % n];
  return c;
}

MatrixXd cot_pv_circulant(int n) {
  require_even(n);
  // p.v. Int (1/2) cot((t-s)/2) e^{ims} ds = -i pi sgn(m) e^{imt}; the grid
  // Nyquist mode cos(ns/2) maps to pi sin(nt/2), which vanishes on the grid.
  VectorXd w(n);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int m = 1; m <= n / 2 - 1; ++m) acc += std::sin(kTwoPi * m * k / n);
    w[k] = (2.0 * M_PI / n) * acc;
  }
  MatrixXd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = w[(i - j + n) % n];
  return c;
}

double loglog_slope(const VectorXd& x, const VectorXd& y) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || y.size() != n) throw std::invalid_argument("loglog_slope needs >= 2 paired points");
  VectorXd lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) throw std::invalid_argument("loglog_slope needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = lx.mean(), my = ly.mean();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

}  // namespace tie
