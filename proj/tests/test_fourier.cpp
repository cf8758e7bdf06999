#include <cmath>

#include "doctest.h"
#include "tie/fourier.hpp"

using namespace tie;

TEST_CASE("spectral derivative of band-limited data is exact") {
  const int n = 32;
  VectorXd f(n), df(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    f[i] = std::sin(3 * t) + 0.5 * std::cos(5 * t);
    df[i] = 3 * std::cos(3 * t) - 2.5 * std::sin(5 * t);
  }
  CHECK((spectral_derivative(f) - df).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("upsampling reproduces band-limited samples") {
  const int n = 16, m = 56;
  VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    f[i] = 1.0 + std::cos(2 * t) - 0.25 * std::sin(6 * t);
  }
  const VectorXd u = upsample(f, m);
  for (int q = 0; q < m; ++q) {
    const double t = 2.0 * M_PI * q / m;
    CHECK(u[q] == doctest::Approx(1.0 + std::cos(2 * t) - 0.25 * std::sin(6 * t)).epsilon(1e-12));
  }
}

TEST_CASE("log circulant integrates trig modes exactly") {
  // Int log(4 sin^2((t-s)/2)) e^{ims} ds = -(2 pi/|m|) e^{imt}, 0 for m = 0.
  const int n = 64;
  const MatrixXd w = log_circulant(n);
  for (int m : {0, 1, 3, 11}) {
    VectorXd cs(n), sn(n);
    for (int i = 0; i < n; ++i) {
      cs[i] = std::cos(m * 2.0 * M_PI * i / n);
      sn[i] = std::sin(m * 2.0 * M_PI * i / n);
    }
    const VectorXd wc = w * cs, ws = w * sn;
    for (int i = 0; i < n; ++i) {
      const double expect = (m == 0) ? 0.0 : -2.0 * M_PI / m;
      CHECK(wc[i] == doctest::Approx(expect * cs[i]).epsilon(1e-12).scale(1.0));
      CHECK(ws[i] == doctest::Approx(expect * sn[i]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("cot circulant realizes the conjugation symbol") {
  // p.v. Int (1/2) cot((t-s)/2) e^{ims} ds = -i pi sgn(m) e^{imt}:
  // cosine maps to pi sin, sine maps to -pi cos.
  const int n = 64;
  const MatrixXd w = cot_pv_circulant(n);
  for (int m : {1, 2, 7, 19}) {
    VectorXd cs(n), sn(n);
    for (int i = 0; i < n; ++i) {
      cs[i] = std::cos(m * 2.0 * M_PI * i / n);
      sn[i] = std::sin(m * 2.0 * M_PI * i / n);
    }
    const VectorXd wc = w * cs, ws = w * sn;
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * M_PI * i / n;
      CHECK(wc[i] == doctest::Approx(M_PI * std::sin(m * t)).epsilon(1e-12).scale(1.0));
      CHECK(ws[i] == doctest::Approx(-M_PI * std::cos(m * t)).epsilon(1e-12).scale(1.0));
    }
  }
  // Constants are in the kernel of the principal value.
  CHECK((w * VectorXd::Ones(n)).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("loglog slope recovers power laws") {
  VectorXd x(4), y(4);
  for (int i = 0; i < 4; ++i) {
    x[i] = std::pow(0.5, i) * 0.1;
    y[i] = 3.0 * std::pow(x[i], 1.7);
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(1.7).epsilon(1e-10));
}
