#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Spectral helpers on the uniform periodic grid t_i = 2*pi*i/n, i = 0..n-1.
// Everything is dense and O(n^2); node counts stay in the hundreds here.

namespace tie {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// Fourier coefficients c_m, m = -n/2 .. n/2-1, of the trigonometric
// interpolant of f. n must be even.
std::vector<cplx> fourier_coeffs(const VectorXd& f);

// Samples of the interpolant with given coefficients on an m-point grid.
VectorXd fourier_eval_grid(const std::vector<cplx>& coeffs, int m);

// d/dt of the trigonometric interpolant, sampled back on the same grid.
// The Nyquist mode differentiates to zero on a collocated grid.
VectorXd spectral_derivative(const VectorXd& f);

// Trigonometric interpolation from n to m >= n equispaced points.
VectorXd upsample(const VectorXd& f, int m);

// Dense matrix of spectral_derivative.
MatrixXd derivative_matrix(int n);

// Dense matrix mapping an n-grid sample vector to its trigonometric
// interpolant evaluated on the m-grid.
MatrixXd upsample_matrix(int n, int m);

// Quadrature matrix W with (W f)_i ~= Int_0^{2pi} log(4 sin^2((t_i-s)/2)) f(s) ds,
// exact for trigonometric polynomials up to the grid's Nyquist mode
// (the classical Kress rule in circulant form).
MatrixXd log_circulant(int n);

// Quadrature matrix for the principal value
//   (C f)_i ~= p.v. Int_0^{2pi} (1/2) cot((t_i - s)/2) f(s) ds,
// exact on trigonometric polynomials; modes e^{ims} map to -i pi sgn(m) e^{imt}.
MatrixXd cot_pv_circulant(int n);

// Least-squares slope of log(y) against log(x); x, y > 0.
double loglog_slope(const VectorXd& x, const VectorXd& y);

}  // namespace tie
