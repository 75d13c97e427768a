// Independent reference computations used only by tests. Everything here
// deliberately avoids the library's quadrature path so it can serve as an
// oracle for it.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "soblab/exponents.hpp"
#include "soblab/geometry.hpp"
#include "soblab/rng.hpp"

namespace oracles {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double surface_area(int n) {
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

// Closed forms via t = r^{p'}:
//   |vbar|^{p*} = (1+r^{p'})^{-n}
//   int_{R^n} |vbar|^{p*} = omega (1/p') B(n/p', n - n/p')
//   int_{R^n} |grad vbar|^p = omega ((n-p)p'/p)^p (1/p') B(n/p'+1, n-n/p'-1)
inline double bubble_pstar_norm_pow(const soblab::Exponents& e) {
  const double pp = e.p_prime;
  return surface_area(e.n) / pp * std::exp(log_beta(e.n / pp, e.n - e.n / pp));
}

inline double bubble_grad_norm_pow(const soblab::Exponents& e) {
  const double pp = e.p_prime;
  const double coeff = std::pow((e.n - e.p) * pp / e.p, e.p);
  return surface_area(e.n) * coeff / pp *
         std::exp(log_beta(e.n / pp + 1.0, e.n - e.n / pp - 1.0));
}

inline double sobolev_constant_exact(const soblab::Exponents& e) {
  return std::pow(bubble_grad_norm_pow(e), 1.0 / e.p) /
         std::pow(bubble_pstar_norm_pow(e), 1.0 / e.p_star);
}

// brute-force reference: trapezoid rule on the mapped domain r = s/(1-s),
// for int_{R^n} f(|x|) dx
inline double trapezoid_radial(const std::function<double(double)>& f, int n,
                               long nodes) {
  const double h = 1.0 / static_cast<double>(nodes);
  double sum = 0.0;
  for (long i = 1; i < nodes; ++i) {  // integrand vanishes at both endpoints
    const double s = i * h;
    const double r = s / (1.0 - s);
    const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
    sum += f(r) * std::pow(r, n - 1) * jac;
  }
  return surface_area(n) * sum * h;
}

// central finite differences, h = 1e-5 unless stated otherwise
inline void central_gradient(const std::function<double(const double*)>& f,
                             const double* x, int n, double h, double* out) {
  double xp[soblab::kMaxDim], xm[soblab::kMaxDim];
  for (int i = 0; i < n; ++i) {
    xp[i] = xm[i] = x[i];
  }
  for (int i = 0; i < n; ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    out[i] = (f(xp) - f(xm)) / (2.0 * h);
    xp[i] = xm[i] = x[i];
  }
}

struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

// plain Monte Carlo over a centered box, with the standard error estimate
inline McEstimate monte_carlo_box(const std::function<double(const double*)>& f,
                                  int n, double half, long samples,
                                  std::uint64_t seed) {
  soblab::Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  double x[soblab::kMaxDim];
  for (long i = 0; i < samples; ++i) {
    for (int d = 0; d < n; ++d) x[d] = rng.uniform(-half, half);
    const double v = f(x);
    sum += v;
    sum2 += v * v;
  }
  const double vol = std::pow(2.0 * half, n);
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  McEstimate est;
  est.value = vol * mean;
  est.sigma = vol * std::sqrt(var / samples);
  return est;
}

// random rotation via Gram-Schmidt on random vectors
inline std::vector<std::vector<double>> random_rotation(int n, soblab::Rng& rng) {
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q[i][j] = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < i; ++k) {
      double dot = 0.0;
      for (int j = 0; j < n; ++j) dot += q[i][j] * q[k][j];
      for (int j = 0; j < n; ++j) q[i][j] -= dot * q[k][j];
    }
    double nrm = 0.0;
    for (int j = 0; j < n; ++j) nrm += q[i][j] * q[i][j];
    nrm = std::sqrt(nrm);
    for (int j = 0; j < n; ++j) q[i][j] /= nrm;
  }
  return q;
}

inline soblab::VecN apply_rotation(const std::vector<std::vector<double>>& q,
                                   const soblab::VecN& x) {
  soblab::VecN y = soblab::VecN::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) y[i] += q[i][j] * x[j];
  return y;
}

}  // namespace oracles
