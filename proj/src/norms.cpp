#include "soblab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace soblab {

NormResult norm_from_integral(const IntegralEstimate& I, double q) {
  if (I.value <= 0.0) return {0.0, I.delta > 0.0 ? std::pow(I.delta, 1.0 / q) : 0.0};
  const double value = std::pow(I.value, 1.0 / q);
  return {value, value * I.delta / (q * I.value)};
}

NormResult lp_norm(const TestFunction& u, double q, const Exponents& e,
                   const QuadratureScheme& scheme) {
  if (!(q >= 1.0)) throw std::domain_error("lp_norm requires q >= 1");
  IntegralEstimate I;
  if (u.radial_about) {
    auto prof = u.radial_value;
    const double dtilde = q * u.decay_pstar / e.p_star - (e.n - 1);
    const int k = choose_tail_power(dtilde);
    I = integrate_radial(
        [prof, q](double r) { return std::pow(std::abs(prof(r)), q); }, e.n,
        scheme, k);
  } else {
    auto val = u.value;
    I = integrate_rn(
        [val, q](const double* x) { return std::pow(std::abs(val(x)), q); },
        e.n, scheme);
  }
  return norm_from_integral(I, q);
}

NormResult gradient_lp_norm(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme) {
  const double p = e.p;
  IntegralEstimate I;
  if (u.radial_about) {
    auto dprof = u.radial_deriv;
    const double dtilde = u.grad_decay_p - (e.n - 1);
    const int k = choose_tail_power(dtilde);
    I = integrate_radial(
        [dprof, p](double r) { return std::pow(std::abs(dprof(r)), p); }, e.n,
        scheme, k);
  } else {
    auto grad = u.gradient;
    const int n = e.n;
    I = integrate_rn(
        [grad, p, n](const double* x) {
          double g[kMaxDim];
          grad(x, g);
          return std::pow(norm2(g, n), p);
        },
        e.n, scheme);
  }
  return norm_from_integral(I, p);
}

TestFunction normalize_lpstar(const TestFunction& u, double target,
                              const Exponents& e,
                              const QuadratureScheme& scheme) {
  if (!(target > 0.0)) throw std::domain_error("normalization target must be positive");
  const NormResult nr = lp_norm(u, e.p_star, e, scheme);
  if (!(nr.value > 0.0) || !std::isfinite(nr.value))
    throw std::domain_error("cannot normalize: ||u||_{p*} is zero or non-finite");
  return scale_function(u, target / nr.value);
}

}  // namespace soblab
