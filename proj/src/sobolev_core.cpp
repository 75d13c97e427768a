#include "soblab/sobolev_core.hpp"

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace soblab {

namespace {

using SKey = std::tuple<int, std::uint64_t, int, int, std::uint64_t>;

std::uint64_t bits_of(double x) {
  std::uint64_t u;
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

SobolevConstant compute_sobolev_constant(const Exponents& e,
                                         const QuadratureScheme& scheme) {
  const TestFunction vbar = make_bubble({1.0, 1.0, VecN::zero(e.n)}, e);
  const NormResult grad = gradient_lp_norm(vbar, e, scheme);
  const NormResult func = lp_norm(vbar, e.p_star, e, scheme);
  SobolevConstant s;
  s.value = grad.value / func.value;
  s.delta = s.value * (grad.delta / grad.value + func.delta / func.value);
  return s;
}

}  // namespace

SobolevConstant sobolev_constant(const Exponents& e,
                                 const QuadratureScheme& scheme) {
  static std::mutex mu;
  static std::map<SKey, SobolevConstant> cache;
  const SKey key{e.n, bits_of(e.p), scheme.radial_resolution,
                 static_cast<int>(scheme.tail_map), bits_of(scheme.radial_tol)};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_sobolev_constant(e, scheme)).first;
  return it->second;
}

DeficitValue deficit_branch(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme, Branch b) {
  const NormResult grad = gradient_lp_norm(u, e, scheme);
  const NormResult func = lp_norm(u, e.p_star, e, scheme);
  if (!(func.value > 0.0))
    throw std::domain_error("deficit undefined: ||u||_{p*} = 0");
  const SobolevConstant S = sobolev_constant(e, scheme);
  const double kappa = e.kappa(b);
  const double ratio = grad.value / func.value;
  DeficitValue d;
  d.branch = b;
  d.grad_norm = grad.value;
  d.func_norm = func.value;
  d.value = std::pow(ratio, kappa) - std::pow(S.value, kappa);
  // first-order sensitivity in each norm and in S
  const double rel = grad.delta / grad.value + func.delta / func.value;
  d.numerical_slack = kappa * std::pow(ratio, kappa) * rel +
                      kappa * std::pow(S.value, kappa) * (S.delta / S.value);
  return d;
}

DeficitValue deficit(const TestFunction& u, const Exponents& e,
                     const QuadratureScheme& scheme) {
  return deficit_branch(u, e, scheme, e.branch());
}

NormResult linear_deficit(const TestFunction& u, const Exponents& e,
                          const QuadratureScheme& scheme) {
  const NormResult grad = gradient_lp_norm(u, e, scheme);
  const NormResult func = lp_norm(u, e.p_star, e, scheme);
  if (!(func.value > 0.0))
    throw std::domain_error("linear deficit undefined: ||u||_{p*} = 0");
  const SobolevConstant S = sobolev_constant(e, scheme);
  const double ratio = grad.value / func.value;
  NormResult r;
  r.value = ratio - S.value;
  r.delta = ratio * (grad.delta / grad.value + func.delta / func.value) + S.delta;
  return r;
}

NormResult gradient_distance(const TestFunction& u, const TestFunction& v,
                             const Exponents& e, const QuadratureScheme& scheme) {
  return gradient_lp_norm(linear_combo(1.0, u, -1.0, v), e, scheme);
}

}  // namespace soblab
