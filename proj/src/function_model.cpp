#include "soblab/function_model.hpp"

#include <cmath>
#include <stdexcept>

#include "soblab/norms.hpp"

namespace soblab {

double bubble_profile(double r, const Exponents& e) {
  return std::pow(1.0 + std::pow(r, e.p_prime), (e.p - e.n) / e.p);
}

double bubble_profile_deriv(double r, const Exponents& e) {
  if (r <= 0.0) return 0.0;
  const double t = std::pow(r, e.p_prime);
  return (e.p - e.n) / e.p * e.p_prime * std::pow(r, e.p_prime - 1.0) *
         std::pow(1.0 + t, (e.p - e.n) / e.p - 1.0);
}

double bubble_value(const double* x, const BubbleParams& b, const Exponents& e) {
  const double r = b.lam_scale * std::sqrt(dist2(x, b.center.data(), e.n));
  return b.c * bubble_profile(r, e);
}

void bubble_gradient(const double* x, const BubbleParams& b, const Exponents& e,
                     double* out) {
  double d[kMaxDim];
  double r2 = 0.0;
  for (int i = 0; i < e.n; ++i) {
    d[i] = b.lam_scale * (x[i] - b.center[i]);
    r2 += d[i] * d[i];
  }
  const double r = std::sqrt(r2);
  if (r == 0.0) {
    for (int i = 0; i < e.n; ++i) out[i] = 0.0;
    return;
  }
  // d/dx [c vbar(lam (x-y))] = c lam vbar'(r) * d/r
  const double fac = b.c * b.lam_scale * bubble_profile_deriv(r, e) / r;
  for (int i = 0; i < e.n; ++i) out[i] = fac * d[i];
}

TestFunction make_bubble(const BubbleParams& b, const Exponents& e) {
  if (!(b.lam_scale > 0.0)) throw std::domain_error("lam_scale must be positive");
  if (b.c == 0.0) throw std::domain_error("bubble multiplier c must be nonzero");
  TestFunction u;
  u.n = e.n;
  u.kind = FunctionKind::Bubble;
  u.value = [b, e](const double* x) { return bubble_value(x, b, e); };
  u.gradient = [b, e](const double* x, double* g) { bubble_gradient(x, b, e, g); };
  u.radial_about = b.center;
  u.radial_value = [b, e](double r) {
    return b.c * bubble_profile(b.lam_scale * r, e);
  };
  u.radial_deriv = [b, e](double r) {
    return b.c * b.lam_scale * bubble_profile_deriv(b.lam_scale * r, e);
  };
  // |vbar|^{p*} = (1+r^{p'})^{-n}  ~  r^{-n p'};  |grad vbar|^p ~ r^{-(p + p'(n-p))}
  u.decay_pstar = e.n * e.p_prime;
  u.grad_decay_p = e.p + e.p_prime * (e.n - e.p);
  return u;
}

namespace {

// effectively super-algebraic decay (Gaussian / compact support)
constexpr double kFastDecay = 1e6;

TestFunction make_gaussian_bump(const VecN& z, double w, double amp, int n) {
  TestFunction f;
  f.n = n;
  f.kind = FunctionKind::RadialProfile;
  const double inv2w2 = 1.0 / (2.0 * w * w);
  f.value = [z, amp, inv2w2, n](const double* x) {
    return amp * std::exp(-dist2(x, z.data(), n) * inv2w2);
  };
  f.gradient = [z, amp, inv2w2, n](const double* x, double* g) {
    const double v = amp * std::exp(-dist2(x, z.data(), n) * inv2w2);
    for (int i = 0; i < n; ++i) g[i] = -2.0 * inv2w2 * (x[i] - z[i]) * v;
  };
  f.radial_about = z;
  f.radial_value = [amp, inv2w2](double r) {
    return amp * std::exp(-r * r * inv2w2);
  };
  f.radial_deriv = [amp, inv2w2](double r) {
    return -2.0 * inv2w2 * r * amp * std::exp(-r * r * inv2w2);
  };
  f.decay_pstar = kFastDecay;
  f.grad_decay_p = kFastDecay;
  return f;
}

// smooth mollifier amp * exp(-1/(1-(r/w)^2)) supported on |x-z| < w
TestFunction make_compact_bump(const VecN& z, double w, double amp, int n) {
  TestFunction f;
  f.n = n;
  f.kind = FunctionKind::RadialProfile;
  const double w2 = w * w;
  auto prof = [amp, w2](double r2) -> double {
    const double t = r2 / w2;
    if (t >= 1.0) return 0.0;
    return amp * std::exp(-1.0 / (1.0 - t));
  };
  f.value = [z, prof, n](const double* x) { return prof(dist2(x, z.data(), n)); };
  f.gradient = [z, prof, w2, n](const double* x, double* g) {
    const double r2 = dist2(x, z.data(), n);
    const double t = r2 / w2;
    if (t >= 1.0) {
      for (int i = 0; i < n; ++i) g[i] = 0.0;
      return;
    }
    const double v = prof(r2);
    const double q = 1.0 - t;
    const double dfac = -v / (q * q) * (2.0 / w2);
    for (int i = 0; i < n; ++i) g[i] = dfac * (x[i] - z[i]);
  };
  f.radial_about = z;
  f.radial_value = [prof](double r) { return prof(r * r); };
  f.radial_deriv = [prof, w2](double r) {
    const double t = r * r / w2;
    if (t >= 1.0) return 0.0;
    const double q = 1.0 - t;
    return -prof(r * r) / (q * q) * (2.0 * r / w2);
  };
  f.decay_pstar = kFastDecay;
  f.grad_decay_p = kFastDecay;
  return f;
}

// finite-difference tangent of the bubble family in coordinate `coord`
TestFunction make_tangent(const BubbleParams& base, int coord, double h,
                          const Exponents& e) {
  if (coord < 0 || coord > e.n + 1)
    throw std::domain_error("tangent coordinate out of range");
  BubbleParams shifted = base;
  if (coord == 0) {
    shifted.c += h;  // multiplier direction
  } else if (coord == 1) {
    shifted.lam_scale = base.lam_scale * std::exp(h);  // log-scale direction
  } else {
    shifted.center[coord - 2] += h;
  }
  TestFunction a = make_bubble(shifted, e);
  TestFunction b = make_bubble(base, e);
  TestFunction t = linear_combo(1.0 / h, a, -1.0 / h, b);
  t.kind = FunctionKind::Composite;
  // difference of two bubbles keeps the bubble's algebraic tail rates
  t.decay_pstar = b.decay_pstar;
  t.grad_decay_p = b.grad_decay_p;
  return t;
}

}  // namespace

TestFunction make_perturbation(const PerturbationDirection& d,
                               const BubbleParams& base, const Exponents& e) {
  switch (d.kind) {
    case PerturbationKind::GaussianBump:
      return make_gaussian_bump(d.center, d.width, d.amplitude, e.n);
    case PerturbationKind::CompactBump:
      return make_compact_bump(d.center, d.width, d.amplitude, e.n);
    case PerturbationKind::ManifoldTangent:
      return make_tangent(base, d.tangent_coord, d.tangent_step, e);
  }
  throw std::logic_error("unreachable");
}

TestFunction make_perturbed_bubble(const BubbleParams& base,
                                   const PerturbationDirection& dir,
                                   double eps, const Exponents& e) {
  if (!std::isfinite(eps)) throw std::domain_error("eps must be finite");
  TestFunction v = make_bubble(base, e);
  TestFunction u;
  if (eps == 0.0) {
    u = v;
  } else {
    u = linear_combo(1.0, v, eps, make_perturbation(dir, base, e));
  }
  u.kind = FunctionKind::PerturbedBubble;

  // cheap single-pass finiteness check of both certification norms
  QuadratureScheme coarse;
  coarse.resolution = 32;
  coarse.radial_resolution = 64;
  coarse.tensor_tol = coarse.radial_tol = 1e30;  // no refinement demanded
  const double np = lp_norm(u, e.p_star, e, coarse).value;
  const double gp = gradient_lp_norm(u, e, coarse).value;
  if (!std::isfinite(np) || !std::isfinite(gp))
    throw std::runtime_error("perturbed bubble has non-finite norms");
  return u;
}

TestFunction linear_combo(double a, const TestFunction& u, double b,
                          const TestFunction& w) {
  if (u.n != w.n) throw std::domain_error("dimension mismatch in combination");
  TestFunction r;
  r.n = u.n;
  r.kind = FunctionKind::Composite;
  auto uv = u.value, wv = w.value;
  auto ug = u.gradient, wg = w.gradient;
  const int n = u.n;
  r.value = [a, b, uv, wv](const double* x) { return a * uv(x) + b * wv(x); };
  r.gradient = [a, b, ug, wg, n](const double* x, double* g) {
    double gu[kMaxDim], gw[kMaxDim];
    ug(x, gu);
    wg(x, gw);
    for (int i = 0; i < n; ++i) g[i] = a * gu[i] + b * gw[i];
  };
  if (u.radial_about && w.radial_about &&
      same_point(*u.radial_about, *w.radial_about)) {
    r.radial_about = u.radial_about;
    auto urv = u.radial_value, wrv = w.radial_value;
    auto urd = u.radial_deriv, wrd = w.radial_deriv;
    r.radial_value = [a, b, urv, wrv](double rr) { return a * urv(rr) + b * wrv(rr); };
    r.radial_deriv = [a, b, urd, wrd](double rr) { return a * urd(rr) + b * wrd(rr); };
  }
  // the slower tail dominates
  r.decay_pstar = std::min(u.decay_pstar, w.decay_pstar);
  r.grad_decay_p = std::min(u.grad_decay_p, w.grad_decay_p);
  return r;
}

TestFunction scale_function(const TestFunction& u, double factor) {
  TestFunction r = u;
  auto uv = u.value;
  auto ug = u.gradient;
  const int n = u.n;
  r.kind = FunctionKind::Composite;
  r.value = [factor, uv](const double* x) { return factor * uv(x); };
  r.gradient = [factor, ug, n](const double* x, double* g) {
    ug(x, g);
    for (int i = 0; i < n; ++i) g[i] *= factor;
  };
  if (u.radial_about) {
    auto urv = u.radial_value, urd = u.radial_deriv;
    r.radial_value = [factor, urv](double rr) { return factor * urv(rr); };
    r.radial_deriv = [factor, urd](double rr) { return factor * urd(rr); };
  }
  return r;
}

std::string kind_name(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::GaussianBump: return "gaussian";
    case PerturbationKind::CompactBump: return "compact";
    case PerturbationKind::ManifoldTangent: return "tangent";
  }
  return "unknown";
}

PerturbationKind kind_from_name(const std::string& name) {
  if (name == "gaussian") return PerturbationKind::GaussianBump;
  if (name == "compact") return PerturbationKind::CompactBump;
  if (name == "tangent") return PerturbationKind::ManifoldTangent;
  throw std::invalid_argument("unknown perturbation kind: " + name);
}

}  // namespace soblab
