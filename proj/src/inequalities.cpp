#include "soblab/inequalities.hpp"

#include <cmath>
#include <stdexcept>

namespace soblab {

namespace {

constexpr double kExactTol = 1e-12;

double vec_abs(const VecN& v) { return norm2(v.data(), v.n); }

// s-quasinorm of a nonnegative field, with propagated refinement delta
NormResult quasinorm(const ScalarField& h, double s, int n,
                     const QuadratureScheme& scheme) {
  IntegralEstimate I;
  if (h.radial_about) {
    auto prof = h.radial_profile;
    const int k = choose_tail_power(s * h.decay - (n - 1));
    I = integrate_radial([prof, s](double r) { return std::pow(prof(r), s); },
                         n, scheme, k);
  } else {
    auto f = h.eval;
    I = integrate_rn([f, s](const double* x) { return std::pow(f(x), s); }, n,
                     scheme);
  }
  return norm_from_integral(I, s);
}

// ||a F + b G||_p
NormResult field_combo_norm(const VectorField& F, const VectorField& G,
                            double a, double b, double p, int n,
                            const QuadratureScheme& scheme) {
  IntegralEstimate I;
  if (F.radial_about && G.radial_about &&
      same_point(*F.radial_about, *G.radial_about)) {
    auto gf = F.radial_profile;
    auto gg = G.radial_profile;
    const double decay = std::min(F.decay_p, G.decay_p);
    const int k = choose_tail_power(decay - (n - 1));
    I = integrate_radial(
        [gf, gg, a, b, p](double r) {
          return std::pow(std::abs(a * gf(r) + b * gg(r)), p);
        },
        n, scheme, k);
  } else {
    auto ef = F.eval;
    auto eg = G.eval;
    I = integrate_rn(
        [ef, eg, a, b, p, n](const double* x) {
          double vf[kMaxDim], vg[kMaxDim], v[kMaxDim];
          ef(x, vf);
          eg(x, vg);
          for (int i = 0; i < n; ++i) v[i] = a * vf[i] + b * vg[i];
          return std::pow(norm2(v, n), p);
        },
        n, scheme);
  }
  return norm_from_integral(I, p);
}

}  // namespace

SlackResult make_slack(double lhs, double rhs, double tolerance) {
  SlackResult s;
  s.lhs = lhs;
  s.rhs = rhs;
  s.slack = rhs - lhs;
  s.tolerance = tolerance;
  s.holds = s.slack >= -tolerance;
  return s;
}

double normalized_slack(const SlackResult& s) {
  return s.slack / std::max({1.0, std::abs(s.lhs), std::abs(s.rhs)});
}

SlackResult clarkson_scalar(double a, double b, double p) {
  if (!(p > 1.0 && p < 2.0))
    throw std::domain_error("clarkson_scalar requires p in (1,2)");
  const double pp = p / (p - 1.0);
  const double lhs = std::pow(std::abs(a + b), pp) + std::pow(std::abs(a - b), pp);
  const double rhs =
      2.0 * std::pow(std::pow(std::abs(a), p) + std::pow(std::abs(b), p), pp / p);
  return make_slack(lhs, rhs,
                    kExactTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

SlackResult clarkson_pointwise(const VecN& F, const VecN& G, double p) {
  if (!(p > 1.0 && p < 2.0))
    throw std::domain_error("clarkson_pointwise requires p in (1,2)");
  if (F.n != G.n) throw std::domain_error("dimension mismatch");
  const double pp = p / (p - 1.0);
  VecN sum = F, diff = F;
  for (int i = 0; i < F.n; ++i) {
    sum[i] = F[i] + G[i];
    diff[i] = F[i] - G[i];
  }
  const double lhs = std::pow(vec_abs(sum), pp) + std::pow(vec_abs(diff), pp);
  const double rhs =
      2.0 * std::pow(std::pow(vec_abs(F), p) + std::pow(vec_abs(G), p), pp / p);
  return make_slack(lhs, rhs,
                    kExactTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

SlackResult clarkson_pointwise_super(const VecN& F, const VecN& G, double p) {
  if (!(p >= 2.0))
    throw std::domain_error("clarkson_pointwise_super requires p >= 2");
  if (F.n != G.n) throw std::domain_error("dimension mismatch");
  VecN sum = F, diff = F;
  for (int i = 0; i < F.n; ++i) {
    sum[i] = F[i] + G[i];
    diff[i] = F[i] - G[i];
  }
  const double lhs = std::pow(vec_abs(sum), p) + std::pow(vec_abs(diff), p);
  const double rhs = std::pow(2.0, p - 1.0) *
                     (std::pow(vec_abs(F), p) + std::pow(vec_abs(G), p));
  return make_slack(lhs, rhs,
                    kExactTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

SlackResult reverse_minkowski_finite(const VecN& a, const VecN& b, double s) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("reverse Minkowski requires s in (0,1)");
  if (a.n != b.n) throw std::domain_error("dimension mismatch");
  double sa = 0.0, sb = 0.0, sab = 0.0;
  for (int i = 0; i < a.n; ++i) {
    if (a[i] < 0.0 || b[i] < 0.0)
      throw std::domain_error("reverse Minkowski requires nonnegative entries");
    sa += std::pow(a[i], s);
    sb += std::pow(b[i], s);
    sab += std::pow(a[i] + b[i], s);
  }
  const double lhs = std::pow(sa, 1.0 / s) + std::pow(sb, 1.0 / s);
  const double rhs = std::pow(sab, 1.0 / s);
  return make_slack(lhs, rhs,
                    kExactTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

SlackResult elementary_monotone(double a, double b, double q) {
  if (!(b >= 1.0 && a >= b)) throw std::domain_error("requires a >= b >= 1");
  if (!(q >= 1.0)) throw std::domain_error("requires q >= 1");
  const double lhs = a - b;
  const double rhs = std::pow(a, q) - std::pow(b, q);
  return make_slack(lhs, rhs,
                    kExactTol * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

VectorField gradient_field(const TestFunction& u, const Exponents& e) {
  VectorField F;
  F.n = u.n;
  F.eval = u.gradient;
  F.decay_p = u.grad_decay_p;
  if (u.radial_about) {
    F.radial_about = u.radial_about;
    F.radial_profile = u.radial_deriv;
  }
  (void)e;
  return F;
}

VectorField radial_vector_field(const VecN& center,
                                std::function<double(double)> profile,
                                double decay_p) {
  VectorField F;
  F.n = center.n;
  F.radial_about = center;
  F.radial_profile = profile;
  F.decay_p = decay_p;
  const int n = center.n;
  F.eval = [center, profile, n](const double* x, double* out) {
    double d[kMaxDim];
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
      d[i] = x[i] - center[i];
      r2 += d[i] * d[i];
    }
    const double r = std::sqrt(r2);
    if (r == 0.0) {
      for (int i = 0; i < n; ++i) out[i] = 0.0;
      return;
    }
    const double g = profile(r) / r;
    for (int i = 0; i < n; ++i) out[i] = g * d[i];
  };
  return F;
}

ScalarField radial_scalar_field(const VecN& center,
                                std::function<double(double)> profile,
                                double decay) {
  ScalarField h;
  h.n = center.n;
  h.radial_about = center;
  h.radial_profile = profile;
  h.decay = decay;
  const int n = center.n;
  h.eval = [center, profile, n](const double* x) {
    return profile(std::sqrt(dist2(x, center.data(), n)));
  };
  return h;
}

SlackResult clarkson_integral_branch(const VectorField& F, const VectorField& G,
                                     const Exponents& e,
                                     const QuadratureScheme& scheme, Branch b) {
  const double p = e.p;
  const int n = e.n;
  const NormResult half_sum = field_combo_norm(F, G, 0.5, 0.5, p, n, scheme);
  const NormResult half_diff = field_combo_norm(F, G, 0.5, -0.5, p, n, scheme);
  const NormResult nf = field_combo_norm(F, G, 1.0, 0.0, p, n, scheme);
  const NormResult ng = field_combo_norm(F, G, 0.0, 1.0, p, n, scheme);
  double lhs, rhs, tol;
  if (b == Branch::SubTwo) {
    const double pp = e.p_prime;
    lhs = std::pow(half_sum.value, pp) + std::pow(half_diff.value, pp);
    const double inner =
        0.5 * std::pow(nf.value, p) + 0.5 * std::pow(ng.value, p);
    rhs = std::pow(inner, pp / p);
    // first-order budget from each norm's refinement delta
    const double dl = pp * std::pow(half_sum.value, pp - 1.0) * half_sum.delta +
                      pp * std::pow(half_diff.value, pp - 1.0) * half_diff.delta;
    const double dinner = 0.5 * p * std::pow(nf.value, p - 1.0) * nf.delta +
                          0.5 * p * std::pow(ng.value, p - 1.0) * ng.delta;
    const double dr = inner > 0.0
                          ? (pp / p) * std::pow(inner, pp / p - 1.0) * dinner
                          : 0.0;
    tol = dl + dr + kExactTol * std::max({1.0, lhs, rhs});
  } else {
    lhs = std::pow(half_sum.value, p) + std::pow(half_diff.value, p);
    rhs = 0.5 * std::pow(nf.value, p) + 0.5 * std::pow(ng.value, p);
    const double dl = p * std::pow(half_sum.value, p - 1.0) * half_sum.delta +
                      p * std::pow(half_diff.value, p - 1.0) * half_diff.delta;
    const double dr = 0.5 * p * std::pow(nf.value, p - 1.0) * nf.delta +
                      0.5 * p * std::pow(ng.value, p - 1.0) * ng.delta;
    tol = dl + dr + kExactTol * std::max({1.0, lhs, rhs});
  }
  return make_slack(lhs, rhs, tol);
}

SlackResult clarkson_integral(const VectorField& F, const VectorField& G,
                              const Exponents& e,
                              const QuadratureScheme& scheme) {
  return clarkson_integral_branch(F, G, e, scheme, e.branch());
}

SlackResult reverse_minkowski_integral(const ScalarField& h1,
                                       const ScalarField& h2, double s, int n,
                                       const QuadratureScheme& scheme) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("reverse Minkowski requires s in (0,1)");
  const NormResult n1 = quasinorm(h1, s, n, scheme);
  const NormResult n2 = quasinorm(h2, s, n, scheme);
  ScalarField sum;
  sum.n = n;
  if (h1.radial_about && h2.radial_about &&
      same_point(*h1.radial_about, *h2.radial_about)) {
    auto p1 = h1.radial_profile;
    auto p2 = h2.radial_profile;
    sum = radial_scalar_field(
        *h1.radial_about, [p1, p2](double r) { return p1(r) + p2(r); },
        std::min(h1.decay, h2.decay));
  } else {
    auto e1 = h1.eval;
    auto e2 = h2.eval;
    sum.eval = [e1, e2](const double* x) { return e1(x) + e2(x); };
    sum.decay = std::min(h1.decay, h2.decay);
  }
  const NormResult ns = quasinorm(sum, s, n, scheme);
  const double lhs = n1.value + n2.value;
  const double rhs = ns.value;
  const double tol = n1.delta + n2.delta + ns.delta +
                     kExactTol * std::max({1.0, lhs, rhs});
  return make_slack(lhs, rhs, tol);
}

}  // namespace soblab
