#pragma once

#include <functional>
#include <optional>

#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"
#include "soblab/geometry.hpp"
#include "soblab/norms.hpp"

namespace soblab {

// Signed slack of one inequality instance, oriented so the inequality holds
// iff slack = rhs - lhs >= -tolerance. For exact-arithmetic inequalities the
// tolerance is relative with floor 1 (powers like |a+b|^{p'} reach 1e14 on
// admissible inputs, so an absolute band is meaningless); for integral forms
// it is the propagated quadrature budget.
struct SlackResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

SlackResult make_slack(double lhs, double rhs, double tolerance);

// relative slack used by the sweep reports: slack / max(1,|lhs|,|rhs|)
double normalized_slack(const SlackResult& s);

// |a+b|^{p'} + |a-b|^{p'} <= 2 (|a|^p + |b|^p)^{p'/p},  p in (1,2)
SlackResult clarkson_scalar(double a, double b, double p);

// same shape for F,G in R^n (Euclidean norms), p in (1,2)
SlackResult clarkson_pointwise(const VecN& F, const VecN& G, double p);

// |F+G|^p + |F-G|^p <= 2^{p-1} (|F|^p + |G|^p),  p >= 2
SlackResult clarkson_pointwise_super(const VecN& F, const VecN& G, double p);

// (sum a_i^s)^{1/s} + (sum b_i^s)^{1/s} <= (sum (a_i+b_i)^s)^{1/s}, s in (0,1)
SlackResult reverse_minkowski_finite(const VecN& a, const VecN& b, double s);

// a^q - b^q >= a - b for a >= b >= 1, q >= 1
SlackResult elementary_monotone(double a, double b, double q);

// Vector field on R^n for the integral forms; radial fields carry a signed
// magnitude profile g with F(x) = g(r) rhat about the center.
struct VectorField {
  int n = 0;
  std::function<void(const double*, double*)> eval;
  std::optional<VecN> radial_about;
  std::function<double(double)> radial_profile;
  double decay_p = 0.0;  // tail rate of |F|^p
};

VectorField gradient_field(const TestFunction& u, const Exponents& e);
VectorField radial_vector_field(const VecN& center,
                                std::function<double(double)> profile,
                                double decay_p);

// Clarkson's inequalities in integral form; the branch follows e.p:
//   p <  2: ||(F+G)/2||_p^{p'} + ||(F-G)/2||_p^{p'} <= (||F||_p^p/2 + ||G||_p^p/2)^{p'/p}
//   p >= 2: ||(F+G)/2||_p^p   + ||(F-G)/2||_p^p   <=  ||F||_p^p/2 + ||G||_p^p/2
SlackResult clarkson_integral(const VectorField& F, const VectorField& G,
                              const Exponents& e, const QuadratureScheme& scheme);
SlackResult clarkson_integral_branch(const VectorField& F, const VectorField& G,
                                     const Exponents& e,
                                     const QuadratureScheme& scheme, Branch b);

// Nonnegative scalar field for the s-quasinorm superadditivity.
struct ScalarField {
  int n = 0;
  std::function<double(const double*)> eval;
  std::optional<VecN> radial_about;
  std::function<double(double)> radial_profile;
  double decay = 0.0;  // tail rate of h itself
};

ScalarField radial_scalar_field(const VecN& center,
                                std::function<double(double)> profile,
                                double decay);

// ||h1||_s + ||h2||_s <= ||h1 + h2||_s with s in (0,1)
SlackResult reverse_minkowski_integral(const ScalarField& h1,
                                       const ScalarField& h2, double s, int n,
                                       const QuadratureScheme& scheme);

}  // namespace soblab
