#pragma once

#include <functional>
#include <optional>
#include <string>

#include "soblab/exponents.hpp"
#include "soblab/geometry.hpp"
#include "soblab/quadrature.hpp"

namespace soblab {

// A point on the (n+2)-dimensional extremal manifold M:
//   v(x) = c * vbar(lam_scale * (x - center)),  vbar(x) = (1+|x|^{p'})^{(p-n)/p}
struct BubbleParams {
  double c = 1.0;
  double lam_scale = 1.0;
  VecN center;
};

// reference profile vbar and its radial derivative
double bubble_profile(double r, const Exponents& e);
double bubble_profile_deriv(double r, const Exponents& e);

double bubble_value(const double* x, const BubbleParams& b, const Exponents& e);
// analytic gradient; zero vector at the center (the radial derivative scales
// like r^{p'-1} and p' > 1 throughout the admissible range)
void bubble_gradient(const double* x, const BubbleParams& b, const Exponents& e,
                     double* out);

enum class FunctionKind { Bubble, PerturbedBubble, RadialProfile, Composite };

// Evaluable function on R^n with analytic gradient plus the metadata
// quadrature needs: radial structure (when present) and algebraic tail rates.
struct TestFunction {
  int n = 0;
  FunctionKind kind = FunctionKind::Composite;
  std::function<double(const double*)> value;
  std::function<void(const double*, double*)> gradient;

  // set when |u| is radially symmetric about a center; the profile closures
  // give u and d/dr u along a ray, enabling 1D quadrature
  std::optional<VecN> radial_about;
  std::function<double(double)> radial_value;
  std::function<double(double)> radial_deriv;

  double decay_pstar = 0.0;   // tail rate of |u|^{p*}: |u|^{p*} ~ r^{-decay_pstar}
  double grad_decay_p = 0.0;  // tail rate of |grad u|^p
};

TestFunction make_bubble(const BubbleParams& b, const Exponents& e);

enum class PerturbationKind { GaussianBump, CompactBump, ManifoldTangent };

// tangent coordinates: 0 = multiplier c, 1 = log-scale, 2..n+1 = center
struct PerturbationDirection {
  PerturbationKind kind = PerturbationKind::GaussianBump;
  VecN center;          // bump center (bump kinds)
  double width = 1.0;   // bump width / support radius
  double amplitude = 1.0;
  int tangent_coord = 0;
  double tangent_step = 1e-3;
};

TestFunction make_perturbation(const PerturbationDirection& d,
                               const BubbleParams& base, const Exponents& e);

// u = v + eps * phi; checks that the p*- and gradient-norms are finite on a
// coarse scheme and throws std::runtime_error otherwise
TestFunction make_perturbed_bubble(const BubbleParams& base,
                                   const PerturbationDirection& dir,
                                   double eps, const Exponents& e);

// a*u + b*w as a composite; radial structure survives when centers match
TestFunction linear_combo(double a, const TestFunction& u, double b,
                          const TestFunction& w);
TestFunction scale_function(const TestFunction& u, double factor);
inline TestFunction negate(const TestFunction& u) { return scale_function(u, -1.0); }

// kind labels for reports
std::string kind_name(PerturbationKind k);
PerturbationKind kind_from_name(const std::string& name);

}  // namespace soblab
