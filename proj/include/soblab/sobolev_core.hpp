#pragma once

#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"
#include "soblab/norms.hpp"
#include "soblab/quadrature.hpp"

namespace soblab {

struct SobolevConstant {
  double value = 0.0;
  double delta = 0.0;  // refinement error propagated from both norms
};

// S(n,p) = ||grad vbar||_p / ||vbar||_{p*}. Computed once per
// (exponents, radial scheme) and cached so every deficit of a run shares the
// same constant.
SobolevConstant sobolev_constant(const Exponents& e, const QuadratureScheme& scheme);

struct DeficitValue {
  double value = 0.0;
  Branch branch = Branch::SubTwo;
  double grad_norm = 0.0;
  double func_norm = 0.0;
  double numerical_slack = 0.0;
};

// delta(u) = (||grad u||_p^k - S^k ||u||_{p*}^k) / ||u||_{p*}^k with
// k = p' (p<2) or p (p>=2); branch override exists for the p=2 coincidence
// checks
DeficitValue deficit(const TestFunction& u, const Exponents& e,
                     const QuadratureScheme& scheme);
DeficitValue deficit_branch(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme, Branch b);

// (||grad u||_p - S ||u||_{p*}) / ||u||_{p*}
NormResult linear_deficit(const TestFunction& u, const Exponents& e,
                          const QuadratureScheme& scheme);

// ||grad u - grad v||_p
NormResult gradient_distance(const TestFunction& u, const TestFunction& v,
                             const Exponents& e, const QuadratureScheme& scheme);

}  // namespace soblab
