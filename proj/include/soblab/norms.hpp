#pragma once

#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"
#include "soblab/quadrature.hpp"

namespace soblab {

// Norm value plus its propagated refinement error (first-order in the
// integral's refinement delta).
struct NormResult {
  double value = 0.0;
  double delta = 0.0;
};

// (int |u|^q)^{1/q}; uses the 1D radial rule when u is radial, the tensor
// grid otherwise
NormResult lp_norm(const TestFunction& u, double q, const Exponents& e,
                   const QuadratureScheme& scheme);

// (int |grad u|^p)^{1/p}
NormResult gradient_lp_norm(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme);

// (target / ||u||_{p*}) * u; throws std::domain_error when ||u||_{p*} = 0
TestFunction normalize_lpstar(const TestFunction& u, double target,
                              const Exponents& e, const QuadratureScheme& scheme);

// helper shared by the norm routines: N = I^{1/q} with delta propagation
NormResult norm_from_integral(const IntegralEstimate& I, double q);

}  // namespace soblab
