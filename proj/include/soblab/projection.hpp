#pragma once

#include <vector>

#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"
#include "soblab/norms.hpp"
#include "soblab/quadrature.hpp"

namespace soblab {

// Result of projecting a function onto the extremal manifold. The found
// value is an upper bound on the true infimum (multistart local descent does
// not certify global optimality), which downstream consumers rely on.
struct ProjectionResult {
  double value = 0.0;
  BubbleParams argmin;
  std::vector<double> objective_history;
  int multistart_count = 0;
  bool converged = false;
};

struct ProjectionOptions {
  int search_resolution = 0;  // 0: derived from the scheme and dimension
  int max_evals = 2000;
  double improvement_tol = 1e-10;
};

// Multistart seeds: moment-based (barycenter + second moment of |u|^{p*}),
// peak-based, scale perturbations x4 and /4, plus sign flips when u changes
// sign.
std::vector<BubbleParams> fit_initialization(const TestFunction& u,
                                             const Exponents& e,
                                             const QuadratureScheme& scheme);

// A(u): inf over M of ||grad u - grad v||_p / ||u||_{p*}, free (c, scale, y)
ProjectionResult asymmetry_gradient(const TestFunction& u, const Exponents& e,
                                    const QuadratureScheme& scheme,
                                    const ProjectionOptions& opt = {});

// L^{p*} asymmetry: inf ||u - v||_{p*} / ||u||_{p*} over v in M with
// ||v||_{p*} = ||u||_{p*}; |c| is eliminated via
// |c| = ||u||_{p*} lam^{n/p*} / ||vbar||_{p*} and both signs are searched.
ProjectionResult asymmetry_lpstar(const TestFunction& u, const Exponents& e,
                                  const QuadratureScheme& scheme,
                                  const ProjectionOptions& opt = {});

}  // namespace soblab
