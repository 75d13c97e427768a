#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace soblab {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gauss-Legendre nodes/weights on [-1,1]. Tables are computed once per order
// and cached (write-once, safe for concurrent readers).
struct GaussLegendreTable {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussLegendreTable& gauss_legendre(int order);

// Change of variables used to reach infinity.
//   Algebraic: r = (s/(1-s))^k on (0,1); k is picked from the integrand's
//              algebraic tail rate so the mapped integrand stays regular.
//   Tangent:   r = tan(pi s / 2); fallback for slowly decaying integrands.
enum class TailMap { Algebraic, Tangent };

// Policy bundle for all integrations of one run. Immutable; copy and adjust
// to derive special-purpose schemes (projection search, construction checks).
struct QuadratureScheme {
  int resolution = 128;         // tensor grid: nodes per axis (power of two)
  int radial_resolution = 512;  // radial rule: nodes on (0,infinity)
  TailMap tail_map = TailMap::Algebraic;
  double radial_tol = 1e-7;     // relative refinement tolerance, radial
  double tensor_tol = 1e-5;     // relative refinement tolerance, tensor
  double box_halfwidth = 0.0;   // > 0: truncate tensor axes to [-L,L]
};

// Integral value plus the refinement delta |I_fine - I_coarse| used as the
// numerical slack of everything derived from it.
struct IntegralEstimate {
  double value = 0.0;
  double delta = 0.0;
};

double surface_area(int n);  // of the unit sphere S^{n-1}

// Tail power for the algebraic map: the full radial integrand f(r) r^{n-1}
// must decay like r^{-dtilde} with dtilde > 1.
int choose_tail_power(double dtilde);

using RadialFn = std::function<double(double)>;
using PointFn = std::function<double(const double*)>;

// single pass: omega(n) * int_0^inf f(r) r^{n-1} dr at a fixed node count
double integrate_radial_once(const RadialFn& f, int n, int nodes,
                             int tail_power, TailMap map);

// refining driver: evaluates at resolution/2 and resolution, escalates once
// to 2x on disagreement, throws QuadratureError if still not converged
IntegralEstimate integrate_radial(const RadialFn& f, int n,
                                  const QuadratureScheme& scheme,
                                  int tail_power = 1);

// Tensor-product rule over R^n (n in {2,3}) with the per-axis odd map
// x = s/(1-s^2), or an affine box rule when box_halfwidth > 0.
// The parallel kernel accumulates per-slab partials and combines them in
// slab order, so it returns bit-identical sums to the serial reference.
double integrate_tensor_once(const PointFn& f, int n, int nodes_per_axis,
                             const QuadratureScheme& scheme);
double integrate_tensor_once_serial(const PointFn& f, int n, int nodes_per_axis,
                                    const QuadratureScheme& scheme);

IntegralEstimate integrate_rn(const PointFn& f, int n,
                              const QuadratureScheme& scheme);

// Mapped axis table for scanning grid nodes (initializers, peak search).
struct AxisTable {
  std::vector<double> x;  // mapped coordinates
  std::vector<double> w;  // quadrature weight including the map jacobian
};
AxisTable tensor_axis_table(int nodes, const QuadratureScheme& scheme);

}  // namespace soblab
