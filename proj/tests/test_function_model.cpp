#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "soblab/exponents.hpp"
#include "soblab/function_model.hpp"
#include "soblab/norms.hpp"
#include "soblab/rng.hpp"
#include "soblab/sobolev_core.hpp"

using namespace soblab;

namespace {

// relative FD check at points sampled away from gradient kinks
void check_gradient_fd(const TestFunction& u, int n, std::uint64_t seed,
                       int points = 100, double tol = 1e-6) {
  Rng rng(seed);
  auto val = u.value;
  double x[kMaxDim], ga[kMaxDim], gf[kMaxDim];
  int done = 0;
  while (done < points) {
    for (int d = 0; d < n; ++d) x[d] = rng.uniform(-3.0, 3.0);
    u.gradient(x, ga);
    const double mag = norm2(ga, n);
    if (mag < 1e-8) continue;  // FD is meaningless where the gradient vanishes
    oracles::central_gradient(val, x, n, 1e-5, gf);
    double diff[kMaxDim];
    for (int d = 0; d < n; ++d) diff[d] = ga[d] - gf[d];
    CHECK(norm2(diff, n) / mag <= tol);
    ++done;
  }
}

}  // namespace

TEST_CASE("bubble values, hand-substituted") {
  const Exponents e32 = make_exponents(3, 2.0);
  const BubbleParams unit{1.0, 1.0, VecN{0.0, 0.0, 0.0}};
  double origin[3] = {0.0, 0.0, 0.0};
  CHECK(bubble_value(origin, unit, e32) == doctest::Approx(1.0).epsilon(1e-15));
  double at1[3] = {1.0, 0.0, 0.0};
  CHECK(bubble_value(at1, unit, e32) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  // n=2, p=1.5, c=2, lam=3, center=(1,0), x=(1,1): 2 (1+3^3)^{-1/3}
  const Exponents e2 = make_exponents(2, 1.5);
  const BubbleParams b{2.0, 3.0, VecN{1.0, 0.0}};
  double x[2] = {1.0, 1.0};
  CHECK(bubble_value(x, b, e2) ==
        doctest::Approx(2.0 * std::pow(28.0, -1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("bubble gradient, symbolic oracle") {
  const Exponents e = make_exponents(3, 2.0);
  const BubbleParams unit{1.0, 1.0, VecN{0.0, 0.0, 0.0}};
  double g[3];
  double origin[3] = {0.0, 0.0, 0.0};
  bubble_gradient(origin, unit, e, g);
  CHECK(norm2(g, 3) == 0.0);
  // grad vbar = -x (1+|x|^2)^{-3/2}; magnitude 2^{-3/2} at |x|=1
  double at1[3] = {0.0, 1.0, 0.0};
  bubble_gradient(at1, unit, e, g);
  CHECK(norm2(g, 3) == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-13));
  CHECK(g[1] < 0.0);
}

TEST_CASE("gradients match finite differences for every kind") {
  for (auto [n, p] : {std::pair{2, 1.5}, {3, 2.0}, {3, 2.5}}) {
    const Exponents e = make_exponents(n, p);
    const BubbleParams base{1.2, 1.7, [&] {
                              VecN c = VecN::zero(n);
                              c[0] = 0.4;
                              return c;
                            }()};
    check_gradient_fd(make_bubble(base, e), n, 5);

    PerturbationDirection gauss;
    gauss.kind = PerturbationKind::GaussianBump;
    gauss.center = VecN::zero(n);
    gauss.center[0] = 0.8;
    gauss.width = 0.9;
    gauss.amplitude = 1.1;
    check_gradient_fd(make_perturbed_bubble(base, gauss, 0.3, e), n, 6);

    PerturbationDirection comp = gauss;
    comp.kind = PerturbationKind::CompactBump;
    comp.width = 1.5;
    check_gradient_fd(make_perturbed_bubble(base, comp, 0.3, e), n, 7);

    PerturbationDirection tan;
    tan.kind = PerturbationKind::ManifoldTangent;
    tan.tangent_coord = 1;
    check_gradient_fd(make_perturbed_bubble(base, tan, 0.3, e), n, 8);

    check_gradient_fd(negate(make_bubble(base, e)), n, 9);
  }
}

TEST_CASE("bubble family is closed under the symmetry group") {
  const Exponents e = make_exponents(2, 1.5);
  // composing (c1,l1,y1) after (c2,l2,y2) pointwise equals the composed params
  const BubbleParams inner{1.0, 2.0, VecN{0.5, -0.3}};
  const double c = 1.7, lam = 0.8;
  const VecN y{0.2, 0.9};
  const BubbleParams composed{c * inner.c, lam * inner.lam_scale, [&] {
                                VecN z = VecN::zero(2);
                                // inner bubble evaluated at lam(x-y):
                                // center solves lam(x - y) = x' with x' - y_i
                                for (int d = 0; d < 2; ++d)
                                  z[d] = y[d] + inner.center[d] / lam;
                                return z;
                              }()};
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    double x[2] = {rng.uniform(-4, 4), rng.uniform(-4, 4)};
    double mapped[2];
    for (int d = 0; d < 2; ++d) mapped[d] = lam * (x[d] - y[d]);
    const double direct = c * bubble_value(mapped, inner, e);
    const double closed = bubble_value(x, composed, e);
    CHECK(closed == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("bubble value is linear in c") {
  const Exponents e = make_exponents(3, 2.5);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const double c = rng.uniform(-3, 3);
    if (c == 0.0) continue;
    const BubbleParams b1{1.0, 1.4, VecN{0.1, 0.2, -0.3}};
    BubbleParams bc = b1;
    bc.c = c;
    double x[3] = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    CHECK(bubble_value(x, bc, e) ==
          doctest::Approx(c * bubble_value(x, b1, e)).epsilon(1e-14));
  }
}

TEST_CASE("perturbed bubble: eps = 0 reproduces the bubble exactly") {
  const Exponents e = make_exponents(2, 1.5);
  const BubbleParams base{1.0, 1.0, VecN{0.0, 0.0}};
  PerturbationDirection dir;
  dir.center = VecN{0.5, 0.5};
  const TestFunction u = make_perturbed_bubble(base, dir, 0.0, e);
  const TestFunction v = make_bubble(base, e);
  double x[2] = {0.3, -0.7};
  CHECK(u.value(x) == v.value(x));
  QuadratureScheme s;
  s.resolution = 64;
  const DeficitValue d = deficit(u, e, s);
  CHECK(std::abs(d.value) <= 10.0 * std::max(d.numerical_slack, 1e-12));
}

TEST_CASE("perturbed bubble: deficit is positive and sign-symmetric in eps") {
  const Exponents e = make_exponents(2, 1.5);
  const BubbleParams base{1.0, 1.0, VecN{0.0, 0.0}};
  PerturbationDirection dir;
  dir.center = VecN{0.0, 0.0};
  dir.width = 1.0;
  dir.amplitude = 1.0;
  QuadratureScheme s;
  s.resolution = 64;
  for (double eps : {0.1, -0.1}) {
    const TestFunction u = make_perturbed_bubble(base, dir, eps, e);
    const DeficitValue d = deficit(u, e, s);
    CHECK(d.value >= -d.numerical_slack);
    if (eps > 0) CHECK(d.value > 0.0);
    // cross-check at a finer resolution
    QuadratureScheme fine = s;
    fine.resolution = 128;
    const DeficitValue df = deficit(u, e, fine);
    CHECK(df.value ==
          doctest::Approx(d.value)
              .epsilon(0.05));  // same sign and magnitude under refinement
  }
}

TEST_CASE("perturbed bubble construction rejects non-finite data") {
  const Exponents e = make_exponents(2, 1.5);
  const BubbleParams base{1.0, 1.0, VecN{0.0, 0.0}};
  PerturbationDirection dir;
  dir.amplitude = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(make_perturbed_bubble(base, dir, 0.1, e));
  CHECK_THROWS_AS(
      make_perturbed_bubble(base, dir, std::numeric_limits<double>::infinity(), e),
      std::domain_error);
}

TEST_CASE("normalization") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  s.resolution = 64;
  const TestFunction v = make_bubble({2.0, 1.0, VecN{0.0, 0.0}}, e);
  // homogeneity: scaling by 1/2 exactly halves the norm on the same nodes
  const NormResult full = lp_norm(v, e.p_star, e, s);
  const NormResult half = lp_norm(scale_function(v, 0.5), e.p_star, e, s);
  CHECK(half.value == doctest::Approx(0.5 * full.value).epsilon(1e-12));

  const TestFunction w = normalize_lpstar(v, 1.0, e, s);
  CHECK(lp_norm(w, e.p_star, e, s).value == doctest::Approx(1.0).epsilon(1e-6));
  // normalizing to the current norm is the identity
  const TestFunction same = normalize_lpstar(v, full.value, e, s);
  double x[2] = {0.4, 0.1};
  CHECK(same.value(x) == doctest::Approx(v.value(x)).epsilon(1e-12));

  // degenerate input
  PerturbationDirection dir;
  dir.center = VecN{0.0, 0.0};
  TestFunction zero = scale_function(v, 0.0);
  CHECK_THROWS_AS(normalize_lpstar(zero, 1.0, e, s), std::domain_error);
}

TEST_CASE("perturbed norm normalizes to target within tolerance") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  s.resolution = 64;
  const BubbleParams base{1.0, 1.3, VecN{0.2, -0.1}};
  PerturbationDirection dir;
  dir.center = VecN{0.7, 0.4};
  dir.width = 0.8;
  dir.amplitude = -0.9;
  const TestFunction u = make_perturbed_bubble(base, dir, 0.1, e);
  const TestFunction un = normalize_lpstar(u, 1.0, e, s);
  CHECK(std::abs(lp_norm(un, e.p_star, e, s).value - 1.0) <= 1e-6);
}
