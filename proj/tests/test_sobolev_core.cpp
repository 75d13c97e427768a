#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "soblab/exponents.hpp"
#include "soblab/norms.hpp"
#include "soblab/rng.hpp"
#include "soblab/sobolev_core.hpp"

using namespace soblab;

namespace {

// radial-preserving transform c * u(lam (x - y)) of a bubble-plus-concentric
// perturbation, rebuilt from transformed parameters
TestFunction transformed_sample(double c, double lam, const VecN& y,
                                double bump_eps, const Exponents& e) {
  BubbleParams b;
  b.c = c;
  b.lam_scale = lam;
  b.center = y;
  TestFunction v = make_bubble(b, e);
  if (bump_eps == 0.0) return v;
  PerturbationDirection dir;
  dir.center = y;
  dir.width = 1.0 / lam;
  dir.amplitude = c;
  return linear_combo(1.0, v, bump_eps, make_perturbation(dir, b, e));
}

}  // namespace

TEST_CASE("sobolev constant matches the gamma-function reference") {
  QuadratureScheme s;
  for (auto [n, p] : {std::pair{2, 1.5}, {2, 1.2}, {3, 2.0}, {3, 2.5}}) {
    const Exponents e = make_exponents(n, p);
    const SobolevConstant S = sobolev_constant(e, s);
    CHECK(S.value ==
          doctest::Approx(oracles::sobolev_constant_exact(e)).epsilon(1e-6));
  }
}

TEST_CASE("sobolev constant is scale invariant") {
  const Exponents e = make_exponents(3, 2.0);
  QuadratureScheme s;
  auto rayleigh = [&](double lam) {
    const TestFunction v = make_bubble({1.0, lam, VecN{0.0, 0.0, 0.0}}, e);
    const NormResult g = gradient_lp_norm(v, e, s);
    const NormResult f = lp_norm(v, e.p_star, e, s);
    return g.value / f.value;
  };
  CHECK(rayleigh(1.0) == doctest::Approx(rayleigh(3.0)).epsilon(1e-8));
}

TEST_CASE("sobolev constant is stable under refinement") {
  const Exponents e = make_exponents(3, 2.0);
  QuadratureScheme s256;
  s256.radial_resolution = 256;
  QuadratureScheme s512;
  s512.radial_resolution = 512;
  const double a = sobolev_constant(e, s256).value;
  const double b = sobolev_constant(e, s512).value;
  CHECK(std::abs(a - b) <= 1e-7 * std::abs(b));
}

TEST_CASE("bubbles have zero deficit") {
  QuadratureScheme s;
  for (auto [n, p] : {std::pair{2, 1.5}, {3, 2.0}, {3, 2.5}}) {
    const Exponents e = make_exponents(n, p);
    const TestFunction v = make_bubble({1.0, 1.0, VecN::zero(n)}, e);
    const DeficitValue d = deficit(v, e, s);
    CHECK(std::abs(d.value) <= 1e-9);
    CHECK(d.value >= -d.numerical_slack);
  }
}

TEST_CASE("deficit invariance over the symmetry grid") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  Rng rng(17);
  const VecN y1{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const VecN y2{rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const double base = deficit(transformed_sample(1.0, 1.0, VecN{0.0, 0.0}, 0.2, e),
                              e, s)
                          .value;
  for (double c : {-2.0, 1.0, 3.0}) {
    for (double lam : {0.5, 1.0, 4.0}) {
      for (const VecN& y : {y1, y2}) {
        const double d =
            deficit(transformed_sample(c, lam, y, 0.2, e), e, s).value;
        CHECK(d == doctest::Approx(base).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("deficit of a perturbed bubble is positive and refinement-stable") {
  const Exponents e = make_exponents(2, 1.5);
  const BubbleParams base{1.0, 1.0, VecN{0.0, 0.0}};
  PerturbationDirection dir;
  dir.center = VecN{0.4, -0.2};
  dir.width = 1.0;
  dir.amplitude = 1.0;
  const TestFunction u = make_perturbed_bubble(base, dir, 0.1, e);
  QuadratureScheme s;
  s.resolution = 64;
  QuadratureScheme fine = s;
  fine.resolution = 128;
  const DeficitValue d1 = deficit(u, e, s);
  const DeficitValue d2 = deficit(u, e, fine);
  CHECK(d1.value > 0.0);
  CHECK(d2.value > 0.0);
  CHECK(d1.value == doctest::Approx(d2.value).epsilon(1e-3));
}

TEST_CASE("deficit rejects the zero function") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  s.resolution = 64;
  const TestFunction zero =
      scale_function(make_bubble({1.0, 1.0, VecN{0.0, 0.0}}, e), 0.0);
  CHECK_THROWS_AS(deficit(zero, e, s), std::domain_error);
}

TEST_CASE("gradient distance") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  s.resolution = 64;
  const TestFunction v = make_bubble({1.5, 2.0, VecN{0.3, 0.3}}, e);
  // identical functions
  CHECK(gradient_distance(v, v, e, s).value <= 1e-12);
  // sign flip: ||grad u - grad v|| = 2 ||grad v||
  const TestFunction w = make_bubble({-1.5, 2.0, VecN{0.3, 0.3}}, e);
  const double twice = gradient_distance(w, v, e, s).value;
  const double gv = gradient_lp_norm(v, e, s).value;
  CHECK(twice == doctest::Approx(2.0 * gv).epsilon(1e-8));
  // separated centers: positive and stable across resolutions
  const TestFunction t = make_bubble({1.0, 1.0, VecN{1.0, 0.0}}, e);
  const TestFunction o = make_bubble({1.0, 1.0, VecN{0.0, 0.0}}, e);
  const double d64 = gradient_distance(t, o, e, s).value;
  QuadratureScheme fine = s;
  fine.resolution = 128;
  const double d128 = gradient_distance(t, o, e, fine).value;
  CHECK(d64 > 0.1);
  CHECK(d64 == doctest::Approx(d128).epsilon(1e-4));
}

TEST_CASE("linear deficit is dominated by the deficit") {
  const Exponents e = make_exponents(2, 1.5);
  QuadratureScheme s;
  s.resolution = 64;
  const TestFunction v = make_bubble({1.0, 1.0, VecN{0.0, 0.0}}, e);
  const NormResult l0 = linear_deficit(v, e, s);
  CHECK(std::abs(l0.value) <= 1e-9);
  const TestFunction nv = negate(v);
  CHECK(std::abs(linear_deficit(nv, e, s).value) <= 1e-9);

  const BubbleParams base{1.0, 1.0, VecN{0.0, 0.0}};
  for (double eps : {0.05, 0.2, 0.5}) {
    PerturbationDirection dir;
    dir.center = VecN{0.5, 0.0};
    dir.width = 0.9;
    dir.amplitude = 1.0;
    const TestFunction u = make_perturbed_bubble(base, dir, eps, e);
    const NormResult lin = linear_deficit(u, e, s);
    const DeficitValue d = deficit(u, e, s);
    CHECK(lin.value <= d.value + lin.delta + d.numerical_slack + 1e-12);
    CHECK(lin.value >= -lin.delta - 1e-12);
  }
}

TEST_CASE("every manifold member stays below ten numerical slacks") {
  QuadratureScheme s;
  Rng rng(23);
  const Exponents e = make_exponents(2, 1.5);
  for (int t = 0; t < 10; ++t) {
    BubbleParams b;
    b.c = rng.uniform(0.3, 3.0) * rng.sign();
    b.lam_scale = rng.log_uniform(0.3, 3.0);
    b.center = VecN{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const DeficitValue d = deficit(make_bubble(b, e), e, s);
    CHECK(d.value <= 10.0 * std::max(d.numerical_slack, 1e-10));
    CHECK(d.value >= -std::max(d.numerical_slack, 1e-10));
  }
}
