#include "soblab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "soblab/geometry.hpp"

namespace soblab {

namespace {

constexpr double kPi = 3.14159265358979323846;

GaussLegendreTable compute_gauss_legendre(int order) {
  GaussLegendreTable t;
  t.x.resize(order);
  t.w.resize(order);
  const double eps = 1e-15;
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double z1 = 0.0, pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps) break;
    }
    t.x[i] = -z;
    t.x[order - 1 - i] = z;
    t.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    t.w[order - 1 - i] = t.w[i];
  }
  return t;
}

// deterministic combine: per-slab partials summed in index order, so the
// result is independent of thread count
double ordered_sum(const std::vector<double>& parts) {
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

double tensor_pass(const PointFn& f, int n, int nodes,
                   const QuadratureScheme& scheme, bool parallel) {
  if (n != 2 && n != 3)
    throw std::domain_error("tensor grid supports n in {2,3} only");
  const AxisTable ax = tensor_axis_table(nodes, scheme);
  const int m = static_cast<int>(ax.x.size());
  std::vector<double> partial(m, 0.0);
  if (n == 2) {
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      double pt[2];
      pt[0] = ax.x[i];
      for (int j = 0; j < m; ++j) {
        pt[1] = ax.x[j];
        acc += ax.w[j] * f(pt);
      }
      partial[i] = ax.w[i] * acc;
    }
  } else {
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < m; ++i) {
      double acc_i = 0.0;
      double pt[3];
      pt[0] = ax.x[i];
      for (int j = 0; j < m; ++j) {
        pt[1] = ax.x[j];
        double acc_j = 0.0;
        for (int k = 0; k < m; ++k) {
          pt[2] = ax.x[k];
          acc_j += ax.w[k] * f(pt);
        }
        acc_i += ax.w[j] * acc_j;
      }
      partial[i] = ax.w[i] * acc_i;
    }
  }
  return ordered_sum(partial);
}

bool close_enough(double coarse, double fine, double tol) {
  const double delta = std::abs(fine - coarse);
  // both essentially zero (e.g. the integrand is identically zero)
  if (std::abs(fine) < 1e-280 && delta < 1e-280) return true;
  return delta <= tol * std::abs(fine);
}

}  // namespace

const GaussLegendreTable& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const GaussLegendreTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache
             .emplace(order, std::make_unique<const GaussLegendreTable>(
                                 compute_gauss_legendre(order)))
             .first;
  }
  return *it->second;
}

double surface_area(int n) {
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

int choose_tail_power(double dtilde) {
  if (!(dtilde > 1.05))
    throw std::domain_error("radial integrand tail is not integrable");
  const int k = static_cast<int>(std::ceil(2.0 / (dtilde - 1.0)));
  return std::clamp(k, 1, 9);
}

double integrate_radial_once(const RadialFn& f, int n, int nodes,
                             int tail_power, TailMap map) {
  const GaussLegendreTable& gl = gauss_legendre(nodes);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double s = 0.5 * (gl.x[i] + 1.0);  // (0,1)
    const double ds = 0.5 * gl.w[i];
    double r, jac;
    if (map == TailMap::Algebraic) {
      const double t = s / (1.0 - s);
      if (tail_power == 1) {
        r = t;
        jac = 1.0 / ((1.0 - s) * (1.0 - s));
      } else {
        r = std::pow(t, tail_power);
        jac = tail_power * std::pow(t, tail_power - 1) /
              ((1.0 - s) * (1.0 - s));
      }
    } else {
      r = std::tan(0.5 * kPi * s);
      jac = 0.5 * kPi * (1.0 + r * r);
    }
    const double fr = f(r);
    if (fr == 0.0) continue;
    sum += ds * jac * std::pow(r, n - 1) * fr;
  }
  return surface_area(n) * sum;
}

IntegralEstimate integrate_radial(const RadialFn& f, int n,
                                  const QuadratureScheme& scheme,
                                  int tail_power) {
  const int m = scheme.radial_resolution;
  double coarse = integrate_radial_once(f, n, m / 2, tail_power, scheme.tail_map);
  double fine = integrate_radial_once(f, n, m, tail_power, scheme.tail_map);
  if (close_enough(coarse, fine, scheme.radial_tol))
    return {fine, std::abs(fine - coarse)};
  // one escalation before giving up
  const double finer = integrate_radial_once(f, n, 2 * m, tail_power, scheme.tail_map);
  if (close_enough(fine, finer, scheme.radial_tol))
    return {finer, std::abs(finer - fine)};
  throw QuadratureError("radial quadrature did not converge under refinement");
}

AxisTable tensor_axis_table(int nodes, const QuadratureScheme& scheme) {
  const GaussLegendreTable& gl = gauss_legendre(nodes);
  AxisTable ax;
  ax.x.resize(nodes);
  ax.w.resize(nodes);
  if (scheme.box_halfwidth > 0.0) {
    const double L = scheme.box_halfwidth;
    for (int i = 0; i < nodes; ++i) {
      ax.x[i] = L * gl.x[i];
      ax.w[i] = L * gl.w[i];
    }
    return ax;
  }
  for (int i = 0; i < nodes; ++i) {
    const double s = gl.x[i];
    const double d = 1.0 - s * s;
    ax.x[i] = s / d;
    ax.w[i] = gl.w[i] * (1.0 + s * s) / (d * d);
  }
  return ax;
}

double integrate_tensor_once(const PointFn& f, int n, int nodes_per_axis,
                             const QuadratureScheme& scheme) {
  return tensor_pass(f, n, nodes_per_axis, scheme, true);
}

double integrate_tensor_once_serial(const PointFn& f, int n,
                                    int nodes_per_axis,
                                    const QuadratureScheme& scheme) {
  return tensor_pass(f, n, nodes_per_axis, scheme, false);
}

IntegralEstimate integrate_rn(const PointFn& f, int n,
                              const QuadratureScheme& scheme) {
  if (n != 2 && n != 3)
    throw std::domain_error("integrate_rn: tensor grid supports n in {2,3}");
  const int m = scheme.resolution;
  double coarse = integrate_tensor_once(f, n, m / 2, scheme);
  double fine = integrate_tensor_once(f, n, m, scheme);
  if (close_enough(coarse, fine, scheme.tensor_tol))
    return {fine, std::abs(fine - coarse)};
  const double finer = integrate_tensor_once(f, n, 2 * m, scheme);
  if (close_enough(fine, finer, scheme.tensor_tol))
    return {finer, std::abs(finer - fine)};
  throw QuadratureError("tensor quadrature did not converge under refinement");
}

}  // namespace soblab
