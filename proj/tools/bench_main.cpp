// Timing comparison between the serial reference kernels and the OpenMP
// kernels: tensor quadrature passes and a small certification corpus.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "soblab/certify.hpp"
#include "soblab/function_model.hpp"
#include "soblab/quadrature.hpp"

using namespace soblab;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up (node tables, caches)
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_tensor(int n, int nodes, int reps) {
  const Exponents e = make_exponents(n, n == 2 ? 1.5 : 2.0);
  const BubbleParams base{1.0, 1.3, VecN::zero(n)};
  PerturbationDirection dir;
  dir.center = VecN::zero(n);
  dir.center[0] = 0.5;
  dir.width = 0.8;
  const TestFunction u = make_perturbed_bubble(base, dir, 0.1, e);
  QuadratureScheme scheme;
  auto val = u.value;
  const double ps = e.p_star;
  PointFn f = [val, ps](const double* x) {
    return std::pow(std::abs(val(x)), ps);
  };
  double serial_result = 0.0, parallel_result = 0.0;
  const double ts = time_ms(
      [&] { serial_result = integrate_tensor_once_serial(f, n, nodes, scheme); },
      reps);
  const double tp = time_ms(
      [&] { parallel_result = integrate_tensor_once(f, n, nodes, scheme); },
      reps);
  std::printf("tensor n=%d nodes=%-4d  serial %9.2f ms  omp %9.2f ms  speedup %.2fx  bitwise_equal=%s\n",
              n, nodes, ts, tp, ts / tp,
              serial_result == parallel_result ? "yes" : "NO");
}

void bench_corpus() {
  RunConfig config;
  config.n = 2;
  config.p = 1.5;
  config.samples = 12;
  config.resolution = 64;
  config.ratio_stride = 0;
  double t1 = 0.0, tn = 0.0;
  {
    RunConfig c = config;
    c.threads = 1;
    t1 = time_ms([&] { (void)run_corpus(c); }, 1);
  }
  {
    RunConfig c = config;
    c.threads = 0;
    tn = time_ms([&] { (void)run_corpus(c); }, 1);
  }
  std::printf("corpus  12 samples (n=2)  1 thread %9.2f ms  %d threads %9.2f ms  speedup %.2fx\n",
              t1, omp_get_max_threads(), tn, t1 / tn);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", omp_get_max_threads());
  bench_tensor(2, 128, 5);
  bench_tensor(2, 256, 3);
  bench_tensor(3, 64, 3);
  bench_tensor(3, 128, 1);
  bench_corpus();
  return 0;
}
