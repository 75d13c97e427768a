#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace soblab {

// Maximum spatial dimension supported anywhere in the library.
inline constexpr int kMaxDim = 8;

// Small fixed-capacity point/vector in R^n. Cheap to copy, no heap.
struct VecN {
  std::array<double, kMaxDim> v{};
  int n = 0;

  VecN() = default;
  VecN(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) v[i++] = x;
  }
  static VecN zero(int dim) {
    VecN z;
    z.n = dim;
    return z;
  }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  const double* data() const { return v.data(); }
};

inline double dist2(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double norm2(const double* a, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

inline bool same_point(const VecN& a, const VecN& b, double tol = 1e-14) {
  if (a.n != b.n) return false;
  for (int i = 0; i < a.n; ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

}  // namespace soblab
