#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace soblab {

// The deficit (and everything downstream of it) is homogenized with exponent
// p' when p < 2 and p when p >= 2.
enum class Branch { SubTwo, SuperTwo };

// Parameter bundle (n, p) with all derived exponents. Immutable after
// construction via make_exponents.
struct Exponents {
  int n = 0;
  double p = 0.0;
  double p_prime = 0.0;  // Hoelder conjugate p/(p-1)
  double p_star = 0.0;   // critical exponent np/(n-p)
  double alpha = 0.0;    // reduction exponent: p' below 2, p at or above
  double beta_cor = 0.0; // stability exponent of the corollary

  Branch branch() const { return p < 2.0 ? Branch::SubTwo : Branch::SuperTwo; }

  // homogenization exponent of the deficit for a given branch
  double kappa(Branch b) const { return b == Branch::SubTwo ? p_prime : p; }
  double kappa() const { return kappa(branch()); }
};

inline Exponents make_exponents(int n, double p) {
  if (n < 2) throw std::domain_error("n must be at least 2");
  if (!(p > 1.0) || !(p < static_cast<double>(n)))
    throw std::domain_error("p must lie in (1,n)");
  Exponents e;
  e.n = n;
  e.p = p;
  e.p_prime = p / (p - 1.0);
  e.p_star = n * p / (n - p);
  e.alpha = p < 2.0 ? e.p_prime : p;
  const double base = e.p_star * (3.0 + 4.0 * p - (3.0 * p + 1.0) / n);
  e.beta_cor = (p < 2.0 ? e.p_prime : p) * base * base;
  return e;
}

inline std::string branch_name(Branch b) {
  return b == Branch::SubTwo ? "SubTwo" : "SuperTwo";
}

}  // namespace soblab
