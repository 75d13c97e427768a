#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace soblab {

// Derivative-free Nelder-Mead descent with one restart around the incumbent.
// Convergence: best-value improvement below improvement_tol over a full
// simplex cycle (dim+1 consecutive iterations), or the evaluation budget.

struct SimplexOptions {
  int max_evals = 2000;
  double improvement_tol = 1e-10;
  int restarts = 1;
};

struct SimplexResult {
  std::vector<double> x;
  double fval = 0.0;
  int evals = 0;
  bool converged = false;
  std::vector<double> history;  // best value per iteration
};

namespace detail {

inline SimplexResult nelder_mead_single(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& steps,
    const SimplexOptions& opt, int* eval_budget) {
  const int dim = static_cast<int>(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> pts;
  std::vector<double> fv;
  auto eval = [&](const std::vector<double>& x) {
    --*eval_budget;
    return f(x);
  };

  pts.push_back(x0);
  fv.push_back(eval(x0));
  for (int i = 0; i < dim; ++i) {
    auto x = x0;
    x[i] += steps[i];
    pts.push_back(x);
    fv.push_back(eval(x));
  }

  SimplexResult res;
  int stall = 0;
  double prev_best = *std::min_element(fv.begin(), fv.end());
  res.history.push_back(prev_best);

  while (*eval_budget > 0) {
    // order
    std::vector<int> idx(dim + 1);
    for (int i = 0; i <= dim; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], worst = idx[dim], second_worst = idx[dim - 1];

    // centroid excluding the worst vertex
    std::vector<double> cen(dim, 0.0);
    for (int i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (int d = 0; d < dim; ++d) cen[d] += pts[i][d];
    }
    for (int d = 0; d < dim; ++d) cen[d] /= dim;

    auto blend = [&](double t) {
      std::vector<double> x(dim);
      for (int d = 0; d < dim; ++d) x[d] = cen[d] + t * (cen[d] - pts[worst][d]);
      return x;
    };

    auto xr = blend(alpha);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      auto xe = blend(gamma);
      const double fe = (*eval_budget > 0) ? eval(xe) : fr;
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second_worst]) {
      pts[worst] = xr;
      fv[worst] = fr;
    } else {
      auto xc = blend(fr < fv[worst] ? rho : -rho);
      const double fc = (*eval_budget > 0) ? eval(xc) : fv[worst];
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = xc;
        fv[worst] = fc;
      } else {
        // shrink toward the best vertex; a vertex only moves together with
        // its re-evaluation so values never go stale
        for (int i = 0; i <= dim; ++i) {
          if (i == best) continue;
          if (*eval_budget <= 0) break;
          for (int d = 0; d < dim; ++d)
            pts[i][d] = pts[best][d] + sigma * (pts[i][d] - pts[best][d]);
          fv[i] = eval(pts[i]);
        }
      }
    }

    const double cur_best = *std::min_element(fv.begin(), fv.end());
    res.history.push_back(cur_best);
    if (prev_best - cur_best < opt.improvement_tol) {
      if (++stall >= dim + 1) {
        res.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
    prev_best = cur_best;
  }

  const int ib = static_cast<int>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[ib];
  res.fval = fv[ib];
  return res;
}

}  // namespace detail

inline SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& x0, const std::vector<double>& steps,
    const SimplexOptions& opt = {}) {
  int budget = opt.max_evals;
  SimplexResult best = detail::nelder_mead_single(f, x0, steps, opt, &budget);
  for (int r = 0; r < opt.restarts && budget > 0; ++r) {
    std::vector<double> small = steps;
    for (double& s : small) s *= 0.1;
    SimplexResult again = detail::nelder_mead_single(f, best.x, small, opt, &budget);
    again.history.insert(again.history.begin(), best.history.begin(),
                         best.history.end());
    again.converged = again.converged && best.converged;
    if (again.fval <= best.fval)
      best = std::move(again);
    else
      best.converged = best.converged && again.converged;
  }
  best.evals = opt.max_evals - budget;
  return best;
}

}  // namespace soblab
