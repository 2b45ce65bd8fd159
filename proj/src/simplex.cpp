#include "steprev/simplex.hpp"

#include <vector>

#include "steprev/errors.hpp"

namespace steprev {

namespace {

void self_check_feasible(const LinearProgram& lp, const RatVector& x) {
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x(j) < 0) throw Error(ErrorCode::VerificationFailed, "simplex point has negative entry");
  for (Eigen::Index i = 0; i < lp.b.size(); ++i) {
    Rat lhs = 0;
    for (Eigen::Index j = 0; j < lp.a.cols(); ++j) lhs += lp.a(i, j) * x(j);
    if (lhs > lp.b(i))
      throw Error(ErrorCode::VerificationFailed, "simplex point violates a constraint");
  }
}

void self_check_infeasible(const LinearProgram& lp, const RatVector& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y(i) < 0) throw Error(ErrorCode::VerificationFailed, "farkas ray has negative entry");
  for (Eigen::Index j = 0; j < lp.a.cols(); ++j) {
    Rat yta = 0;
    for (Eigen::Index i = 0; i < lp.a.rows(); ++i) yta += y(i) * lp.a(i, j);
    if (yta < 0) throw Error(ErrorCode::VerificationFailed, "farkas ray fails y^T A >= 0");
  }
  Rat ytb = 0;
  for (Eigen::Index i = 0; i < lp.b.size(); ++i) ytb += y(i) * lp.b(i);
  if (ytb >= 0) throw Error(ErrorCode::VerificationFailed, "farkas ray fails y^T b < 0");
}

}  // namespace

SimplexResult solve_feasibility(const LinearProgram& lp) {
  const Eigen::Index m = lp.a.rows();
  const Eigen::Index n = lp.a.cols();

  // Phase-I tableau for A x + s = b with artificials on scaled negative rows;
  // minimize the artificial sum. Column order: x, s, artificials, RHS.
  std::vector<int> sigma(static_cast<size_t>(m), 1);
  Eigen::Index n_art = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    if (lp.b(i) < 0) {
      sigma[static_cast<size_t>(i)] = -1;
      ++n_art;
    }
  const Eigen::Index cols = n + m + n_art;
  RatMatrix tab = RatMatrix::Zero(m, cols + 1);
  std::vector<Eigen::Index> basic(static_cast<size_t>(m));
  Eigen::Index art = n + m;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) tab(i, j) = Rat(sigma[static_cast<size_t>(i)]) * lp.a(i, j);
    tab(i, n + i) = Rat(sigma[static_cast<size_t>(i)]);
    tab(i, cols) = Rat(sigma[static_cast<size_t>(i)]) * lp.b(i);
    if (sigma[static_cast<size_t>(i)] < 0) {
      tab(i, art) = 1;
      basic[static_cast<size_t>(i)] = art;
      ++art;
    } else {
      basic[static_cast<size_t>(i)] = n + i;
    }
  }

  // objective row: reduced costs for min Σ artificials, entry > 0 may enter
  RatVector obj = RatVector::Zero(cols + 1);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basic[static_cast<size_t>(i)] >= n + m)
      for (Eigen::Index j = 0; j <= cols; ++j) obj(j) += tab(i, j);
  for (Eigen::Index j = n + m; j < cols; ++j) obj(j) -= 1;

  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j)
      if (obj(j) > 0) {
        enter = j;
        break;  // Bland: smallest eligible index, prevents cycling
      }
    if (enter < 0) break;
    Eigen::Index leave = -1;
    Rat best_ratio;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab(i, enter) <= 0) continue;
      Rat ratio = tab(i, cols) / tab(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basic[static_cast<size_t>(i)] < basic[static_cast<size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw Error(ErrorCode::VerificationFailed, "phase-I objective unbounded");
    // Eigen's scalar-product expressions over boost scalars trip Boost 1.74's
    // conversion traits, so the pivot updates are spelled out per element
    Rat pivot = tab(leave, enter);
    for (Eigen::Index j = 0; j <= cols; ++j) tab(leave, j) /= pivot;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == leave || tab(i, enter) == 0) continue;
      Rat f = tab(i, enter);
      for (Eigen::Index j = 0; j <= cols; ++j) tab(i, j) -= f * tab(leave, j);
    }
    if (obj(enter) != 0) {
      Rat f = obj(enter);
      for (Eigen::Index j = 0; j <= cols; ++j) obj(j) -= f * tab(leave, j);
    }
    basic[static_cast<size_t>(leave)] = enter;
  }

  if (obj(cols) > 0) {
    // infeasible: Farkas multipliers off the final objective row's slack block
    RatVector y = RatVector::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) y(i) = -obj(n + i);
    self_check_infeasible(lp, y);
    return FarkasRay{y};
  }
  RatVector x = RatVector::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basic[static_cast<size_t>(i)] < n) x(basic[static_cast<size_t>(i)]) = tab(i, cols);
  self_check_feasible(lp, x);
  return FeasiblePoint{x};
}

}  // namespace steprev
