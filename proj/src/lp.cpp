#include "stochgeo/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochgeo {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor>;

// Dense tableau over columns [structural | artificial] with the right-hand
// side kept separately. Rows flagged inactive were found redundant.
class Tableau {
 public:
  Tableau(RowMatrix body, Vector rhs, std::vector<Index> basis,
          Index structural, double tol)
      : t_(std::move(body)),
        rhs_(std::move(rhs)),
        basis_(std::move(basis)),
        active_(static_cast<std::size_t>(t_.rows()), true),
        structural_(structural),
        tol_(tol) {}

  // Runs the simplex on cost vector `cost` (one entry per column). Columns
  // >= allowed_cols never enter.
  LpStatus optimise(const Vector& cost, Index allowed_cols,
                    const LpOptions& options, double& objective) {
    const Index m = t_.rows();
    Vector reduced = cost;
    objective = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (!active_[i]) continue;
      const double cb = cost(basis_[i]);
      if (cb != 0.0) {
        reduced.noalias() -= cb * t_.row(i).transpose();
        objective += cb * rhs_(i);
      }
    }
    for (int pivots = 0;; ++pivots) {
      if (options.stop_at_or_below && objective <= *options.stop_at_or_below)
        return LpStatus::Stopped;
      if (pivots >= options.max_pivots)
        throw std::runtime_error("simplex: pivot limit exceeded");
      // Bland: lowest-index improving column.
      Index enter = -1;
      for (Index j = 0; j < allowed_cols; ++j) {
        if (reduced(j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < m; ++i) {
        if (!active_[i]) continue;
        const double a = t_(i, enter);
        if (a <= tol_) continue;
        const double ratio = std::max(rhs_(i), 0.0) / a;
        if (leave < 0 || ratio < best - tol_) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tol_ && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(leave, enter);
      const double rc = reduced(enter);
      reduced.noalias() -= rc * t_.row(leave).transpose();
      objective += rc * rhs_(leave);
    }
  }

  void pivot(Index row, Index col) {
    const double p = t_(row, col);
    t_.row(row) /= p;
    rhs_(row) /= p;
    for (Index i = 0; i < t_.rows(); ++i) {
      if (i == row || !active_[i]) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      t_.row(i).noalias() -= f * t_.row(row);
      rhs_(i) -= f * rhs_(row);
    }
    basis_[row] = col;
  }

  // Pivots basic artificial columns out after phase one; rows with no
  // structural entry left are redundant and deactivated.
  void expel_artificials() {
    for (Index i = 0; i < t_.rows(); ++i) {
      if (!active_[i] || basis_[i] < structural_) continue;
      Index col = -1;
      double best = tol_;
      for (Index j = 0; j < structural_; ++j) {
        if (std::abs(t_(i, j)) > best) {
          best = std::abs(t_(i, j));
          col = j;
        }
      }
      if (col < 0)
        active_[i] = false;
      else
        pivot(i, col);
    }
  }

  Vector solution() const {
    Vector x = Vector::Zero(structural_);
    for (Index i = 0; i < t_.rows(); ++i)
      if (active_[i] && basis_[i] < structural_)
        x(basis_[i]) = std::max(rhs_(i), 0.0);
    return x;
  }

 private:
  RowMatrix t_;
  Vector rhs_;
  std::vector<Index> basis_;
  std::vector<bool> active_;
  Index structural_;
  double tol_;
};

}  // namespace

LpResult minimize_standard_form(const Matrix& a, const Vector& b,
                                const Vector& c, const LpOptions& options,
                                const std::vector<Index>* initial_basis) {
  const Index m = a.rows();
  const Index n = a.cols();
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("minimize_standard_form: shape mismatch");
  LpResult result;

  if (initial_basis) {
    if (static_cast<Index>(initial_basis->size()) != m)
      throw std::invalid_argument("minimize_standard_form: basis size");
    Matrix basis_cols(m, m);
    for (Index i = 0; i < m; ++i) basis_cols.col(i) = a.col((*initial_basis)[i]);
    Eigen::PartialPivLU<Matrix> lu(basis_cols);
    RowMatrix body = lu.solve(a);
    Vector rhs = lu.solve(b);
    if ((rhs.array() < -options.tolerance).any())
      throw std::invalid_argument("minimize_standard_form: infeasible basis");
    Tableau tab(std::move(body), std::move(rhs), *initial_basis, n,
                options.tolerance);
    result.status = tab.optimise(c, n, options, result.objective);
    result.x = tab.solution();
    return result;
  }

  RowMatrix body(m, n + m);
  Vector rhs(m);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    body.row(i).head(n) = sign * a.row(i);
    body.row(i).tail(m).setZero();
    body(i, n + i) = 1.0;
    rhs(i) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  Tableau tab(std::move(body), std::move(rhs), std::move(basis), n,
              options.tolerance);

  Vector phase_one = Vector::Zero(n + m);
  phase_one.tail(m).setOnes();
  LpOptions first = options;
  first.stop_at_or_below.reset();
  double infeasibility = 0.0;
  tab.optimise(phase_one, n, first, infeasibility);
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (infeasibility > 1e3 * options.tolerance * scale) {
    result.status = LpStatus::Infeasible;
    result.objective = infeasibility;
    return result;
  }
  tab.expel_artificials();

  Vector cost = Vector::Zero(n + m);
  cost.head(n) = c;
  result.status = tab.optimise(cost, n, options, result.objective);
  result.x = tab.solution();
  return result;
}

}  // namespace stochgeo
