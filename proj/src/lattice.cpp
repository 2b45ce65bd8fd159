#include "steprev/lattice.hpp"

#include <algorithm>

#include "steprev/errors.hpp"

namespace steprev {

namespace {

Int floor_div(const Int& a, const Int& b) {
  // b > 0 always (pivots are positive)
  Int q = a / b;
  if (a % b != 0 && a < 0) q -= 1;
  return q;
}

// row(i) -= row(k) * q, spelled out; Eigen's scalar-product expressions over
// boost scalars trip Boost 1.74's conversion traits
void axpy_row(IntMatrix& m, Eigen::Index i, Eigen::Index k, const Int& q) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) -= m(k, j) * q;
}

void axpy_vec_row(IntVector& v, const IntMatrix& m, Eigen::Index k, const Int& q) {
  for (Eigen::Index j = 0; j < v.size(); ++j) v(j) -= m(k, j) * q;
}

}  // namespace

IntMatrix row_hnf(const IntMatrix& m, IntMatrix* transform) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::Identity(rows, rows);
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    // gcd-eliminate column below the current pivot row
    while (true) {
      Eigen::Index best = -1;
      for (Eigen::Index i = rank; i < rows; ++i) {
        if (a(i, col) == 0) continue;
        if (best < 0 || abs(a(i, col)) < abs(a(best, col))) best = i;
      }
      if (best < 0) break;
      if (best != rank) {
        a.row(rank).swap(a.row(best));
        u.row(rank).swap(u.row(best));
      }
      bool others = false;
      for (Eigen::Index i = rank + 1; i < rows; ++i) {
        if (a(i, col) == 0) continue;
        others = true;
        Int q = a(i, col) / a(rank, col);  // truncated: Euclid-style shrink
        axpy_row(a, i, rank, q);
        axpy_row(u, i, rank, q);
      }
      if (!others) break;
    }
    if (a(rank, col) == 0) continue;
    if (a(rank, col) < 0) {
      a.row(rank) = -a.row(rank);
      u.row(rank) = -u.row(rank);
    }
    // entries above the pivot reduced into [0, pivot)
    for (Eigen::Index i = 0; i < rank; ++i) {
      Int q = floor_div(a(i, col), a(rank, col));
      if (q != 0) {
        axpy_row(a, i, rank, q);
        axpy_row(u, i, rank, q);
      }
    }
    ++rank;
  }
  if (transform) *transform = u.topRows(rank);
  return a.topRows(rank);
}

template <class K>
Lattice<K>::Lattice(std::vector<K> alphabet, const std::vector<VecOf<K>>& generators)
    : alphabet_(std::move(alphabet)) {
  for (size_t i = 0; i < alphabet_.size(); ++i) column_[alphabet_[i]] = static_cast<int>(i);
  generators_.resize(static_cast<Eigen::Index>(generators.size()),
                     static_cast<Eigen::Index>(alphabet_.size()));
  generators_.setZero();
  for (size_t i = 0; i < generators.size(); ++i)
    for (const auto& [k, v] : generators[i].entries()) {
      auto it = column_.find(k);
      if (it == column_.end())
        throw Error(ErrorCode::UnknownAction, "generator key outside alphabet");
      generators_(static_cast<Eigen::Index>(i), it->second) = v;
    }
  basis_ = row_hnf(generators_, &transform_);
  pivot_col_.clear();
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    Eigen::Index j = 0;
    while (j < basis_.cols() && basis_(i, j) == 0) ++j;
    pivot_col_.push_back(static_cast<int>(j));
  }
}

template <class K>
IntVector Lattice<K>::to_dense(const VecOf<K>& v) const {
  IntVector d = IntVector::Zero(static_cast<Eigen::Index>(alphabet_.size()));
  for (const auto& [k, val] : v.entries()) {
    auto it = column_.find(k);
    if (it == column_.end()) throw Error(ErrorCode::UnknownAction, "vector key outside alphabet");
    d(it->second) = val;
  }
  return d;
}

template <class K>
bool Lattice<K>::contains(const VecOf<K>& v) const {
  return membership_certificate(v).has_value();
}

template <class K>
std::optional<std::vector<Int>> Lattice<K>::membership_certificate(const VecOf<K>& v) const {
  IntVector d = to_dense(v);
  IntVector coeff = IntVector::Zero(basis_.rows());
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    int j = pivot_col_[static_cast<size_t>(i)];
    const Int& pivot = basis_(i, j);
    if (d(j) % pivot != 0) return std::nullopt;
    Int q = d(j) / pivot;
    if (q != 0) axpy_vec_row(d, basis_, i, q);
    coeff(i) = q;
  }
  for (Eigen::Index j = 0; j < d.size(); ++j)
    if (d(j) != 0) return std::nullopt;
  std::vector<Int> out(static_cast<size_t>(transform_.cols()), Int(0));
  for (Eigen::Index i = 0; i < transform_.rows(); ++i)
    for (Eigen::Index g = 0; g < transform_.cols(); ++g)
      out[static_cast<size_t>(g)] += transform_(i, g) * coeff(i);
  return out;
}

template <class K>
IntVector Lattice<K>::residue(const VecOf<K>& v) const {
  IntVector d = to_dense(v);
  for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
    int j = pivot_col_[static_cast<size_t>(i)];
    Int q = floor_div(d(j), basis_(i, j));
    if (q != 0) axpy_vec_row(d, basis_, i, q);
  }
  return d;
}

template <class K>
bool Lattice<K>::same_lattice(const Lattice& o) const {
  auto covered = [](const Lattice& big, const Lattice& small) {
    for (Eigen::Index i = 0; i < small.basis_.rows(); ++i) {
      VecOf<K> row;
      for (Eigen::Index j = 0; j < small.basis_.cols(); ++j)
        row.set(small.alphabet_[static_cast<size_t>(j)], small.basis_(i, j));
      if (!big.contains(row)) return false;
    }
    return true;
  };
  return covered(*this, o) && covered(o, *this);
}

template class Lattice<ActionName>;
template class Lattice<std::string>;

}  // namespace steprev
