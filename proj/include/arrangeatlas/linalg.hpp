#pragma once

// Exact linear algebra over an ordered field, written against Eigen dense
// types. Every algorithm is templated on the scalar; the library itself
// instantiates it with Rational.

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arrangeatlas {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<Rational>;
using Vector = VectorX<Rational>;
using Index = Eigen::Index;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
struct EchelonForm {
  MatrixX<Scalar> matrix;
  std::vector<Index> pivots;  // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. The result has the same shape as the input,
/// nonzero rows first, every pivot equal to one and alone in its column.
template <typename Derived>
EchelonForm<typename Derived::Scalar> echelon(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> r = m;
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Index p = row;
    while (p < r.rows() && r(p, col) == Scalar(0)) ++p;
    if (p == r.rows()) continue;
    if (p != row) r.row(p).swap(r.row(row));
    const Scalar lead = r(row, col);
    if (lead != Scalar(1)) {
      for (Index j = col; j < r.cols(); ++j) r(row, j) /= lead;
    }
    for (Index i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == Scalar(0)) continue;
      const Scalar f = r(i, col);
      for (Index j = col; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

template <typename Derived>
MatrixX<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
  return echelon(m).matrix;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(echelon(m).pivots.size());
}

template <typename Scalar>
MatrixX<Scalar> vstack(const MatrixX<Scalar>& top, const MatrixX<Scalar>& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionMismatch("vstack: column counts differ");
  MatrixX<Scalar> out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

/// A linear subspace of Scalar^d held as the reduced row echelon basis of
/// its row space. Equal subspaces have identical representations.
template <typename Scalar>
class BasicSubspace {
 public:
  BasicSubspace() = default;

  static BasicSubspace zero(Index ambient_dim) {
    return BasicSubspace(ambient_dim, MatrixX<Scalar>(0, ambient_dim), {});
  }

  static BasicSubspace full(Index ambient_dim) {
    return span(MatrixX<Scalar>::Identity(ambient_dim, ambient_dim));
  }

  /// Row space of `rows`; the ambient dimension is the column count.
  template <typename Derived>
  static BasicSubspace span(const Eigen::MatrixBase<Derived>& rows) {
    auto e = echelon(rows);
    const auto r = static_cast<Index>(e.pivots.size());
    return BasicSubspace(rows.cols(), e.matrix.topRows(r), std::move(e.pivots));
  }

  Index ambient_dim() const { return ambient_dim_; }
  Index rank() const { return basis_.rows(); }
  bool is_zero() const { return rank() == 0; }
  bool is_full() const { return rank() == ambient_dim_; }
  const MatrixX<Scalar>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// Coordinates of a member vector with respect to basis(). Because the
  /// basis is reduced, these are the entries at the pivot columns.
  VectorX<Scalar> coordinates(const VectorX<Scalar>& v) const {
    VectorX<Scalar> c(rank());
    for (Index k = 0; k < rank(); ++k) c(k) = v(pivots_[static_cast<std::size_t>(k)]);
    return c;
  }

  bool contains(const VectorX<Scalar>& v) const {
    if (v.size() != ambient_dim_) throw DimensionMismatch("contains: vector length differs from ambient dimension");
    VectorX<Scalar> residual = v;
    for (Index k = 0; k < rank(); ++k) {
      const Scalar c = v(pivots_[static_cast<std::size_t>(k)]);
      if (c != Scalar(0)) residual -= c * basis_.row(k).transpose();
    }
    for (Index j = 0; j < residual.size(); ++j) {
      if (residual(j) != Scalar(0)) return false;
    }
    return true;
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_ || a.rank() != b.rank()) return false;
    for (Index i = 0; i < a.basis_.rows(); ++i)
      for (Index j = 0; j < a.basis_.cols(); ++j)
        if (a.basis_(i, j) != b.basis_(i, j)) return false;
    return true;
  }

  /// Canonical order: ambient dimension, then rank, then basis entries
  /// read row-major.
  friend bool operator<(const BasicSubspace& a, const BasicSubspace& b) {
    if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    for (Index i = 0; i < a.basis_.rows(); ++i)
      for (Index j = 0; j < a.basis_.cols(); ++j)
        if (a.basis_(i, j) != b.basis_(i, j)) return a.basis_(i, j) < b.basis_(i, j);
    return false;
  }

 private:
  BasicSubspace(Index ambient_dim, MatrixX<Scalar> basis, std::vector<Index> pivots)
      : ambient_dim_(ambient_dim), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Index ambient_dim_ = 0;
  MatrixX<Scalar> basis_;
  std::vector<Index> pivots_;
};

/// A linear map Scalar^source -> Scalar^target, stored as a target x source
/// matrix acting on column vectors.
template <typename Scalar>
class BasicLinearMap {
 public:
  BasicLinearMap() = default;
  explicit BasicLinearMap(MatrixX<Scalar> matrix) : matrix_(std::move(matrix)) {}

  static BasicLinearMap identity(Index dim) {
    return BasicLinearMap(MatrixX<Scalar>::Identity(dim, dim));
  }
  static BasicLinearMap zero(Index source_dim, Index target_dim) {
    return BasicLinearMap(MatrixX<Scalar>::Zero(target_dim, source_dim));
  }

  Index source_dim() const { return matrix_.cols(); }
  Index target_dim() const { return matrix_.rows(); }
  const MatrixX<Scalar>& matrix() const { return matrix_; }

  VectorX<Scalar> operator()(const VectorX<Scalar>& v) const {
    if (v.size() != source_dim()) throw DimensionMismatch("linear map applied to vector of wrong length");
    return matrix_ * v;
  }

 private:
  MatrixX<Scalar> matrix_;
};

/// second ∘ first
template <typename Scalar>
BasicLinearMap<Scalar> compose(const BasicLinearMap<Scalar>& second, const BasicLinearMap<Scalar>& first) {
  if (first.target_dim() != second.source_dim()) throw DimensionMismatch("compose: inner dimensions differ");
  return BasicLinearMap<Scalar>(second.matrix() * first.matrix());
}

template <typename Derived>
BasicSubspace<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto e = echelon(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;

  const Index nullity = cols - static_cast<Index>(e.pivots.size());
  MatrixX<Scalar> generators = MatrixX<Scalar>::Zero(nullity, cols);
  Index g = 0;
  for (Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    generators(g, free) = Scalar(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k)
      generators(g, e.pivots[k]) = -e.matrix(static_cast<Index>(k), free);
    ++g;
  }
  return BasicSubspace<Scalar>::span(generators);
}

/// Covectors vanishing on `s`, as a subspace of the dual space.
template <typename Scalar>
BasicSubspace<Scalar> annihilator(const BasicSubspace<Scalar>& s) {
  return kernel(s.basis());
}

template <typename Scalar>
BasicSubspace<Scalar> intersect(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  return kernel(vstack(annihilator(a).basis(), annihilator(b).basis()));
}

/// a ⊆ b
template <typename Scalar>
bool subspace_leq(const BasicSubspace<Scalar>& a, const BasicSubspace<Scalar>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspace_leq: ambient dimensions differ");
  if (a.rank() > b.rank()) return false;
  for (Index i = 0; i < a.rank(); ++i) {
    if (!b.contains(a.basis().row(i).transpose())) return false;
  }
  return true;
}

template <typename Scalar>
bool contains_vector(const BasicSubspace<Scalar>& s, const VectorX<Scalar>& v) {
  return s.contains(v);
}

/// {v : t(v) ∈ s}
template <typename Scalar>
BasicSubspace<Scalar> preimage(const BasicLinearMap<Scalar>& t, const BasicSubspace<Scalar>& s) {
  if (s.ambient_dim() != t.target_dim()) throw DimensionMismatch("preimage: subspace does not live in the target");
  if (s.is_full()) return BasicSubspace<Scalar>::full(t.source_dim());
  const MatrixX<Scalar> equations = annihilator(s).basis() * t.matrix();
  return kernel(equations);
}

template <typename Scalar>
BasicSubspace<Scalar> image(const BasicLinearMap<Scalar>& t, const BasicSubspace<Scalar>& s) {
  if (s.ambient_dim() != t.source_dim()) throw DimensionMismatch("image: subspace does not live in the source");
  const MatrixX<Scalar> rows = s.basis() * t.matrix().transpose();
  return BasicSubspace<Scalar>::span(rows);
}

using Subspace = BasicSubspace<Rational>;
using LinearMap = BasicLinearMap<Rational>;

}  // namespace arrangeatlas
