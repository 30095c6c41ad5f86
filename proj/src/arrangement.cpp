#include "arrangeatlas/arrangement.hpp"

#include "arrangeatlas/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace arrangeatlas {

namespace {

Matrix normalized_rows(Index ambient_dim, const std::vector<Vector>& normals) {
  Matrix rows(static_cast<Index>(normals.size()), ambient_dim);
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const Vector& n = normals[i];
    if (n.size() != ambient_dim) {
      throw DimensionMismatch("normal " + std::to_string(i + 1) + " has length " + std::to_string(n.size()) +
                              ", expected " + std::to_string(ambient_dim));
    }
    Index lead = 0;
    while (lead < n.size() && n(lead) == 0) ++lead;
    if (lead == n.size()) throw DomainError("zero-normal", "normal " + std::to_string(i + 1) + " is zero");
    rows.row(static_cast<Index>(i)) = (n / n(lead)).transpose();
  }
  for (Index i = 0; i < rows.rows(); ++i) {
    for (Index j = 0; j < i; ++j) {
      if (rows.row(i) == rows.row(j)) {
        throw DomainError("duplicate-hyperplane", "normals " + std::to_string(j + 1) + " and " +
                                                      std::to_string(i + 1) + " define the same hyperplane");
      }
    }
  }
  return rows;
}

Matrix select_rows(const Matrix& m, const IndexSet& s) {
  Matrix out(static_cast<Index>(s.size()), m.cols());
  for (std::size_t k = 0; k < s.size(); ++k) out.row(static_cast<Index>(k)) = m.row(static_cast<Index>(s[k]));
  return out;
}

}  // namespace

Arrangement::Arrangement(Index ambient_dim, const std::vector<Vector>& normals)
    : ambient_dim_(ambient_dim), normals_(normalized_rows(ambient_dim, normals)) {}

Arrangement::Arrangement(const Matrix& normals) : ambient_dim_(normals.cols()) {
  std::vector<Vector> rows;
  rows.reserve(static_cast<std::size_t>(normals.rows()));
  for (Index i = 0; i < normals.rows(); ++i) rows.emplace_back(normals.row(i).transpose());
  normals_ = normalized_rows(ambient_dim_, rows);
}

Subspace Arrangement::hyperplane(std::size_t i) const {
  return kernel(normals_.row(static_cast<Index>(i)));
}

Rational Arrangement::evaluate(std::size_t i, const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionMismatch("vector length differs from ambient dimension");
  return normals_.row(static_cast<Index>(i)).dot(v.transpose());
}

IndexSet Arrangement::all_indices() const {
  IndexSet all(size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

bool is_essential(const Arrangement& a) { return rank(a.normal_matrix()) == a.ambient_dim(); }

Subspace flat_subspace(const Arrangement& a, const IndexSet& s) {
  for (std::size_t i : s) {
    if (i >= a.size()) throw DimensionMismatch("hyperplane index out of range");
  }
  return kernel(select_rows(a.normal_matrix(), s));
}

IndexSet closure(const Arrangement& a, const IndexSet& s) {
  const Subspace flat = flat_subspace(a, s);
  IndexSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    // H_i ⊇ flat iff ℓ_i kills every basis vector of the flat.
    const Vector values = flat.basis() * a.normal(i);
    if ((values.array() == Rational(0)).all()) out.push_back(i);
  }
  return out;
}

bool flat_order_less(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

FlatLattice::FlatLattice(std::vector<MatroidFlat> flats) : flats_(std::move(flats)) {
  std::sort(flats_.begin(), flats_.end(),
            [](const MatroidFlat& x, const MatroidFlat& y) { return flat_order_less(x.indices, y.indices); });
}

std::optional<std::size_t> FlatLattice::find(const IndexSet& indices) const {
  auto it = std::lower_bound(flats_.begin(), flats_.end(), indices,
                             [](const MatroidFlat& f, const IndexSet& key) { return flat_order_less(f.indices, key); });
  if (it == flats_.end() || it->indices != indices) return std::nullopt;
  return static_cast<std::size_t>(it - flats_.begin());
}

std::optional<std::size_t> FlatLattice::find(const Subspace& subspace) const {
  for (std::size_t k = 0; k < flats_.size(); ++k) {
    if (flats_[k].subspace == subspace) return k;
  }
  return std::nullopt;
}

FlatLattice flats(const Arrangement& a) {
  // Every flat is reached from closure(∅) by adding one index at a time and
  // closing, so a breadth-first sweep over covers finds them all.
  std::set<IndexSet> seen;
  std::deque<IndexSet> queue;
  const IndexSet bottom = closure(a, {});
  seen.insert(bottom);
  queue.push_back(bottom);
  while (!queue.empty()) {
    const IndexSet current = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::binary_search(current.begin(), current.end(), i)) continue;
      IndexSet extended = current;
      extended.insert(std::upper_bound(extended.begin(), extended.end(), i), i);
      IndexSet next = closure(a, extended);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<MatroidFlat> out;
  out.reserve(seen.size());
  for (const IndexSet& s : seen) out.push_back({s, flat_subspace(a, s)});
  return FlatLattice(std::move(out));
}

Vector Restriction::lift(const Vector& coords) const {
  if (coords.size() != frame.rows()) throw DimensionMismatch("lift: coordinate length differs from flat dimension");
  return frame.transpose() * coords;
}

Subspace Restriction::lift(const Subspace& s) const {
  if (s.ambient_dim() != frame.rows()) throw DimensionMismatch("lift: subspace does not live in the flat");
  const Matrix rows = s.basis() * frame;
  return Subspace::span(rows);
}

Restriction restriction(const Arrangement& a, const IndexSet& flat) {
  IndexSet sorted = flat;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted != flat || closure(a, flat) != flat) {
    throw DomainError("not-a-flat", "index set is not closed in the arrangement");
  }
  const Subspace subspace = flat_subspace(a, flat);
  const Matrix& frame = subspace.basis();

  std::vector<Vector> restricted;
  std::vector<std::optional<RestrictedIndex>> map(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::binary_search(flat.begin(), flat.end(), i)) continue;
    // Nonzero because the flat is closed: the subspace is not inside H_i.
    const Vector m = frame * a.normal(i);
    Index lead = 0;
    while (m(lead) == 0) ++lead;
    const Rational scale = m(lead);
    const Vector normalized = m / scale;
    std::size_t slot = 0;
    while (slot < restricted.size() && restricted[slot] != normalized) ++slot;
    if (slot == restricted.size()) restricted.push_back(normalized);
    map[i] = RestrictedIndex{slot, scale};
  }
  return Restriction{flat, frame, Arrangement(subspace.rank(), restricted), std::move(map)};
}

Restriction restriction(const Arrangement& a, const MatroidFlat& flat) {
  Restriction r = restriction(a, flat.indices);
  if (Subspace::span(r.frame) != flat.subspace) {
    throw DomainError("not-a-flat", "flat subspace does not match its index set");
  }
  return r;
}

}  // namespace arrangeatlas
