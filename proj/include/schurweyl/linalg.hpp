#pragma once

// Row echelon machinery shared by every rank, span and nullspace computation.
// Kernels are generic over a field object (RationalField or PrimeField).
// Pivot rows are kept sparse and are only reduced on demand; an incoming
// row is reduced in a dense scratch buffer against the existing pivots.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"

namespace schurweyl {

/// Sorted (index, value) pairs with no explicit zeros.
template <class T>
using SparseVector = std::vector<std::pair<std::size_t, T>>;

template <class Field>
class Echelon {
 public:
  using value_type = typename Field::value_type;
  using Row = SparseVector<value_type>;

  Echelon(Field field, std::size_t cols)
      : field_(std::move(field)), cols_(cols), pivot_row_(cols, -1), scratch_(cols, Field::zero()) {}

  std::size_t columns() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  const Field& field() const { return field_; }

  /// Adds `v` to the row space; returns false if it was already in it.
  bool insert(const Row& v) {
    auto lead = reduce(v);
    if (!lead) return false;
    Row row = extract(*lead);
    const value_type inv = field_.inv(row.front().second);
    for (auto& [k, x] : row) field_.scale(x, inv);
    row.front().second = Field::one();
    pivot_row_[*lead] = static_cast<long>(rows_.size());
    pivots_.push_back(*lead);
    rows_.push_back(std::move(row));
    return true;
  }

  bool contains(const Row& v) {
    auto lead = reduce(v);
    if (lead) clear_from(*lead);
    return !lead.has_value();
  }

  /// Pivot columns in insertion order.
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  /// Reduced row echelon form: rows sorted by pivot, each pivot column
  /// cleared in every other row. Unique for a given row space.
  std::vector<Row> reduced_rows() const {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Row> rref;
    rref.reserve(order.size());
    for (auto i : order) rref.push_back(rows_[i]);
    std::vector<value_type> acc(cols_, Field::zero());
    std::vector<long> where(cols_, -1);
    for (std::size_t i = 0; i < rref.size(); ++i) where[rref[i].front().first] = static_cast<long>(i);
    // Back substitution, bottom-up: every row below is already fully reduced.
    for (std::size_t ii = rref.size(); ii-- > 0;) {
      Row& row = rref[ii];
      bool touched = false;
      for (std::size_t k = 1; k < row.size(); ++k)
        if (where[row[k].first] >= 0) touched = true;
      if (!touched) continue;
      for (const auto& [k, x] : row) acc[k] = x;
      for (std::size_t c = row.front().first + 1; c < cols_; ++c) {
        if (Field::is_zero(acc[c]) || where[c] < 0) continue;
        const value_type f = acc[c];
        for (const auto& [k, x] : rref[where[c]]) field_.sub_mul(acc[k], f, x);
      }
      Row out;
      for (std::size_t c = row.front().first; c < cols_; ++c) {
        if (!Field::is_zero(acc[c])) out.emplace_back(c, acc[c]);
        acc[c] = Field::zero();
      }
      row = std::move(out);
    }
    return rref;
  }

  /// Basis of {x : R x = 0} for the row space R, one vector per free column.
  std::vector<Row> nullspace() const {
    const auto rref = reduced_rows();
    std::vector<std::vector<std::pair<std::size_t, value_type>>> by_col(cols_);
    for (const auto& row : rref)
      for (std::size_t k = 1; k < row.size(); ++k) by_col[row[k].first].emplace_back(row.front().first, row[k].second);
    std::vector<Row> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot(f)) continue;
      Row v;
      for (const auto& [p, x] : by_col[f]) v.emplace_back(p, field_.neg(x));
      v.emplace_back(f, Field::one());
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  // Leaves the reduced vector in scratch_ and returns its leading column,
  // or nullopt (with scratch_ cleared) if it reduced to zero.
  std::optional<std::size_t> reduce(const Row& v) {
    if (v.empty()) return std::nullopt;
    std::size_t first = cols_;
    for (const auto& [k, x] : v) {
      if (k >= cols_) throw SizeMismatch("vector index outside the echelon width");
      scratch_[k] = x;
      first = std::min(first, k);
    }
    for (std::size_t c = first; c < cols_; ++c) {
      if (Field::is_zero(scratch_[c])) continue;
      const long p = pivot_row_[c];
      if (p < 0) return c;
      const value_type f = scratch_[c];
      for (const auto& [k, x] : rows_[p]) field_.sub_mul(scratch_[k], f, x);
    }
    return std::nullopt;
  }

  Row extract(std::size_t lead) {
    Row out;
    for (std::size_t c = lead; c < cols_; ++c) {
      if (!Field::is_zero(scratch_[c])) {
        out.emplace_back(c, scratch_[c]);
        scratch_[c] = Field::zero();
      }
    }
    return out;
  }

  void clear_from(std::size_t lead) {
    for (std::size_t c = lead; c < cols_; ++c) scratch_[c] = Field::zero();
  }

  Field field_;
  std::size_t cols_;
  std::vector<long> pivot_row_;
  std::vector<std::size_t> pivots_;
  std::vector<Row> rows_;
  std::vector<value_type> scratch_;
};

/// Solves sum_k c_k basis[k] == target; returns one solution (free
/// coefficients zero) or nullopt if target is outside the span.
template <class Field>
std::optional<std::vector<typename Field::value_type>> solve_in_span(
    const Field& field, const std::vector<SparseVector<typename Field::value_type>>& basis,
    const SparseVector<typename Field::value_type>& target, std::size_t dimension) {
  using V = typename Field::value_type;
  const std::size_t k = basis.size();
  // One equation per coordinate; unknowns are the k coefficients plus the rhs column.
  std::vector<SparseVector<V>> eqs(dimension);
  for (std::size_t j = 0; j < k; ++j)
    for (const auto& [i, x] : basis[j]) eqs[i].emplace_back(j, x);
  for (const auto& [i, x] : target) eqs[i].emplace_back(k, x);
  Echelon<Field> ech(field, k + 1);
  for (auto& e : eqs)
    if (!e.empty()) ech.insert(e);
  if (ech.is_pivot(k)) return std::nullopt;
  std::vector<V> coeffs(k, Field::zero());
  for (const auto& row : ech.reduced_rows()) {
    const std::size_t p = row.front().first;
    for (const auto& [c, x] : row)
      if (c == k) coeffs[p] = x;
  }
  return coeffs;
}

}  // namespace schurweyl
