#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/linalg.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl {

/// Sparse matrix with exact rational entries, stored row by row with
/// sorted, deduplicated, nonzero entries.
class ExactMatrix {
 public:
  using Row = SparseVector<Rational>;

  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  static ExactMatrix identity(std::size_t d) {
    ExactMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
  }

  /// Duplicate (i, j) entries are summed; zeros are dropped.
  static ExactMatrix from_triplets(std::size_t rows, std::size_t cols,
                                   std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries) {
    ExactMatrix m(rows, cols);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (auto& [i, j, v] : entries) {
      if (i >= rows || j >= cols) throw SizeMismatch("triplet outside the matrix");
      auto& row = m.data_[i];
      if (!row.empty() && row.back().first == j)
        row.back().second += v;
      else
        row.emplace_back(j, std::move(v));
    }
    for (auto& row : m.data_)
      row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
    return m;
  }

  static ExactMatrix from_dense(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw SizeMismatch("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j)
        if (rows[i][j] != 0) m.data_[i].emplace_back(j, rows[i][j]);
    }
    return m;
  }

  /// Row i given as a sparse vector (sorted, no zeros).
  void set_row(std::size_t i, Row row) { data_.at(i) = std::move(row); }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows() == cols(); }
  const Row& row(std::size_t i) const { return data_[i]; }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  Rational at(std::size_t i, std::size_t j) const {
    const auto& r = data_.at(i);
    const auto it = std::lower_bound(r.begin(), r.end(), j, [](const auto& e, std::size_t c) { return e.first < c; });
    return (it != r.end() && it->first == j) ? it->second : Rational(0);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const auto& r) { return r.empty(); });
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < data_.size(); ++i)
      for (const auto& [j, v] : data_[i])
        if (j != i) return false;
    return true;
  }

  /// Diagonal entries (zeros included).
  std::vector<Rational> diagonal() const {
    std::vector<Rational> d(std::min(rows(), cols()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
    return d;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < std::min(rows(), cols()); ++i) t += at(i, i);
    return t;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  ExactMatrix& operator+=(const ExactMatrix& o) { return axpy(Rational(1), o); }
  ExactMatrix& operator-=(const ExactMatrix& o) { return axpy(Rational(-1), o); }

  /// this += a * o
  ExactMatrix& axpy(const Rational& a, const ExactMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < rows(); ++i) {
      Row merged;
      const auto& x = data_[i];
      const auto& y = o.data_[i];
      std::size_t p = 0, q = 0;
      while (p < x.size() || q < y.size()) {
        if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
          merged.push_back(x[p++]);
        } else if (p == x.size() || y[q].first < x[p].first) {
          merged.emplace_back(y[q].first, a * y[q].second);
          ++q;
        } else {
          Rational s = x[p].second + a * y[q].second;
          if (s != 0) merged.emplace_back(x[p].first, std::move(s));
          ++p;
          ++q;
        }
      }
      data_[i] = std::move(merged);
    }
    return *this;
  }

  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(const Rational& s, ExactMatrix a) {
    if (s == 0) return ExactMatrix(a.rows(), a.cols());
    for (auto& r : a.data_)
      for (auto& e : r) e.second *= s;
    return a;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows())
      throw SizeMismatch("cannot multiply " + a.shape() + " by " + b.shape());
    ExactMatrix out(a.rows(), b.cols());
    std::vector<Rational> acc(b.cols());
    std::vector<char> used(b.cols(), 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      touched.clear();
      for (const auto& [k, x] : a.data_[i]) {
        for (const auto& [j, y] : b.data_[k]) {
          if (!used[j]) {
            used[j] = 1;
            touched.push_back(j);
          }
          RationalField::add_mul(acc[j], x, y);
        }
      }
      std::sort(touched.begin(), touched.end());
      for (auto j : touched) {
        if (acc[j] != 0) out.data_[i].emplace_back(j, acc[j]);
        acc[j] = 0;
        used[j] = 0;
      }
    }
    return out;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool commutes_with(const ExactMatrix& o) const { return (*this) * o == o * (*this); }

  std::string shape() const { return std::to_string(rows()) + "x" + std::to_string(cols()); }

  /// Prime-field mirror of the entries, row by row.
  std::vector<SparseVector<std::uint64_t>> mod_p(const PrimeField& f) const {
    std::vector<SparseVector<std::uint64_t>> out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) {
        const auto x = f.from(v);
        if (x != 0) out[i].emplace_back(j, x);
      }
    return out;
  }

  nlohmann::ordered_json to_dense_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows(); ++i) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      std::size_t p = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (p < data_[i].size() && data_[i][p].first == j)
          r.push_back(to_string(data_[i][p++].second));
        else
          r.push_back("0/1");
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  nlohmann::ordered_json to_sparse_json() const {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) entries.push_back({i, j, to_string(v)});
    return {{"rows", rows()}, {"cols", cols()}, {"entries", entries}};
  }

 private:
  void check_same_shape(const ExactMatrix& o) const {
    if (rows() != o.rows() || cols() != o.cols())
      throw SizeMismatch("shape mismatch: " + shape() + " vs " + o.shape());
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// Kronecker product, leftmost factor most significant.
inline ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < b.rows(); ++k) {
      ExactMatrix::Row row;
      for (const auto& [j, x] : a.row(i))
        for (const auto& [l, y] : b.row(k)) row.emplace_back(j * b.cols() + l, x * y);
      out.set_row(i * b.rows() + k, std::move(row));
    }
  return out;
}

/// Commutator [a, b] = ab - ba.
inline ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) { return a * b - b * a; }

struct RrefResult {
  std::size_t rank = 0;
  ExactMatrix reduced;
  std::vector<std::size_t> pivots;
};

/// Exact reduced row echelon form. Pivots are the first nonzero column of
/// each reduced row; the result depends only on the row space.
inline RrefResult rref(const ExactMatrix& m) {
  Echelon<RationalField> ech(RationalField{}, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  RrefResult out;
  out.rank = ech.rank();
  out.reduced = ExactMatrix(m.rows(), m.cols());
  auto rows = ech.reduced_rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.pivots.push_back(rows[i].front().first);
    out.reduced.set_row(i, std::move(rows[i]));
  }
  return out;
}

template <class Field>
std::size_t rank(const Field& field, const ExactMatrix& m) {
  Echelon<Field> ech(field, m.cols());
  if constexpr (std::is_same_v<Field, RationalField>) {
    for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  } else {
    for (const auto& r : m.mod_p(field)) ech.insert(r);
  }
  return ech.rank();
}

/// Basis of the right nullspace {x : m x = 0}, as column vectors.
inline std::vector<SparseVector<Rational>> nullspace(const ExactMatrix& m) {
  Echelon<RationalField> ech(RationalField{}, m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) ech.insert(m.row(i));
  return ech.nullspace();
}

}  // namespace schurweyl
