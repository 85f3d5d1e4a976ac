#pragma once

// Commutants, unital algebra closures and span comparisons of sets of d x d
// matrices, over Q or a prime field.
//
// Both solvers first split the problem into independent pieces:
//  * Diagonal generators D split the basis into classes of equal joint
//    eigenvalue. A commutant element vanishes between different classes;
//    a generated algebra contains each class projector (a polynomial in the
//    diagonal generators), so it is the direct sum of its (class, class)
//    cells.
//  * The commutant equations X g - g X = 0 of the remaining generators are
//    grouped into connected components of the unknowns they share.
// Pieces are solved independently (optionally on worker threads) and merged
// in a fixed order, so every result is independent of the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <type_traits>
#include <vector>

#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/linalg.hpp"
#include "schurweyl/matrix.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl {

struct SolverCaps {
  std::size_t exact_unknowns = 65536;
  std::size_t modp_unknowns = 262144;
};

/// Linearly independent d x d matrices. Spans computed modulo a prime only
/// carry a dimension.
struct MatrixSpan {
  std::size_t ambient = 0;
  std::string field = "exact";
  std::size_t dim = 0;
  std::vector<ExactMatrix> basis;

  std::size_t dimension() const { return dim; }
  bool exact() const { return field == "exact"; }
};

namespace detail {

/// Runs job(i) for i in [0, count) on up to `threads` workers.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> guard(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

inline void check_square_family(const std::vector<ExactMatrix>& gens, std::size_t d) {
  for (const auto& g : gens)
    if (g.rows() != d || g.cols() != d)
      throw SizeMismatch("expected " + std::to_string(d) + "x" + std::to_string(d) + " matrices, got " + g.shape());
}

/// Class id of every basis index: indices with equal entries in every
/// diagonal generator share a class. Ids follow first appearance.
inline std::vector<int> diagonal_classes(const std::vector<const ExactMatrix*>& diagonal, std::size_t d) {
  std::map<std::vector<Rational>, int> ids;
  std::vector<int> cls(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> key;
    key.reserve(diagonal.size());
    for (const auto* g : diagonal) key.push_back(g->at(i, i));
    auto [it, fresh] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
    cls[i] = it->second;
  }
  return cls;
}

template <class Field>
std::vector<SparseVector<typename Field::value_type>> rows_in(const Field& f, const ExactMatrix& m) {
  std::vector<SparseVector<typename Field::value_type>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) {
      auto x = f.from(v);
      if (!Field::is_zero(x)) out[i].emplace_back(j, std::move(x));
    }
  return out;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Result of a commutant solve: the dimension, and on request a basis
/// given as flattened (i * d + j) sparse vectors.
template <class Field>
struct CommutantSolution {
  std::size_t dimension = 0;
  std::size_t unknowns = 0;
  std::size_t components = 0;
  std::size_t largest_component = 0;
  std::vector<SparseVector<typename Field::value_type>> basis;
};

/// Intertwiners {M : A_t M == M B_t for every pair t}, M of shape rows x cols.
template <class Field>
CommutantSolution<Field> solve_intertwiner(const Field& field,
                                           const std::vector<std::pair<const ExactMatrix*, const ExactMatrix*>>& pairs,
                                           std::size_t rows, std::size_t cols, bool want_basis = false,
                                           unsigned threads = 1, SolverCaps caps = {}) {
  using V = typename Field::value_type;
  for (const auto& [a, b] : pairs)
    if (a->rows() != rows || a->cols() != rows || b->rows() != cols || b->cols() != cols)
      throw SizeMismatch("intertwiner pair has shapes " + a->shape() + " and " + b->shape());
  const std::size_t cap = field.exact() ? caps.exact_unknowns : caps.modp_unknowns;
  if (rows * cols > cap)
    throw CapExceeded("linear system has " + std::to_string(rows * cols) + " unknowns, above the cap of " +
                      std::to_string(cap) + (field.exact() ? " (try modular mode)" : ""));

  std::vector<const ExactMatrix*> diag_out, diag_in;
  std::vector<std::pair<const ExactMatrix*, const ExactMatrix*>> general;
  for (const auto& pr : pairs) {
    if (pr.first->is_diagonal() && pr.second->is_diagonal()) {
      diag_out.push_back(pr.first);
      diag_in.push_back(pr.second);
    } else {
      general.push_back(pr);
    }
  }
  // Diagonal pairs kill M_ij unless the joint eigenvalues of i and j agree.
  std::map<std::vector<Rational>, int> keys;
  auto class_of = [&](const std::vector<const ExactMatrix*>& diag, std::size_t i) {
    std::vector<Rational> key;
    for (const auto* g : diag) key.push_back(g->at(i, i));
    return keys.emplace(std::move(key), static_cast<int>(keys.size())).first->second;
  };
  std::vector<int> cls_out(rows), cls_in(cols);
  for (std::size_t i = 0; i < rows; ++i) cls_out[i] = class_of(diag_out, i);
  for (std::size_t j = 0; j < cols; ++j) cls_in[j] = class_of(diag_in, j);

  std::vector<long> id(rows * cols, -1);
  std::vector<std::size_t> entry_of;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (cls_out[i] == cls_in[j]) {
        id[i * cols + j] = static_cast<long>(entry_of.size());
        entry_of.push_back(i * cols + j);
      }
  const std::size_t unknowns = entry_of.size();

  std::vector<std::vector<SparseVector<V>>> arow, bcol;
  for (const auto& [a, b] : general) {
    arow.push_back(detail::rows_in(field, *a));
    bcol.push_back(detail::rows_in(field, b->transpose()));
  }

  // Equation (i, k) of pair t: sum_j A_ij M_jk - sum_j M_ij B_jk.
  auto for_each_term = [&](std::size_t t, std::size_t i, std::size_t k, auto&& visit) {
    for (const auto& [j, v] : arow[t][i])
      if (id[j * cols + k] >= 0) visit(static_cast<std::size_t>(id[j * cols + k]), v, false);
    for (const auto& [j, v] : bcol[t][k])
      if (id[i * cols + j] >= 0) visit(static_cast<std::size_t>(id[i * cols + j]), v, true);
  };

  detail::UnionFind uf(unknowns);
  for (std::size_t t = 0; t < general.size(); ++t)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        long first = -1;
        for_each_term(t, i, k, [&](std::size_t u, const V&, bool) {
          if (first < 0)
            first = static_cast<long>(u);
          else
            uf.unite(static_cast<std::size_t>(first), u);
        });
      }

  // Components numbered by their smallest unknown; local columns ascend.
  std::vector<long> comp_of_root(unknowns, -1);
  std::vector<std::size_t> comp(unknowns), local(unknowns);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t u = 0; u < unknowns; ++u) {
    const std::size_t root = uf.find(u);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<long>(members.size());
      members.emplace_back();
    }
    comp[u] = static_cast<std::size_t>(comp_of_root[root]);
    local[u] = members[comp[u]].size();
    members[comp[u]].push_back(u);
  }

  struct Equation {
    std::uint32_t pair, i, k;
  };
  std::vector<std::vector<Equation>> equations(members.size());
  for (std::size_t t = 0; t < general.size(); ++t)
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k) {
        long c = -1;
        for_each_term(t, i, k, [&](std::size_t u, const V&, bool) {
          if (c < 0) c = static_cast<long>(comp[u]);
        });
        if (c >= 0)
          equations[c].push_back({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(i),
                                  static_cast<std::uint32_t>(k)});
      }

  struct Piece {
    std::size_t nullity = 0;
    std::vector<SparseVector<V>> basis;
  };
  std::vector<Piece> pieces(members.size());
  detail::parallel_for(members.size(), threads, [&](std::size_t c) {
    const std::size_t width = members[c].size();
    Echelon<Field> ech(field, width);
    SparseVector<V> row, merged;
    for (const auto& eq : equations[c]) {
      if (ech.rank() == width) break;
      row.clear();
      for_each_term(eq.pair, eq.i, eq.k, [&](std::size_t u, const V& v, bool negate) {
        row.emplace_back(local[u], negate ? field.neg(v) : v);
      });
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      merged.clear();
      for (auto& e : row) {
        if (!merged.empty() && merged.back().first == e.first)
          merged.back().second = field.add(merged.back().second, e.second);
        else
          merged.push_back(std::move(e));
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return Field::is_zero(e.second); }),
                   merged.end());
      if (!merged.empty()) ech.insert(merged);
    }
    pieces[c].nullity = width - ech.rank();
    if (want_basis)
      for (auto& v : ech.nullspace()) {
        SparseVector<V> global;
        for (auto& [k, x] : v) global.emplace_back(entry_of[members[c][k]], std::move(x));
        pieces[c].basis.push_back(std::move(global));
      }
  });

  CommutantSolution<Field> out;
  out.unknowns = unknowns;
  out.components = members.size();
  for (std::size_t c = 0; c < members.size(); ++c) {
    out.dimension += pieces[c].nullity;
    out.largest_component = std::max(out.largest_component, members[c].size());
    for (auto& v : pieces[c].basis) out.basis.push_back(std::move(v));
  }
  return out;
}

/// {X : X g == g X for every g in gens}.
template <class Field>
CommutantSolution<Field> solve_commutant(const Field& field, const std::vector<ExactMatrix>& gens, std::size_t d,
                                         bool want_basis = false, unsigned threads = 1, SolverCaps caps = {}) {
  detail::check_square_family(gens, d);
  std::vector<std::pair<const ExactMatrix*, const ExactMatrix*>> pairs;
  for (const auto& g : gens) pairs.emplace_back(&g, &g);
  return solve_intertwiner(field, pairs, d, d, want_basis, threads, caps);
}

namespace detail {

inline ExactMatrix unflatten(const SparseVector<Rational>& v, std::size_t d) {
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
  for (const auto& [k, x] : v) t.emplace_back(k / d, k % d, x);
  return ExactMatrix::from_triplets(d, d, std::move(t));
}

inline SparseVector<Rational> flatten(const ExactMatrix& m) {
  SparseVector<Rational> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) out.emplace_back(i * m.cols() + j, x);
  return out;
}

template <class Field>
SparseVector<typename Field::value_type> flatten_in(const Field& f, const ExactMatrix& m) {
  SparseVector<typename Field::value_type> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, x] : m.row(i)) {
      auto y = f.from(x);
      if (!Field::is_zero(y)) out.emplace_back(i * m.cols() + j, std::move(y));
    }
  return out;
}

inline std::size_t ambient_of(const std::vector<ExactMatrix>& gens, std::optional<std::size_t> d) {
  if (d) return *d;
  if (gens.empty()) throw InvalidArgument("ambient dimension needed for an empty generator list");
  return gens.front().rows();
}

}  // namespace detail

/// Exact commutant with an explicit basis. Pass `d` when gens is empty.
inline MatrixSpan commutant(const std::vector<ExactMatrix>& gens, std::optional<std::size_t> d = std::nullopt,
                            unsigned threads = 1, SolverCaps caps = {}) {
  const std::size_t dim = detail::ambient_of(gens, d);
  auto sol = solve_commutant(RationalField{}, gens, dim, true, threads, caps);
  MatrixSpan out{dim, "exact", sol.dimension, {}};
  for (const auto& v : sol.basis) out.basis.push_back(detail::unflatten(v, dim));
  return out;
}

template <class Field>
std::size_t commutant_dimension(const Field& field, const std::vector<ExactMatrix>& gens, std::size_t d,
                                unsigned threads = 1, SolverCaps caps = {}) {
  return solve_commutant(field, gens, d, false, threads, caps).dimension;
}

/// Result of an algebra closure: dimension plus, on request, a basis.
template <class Field>
struct ClosureSolution {
  std::size_t dimension = 0;
  std::size_t classes = 0;
  std::vector<ExactMatrix> basis;  // exact field only
};

/// Unital algebra generated by `seed`, by breadth-first left multiplication
/// inside each (class, class) cell.
template <class Field>
ClosureSolution<Field> solve_closure(const Field& field, const std::vector<ExactMatrix>& seed, std::size_t d,
                                     bool want_basis = false, unsigned threads = 1, SolverCaps caps = {}) {
  using V = typename Field::value_type;
  detail::check_square_family(seed, d);
  const std::size_t cap = field.exact() ? caps.exact_unknowns : caps.modp_unknowns;
  if (d * d > cap)
    throw CapExceeded("algebra closure in dimension " + std::to_string(d) + " exceeds the cap of " +
                      std::to_string(cap) + " entries");

  std::vector<const ExactMatrix*> diagonal;
  std::vector<const ExactMatrix*> general;
  for (const auto& g : seed) (g.is_diagonal() ? diagonal : general).push_back(&g);
  const auto cls = detail::diagonal_classes(diagonal, d);
  const std::size_t nclass = cls.empty() ? 0 : static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end())) + 1;
  std::vector<std::vector<std::size_t>> members(nclass);
  std::vector<std::size_t> pos(d);
  for (std::size_t i = 0; i < d; ++i) {
    pos[i] = members[cls[i]].size();
    members[cls[i]].push_back(i);
  }

  // Cell pieces of the non-diagonal generators, indexed by source class.
  struct Block {
    std::size_t target;
    std::vector<V> data;  // rows(target) x rows(source), row-major
  };
  std::vector<std::vector<Block>> from(nclass);
  for (const auto* g : general) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<V>> pieces;
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& [j, x] : g->row(i)) {
        const std::size_t a = cls[i], b = cls[j];
        auto& blk = pieces[{b, a}];
        if (blk.empty()) blk.assign(members[a].size() * members[b].size(), Field::zero());
        blk[pos[i] * members[b].size() + pos[j]] = field.from(x);
      }
    for (auto& [key, data] : pieces) {
      if (std::all_of(data.begin(), data.end(), [](const V& v) { return Field::is_zero(v); })) continue;
      from[key.first].push_back(Block{key.second, std::move(data)});
    }
  }

  struct Result {
    std::size_t dimension = 0;
    std::vector<ExactMatrix> basis;
  };
  std::vector<Result> results(nclass);
  detail::parallel_for(nclass, threads, [&](std::size_t b) {
    const std::size_t nb = members[b].size();
    std::vector<std::optional<Echelon<Field>>> cells(nclass);
    struct Item {
      std::size_t cell;
      std::vector<V> data;  // rows(cell) x nb
    };
    std::vector<Item> queue;
    auto try_insert = [&](std::size_t a, std::vector<V> data) {
      const std::size_t cols = members[a].size() * nb;
      if (!cells[a]) cells[a].emplace(field, cols);
      if (cells[a]->rank() == cols) return;
      SparseVector<V> v;
      for (std::size_t k = 0; k < data.size(); ++k)
        if (!Field::is_zero(data[k])) v.emplace_back(k, data[k]);
      if (v.empty() || !cells[a]->insert(v)) return;
      queue.push_back(Item{a, std::move(data)});
    };
    std::vector<V> unit(nb * nb, Field::zero());
    for (std::size_t k = 0; k < nb; ++k) unit[k * nb + k] = Field::one();
    try_insert(b, std::move(unit));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t a = queue[head].cell;
      const std::size_t na = members[a].size();
      for (const auto& blk : from[a]) {
        const std::size_t nt = members[blk.target].size();
        if (cells[blk.target] && cells[blk.target]->rank() == nt * nb) continue;
        std::vector<V> prod(nt * nb, Field::zero());
        const auto& x = queue[head].data;
        for (std::size_t i = 0; i < nt; ++i)
          for (std::size_t k = 0; k < na; ++k) {
            const V& g = blk.data[i * na + k];
            if (Field::is_zero(g)) continue;
            for (std::size_t j = 0; j < nb; ++j)
              if (!Field::is_zero(x[k * nb + j])) field.add_mul(prod[i * nb + j], g, x[k * nb + j]);
          }
        try_insert(blk.target, std::move(prod));
      }
    }
    results[b].dimension = queue.size();
    if constexpr (std::is_same_v<Field, RationalField>) {
      if (want_basis)
        for (const auto& item : queue) {
          std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
          for (std::size_t i = 0; i < members[item.cell].size(); ++i)
            for (std::size_t j = 0; j < nb; ++j)
              if (item.data[i * nb + j] != 0)
                t.emplace_back(members[item.cell][i], members[b][j], item.data[i * nb + j]);
          results[b].basis.push_back(ExactMatrix::from_triplets(d, d, std::move(t)));
        }
    }
  });

  ClosureSolution<Field> out;
  out.classes = nclass;
  for (auto& r : results) {
    out.dimension += r.dimension;
    for (auto& m : r.basis) out.basis.push_back(std::move(m));
  }
  return out;
}

/// Exact unital algebra closure with an explicit basis.
inline MatrixSpan algebra_closure(const std::vector<ExactMatrix>& seed, std::optional<std::size_t> d = std::nullopt,
                                  unsigned threads = 1, SolverCaps caps = {}) {
  const std::size_t dim = detail::ambient_of(seed, d);
  auto sol = solve_closure(RationalField{}, seed, dim, true, threads, caps);
  return MatrixSpan{dim, "exact", sol.dimension, std::move(sol.basis)};
}

template <class Field>
std::size_t closure_dimension(const Field& field, const std::vector<ExactMatrix>& seed, std::size_t d,
                              unsigned threads = 1, SolverCaps caps = {}) {
  return solve_closure(field, seed, d, false, threads, caps).dimension;
}

/// Dimension of the linear span of `mats`.
template <class Field>
std::size_t span_dimension(const Field& field, const std::vector<ExactMatrix>& mats, std::size_t d) {
  detail::check_square_family(mats, d);
  Echelon<Field> ech(field, d * d);
  for (const auto& m : mats) ech.insert(detail::flatten_in(field, m));
  return ech.rank();
}

/// Exact span with a basis chosen greedily in input order.
inline MatrixSpan span_of(const std::vector<ExactMatrix>& mats, std::optional<std::size_t> d = std::nullopt) {
  const std::size_t dim = detail::ambient_of(mats, d);
  detail::check_square_family(mats, dim);
  Echelon<RationalField> ech(RationalField{}, dim * dim);
  MatrixSpan out{dim, "exact", 0, {}};
  for (const auto& m : mats)
    if (ech.insert(detail::flatten(m))) out.basis.push_back(m);
  out.dim = out.basis.size();
  return out;
}

/// True iff every basis element of `b` lies in the span of `a`.
inline bool span_contains(const MatrixSpan& a, const MatrixSpan& b) {
  if (a.ambient != b.ambient) throw SizeMismatch("spans live in different matrix spaces");
  if (!a.exact() || !b.exact()) throw RingMismatch("span comparison needs exact bases");
  Echelon<RationalField> ech(RationalField{}, a.ambient * a.ambient);
  for (const auto& m : a.basis) ech.insert(detail::flatten(m));
  for (const auto& m : b.basis)
    if (!ech.contains(detail::flatten(m))) return false;
  return true;
}

inline bool span_equal(const MatrixSpan& a, const MatrixSpan& b) {
  if (a.field != b.field) throw RingMismatch("spans computed over different fields");
  return span_contains(a, b) && span_contains(b, a);
}

/// True iff the product of any two basis elements stays in the span.
inline bool is_multiplicatively_closed(const MatrixSpan& s) {
  Echelon<RationalField> ech(RationalField{}, s.ambient * s.ambient);
  for (const auto& m : s.basis) ech.insert(detail::flatten(m));
  for (const auto& x : s.basis)
    for (const auto& y : s.basis)
      if (!ech.contains(detail::flatten(x * y))) return false;
  return true;
}

/// True iff every matrix of `a` commutes with every matrix of `b`.
inline bool mutually_commute(const std::vector<ExactMatrix>& a, const std::vector<ExactMatrix>& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (!x.commutes_with(y)) return false;
  return true;
}

/// Joint kernel {v : A v = 0 for all A}; the dimension over `field`.
template <class Field>
std::size_t joint_kernel_dimension(const Field& field, const std::vector<ExactMatrix>& ops, std::size_t cols,
                                   SolverCaps caps = {}) {
  const std::size_t cap = field.exact() ? caps.exact_unknowns : caps.modp_unknowns;
  if (cols > cap) throw CapExceeded("joint kernel has " + std::to_string(cols) + " unknowns, above the cap");
  Echelon<Field> ech(field, cols);
  for (const auto& a : ops) {
    if (a.cols() != cols) throw SizeMismatch("operator has the wrong number of columns");
    for (const auto& row : detail::rows_in(field, a)) {
      if (ech.rank() == cols) break;
      if (!row.empty()) ech.insert(row);
    }
  }
  return cols - ech.rank();
}

/// Exact basis of the joint kernel.
inline std::vector<SparseVector<Rational>> joint_kernel(const std::vector<ExactMatrix>& ops, std::size_t cols) {
  Echelon<RationalField> ech(RationalField{}, cols);
  for (const auto& a : ops) {
    if (a.cols() != cols) throw SizeMismatch("operator has the wrong number of columns");
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!a.row(i).empty()) ech.insert(a.row(i));
  }
  return ech.nullspace();
}

}  // namespace schurweyl
