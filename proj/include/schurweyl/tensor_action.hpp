#pragma once

// Exact matrices for the diagram-algebra action sigma and the Lie-algebra
// derivation action on tensor space V^{(x)r}, mixed tensor space
// V^{(x)r} (x) V*^{(x)s}, and the adjoint power sl_n^{(x)r}.
//
// Conventions:
//  * Basis of a tensor product: row-major multi-index, leftmost factor most
//    significant.
//  * A diagram's top row indexes output positions and its bottom row input
//    positions, so sigma(D1 . D2) == sigma(D1) sigma(D2).
//  * sigma_perm(w) moves the factor at position k to position w(k); hence
//    sigma_perm(v o w) == sigma_perm(v) sigma_perm(w) and
//    sigma_perm(w) == sigma of permutation_to_diagram(w^{-1}).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "schurweyl/algebra.hpp"
#include "schurweyl/diagram.hpp"
#include "schurweyl/errors.hpp"
#include "schurweyl/grading.hpp"
#include "schurweyl/linalg.hpp"
#include "schurweyl/matrix.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl {

inline constexpr std::size_t kDefaultSpaceCap = 65536;

enum class SpaceKind { tensor, mixed, adjoint_power };

class SpaceSpec {
 public:
  static SpaceSpec tensor(int n, int r, std::size_t cap = kDefaultSpaceCap) {
    if (r < 1) throw InvalidArgument("tensor space needs r >= 1");
    return SpaceSpec(SpaceKind::tensor, n, r, 0, cap);
  }
  static SpaceSpec mixed(int n, int r, int s, std::size_t cap = kDefaultSpaceCap) {
    if (r < 0 || s < 0 || r + s < 1) throw InvalidArgument("mixed space needs r, s >= 0 and r + s >= 1");
    return SpaceSpec(SpaceKind::mixed, n, r, s, cap);
  }
  static SpaceSpec adjoint_power(int n, int r, std::size_t cap = kDefaultSpaceCap) {
    if (r < 1) throw InvalidArgument("adjoint power needs r >= 1");
    return SpaceSpec(SpaceKind::adjoint_power, n, r, 0, cap);
  }

  SpaceKind kind() const { return kind_; }
  int n() const { return n_; }
  int r() const { return r_; }
  int s() const { return s_; }
  int positions() const { return r_ + s_; }
  std::size_t factor_dimension() const {
    return kind_ == SpaceKind::adjoint_power ? static_cast<std::size_t>(n_ * n_ - 1) : static_cast<std::size_t>(n_);
  }
  std::size_t dimension() const { return dimension_; }

  /// Multi-index of basis vector `index`, leftmost position first.
  std::vector<std::size_t> decode(std::size_t index) const {
    std::vector<std::size_t> digits(positions());
    const std::size_t base = factor_dimension();
    for (int k = positions(); k-- > 0;) {
      digits[k] = index % base;
      index /= base;
    }
    return digits;
  }
  std::size_t encode(const std::vector<std::size_t>& digits) const {
    std::size_t index = 0;
    for (auto d : digits) index = index * factor_dimension() + d;
    return index;
  }

  std::string describe() const {
    switch (kind_) {
      case SpaceKind::tensor:
        return "tensor(" + std::to_string(n_) + "," + std::to_string(r_) + ")";
      case SpaceKind::mixed:
        return "mixed(" + std::to_string(n_) + "," + std::to_string(r_) + "," + std::to_string(s_) + ")";
      case SpaceKind::adjoint_power:
        return "adjointPower(" + std::to_string(n_) + "," + std::to_string(r_) + ")";
    }
    return "?";
  }

 private:
  SpaceSpec(SpaceKind kind, int n, int r, int s, std::size_t cap) : kind_(kind), n_(n), r_(r), s_(s) {
    if (n < 2) throw InvalidArgument("space needs n >= 2");
    const std::size_t base = factor_dimension();
    std::size_t dim = 1;
    for (int k = 0; k < positions(); ++k) {
      if (dim > cap / base) throw CapExceeded(describe() + " exceeds the dimension cap of " + std::to_string(cap));
      dim *= base;
    }
    dimension_ = dim;
  }

  SpaceKind kind_;
  int n_, r_, s_;
  std::size_t dimension_ = 0;
};

enum class FormFlavor { symmetric, symplectic };

/// Identity Gram matrix (orthogonal) or [[0, I], [-I, 0]] (symplectic).
class BilinearFormSpec {
 public:
  static BilinearFormSpec symmetric(int n) { return BilinearFormSpec(FormFlavor::symmetric, n); }
  static BilinearFormSpec symplectic(int n) {
    if (n % 2 != 0) throw InvalidArgument("symplectic form needs even n");
    return BilinearFormSpec(FormFlavor::symplectic, n);
  }

  FormFlavor flavor() const { return flavor_; }
  int n() const { return n_; }
  int epsilon() const { return flavor_ == FormFlavor::symmetric ? 1 : -1; }
  const ExactMatrix& gram() const { return gram_; }
  const ExactMatrix& gram_inverse() const { return gram_inv_; }

 private:
  BilinearFormSpec(FormFlavor flavor, int n) : flavor_(flavor), n_(n) {
    if (n < 1) throw InvalidArgument("form needs n >= 1");
    if (flavor == FormFlavor::symmetric) {
      gram_ = gram_inv_ = ExactMatrix::identity(n);
    } else {
      const int h = n / 2;
      std::vector<std::tuple<std::size_t, std::size_t, Rational>> g, gi;
      for (int a = 0; a < h; ++a) {
        g.emplace_back(a, h + a, 1);
        g.emplace_back(h + a, a, -1);
        gi.emplace_back(a, h + a, -1);
        gi.emplace_back(h + a, a, 1);
      }
      gram_ = ExactMatrix::from_triplets(n, n, g);
      gram_inv_ = ExactMatrix::from_triplets(n, n, gi);
    }
  }

  FormFlavor flavor_;
  int n_;
  ExactMatrix gram_, gram_inv_;
};

namespace detail {

inline int inversion_parity(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2;
}

}  // namespace detail

/// Matrix of a single diagram on V^{(x)m}, V = Q^n.
///
/// Bottom horizontal edges evaluate the form, top horizontal edges insert
/// theta = sum (gram^{-1})_{ab} e_a (x) e_b, vertical edges carry a tensor
/// factor through. In the symplectic flavor the vectors behave as odd
/// elements: the result is multiplied by the sign of the reordering that
/// gathers the bottom pairs (then the through-strands) and of the one that
/// scatters the top pairs (then the through-strands). With this sign the
/// action of B_m at x = -n is multiplicative.
inline ExactMatrix sigma_diagram(const BrauerDiagram& d, const BilinearFormSpec& form,
                                 std::size_t cap = kDefaultSpaceCap) {
  const int m = d.columns();
  const auto space = SpaceSpec::tensor(form.n(), m, cap);
  const std::size_t n = static_cast<std::size_t>(form.n());

  std::vector<std::pair<int, int>> bottom_pairs, top_pairs, through;  // through: (bottom col, top col)
  for (auto [u, v] : d.edges()) {
    if (d.is_top(u) && d.is_top(v))
      top_pairs.emplace_back(u, v);
    else if (!d.is_top(u) && !d.is_top(v))
      bottom_pairs.emplace_back(u - m, v - m);
    else
      through.emplace_back(v - m, u);  // u top, v bottom since u < v
  }
  std::sort(through.begin(), through.end());

  int sign = 1;
  if (form.flavor() == FormFlavor::symplectic) {
    std::vector<int> seq_b, seq_t;
    for (auto [a, b] : bottom_pairs) seq_b.insert(seq_b.end(), {a, b});
    for (auto [a, b] : top_pairs) seq_t.insert(seq_t.end(), {a, b});
    for (auto [b, t] : through) {
      seq_b.push_back(b);
      seq_t.push_back(t);
    }
    if ((detail::inversion_parity(seq_b) + detail::inversion_parity(seq_t)) % 2) sign = -1;
  }

  std::vector<std::tuple<std::size_t, std::size_t, Rational>> theta;
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& [y, v] : form.gram_inverse().row(x)) theta.emplace_back(x, y, v);

  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  std::vector<std::size_t> out(m);
  for (std::size_t in = 0; in < space.dimension(); ++in) {
    const auto idx = space.decode(in);
    Rational factor = sign;
    for (auto [a, b] : bottom_pairs) {
      factor *= form.gram().at(idx[a], idx[b]);
      if (factor == 0) break;
    }
    if (factor == 0) continue;
    for (auto [b, t] : through) out[t] = idx[b];
    std::function<void(std::size_t, const Rational&)> place = [&](std::size_t k, const Rational& f) {
      if (k == top_pairs.size()) {
        entries.emplace_back(space.encode(out), in, f);
        return;
      }
      for (const auto& [x, y, v] : theta) {
        out[top_pairs[k].first] = x;
        out[top_pairs[k].second] = y;
        place(k + 1, f * v);
      }
    };
    place(0, factor);
  }
  return ExactMatrix::from_triplets(space.dimension(), space.dimension(), std::move(entries));
}

/// Place permutation: the factor at position k moves to position w(k).
inline ExactMatrix sigma_perm(const Permutation& w, const SpaceSpec& space) {
  if (space.kind() != SpaceKind::tensor) throw InvalidArgument("sigma_perm acts on tensor space");
  if (static_cast<int>(w.size()) != space.r() || !is_permutation_vector(w))
    throw InvalidArgument("sigma_perm needs a permutation of the r positions");
  ExactMatrix m(space.dimension(), space.dimension());
  std::vector<std::size_t> out(w.size());
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  for (std::size_t in = 0; in < space.dimension(); ++in) {
    const auto idx = space.decode(in);
    for (std::size_t k = 0; k < w.size(); ++k) out[w[k]] = idx[k];
    entries.emplace_back(space.encode(out), in, 1);
  }
  return ExactMatrix::from_triplets(space.dimension(), space.dimension(), std::move(entries));
}

/// Weyl contraction on positions i, j (1-based):
/// u (x) v  ->  form(u, v) * theta, identity on the other positions.
inline ExactMatrix sigma_contraction(int i, int j, const SpaceSpec& space, const BilinearFormSpec& form) {
  if (space.kind() != SpaceKind::tensor) throw InvalidArgument("contraction acts on tensor space");
  if (form.n() != space.n()) throw SizeMismatch("form and space disagree on n");
  if (i < 1 || j < 1 || i > space.r() || j > space.r() || i == j)
    throw InvalidArgument("contraction needs 1 <= i != j <= r");
  const std::size_t a = i - 1, b = j - 1;
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  for (std::size_t in = 0; in < space.dimension(); ++in) {
    auto idx = space.decode(in);
    const Rational w = form.gram().at(idx[a], idx[b]);
    if (w == 0) continue;
    for (std::size_t x = 0; x < static_cast<std::size_t>(space.n()); ++x)
      for (const auto& [y, t] : form.gram_inverse().row(x)) {
        idx[a] = x;
        idx[b] = y;
        entries.emplace_back(space.encode(idx), in, w * t);
      }
  }
  return ExactMatrix::from_triplets(space.dimension(), space.dimension(), std::move(entries));
}

namespace detail {
inline void require_parameter(const AlgebraElement& a, const Rational& expected) {
  if (a.ring().is_generic() || a.ring().x0() != expected)
    throw RingMismatch("element is specialized at " + a.ring().describe() + " but the action needs x=" +
                       to_string(expected));
}
}  // namespace detail

/// Representation of B_r at x = epsilon * n on V^{(x)r}.
inline ExactMatrix sigma_element(const AlgebraElement& a, const SpaceSpec& space, const BilinearFormSpec& form) {
  if (space.kind() != SpaceKind::tensor) throw InvalidArgument("sigma_element acts on tensor space");
  if (a.columns() != space.r()) throw SizeMismatch("element and space disagree on r");
  if (form.n() != space.n()) throw SizeMismatch("form and space disagree on n");
  detail::require_parameter(a, Rational(form.epsilon() * form.n()));
  ExactMatrix out(space.dimension(), space.dimension());
  for (const auto& [d, c] : a.terms()) out.axpy(c.constant(), sigma_diagram(d, form));
  return out;
}

/// Walled Brauer algebra B_{r,s} at x = n acting on V^{(x)r} (x) V*^{(x)s}.
inline ExactMatrix sigma_mixed(const AlgebraElement& a, const SpaceSpec& space) {
  if (space.kind() != SpaceKind::mixed) throw InvalidArgument("sigma_mixed acts on mixed tensor space");
  if (a.columns() != space.positions()) throw SizeMismatch("element and space disagree on r + s");
  detail::require_parameter(a, Rational(space.n()));
  const WallContext wall(space.r(), space.s());
  const auto form = BilinearFormSpec::symmetric(space.n());
  ExactMatrix out(space.dimension(), space.dimension());
  for (const auto& [d, c] : a.terms()) {
    if (!is_walled(d, wall)) throw InvalidArgument("sigma_mixed needs walled support");
    out.axpy(c.constant(), sigma_diagram(d, form));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lie algebras

enum class LieFamily { gl, sl, sp, so };

inline ExactMatrix matrix_unit(int n, int a, int b) {
  return ExactMatrix::from_triplets(n, n, {{static_cast<std::size_t>(a), static_cast<std::size_t>(b), Rational(1)}});
}

/// gl: E_ab row-major. sl: E_ab (a != b) row-major, then E_aa - E_{a+1,a+1}.
/// sp, so: basis of {X : X^T G + G X = 0} read off an exact nullspace.
inline std::vector<ExactMatrix> lie_basis(LieFamily family, int n) {
  if (n < 1) throw InvalidArgument("lie_basis needs n >= 1");
  std::vector<ExactMatrix> out;
  switch (family) {
    case LieFamily::gl:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.push_back(matrix_unit(n, a, b));
      return out;
    case LieFamily::sl:
      if (n < 2) throw InvalidArgument("sl_n needs n >= 2");
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b) out.push_back(matrix_unit(n, a, b));
      for (int a = 0; a + 1 < n; ++a) out.push_back(matrix_unit(n, a, a) - matrix_unit(n, a + 1, a + 1));
      return out;
    case LieFamily::sp:
    case LieFamily::so: {
      const auto form = family == LieFamily::sp ? BilinearFormSpec::symplectic(n) : BilinearFormSpec::symmetric(n);
      const auto& g = form.gram();
      // Unknown X_{kl} sits at column k*n + l; one equation per entry (i, j).
      ExactMatrix system(static_cast<std::size_t>(n * n), static_cast<std::size_t>(n * n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
          for (int k = 0; k < n; ++k) {
            const Rational gkj = g.at(k, j);
            if (gkj != 0) t.emplace_back(0, k * n + i, gkj);  // (X^T G)_{ij} = sum_k X_{ki} G_{kj}
            const Rational gik = g.at(i, k);
            if (gik != 0) t.emplace_back(0, k * n + j, gik);  // (G X)_{ij} = sum_k G_{ik} X_{kj}
          }
          system.set_row(i * n + j, ExactMatrix::from_triplets(1, n * n, t).row(0));
        }
      for (const auto& v : nullspace(system)) {
        std::vector<std::tuple<std::size_t, std::size_t, Rational>> t;
        for (const auto& [k, x] : v) t.emplace_back(k / n, k % n, x);
        out.push_back(ExactMatrix::from_triplets(n, n, t));
      }
      return out;
    }
  }
  return out;
}

/// E_{a,a+1} and E_{a+1,a}: Lie generators of sl_n.
inline std::vector<ExactMatrix> chevalley_generators(int n) {
  std::vector<ExactMatrix> out;
  for (int a = 0; a + 1 < n; ++a) {
    out.push_back(matrix_unit(n, a, a + 1));
    out.push_back(matrix_unit(n, a + 1, a));
  }
  return out;
}

/// Chevalley generators followed by the Cartan elements E_aa - E_{a+1,a+1}.
inline std::vector<ExactMatrix> sl_generators(int n) {
  auto out = chevalley_generators(n);
  for (int a = 0; a + 1 < n; ++a) out.push_back(matrix_unit(n, a, a) - matrix_unit(n, a + 1, a + 1));
  return out;
}

/// Diagonal units E_aa.
inline std::vector<ExactMatrix> diagonal_units(int n) {
  std::vector<ExactMatrix> out;
  for (int a = 0; a < n; ++a) out.push_back(matrix_unit(n, a, a));
  return out;
}

namespace detail {

/// The sl_n basis element with index k, as an n x n matrix.
inline ExactMatrix sl_basis_matrix(int n, std::size_t k) {
  static thread_local std::vector<std::vector<ExactMatrix>> cache(64);
  auto& basis = cache.at(n);
  if (basis.empty()) basis = lie_basis(LieFamily::sl, n);
  return basis.at(k);
}

/// Coordinates of a traceless matrix in the sl_n basis.
inline SparseVector<Rational> sl_coordinates(const ExactMatrix& z) {
  const int n = static_cast<int>(z.rows());
  SparseVector<Rational> out;
  std::size_t k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const Rational v = z.at(a, b);
      if (v != 0) out.emplace_back(k, v);
      ++k;
    }
  Rational running = 0;
  for (int a = 0; a + 1 < n; ++a) {
    running += z.at(a, a);
    if (running != 0) out.emplace_back(k, running);
    ++k;
  }
  return out;
}

/// Columns `columns` of sum over positions of I (x) ... (x) op_k (x) ... (x) I.
inline ExactMatrix leibniz_columns(const std::vector<ExactMatrix>& ops, const SpaceSpec& space,
                                   const std::vector<std::size_t>& columns) {
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  std::vector<ExactMatrix> cols;
  cols.reserve(ops.size());
  for (const auto& op : ops) cols.push_back(op.transpose());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto idx = space.decode(columns[c]);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::size_t keep = idx[k];
      for (const auto& [to, v] : cols[k].row(keep)) {
        idx[k] = to;
        entries.emplace_back(space.encode(idx), c, v);
      }
      idx[k] = keep;
    }
  }
  return ExactMatrix::from_triplets(space.dimension(), columns.size(), std::move(entries));
}

inline ExactMatrix leibniz(const std::vector<ExactMatrix>& ops, const SpaceSpec& space) {
  std::vector<std::size_t> all(space.dimension());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return leibniz_columns(ops, space, all);
}

}  // namespace detail

/// ad(X) restricted to sl_n, in the sl basis (X may be any n x n matrix).
inline ExactMatrix adjoint_matrix(const ExactMatrix& x) {
  const int n = static_cast<int>(x.rows());
  const std::size_t dim = static_cast<std::size_t>(n * n - 1);
  ExactMatrix out(dim, dim);
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  for (std::size_t k = 0; k < dim; ++k) {
    const ExactMatrix y = detail::sl_basis_matrix(n, k);
    for (const auto& [i, v] : detail::sl_coordinates(commutator(x, y))) entries.emplace_back(i, k, v);
  }
  return ExactMatrix::from_triplets(dim, dim, std::move(entries));
}

namespace detail {
inline std::vector<ExactMatrix> position_operators(const ExactMatrix& x, const SpaceSpec& space) {
  if (!x.is_square() || static_cast<int>(x.rows()) != space.n())
    throw SizeMismatch("Lie algebra element must be " + std::to_string(space.n()) + "x" + std::to_string(space.n()));
  std::vector<ExactMatrix> ops;
  switch (space.kind()) {
    case SpaceKind::tensor:
      ops.assign(space.r(), x);
      break;
    case SpaceKind::mixed: {
      ops.assign(space.r(), x);
      const ExactMatrix dual = Rational(-1) * x.transpose();
      for (int k = 0; k < space.s(); ++k) ops.push_back(dual);
      break;
    }
    case SpaceKind::adjoint_power:
      ops.assign(space.r(), adjoint_matrix(x));
      break;
  }
  return ops;
}
}  // namespace detail

/// d rho(X): Leibniz rule over positions; V* positions carry -X^T,
/// adjoint positions carry ad(X).
inline ExactMatrix derivation_action(const ExactMatrix& x, const SpaceSpec& space) {
  return detail::leibniz(detail::position_operators(x, space), space);
}

/// The columns `columns` of derivation_action(x, space).
inline ExactMatrix derivation_action_columns(const ExactMatrix& x, const SpaceSpec& space,
                                             const std::vector<std::size_t>& columns) {
  return detail::leibniz_columns(detail::position_operators(x, space), space, columns);
}

/// Exact inverse of a square matrix.
inline ExactMatrix inverse(const ExactMatrix& g) {
  if (!g.is_square()) throw SizeMismatch("inverse of a non-square matrix");
  const std::size_t d = g.rows();
  ExactMatrix aug(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    auto row = g.row(i);
    row.emplace_back(d + i, Rational(1));
    aug.set_row(i, std::move(row));
  }
  const auto res = rref(aug);
  if (res.rank < d || res.pivots[d - 1] >= d) throw InvalidArgument("matrix is singular");
  ExactMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    ExactMatrix::Row row;
    for (const auto& [j, v] : res.reduced.row(i))
      if (j >= d) row.emplace_back(j - d, v);
    out.set_row(i, std::move(row));
  }
  return out;
}

/// rho(g) for a group element g: g on V positions, g^{-T} on V* positions.
inline ExactMatrix group_action(const ExactMatrix& g, const SpaceSpec& space) {
  if (space.kind() == SpaceKind::adjoint_power) throw InvalidArgument("group_action is defined on V and V* tensors");
  if (!g.is_square() || static_cast<int>(g.rows()) != space.n()) throw SizeMismatch("group element has the wrong size");
  ExactMatrix out = ExactMatrix::identity(1);
  for (int k = 0; k < space.r(); ++k) out = kron(out, g);
  if (space.s() > 0) {
    const ExactMatrix dual = inverse(g).transpose();
    for (int k = 0; k < space.s(); ++k) out = kron(out, dual);
  }
  return out;
}

/// Reflection diag(-1, 1, ..., 1), which together with SO_n generates O_n.
inline ExactMatrix reflection(int n) {
  ExactMatrix r = ExactMatrix::identity(n);
  return r - Rational(2) * matrix_unit(n, 0, 0);
}

// ---------------------------------------------------------------------------
// Adjoint summand of mixed tensor space

/// J: sl_n^{(x)r} -> V^{r,r}, sending x_1 (x) ... (x) x_r (each viewed in
/// gl_n = V (x) V*) to the tensor with V-indices first, then V*-indices.
inline ExactMatrix adjoint_embedding(int n, int r) {
  const auto adj = SpaceSpec::adjoint_power(n, r);
  const auto mix = SpaceSpec::mixed(n, r, r);
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, Rational>>> factor(n * n - 1);
  for (std::size_t k = 0; k < factor.size(); ++k) {
    const auto y = detail::sl_basis_matrix(n, k);
    for (std::size_t a = 0; a < static_cast<std::size_t>(n); ++a)
      for (const auto& [b, v] : y.row(a)) factor[k].emplace_back(a, b, v);
  }
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  std::vector<std::size_t> idx(2 * r);
  for (std::size_t col = 0; col < adj.dimension(); ++col) {
    const auto xs = adj.decode(col);
    std::function<void(int, const Rational&)> expand = [&](int k, const Rational& f) {
      if (k == r) {
        entries.emplace_back(mix.encode(idx), col, f);
        return;
      }
      for (const auto& [a, b, v] : factor[xs[k]]) {
        idx[k] = a;
        idx[r + k] = b;
        expand(k + 1, f * v);
      }
    };
    expand(0, 1);
  }
  return ExactMatrix::from_triplets(mix.dimension(), adj.dimension(), std::move(entries));
}

/// A left inverse of adjoint_embedding: reads off E_ab coordinates for
/// a != b and cumulative diagonal sums for the Cartan part.
inline ExactMatrix adjoint_left_inverse(int n, int r) {
  const auto adj = SpaceSpec::adjoint_power(n, r);
  const auto mix = SpaceSpec::mixed(n, r, r);
  // Single factor: (n^2 - 1) x n^2 over gl_n coordinates a*n + b.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> from_gl(n * n);
  std::size_t k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) from_gl[a * n + b].emplace_back(k++, Rational(1));
  for (int a = 0; a + 1 < n; ++a, ++k)
    for (int b = 0; b <= a; ++b) from_gl[b * n + b].emplace_back(k, Rational(1));
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  std::vector<std::size_t> out(r);
  for (std::size_t col = 0; col < mix.dimension(); ++col) {
    const auto idx = mix.decode(col);
    std::function<void(int, const Rational&)> expand = [&](int p, const Rational& f) {
      if (p == r) {
        entries.emplace_back(adj.encode(out), col, f);
        return;
      }
      for (const auto& [t, v] : from_gl[idx[p] * n + idx[r + p]]) {
        out[p] = t;
        expand(p + 1, f * v);
      }
    };
    expand(0, 1);
  }
  return ExactMatrix::from_triplets(adj.dimension(), mix.dimension(), std::move(entries));
}

/// sigma_mixed(e) on V^{r,r}: projector onto the copy of sl_n^{(x)r}.
inline ExactMatrix adjoint_projection(int n, int r) {
  return sigma_mixed(idempotent_e(r, n), SpaceSpec::mixed(n, r, r));
}

/// Action of an element of e B_{r,r} e on sl_n^{(x)r}: L sigma(a) J.
inline ExactMatrix sigma_adjoint(const AlgebraElement& a, int n, int r) {
  const ExactMatrix s = sigma_mixed(a, SpaceSpec::mixed(n, r, r));
  return adjoint_left_inverse(n, r) * s * adjoint_embedding(n, r);
}

inline ExactMatrix sigma_adjoint(const DerangedElement& a) { return sigma_adjoint(a.value, a.n, a.r); }

// ---------------------------------------------------------------------------
// Weight gradings

/// gl_n weights of the standard basis (the eigenvalues of d rho(E_aa)).
inline Grading weight_grading(const SpaceSpec& space) {
  const int n = space.n();
  std::vector<Grading::Key> factor_keys;
  if (space.kind() == SpaceKind::adjoint_power) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        Grading::Key k(n, 0);
        k[a] += 1;
        k[b] -= 1;
        factor_keys.push_back(k);
      }
    for (int a = 0; a + 1 < n; ++a) factor_keys.emplace_back(n, 0);
  } else {
    for (int a = 0; a < n; ++a) {
      Grading::Key k(n, 0);
      k[a] = 1;
      factor_keys.push_back(k);
    }
  }
  Grading g;
  g.keys.reserve(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const auto idx = space.decode(i);
    Grading::Key key(n, 0);
    for (int p = 0; p < space.positions(); ++p) {
      const long sign = (space.kind() == SpaceKind::mixed && p >= space.r()) ? -1 : 1;
      for (int c = 0; c < n; ++c) key[c] += sign * factor_keys[idx[p]][c];
    }
    g.keys.push_back(std::move(key));
  }
  return g;
}

/// Weights for the torus diag(t, -t) of Sp_n with the block form.
inline Grading symplectic_torus_grading(const SpaceSpec& space) {
  if (space.kind() != SpaceKind::tensor || space.n() % 2 != 0)
    throw InvalidArgument("symplectic torus grading needs tensor space with even n");
  const int h = space.n() / 2;
  Grading g;
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    Grading::Key key(h, 0);
    for (auto a : space.decode(i)) {
      if (static_cast<int>(a) < h)
        key[a] += 1;
      else
        key[a - h] -= 1;
    }
    g.keys.push_back(std::move(key));
  }
  return g;
}

}  // namespace schurweyl
