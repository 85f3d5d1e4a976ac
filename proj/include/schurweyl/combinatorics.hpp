#pragma once

// Derangement numbers, diagram counts and the multiplicities of the trivial
// and adjoint modules in sl_n^{(x)r}.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurweyl/commutant.hpp"
#include "schurweyl/diagram.hpp"
#include "schurweyl/errors.hpp"
#include "schurweyl/rational.hpp"
#include "schurweyl/tensor_action.hpp"

namespace schurweyl {

inline Integer factorial(unsigned k) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

inline Integer binomial(unsigned k, unsigned j) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), k, j);
  return b;
}

/// N(k) = sum_j (-1)^{k-j} C(k, j) j!.
inline Integer derangements(int k) {
  if (k < 0) throw InvalidArgument("derangements needs k >= 0");
  Integer total = 0;
  for (int j = 0; j <= k; ++j) {
    const Integer term = binomial(k, j) * factorial(j);
    if ((k - j) % 2)
      total -= term;
    else
      total += term;
  }
  return total;
}

inline constexpr int kDerangementEnumerationCap = 10;

/// Number of fixed-point-free permutations of k objects, by listing them.
inline Integer derangements_by_enumeration(int k) {
  if (k < 0) throw InvalidArgument("derangements needs k >= 0");
  if (k > kDerangementEnumerationCap)
    throw CapExceeded("derangement enumeration is capped at k = " + std::to_string(kDerangementEnumerationCap));
  std::vector<int> w(k);
  std::iota(w.begin(), w.end(), 0);
  unsigned long count = 0;
  do {
    bool fixed = false;
    for (int i = 0; i < k && !fixed; ++i) fixed = w[i] == i;
    if (!fixed) ++count;
  } while (std::next_permutation(w.begin(), w.end()));
  return Integer(count);
}

struct DerangementEntry {
  int k;
  Integer value;
  std::string method;  // "enumeration" (also matched the formula) or "formula"
};

struct DerangementTable {
  std::vector<DerangementEntry> entries;

  /// N(k) == (k-1)(N(k-1) + N(k-2)) for every stored k >= 2.
  bool recurrence_holds() const {
    for (std::size_t k = 2; k < entries.size(); ++k)
      if (entries[k].value != Integer(static_cast<long>(k) - 1) * (entries[k - 1].value + entries[k - 2].value))
        return false;
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& e : entries) rows.push_back({{"k", e.k}, {"N", e.value.get_str()}, {"method", e.method}});
    return rows;
  }
};

/// N(0..max_k). Entries up to `enumeration_cap` are computed both ways and
/// must agree; the recurrence is checked over the whole table.
inline DerangementTable derangement_table(int max_k, int enumeration_cap = 8) {
  if (max_k < 0) throw InvalidArgument("derangement table needs K >= 0");
  enumeration_cap = std::min(enumeration_cap, kDerangementEnumerationCap);
  DerangementTable t;
  for (int k = 0; k <= max_k; ++k) {
    const Integer f = derangements(k);
    if (k <= enumeration_cap) {
      if (derangements_by_enumeration(k) != f)
        throw InvariantViolation("formula and enumeration disagree at k = " + std::to_string(k));
      t.entries.push_back({k, f, "enumeration"});
    } else {
      t.entries.push_back({k, f, "formula"});
    }
  }
  if (!t.recurrence_holds()) throw InvariantViolation("derangement recurrence fails");
  return t;
}

/// Brackets k!/e between two consecutive partial sums of
/// sum_j (-1)^j k!/j! and checks the bracket lies inside (N - 1/2, N + 1/2).
struct NearestIntegerCheck {
  int k;
  Integer value;
  Rational lower, upper;
  bool holds;
};

inline NearestIntegerCheck nearest_integer_check(int k) {
  if (k < 1) throw InvalidArgument("the nearest-integer property is stated for k >= 1");
  const Integer kf = factorial(k);
  auto partial = [&](int last) {
    Rational s = 0;
    for (int j = 0; j <= last; ++j) {
      const Rational term(kf, factorial(j));
      if (j % 2)
        s -= term;
      else
        s += term;
    }
    s.canonicalize();
    return s;
  };
  // An alternating series with decreasing terms lies strictly between
  // consecutive partial sums.
  const Rational a = partial(k + 2), b = partial(k + 3);
  NearestIntegerCheck c{k, derangements(k), std::min(a, b), std::max(a, b), false};
  const Rational half(1, 2);
  c.holds = Rational(c.value) - half < c.lower && c.upper < Rational(c.value) + half;
  return c;
}

/// (2r - 1)!!, the number of r-diagrams.
inline Integer diagram_count(int r) {
  if (r < 0) throw InvalidArgument("diagram_count needs r >= 0");
  Integer c = 1;
  for (int k = 2 * r - 1; k > 1; k -= 2) c *= k;
  return c;
}

/// (r + s)!, the number of walled (r, s)-diagrams.
inline Integer walled_count(int r, int s) {
  if (r < 0 || s < 0) throw InvalidArgument("walled_count needs r, s >= 0");
  return factorial(r + s);
}

namespace detail {

inline std::vector<std::size_t> indices_of_weight(const Grading& g, const Grading::Key& weight) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.keys[i] == weight) out.push_back(i);
  return out;
}

}  // namespace detail

/// Dimension of the sl_n-invariants in sl_n^{(x)r}: the joint kernel of
/// d rho(X), X in the sl_n basis, restricted to the zero weight space
/// (where every invariant lives).
template <class Field>
std::size_t multiplicity_trivial(const Field& field, int n, int r, SolverCaps caps = {},
                                 std::size_t space_cap = kDefaultSpaceCap) {
  const auto space = SpaceSpec::adjoint_power(n, r, space_cap);
  const auto cols = detail::indices_of_weight(weight_grading(space), Grading::Key(n, 0));
  std::vector<ExactMatrix> ops;
  for (const auto& x : lie_basis(LieFamily::sl, n)) ops.push_back(derivation_action_columns(x, space, cols));
  return joint_kernel_dimension(field, ops, cols.size(), caps);
}

/// Dimension of the sl_n-equivariant maps sl_n -> sl_n^{(x)r}: the joint
/// nullspace of M -> d rho(X) M - M ad(X).
template <class Field>
std::size_t multiplicity_adjoint(const Field& field, int n, int r, SolverCaps caps = {},
                                 std::size_t space_cap = kDefaultSpaceCap) {
  const auto space = SpaceSpec::adjoint_power(n, r, space_cap);
  std::vector<ExactMatrix> out_ops, in_ops;
  for (const auto& x : lie_basis(LieFamily::sl, n)) {
    out_ops.push_back(derivation_action(x, space));
    in_ops.push_back(adjoint_matrix(x));
  }
  std::vector<std::pair<const ExactMatrix*, const ExactMatrix*>> pairs;
  for (std::size_t k = 0; k < out_ops.size(); ++k) pairs.emplace_back(&out_ops[k], &in_ops[k]);
  return solve_intertwiner(field, pairs, space.dimension(), static_cast<std::size_t>(n * n - 1), false, 1, caps)
      .dimension;
}

/// Weyl's dimension formula for the gl_n module of highest weight lambda.
inline Integer weyl_dimension(const std::vector<long>& lambda) {
  Rational d = 1;
  const long n = static_cast<long>(lambda.size());
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) d *= Rational(lambda[i] - lambda[j] + j - i, j - i);
  d.canonicalize();
  if (d.get_den() != 1) throw InvariantViolation("Weyl dimension is not an integer");
  return d.get_num();
}

struct HighestWeightEntry {
  Grading::Key weight;
  std::size_t multiplicity;
  Integer dimension;
};

/// Decomposition of sl_n^{(x)r} by counting highest weight vectors: for each
/// dominant weight, the joint kernel of the raising operators on that
/// weight space. Sorted by weight, descending.
template <class Field>
std::vector<HighestWeightEntry> highest_weight_table(const Field& field, int n, int r, SolverCaps caps = {},
                                                     std::size_t space_cap = kDefaultSpaceCap) {
  const auto space = SpaceSpec::adjoint_power(n, r, space_cap);
  const auto grading = weight_grading(space);
  std::map<Grading::Key, std::vector<std::size_t>, std::greater<>> dominant;
  for (std::size_t i = 0; i < grading.size(); ++i) {
    const auto& w = grading.keys[i];
    if (std::is_sorted(w.begin(), w.end(), std::greater<>())) dominant[w].push_back(i);
  }
  std::vector<ExactMatrix> raising;
  for (int a = 0; a + 1 < n; ++a) raising.push_back(matrix_unit(n, a, a + 1));
  std::vector<HighestWeightEntry> out;
  for (const auto& [w, cols] : dominant) {
    std::vector<ExactMatrix> ops;
    for (const auto& x : raising) ops.push_back(derivation_action_columns(x, space, cols));
    const std::size_t m = joint_kernel_dimension(field, ops, cols.size(), caps);
    if (m > 0) out.push_back({w, m, weyl_dimension(w)});
  }
  return out;
}

/// The adjoint module's highest weight e_1 - e_n.
inline Grading::Key adjoint_highest_weight(int n) {
  Grading::Key w(n, 0);
  w.front() = 1;
  w.back() = -1;
  return w;
}

}  // namespace schurweyl
