#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "schurweyl/schurweyl.hpp"

namespace oracle {

using schurweyl::BrauerDiagram;
using schurweyl::ExactMatrix;
using schurweyl::Rational;

struct Glued {
  BrauerDiagram composite;
  int loops;
};

/// Glues two diagrams by identifying vertex pairs and reads off the
/// resulting matching on the external vertices by connected components.
/// Vertices of a are 0..2m-1, vertices of b are 2m..4m-1. `external[v]` for
/// v in 0..2m-1 names the glued-graph vertex that becomes vertex v.
inline Glued glue(const BrauerDiagram& a, const BrauerDiagram& b, const std::vector<std::pair<int, int>>& identify,
                  const std::vector<int>& external) {
  const int m = a.columns();
  const int total = 4 * m;
  std::vector<std::vector<int>> adj(total);
  for (int v = 0; v < 2 * m; ++v) {
    adj[v].push_back(a.partner(v));
    adj[2 * m + v].push_back(2 * m + b.partner(v));
  }
  for (auto [u, v] : identify) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> comp(total, -1);
  int ncomp = 0;
  for (int s = 0; s < total; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
    }
    ++ncomp;
  }
  std::vector<std::vector<int>> ends(ncomp);
  for (int v = 0; v < 2 * m; ++v) ends[comp[external[v]]].push_back(v);
  std::vector<int> partner(2 * m, -1);
  int loops = 0;
  for (const auto& e : ends) {
    if (e.empty()) {
      ++loops;
    } else {
      partner[e[0]] = e[1];
      partner[e[1]] = e[0];
    }
  }
  return {BrauerDiagram::from_partner(partner), loops};
}

/// Ordinary stacking: bottom row of a glued to the top row of b.
inline Glued stack(const BrauerDiagram& a, const BrauerDiagram& b) {
  const int m = a.columns();
  std::vector<std::pair<int, int>> id;
  for (int c = 0; c < m; ++c) id.emplace_back(m + c, 2 * m + c);
  std::vector<int> ext(2 * m);
  for (int c = 0; c < m; ++c) {
    ext[c] = c;
    ext[m + c] = 2 * m + m + c;
  }
  return glue(a, b, id, ext);
}

/// Composition of flipped diagrams: left of the wall a sits above b,
/// right of the wall b sits above a.
inline Glued bizarre(const BrauerDiagram& a, const BrauerDiagram& b, int r) {
  const int m = a.columns();
  std::vector<std::pair<int, int>> id;
  std::vector<int> ext(2 * m);
  for (int c = 0; c < m; ++c) {
    if (c < r) {
      id.emplace_back(m + c, 2 * m + c);  // a bottom-left == b top-left
      ext[c] = c;                          // top from a
      ext[m + c] = 2 * m + m + c;          // bottom from b
    } else {
      id.emplace_back(c, 2 * m + m + c);  // a top-right == b bottom-right
      ext[c] = 2 * m + c;                  // top from b
      ext[m + c] = m + c;                  // bottom from a
    }
  }
  return glue(a, b, id, ext);
}

inline BrauerDiagram random_diagram(int m, std::mt19937_64& rng) {
  std::vector<int> v(2 * m);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  std::vector<int> partner(2 * m);
  for (int k = 0; k < 2 * m; k += 2) {
    partner[v[k]] = v[k + 1];
    partner[v[k + 1]] = v[k];
  }
  return BrauerDiagram::from_partner(partner);
}

inline std::vector<int> random_permutation(int m, std::mt19937_64& rng) {
  std::vector<int> w(m);
  std::iota(w.begin(), w.end(), 0);
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

inline Rational random_rational(std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<int> num(-span, span), den(1, span);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Random element with a few terms over the given ring.
inline schurweyl::AlgebraElement random_element(int m, const schurweyl::Ring& ring, std::mt19937_64& rng,
                                                int terms = 3) {
  schurweyl::AlgebraElement a(m, ring);
  for (int k = 0; k < terms; ++k) {
    schurweyl::Polynomial c(random_rational(rng));
    if (ring.is_generic()) c = c + schurweyl::Polynomial::monomial(1, random_rational(rng));
    a.add_term(random_diagram(m, rng), c);
  }
  return a;
}

/// Rank by textbook dense Gaussian elimination over Q.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<Rational>> dense(const ExactMatrix& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) out[i][j] = v;
  return out;
}

/// Commutant dimension from the full d^2-unknown system, no decomposition.
inline std::size_t dense_commutant_dimension(const std::vector<ExactMatrix>& gens, std::size_t d) {
  std::vector<std::vector<Rational>> sys;
  for (const auto& g : gens) {
    const auto gd = dense(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<Rational> row(d * d);
        for (std::size_t j = 0; j < d; ++j) {
          row[i * d + j] += gd[j][k];  // (X g)_{ik}
          row[j * d + k] -= gd[i][j];  // (g X)_{ik}
        }
        sys.push_back(std::move(row));
      }
  }
  return d * d - dense_rank(std::move(sys));
}

/// Dimension of the span of all words in `gens` (with the identity), by
/// repeated multiplication of the whole current basis until stable.
inline std::size_t dense_closure_dimension(const std::vector<ExactMatrix>& gens, std::size_t d) {
  std::vector<ExactMatrix> basis{ExactMatrix::identity(d)};
  auto flat = [&](const ExactMatrix& m) {
    std::vector<Rational> v(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (const auto& [j, x] : m.row(i)) v[i * d + j] = x;
    return v;
  };
  std::vector<std::vector<Rational>> rows{flat(basis[0])};
  for (bool grew = true; grew;) {
    grew = false;
    const auto current = basis;
    for (const auto& b : current)
      for (const auto& g : gens) {
        const ExactMatrix p = g * b;
        rows.push_back(flat(p));
        if (dense_rank(rows) == rows.size()) {
          basis.push_back(p);
          grew = true;
        } else {
          rows.pop_back();
        }
      }
  }
  return basis.size();
}

}  // namespace oracle
