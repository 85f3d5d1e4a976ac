#pragma once

// Brauer diagrams: perfect matchings on two rows of m vertices.
//
// Vertices are numbered 0..m-1 along the top row (left to right) and
// m..2m-1 along the bottom row. A diagram is stored as its partner map.
// Composition stacks the first diagram above the second, identifying the
// bottom row of the first with the top row of the second.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schurweyl/errors.hpp"

namespace schurweyl {

/// A permutation of {0..m-1} given by its images: w[i] is the image of i.
using Permutation = std::vector<int>;

inline constexpr int kDefaultEnumerationCap = 6;

class BrauerDiagram {
 public:
  using Edge = std::pair<int, int>;

  /// Validates the involution and fixed-point-free invariants.
  static BrauerDiagram from_partner(std::vector<int> partner) {
    if (partner.empty() || partner.size() % 2 != 0)
      throw InvariantViolation("a diagram needs an even, positive number of vertices");
    const int n = static_cast<int>(partner.size());
    for (int v = 0; v < n; ++v) {
      const int w = partner[v];
      if (w < 0 || w >= n) throw InvariantViolation("partner index out of range");
      if (w == v) throw InvariantViolation("vertex " + std::to_string(v) + " is a fixed point");
      if (partner[w] != v) throw InvariantViolation("partner map is not an involution");
    }
    return BrauerDiagram(std::move(partner));
  }

  /// Builds from an edge list; every vertex must be covered exactly once.
  static BrauerDiagram from_edges(int m, std::span<const Edge> edges) {
    if (m <= 0) throw InvalidArgument("diagram needs at least one column");
    std::vector<int> partner(2 * m, -1);
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= 2 * m || v >= 2 * m) throw InvariantViolation("vertex out of range");
      if (u == v) throw InvariantViolation("edge joins a vertex to itself");
      if (partner[u] != -1 || partner[v] != -1)
        throw InvariantViolation("vertex covered by more than one edge");
      partner[u] = v;
      partner[v] = u;
    }
    if (std::find(partner.begin(), partner.end(), -1) != partner.end())
      throw InvariantViolation("some vertex is not covered by an edge");
    return BrauerDiagram(std::move(partner));
  }

  static BrauerDiagram identity(int m) {
    if (m <= 0) throw InvalidArgument("diagram needs at least one column");
    std::vector<int> partner(2 * m);
    for (int i = 0; i < m; ++i) {
      partner[i] = m + i;
      partner[m + i] = i;
    }
    return BrauerDiagram(std::move(partner));
  }

  int columns() const { return static_cast<int>(partner_.size() / 2); }
  int partner(int v) const { return partner_[v]; }
  std::span<const int> partners() const { return partner_; }

  static int top(int column) { return column; }
  int bottom(int column) const { return columns() + column; }
  bool is_top(int v) const { return v < columns(); }
  int column_of(int v) const { return v < columns() ? v : v - columns(); }

  /// Canonical edge list: each edge (u, v) with u < v, sorted by u.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(partner_.size() / 2);
    for (int v = 0; v < static_cast<int>(partner_.size()); ++v)
      if (v < partner_[v]) out.emplace_back(v, partner_[v]);
    return out;
  }

  int horizontal_edge_count() const {
    int count = 0;
    for (int v = 0; v < static_cast<int>(partner_.size()); ++v)
      if (v < partner_[v] && is_top(v) == is_top(partner_[v])) ++count;
    return count;
  }

  bool is_permutation() const { return horizontal_edge_count() == 0; }

  /// Lexicographic on canonical edge lists.
  friend std::strong_ordering operator<=>(const BrauerDiagram& a, const BrauerDiagram& b) {
    if (a.partner_.size() != b.partner_.size()) return a.partner_.size() <=> b.partner_.size();
    return a.edges() <=> b.edges();
  }
  friend bool operator==(const BrauerDiagram& a, const BrauerDiagram& b) { return a.partner_ == b.partner_; }

 private:
  explicit BrauerDiagram(std::vector<int> partner) : partner_(std::move(partner)) {}

  std::vector<int> partner_;
};

/// Columns 0..r-1 lie left of the wall, r..r+s-1 right of it.
struct WallContext {
  int r = 0;
  int s = 0;

  WallContext() = default;
  WallContext(int r_, int s_) : r(r_), s(s_) {
    if (r < 0 || s < 0 || r + s < 1) throw InvalidArgument("wall needs r, s >= 0 and r + s >= 1");
  }
  int columns() const { return r + s; }
  bool left(int column) const { return column < r; }
};

struct CompositionResult {
  BrauerDiagram composite;
  int loops = 0;
};

/// Stacks d1 above d2 and follows paths through the identified middle row.
inline CompositionResult compose(const BrauerDiagram& d1, const BrauerDiagram& d2) {
  const int m = d1.columns();
  if (d2.columns() != m)
    throw SizeMismatch("cannot compose diagrams with " + std::to_string(m) + " and " +
                       std::to_string(d2.columns()) + " columns");
  std::vector<int> partner(2 * m, -1);
  std::vector<char> middle_seen(m, 0);

  // Walks from an outer vertex until the path exits on the outer boundary.
  // Vertex numbering of the result: top row of d1, bottom row of d2.
  auto walk = [&](bool in_first, int v) {
    for (;;) {
      if (in_first) {
        const int w = d1.partner(v);
        if (w < m) return w;
        middle_seen[w - m] = 1;
        in_first = false;
        v = w - m;
      } else {
        const int w = d2.partner(v);
        if (w >= m) return w;
        middle_seen[w] = 1;
        in_first = true;
        v = m + w;
      }
    }
  };

  for (int v = 0; v < 2 * m; ++v) {
    if (partner[v] != -1) continue;
    const int end = v < m ? walk(true, v) : walk(false, v);
    partner[v] = end;
    partner[end] = v;
  }

  int loops = 0;
  for (int k = 0; k < m; ++k) {
    if (middle_seen[k]) continue;
    ++loops;
    // Every closed loop alternates between d1's bottom row and d2's top row.
    int cur = k;
    do {
      middle_seen[cur] = 1;
      const int below = d2.partner(cur);  // a top vertex of d2
      middle_seen[below] = 1;
      cur = d1.partner(m + below) - m;
    } while (cur != k);
  }
  return {BrauerDiagram::from_partner(std::move(partner)), loops};
}

inline bool is_permutation_vector(std::span<const int> w) {
  std::vector<char> seen(w.size(), 0);
  for (int x : w) {
    if (x < 0 || x >= static_cast<int>(w.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

/// Top vertex i is joined to bottom vertex w[i]. With this convention
/// compose(perm(v), perm(w)) == perm(w after v).
inline BrauerDiagram permutation_to_diagram(std::span<const int> w) {
  if (w.empty() || !is_permutation_vector(w)) throw InvalidArgument("not a permutation");
  const int m = static_cast<int>(w.size());
  std::vector<int> partner(2 * m);
  for (int i = 0; i < m; ++i) {
    partner[i] = m + w[i];
    partner[m + w[i]] = i;
  }
  return BrauerDiagram::from_partner(std::move(partner));
}

/// Inverse of permutation_to_diagram on all-vertical diagrams.
inline std::optional<Permutation> diagram_is_permutation(const BrauerDiagram& d) {
  if (!d.is_permutation()) return std::nullopt;
  const int m = d.columns();
  Permutation w(m);
  for (int i = 0; i < m; ++i) w[i] = d.partner(i) - m;
  return w;
}

/// c_{i,j}: horizontal edges between columns i and j (1-based) on both rows.
inline BrauerDiagram c_generator(int m, int i, int j) {
  if (i < 1 || j < 1 || i > m || j > m || i == j)
    throw InvalidArgument("c_generator needs 1 <= i != j <= m");
  std::vector<int> partner(2 * m);
  for (int k = 0; k < m; ++k) {
    partner[k] = m + k;
    partner[m + k] = k;
  }
  const int a = i - 1, b = j - 1;
  partner[a] = b;
  partner[b] = a;
  partner[m + a] = m + b;
  partner[m + b] = m + a;
  return BrauerDiagram::from_partner(std::move(partner));
}

namespace detail {
inline void check_wall(const BrauerDiagram& d, const WallContext& wall) {
  if (wall.columns() != d.columns())
    throw SizeMismatch("wall (" + std::to_string(wall.r) + "," + std::to_string(wall.s) +
                       ") does not fit a diagram with " + std::to_string(d.columns()) + " columns");
}
}  // namespace detail

/// Horizontal edges all cross the wall; vertical edges never do.
inline bool is_walled(const BrauerDiagram& d, const WallContext& wall) {
  detail::check_wall(d, wall);
  for (auto [u, v] : d.edges()) {
    const bool horizontal = d.is_top(u) == d.is_top(v);
    const bool crosses = wall.left(d.column_of(u)) != wall.left(d.column_of(v));
    if (horizontal != crosses) return false;
  }
  return true;
}

/// Swaps the top and bottom vertex of every column right of the wall.
inline BrauerDiagram flip(const BrauerDiagram& d, const WallContext& wall) {
  detail::check_wall(d, wall);
  const int m = d.columns();
  auto swap_vertex = [&](int v) {
    const int col = v < m ? v : v - m;
    if (wall.left(col)) return v;
    return v < m ? v + m : v - m;
  };
  std::vector<int> partner(2 * m);
  for (int v = 0; v < 2 * m; ++v) partner[swap_vertex(v)] = swap_vertex(d.partner(v));
  return BrauerDiagram::from_partner(std::move(partner));
}

/// Visits every m-diagram once, in canonical order.
inline void for_each_diagram(int m, const std::function<void(const BrauerDiagram&)>& visit,
                             int cap = kDefaultEnumerationCap) {
  if (m <= 0) throw InvalidArgument("diagram needs at least one column");
  if (m > cap)
    throw CapExceeded("enumeration of " + std::to_string(m) + "-diagrams exceeds the cap of " +
                      std::to_string(cap) + " columns");
  std::vector<int> partner(2 * m, -1);
  std::function<void()> recurse = [&]() {
    const auto it = std::find(partner.begin(), partner.end(), -1);
    if (it == partner.end()) {
      visit(BrauerDiagram::from_partner(partner));
      return;
    }
    const int u = static_cast<int>(it - partner.begin());
    for (int v = u + 1; v < 2 * m; ++v) {
      if (partner[v] != -1) continue;
      partner[u] = v;
      partner[v] = u;
      recurse();
      partner[u] = partner[v] = -1;
    }
  };
  recurse();
}

inline std::vector<BrauerDiagram> enumerate_diagrams(int m, int cap = kDefaultEnumerationCap) {
  std::vector<BrauerDiagram> out;
  for_each_diagram(m, [&](const BrauerDiagram& d) { out.push_back(d); }, cap);
  return out;
}

/// All permutations of {0..m-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(int m) {
  Permutation w(m);
  std::iota(w.begin(), w.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

/// Walled diagrams obtained as flips of permutation diagrams, sorted canonically.
inline std::vector<BrauerDiagram> walled_diagrams(const WallContext& wall) {
  std::vector<BrauerDiagram> out;
  for (const auto& w : all_permutations(wall.columns()))
    out.push_back(flip(permutation_to_diagram(w), wall));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Serialization: {"m": int, "edges": [["t1","b1"], ...]}

inline std::string vertex_label(int m, int v) {
  return (v < m ? "t" : "b") + std::to_string((v < m ? v : v - m) + 1);
}

inline int parse_vertex_label(int m, const std::string& label) {
  if (label.size() < 2 || (label[0] != 't' && label[0] != 'b'))
    throw ParseError("vertex label '" + label + "' must look like t<k> or b<k>", 0);
  int k = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9' || k > 1'000'000)
      throw ParseError("vertex label '" + label + "' has a malformed index", i);
    k = k * 10 + (label[i] - '0');
  }
  if (k < 1 || k > m)
    throw InvariantViolation("vertex label '" + label + "' is outside 1.." + std::to_string(m));
  return label[0] == 't' ? k - 1 : m + k - 1;
}

inline nlohmann::ordered_json to_json(const BrauerDiagram& d) {
  const int m = d.columns();
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (auto [u, v] : d.edges()) edges.push_back({vertex_label(m, u), vertex_label(m, v)});
  return {{"m", m}, {"edges", edges}};
}

inline std::string serialize(const BrauerDiagram& d) { return to_json(d)["edges"].dump(); }

inline BrauerDiagram diagram_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("edges"))
    throw ParseError("diagram JSON needs fields \"m\" and \"edges\"", 0);
  if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1)
    throw ParseError("\"m\" must be a positive integer", 0);
  const int m = j["m"].get<int>();
  const auto& edges = j["edges"];
  if (!edges.is_array()) throw ParseError("\"edges\" must be an array", 0);
  std::vector<BrauerDiagram::Edge> list;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw ParseError("edge " + std::to_string(k) + " must be a pair of labels", k);
    list.emplace_back(parse_vertex_label(m, e[0].get<std::string>()),
                      parse_vertex_label(m, e[1].get<std::string>()));
  }
  return BrauerDiagram::from_edges(m, list);
}

/// Parses either the full object form or a bare edge list (m inferred).
inline BrauerDiagram deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed diagram JSON: ") + e.what(), e.byte);
  }
  if (j.is_array()) {
    int m = 0;
    for (const auto& e : j) {
      if (!e.is_array()) throw ParseError("edge list entries must be arrays", 0);
      for (const auto& lab : e) {
        if (!lab.is_string()) throw ParseError("vertex labels must be strings", 0);
        const auto s = lab.get<std::string>();
        try {
          m = std::max(m, std::stoi(s.substr(1)));
        } catch (const std::exception&) {
          throw ParseError("vertex label '" + s + "' has a malformed index", 0);
        }
      }
    }
    return diagram_from_json({{"m", m}, {"edges", j}});
  }
  return diagram_from_json(j);
}

}  // namespace schurweyl

template <>
struct std::hash<schurweyl::BrauerDiagram> {
  std::size_t operator()(const schurweyl::BrauerDiagram& d) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (int v : d.partners()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
    return h;
  }
};
