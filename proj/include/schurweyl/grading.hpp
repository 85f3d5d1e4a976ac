#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schurweyl/errors.hpp"
#include "schurweyl/matrix.hpp"

namespace schurweyl {

/// A weight (integer vector) attached to every basis vector of a space.
/// A matrix is homogeneous of degree mu if each nonzero entry (i, j)
/// satisfies key(i) - key(j) == mu.
struct Grading {
  using Key = std::vector<long>;

  std::vector<Key> keys;

  static Grading trivial(std::size_t d) { return Grading{std::vector<Key>(d, Key{})}; }
  std::size_t size() const { return keys.size(); }
};

inline Grading::Key key_difference(const Grading::Key& a, const Grading::Key& b) {
  Grading::Key out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Grading::Key key_sum(const Grading::Key& a, const Grading::Key& b) {
  Grading::Key out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Degree of a homogeneous map from a space graded by `source` to one graded
/// by `target`; nullopt for the zero matrix. Throws if m is inhomogeneous.
inline std::optional<Grading::Key> homogeneous_degree(const ExactMatrix& m, const Grading& target,
                                                      const Grading& source) {
  if (m.rows() != target.size() || m.cols() != source.size())
    throw SizeMismatch("grading does not match the matrix shape " + m.shape());
  std::optional<Grading::Key> degree;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i)) {
      auto mu = key_difference(target.keys[i], source.keys[j]);
      if (!degree)
        degree = std::move(mu);
      else if (*degree != mu)
        throw InvalidArgument("matrix is not homogeneous for the supplied grading");
    }
  return degree;
}

inline std::optional<Grading::Key> homogeneous_degree(const ExactMatrix& m, const Grading& g) {
  return homogeneous_degree(m, g, g);
}

}  // namespace schurweyl
