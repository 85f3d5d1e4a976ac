#pragma once

// Formal linear combinations of Brauer diagrams with the product
//   D1 . D2 = x^loops(D1, D2) (D1 o D2),
// either over Q[x] (generic parameter) or with x specialized to a rational.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schurweyl/diagram.hpp"
#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/linalg.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl {

/// Coefficient ring tag: Q[x], or Q with x evaluated at `x0`.
class Ring {
 public:
  static Ring generic() { return Ring(); }
  static Ring specialized(const Rational& x0) { return Ring(x0); }

  bool is_generic() const { return !x0_.has_value(); }
  const Rational& x0() const {
    if (!x0_) throw RingMismatch("generic ring has no specialized parameter");
    return *x0_;
  }
  std::string describe() const { return x0_ ? "x=" + to_string(*x0_) : std::string("generic"); }

  friend bool operator==(const Ring& a, const Ring& b) { return a.x0_ == b.x0_; }

 private:
  Ring() = default;
  explicit Ring(const Rational& x0) : x0_(x0) {}

  std::optional<Rational> x0_;
};

class AlgebraElement {
 public:
  using Terms = std::map<BrauerDiagram, Polynomial>;

  AlgebraElement(int m, Ring ring) : m_(m), ring_(std::move(ring)) {
    if (m <= 0) throw InvalidArgument("algebra element needs m >= 1");
  }

  static AlgebraElement zero(int m, const Ring& ring) { return AlgebraElement(m, ring); }
  static AlgebraElement identity(int m, const Ring& ring) {
    return from_diagram(BrauerDiagram::identity(m), ring);
  }
  static AlgebraElement from_diagram(const BrauerDiagram& d, const Ring& ring,
                                     const Polynomial& coeff = Rational(1)) {
    AlgebraElement a(d.columns(), ring);
    a.add_term(d, coeff);
    return a;
  }

  int columns() const { return m_; }
  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Polynomial coefficient(const BrauerDiagram& d) const {
    const auto it = terms_.find(d);
    return it == terms_.end() ? Polynomial() : it->second;
  }

  /// Adds coeff * d; specialized rings only accept constant coefficients.
  void add_term(const BrauerDiagram& d, const Polynomial& coeff) {
    if (d.columns() != m_) throw SizeMismatch("diagram has the wrong number of columns");
    if (!ring_.is_generic() && !coeff.is_constant())
      throw RingMismatch("specialized ring needs constant coefficients");
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(d, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_compatible(o);
    for (const auto& [d, c] : o.terms_) add_term(d, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_compatible(o);
    for (const auto& [d, c] : o.terms_) add_term(d, -c);
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Polynomial& s, const AlgebraElement& a) {
    if (!a.ring_.is_generic() && !s.is_constant())
      throw RingMismatch("specialized ring needs constant scalars");
    AlgebraElement out(a.m_, a.ring_);
    for (const auto& [d, c] : a.terms_) out.add_term(d, s * c);
    return out;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.m_ == b.m_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  void check_compatible(const AlgebraElement& o) const {
    if (o.m_ != m_)
      throw SizeMismatch("algebra elements have " + std::to_string(m_) + " and " +
                         std::to_string(o.m_) + " columns");
    if (!(o.ring_ == ring_))
      throw RingMismatch("algebra elements live over " + ring_.describe() + " and " + o.ring_.describe());
  }

 private:
  int m_;
  Ring ring_;
  Terms terms_;
};

/// Bilinear extension of D1 . D2 = x^loops (D1 o D2).
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  a.check_compatible(b);
  AlgebraElement out(a.columns(), a.ring());
  std::vector<Rational> powers{1};  // cached x0^k in the specialized case
  for (const auto& [d1, c1] : a.terms()) {
    for (const auto& [d2, c2] : b.terms()) {
      const auto res = compose(d1, d2);
      Polynomial coeff = c1 * c2;
      if (a.ring().is_generic()) {
        coeff = coeff.shifted(static_cast<std::size_t>(res.loops));
      } else {
        while (static_cast<int>(powers.size()) <= res.loops) powers.push_back(powers.back() * a.ring().x0());
        coeff = coeff * Polynomial(powers[res.loops]);
      }
      out.add_term(res.composite, coeff);
    }
  }
  return out;
}

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

/// Evaluates every coefficient at x = x0.
inline AlgebraElement specialize(const AlgebraElement& a, const Rational& x0) {
  if (!a.ring().is_generic()) throw RingMismatch("element is already specialized");
  AlgebraElement out(a.columns(), Ring::specialized(x0));
  for (const auto& [d, c] : a.terms()) out.add_term(d, Polynomial(c.evaluate(x0)));
  return out;
}

/// Drops every term whose diagram has a horizontal edge.
inline AlgebraElement symmetric_quotient(const AlgebraElement& a) {
  AlgebraElement out(a.columns(), a.ring());
  for (const auto& [d, c] : a.terms())
    if (d.is_permutation()) out.add_term(d, c);
  return out;
}

/// e = prod_i (1 - n^{-1} c_{i,-i}) in B_{r,r} specialized at x = n.
inline AlgebraElement idempotent_e(int r, int n) {
  if (r < 1) throw InvalidArgument("idempotent_e needs r >= 1");
  if (n == 0) throw InvalidArgument("idempotent_e divides by n; n must be nonzero");
  const Ring ring = Ring::specialized(n);
  const int m = 2 * r;
  AlgebraElement e = AlgebraElement::identity(m, ring);
  for (int i = 1; i <= r; ++i) {
    AlgebraElement factor = AlgebraElement::identity(m, ring);
    factor.add_term(c_generator(m, i, r + i), Polynomial(Rational(-1, n)));
    e = e * factor;
  }
  return e;
}

/// An element of e B_{r,r} e, with r and n recorded.
struct DerangedElement {
  AlgebraElement value;
  int r;
  int n;
  BrauerDiagram source;  // the diagram D with value == e D e
};

/// True if some row of d has a horizontal edge from column i to column r+i.
inline bool has_matched_pair(const BrauerDiagram& d, int r) {
  for (int i = 0; i < r; ++i) {
    if (d.partner(i) == r + i) return true;
    if (d.partner(d.bottom(i)) == d.bottom(r + i)) return true;
  }
  return false;
}

/// Walled (r,r)-diagrams with no horizontal edge joining i and -i.
inline std::vector<BrauerDiagram> deranged_diagrams(int r) {
  std::vector<BrauerDiagram> out;
  for (const auto& d : walled_diagrams(WallContext(r, r)))
    if (!has_matched_pair(d, r)) out.push_back(d);
  return out;
}

/// Coordinates of algebra elements in a fixed diagram basis.
class DiagramCoordinates {
 public:
  explicit DiagramCoordinates(int m, int cap = kDefaultEnumerationCap) : basis_(enumerate_diagrams(m, cap)) {
    for (std::size_t k = 0; k < basis_.size(); ++k) index_.emplace(basis_[k], k);
  }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<BrauerDiagram>& basis() const { return basis_; }

  /// Requires a specialized element.
  SparseVector<Rational> vector(const AlgebraElement& a) const {
    SparseVector<Rational> v;
    for (const auto& [d, c] : a.terms()) v.emplace_back(index_.at(d), c.constant());
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return v;
  }
  AlgebraElement element(const SparseVector<Rational>& v, const Ring& ring) const {
    AlgebraElement a(basis_.front().columns(), ring);
    for (const auto& [k, c] : v) a.add_term(basis_[k], Polynomial(c));
    return a;
  }

 private:
  std::vector<BrauerDiagram> basis_;
  std::map<BrauerDiagram, std::size_t> index_;
};

/// The elements e D e; linear independence is checked exactly before returning.
inline std::vector<DerangedElement> deranged_basis(int r, int n, int r_cap = 3) {
  if (r < 1) throw InvalidArgument("deranged_basis needs r >= 1");
  if (r > r_cap) throw CapExceeded("deranged_basis is capped at r = " + std::to_string(r_cap));
  if (n < 2 * r) throw InvalidArgument("deranged_basis needs n >= 2r");
  const AlgebraElement e = idempotent_e(r, n);
  std::vector<DerangedElement> out;
  for (const auto& d : deranged_diagrams(r)) {
    const AlgebraElement de = multiply(e, multiply(AlgebraElement::from_diagram(d, e.ring()), e));
    out.push_back({de, r, n, d});
  }
  const DiagramCoordinates coords(2 * r, std::max(kDefaultEnumerationCap, 2 * r));
  Echelon<RationalField> ech(RationalField{}, coords.dimension());
  for (const auto& x : out)
    if (!ech.insert(coords.vector(x.value)))
      throw InvariantViolation("e D e elements are linearly dependent");
  return out;
}

/// Dimension of the unital subalgebra generated by `gens`, by saturating
/// left multiplication starting from the identity.
inline std::size_t generated_subalgebra(const std::vector<AlgebraElement>& gens, int m,
                                        std::size_t dimension_cap = 10395) {
  const Ring ring = gens.empty() ? Ring::specialized(1) : gens.front().ring();
  for (const auto& g : gens) {
    if (g.columns() != m) throw SizeMismatch("generator has the wrong number of columns");
    if (!(g.ring() == ring)) throw RingMismatch("generators live over different rings");
  }
  if (ring.is_generic()) throw RingMismatch("generated_subalgebra needs a specialized ring");
  const DiagramCoordinates coords(m);
  if (coords.dimension() > dimension_cap) throw CapExceeded("subalgebra dimension cap exceeded");
  Echelon<RationalField> ech(RationalField{}, coords.dimension());
  std::vector<AlgebraElement> queue{AlgebraElement::identity(m, ring)};
  ech.insert(coords.vector(queue.front()));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      AlgebraElement p = multiply(g, queue[head]);
      if (ech.insert(coords.vector(p))) queue.push_back(std::move(p));
    }
  }
  return ech.rank();
}

// ---------------------------------------------------------------------------
// JSON: {"m", "ring": "generic" | {"x0": "p/q"}, "terms": [{"diagram", "coeff"}]}

inline nlohmann::ordered_json to_json(const Polynomial& p, bool as_scalar) {
  if (as_scalar) return to_string(p.constant());
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coefficients()) arr.push_back(to_string(c));
  return arr;
}

inline nlohmann::ordered_json to_json(const AlgebraElement& a) {
  nlohmann::ordered_json j;
  j["m"] = a.columns();
  if (a.ring().is_generic()) {
    j["ring"] = "generic";
  } else {
    j["ring"] = {{"x0", to_string(a.ring().x0())}};
  }
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [d, c] : a.terms())
    terms.push_back({{"diagram", to_json(d)}, {"coeff", to_json(c, !a.ring().is_generic())}});
  j["terms"] = terms;
  return j;
}

inline Ring ring_from_json(const nlohmann::json& j) {
  if (j.is_string() && j.get<std::string>() == "generic") return Ring::generic();
  if (j.is_object() && j.contains("x0") && j["x0"].is_string())
    return Ring::specialized(parse_rational(j["x0"].get<std::string>()));
  throw ParseError("ring must be \"generic\" or {\"x0\": \"p/q\"}", 0);
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Polynomial(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Polynomial(Rational(j.get<long>()));
  if (!j.is_array()) throw ParseError("coefficient must be a rational string or a list", 0);
  std::vector<Rational> cs;
  for (const auto& c : j) {
    if (c.is_string())
      cs.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer())
      cs.push_back(Rational(c.get<long>()));
    else
      throw ParseError("polynomial coefficients must be rational strings", 0);
  }
  return Polynomial(std::move(cs));
}

inline AlgebraElement element_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("ring") || !j.contains("terms"))
    throw ParseError("element JSON needs fields \"m\", \"ring\" and \"terms\"", 0);
  if (!j["m"].is_number_integer() || j["m"].get<long long>() < 1)
    throw ParseError("\"m\" must be a positive integer", 0);
  AlgebraElement a(j["m"].get<int>(), ring_from_json(j["ring"]));
  if (!j["terms"].is_array()) throw ParseError("\"terms\" must be an array", 0);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("diagram") || !t.contains("coeff"))
      throw ParseError("each term needs \"diagram\" and \"coeff\"", 0);
    const BrauerDiagram d = diagram_from_json(t["diagram"]);
    if (d.columns() != a.columns()) throw SizeMismatch("term diagram has the wrong number of columns");
    a.add_term(d, polynomial_from_json(t["coeff"]));
  }
  return a;
}

}  // namespace schurweyl
