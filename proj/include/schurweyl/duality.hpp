#pragma once

// Double-centralizer checks. For each family the two sides are
//   group side:   the unital algebra generated by d rho of a Lie algebra
//                 basis (plus rho(R) for the orthogonal group),
//   diagram side: the span of sigma over a basis of the diagram algebra,
// and the report compares each side with the commutant of the other.
//
// Both inclusions  group ⊆ End(diagram side)  and  diagram ⊆ End(group side)
// are checked exactly, so the equalities reduce to dimension counts.
// In modular mode the counts are taken modulo a prime p. A mod-p closure
// dimension never exceeds the rational one and a mod-p nullity never falls
// below it, so whenever the two mod-p numbers meet they pin down the exact
// answer ("mod-p-confirmed-exact").

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "schurweyl/algebra.hpp"
#include "schurweyl/combinatorics.hpp"
#include "schurweyl/commutant.hpp"
#include "schurweyl/diagram.hpp"
#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/matrix.hpp"
#include "schurweyl/tensor_action.hpp"

namespace schurweyl {

enum class Family { glA, sp, o, so_direct, walled, deranged };
enum class Mode { exact, modular };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::glA: return "glA";
    case Family::sp: return "sp";
    case Family::o: return "o";
    case Family::so_direct: return "so-direct";
    case Family::walled: return "walled";
    case Family::deranged: return "deranged";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "glA") return Family::glA;
  if (s == "sp") return Family::sp;
  if (s == "o") return Family::o;
  if (s == "so-direct") return Family::so_direct;
  if (s == "walled") return Family::walled;
  if (s == "deranged") return Family::deranged;
  throw InvalidArgument("unknown duality family '" + s + "'");
}

struct VerifyOptions {
  Mode mode = Mode::exact;
  unsigned threads = 1;
  std::uint64_t prime_a = kDefaultPrimeA;
  std::uint64_t prime_b = kDefaultPrimeB;
  SolverCaps caps;
  std::size_t space_cap = kDefaultSpaceCap;
  int enumeration_cap = kDefaultEnumerationCap;
};

struct DualityDims {
  std::size_t group_image = 0;
  std::size_t diagram_image = 0;
  std::size_t commutant_of_diagram = 0;
  std::size_t commutant_of_group = 0;
};

struct DualityReport {
  Family family = Family::glA;
  int n = 0, r = 0, s = 0;
  DualityDims dims;
  bool equal_a = false;  // group image == commutant of the diagram side
  bool equal_b = false;  // diagram image == commutant of the group side
  bool faithful = false;
  std::string method;
  std::size_t abstract_dimension = 0;
  bool containment = false;
  double elapsed_ms = 0;

  bool verified() const { return equal_a && equal_b; }

  /// Only the so-direct family compares two group sides; there the
  /// diagram image is End_O and a larger End_SO exhibits a proper subalgebra.
  bool proper_subalgebra() const { return dims.commutant_of_group > dims.diagram_image; }

  nlohmann::ordered_json to_json(bool with_timing = false) const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["n"] = n;
    j["r"] = r;
    j["s"] = s;
    j["dims"] = {{"group_image", dims.group_image},
                 {"diagram_image", dims.diagram_image},
                 {"commutant_of_diagram", dims.commutant_of_diagram},
                 {"commutant_of_group", dims.commutant_of_group}};
    j["equal_a"] = equal_a;
    j["equal_b"] = equal_b;
    j["faithful"] = faithful;
    j["method"] = method;
    j["abstract_dimension"] = abstract_dimension;
    j["containment"] = containment;
    if (family == Family::so_direct) j["proper_subalgebra"] = proper_subalgebra();
    if (with_timing) j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

/// The matrices of one duality instance.
struct DualityInstance {
  std::size_t d = 0;
  std::vector<ExactMatrix> group_generators;
  std::vector<ExactMatrix> diagram_images;
  std::size_t abstract_dimension = 0;
};

inline DualityInstance build_instance(Family family, int n, int r, int s, const VerifyOptions& opt = {}) {
  if (n < 2) throw InvalidArgument("duality checks need n >= 2");
  if (r < 1 && family != Family::walled) throw InvalidArgument("duality checks need r >= 1");
  if (family != Family::walled && s != 0) throw InvalidArgument("--s only applies to the walled family");
  // Reject oversized systems before any matrix is built.
  const auto ambient = [&] {
    switch (family) {
      case Family::walled: return SpaceSpec::mixed(n, r, s, opt.space_cap);
      case Family::deranged: return SpaceSpec::adjoint_power(n, r, opt.space_cap);
      default: return SpaceSpec::tensor(n, r, opt.space_cap);
    }
  }();
  const std::size_t unknown_cap = opt.mode == Mode::exact ? opt.caps.exact_unknowns : opt.caps.modp_unknowns;
  if (ambient.dimension() * ambient.dimension() > unknown_cap)
    throw CapExceeded(ambient.describe() + " needs " + std::to_string(ambient.dimension() * ambient.dimension()) +
                      " unknowns per commutant, above the cap of " + std::to_string(unknown_cap));
  DualityInstance inst;
  auto tensor_side = [&](const BilinearFormSpec& form) {
    const auto space = SpaceSpec::tensor(n, r, opt.space_cap);
    inst.d = space.dimension();
    for_each_diagram(
        r, [&](const BrauerDiagram& d) { inst.diagram_images.push_back(sigma_diagram(d, form, opt.space_cap)); },
        opt.enumeration_cap);
    inst.abstract_dimension = static_cast<std::size_t>(diagram_count(r).get_ui());
    return space;
  };
  switch (family) {
    case Family::glA: {
      const auto space = SpaceSpec::tensor(n, r, opt.space_cap);
      inst.d = space.dimension();
      for (const auto& x : lie_basis(LieFamily::gl, n)) inst.group_generators.push_back(derivation_action(x, space));
      for (const auto& w : all_permutations(r)) inst.diagram_images.push_back(sigma_perm(w, space));
      inst.abstract_dimension = static_cast<std::size_t>(walled_count(r, 0).get_ui());
      break;
    }
    case Family::sp: {
      const auto form = BilinearFormSpec::symplectic(n);
      const auto space = tensor_side(form);
      for (const auto& x : lie_basis(LieFamily::sp, n)) inst.group_generators.push_back(derivation_action(x, space));
      break;
    }
    case Family::o:
    case Family::so_direct: {
      const auto form = BilinearFormSpec::symmetric(n);
      const auto space = tensor_side(form);
      for (const auto& x : lie_basis(LieFamily::so, n)) inst.group_generators.push_back(derivation_action(x, space));
      if (family == Family::o) inst.group_generators.push_back(group_action(reflection(n), space));
      break;
    }
    case Family::walled: {
      const WallContext wall(r, s);
      const auto space = SpaceSpec::mixed(n, r, s, opt.space_cap);
      inst.d = space.dimension();
      const auto form = BilinearFormSpec::symmetric(n);
      for (const auto& x : lie_basis(LieFamily::gl, n)) inst.group_generators.push_back(derivation_action(x, space));
      for (const auto& d : walled_diagrams(wall)) inst.diagram_images.push_back(sigma_diagram(d, form, opt.space_cap));
      inst.abstract_dimension = static_cast<std::size_t>(walled_count(r, s).get_ui());
      break;
    }
    case Family::deranged: {
      const auto space = SpaceSpec::adjoint_power(n, r, opt.space_cap);
      inst.d = space.dimension();
      for (const auto& x : sl_generators(n)) inst.group_generators.push_back(derivation_action(x, space));
      for (const auto& b : deranged_basis(r, n)) inst.diagram_images.push_back(sigma_adjoint(b));
      inst.abstract_dimension = static_cast<std::size_t>(derangements(2 * r).get_ui());
      break;
    }
  }
  return inst;
}

namespace detail {

struct SideCounts {
  std::size_t group_image, commutant_of_diagram, commutant_of_group;
};

template <class Field>
SideCounts count_sides(const Field& field, const DualityInstance& inst, const VerifyOptions& opt) {
  SideCounts c;
  c.group_image = closure_dimension(field, inst.group_generators, inst.d, opt.threads, opt.caps);
  c.commutant_of_diagram = commutant_dimension(field, inst.diagram_images, inst.d, opt.threads, opt.caps);
  c.commutant_of_group = commutant_dimension(field, inst.group_generators, inst.d, opt.threads, opt.caps);
  return c;
}

}  // namespace detail

inline DualityReport verify_duality(Family family, int n, int r, int s = 0, const VerifyOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  DualityReport rep;
  rep.family = family;
  rep.n = n;
  rep.r = r;
  rep.s = s;
  if (family == Family::sp && n % 2 != 0) throw InvalidArgument("the symplectic family needs even n");

  const auto inst = build_instance(family, n, r, s, opt);
  rep.abstract_dimension = inst.abstract_dimension;
  rep.containment = mutually_commute(inst.group_generators, inst.diagram_images);
  if (!rep.containment) throw InvariantViolation("group and diagram actions do not commute");

  // The diagram side is a span of few matrices; its rank is always exact.
  rep.dims.diagram_image = span_dimension(RationalField{}, inst.diagram_images, inst.d);

  if (opt.mode == Mode::exact) {
    const auto c = detail::count_sides(RationalField{}, inst, opt);
    rep.dims.group_image = c.group_image;
    rep.dims.commutant_of_diagram = c.commutant_of_diagram;
    rep.dims.commutant_of_group = c.commutant_of_group;
    rep.method = "exact";
  } else {
    // Lower bound for the closure, upper bounds for the commutants.
    std::size_t lo_group = 0, hi_comm_diagram = SIZE_MAX, hi_comm_group = SIZE_MAX;
    std::vector<std::uint64_t> used;
    for (const auto p : {opt.prime_a, opt.prime_b}) {
      const auto c = detail::count_sides(PrimeField(p), inst, opt);
      used.push_back(p);
      lo_group = std::max(lo_group, c.group_image);
      hi_comm_diagram = std::min(hi_comm_diagram, c.commutant_of_diagram);
      hi_comm_group = std::min(hi_comm_group, c.commutant_of_group);
      if (lo_group == hi_comm_diagram && rep.dims.diagram_image == hi_comm_group) break;
    }
    rep.dims.group_image = lo_group;
    rep.dims.commutant_of_diagram = hi_comm_diagram;
    rep.dims.commutant_of_group = hi_comm_group;
    if (lo_group == hi_comm_diagram && rep.dims.diagram_image == hi_comm_group) {
      rep.method = "mod-p-confirmed-exact";
    } else {
      rep.method = "mod-p(";
      for (std::size_t k = 0; k < used.size(); ++k) rep.method += (k ? "," : "") + std::to_string(used[k]);
      rep.method += ")";
    }
  }
  rep.equal_a = rep.dims.group_image == rep.dims.commutant_of_diagram;
  rep.equal_b = rep.dims.diagram_image == rep.dims.commutant_of_group;
  rep.faithful = rep.dims.diagram_image == rep.abstract_dimension;
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace schurweyl
