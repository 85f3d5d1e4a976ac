#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes to the supplied streams, so tests can drive it in-process.
//
// Exit codes: 0 verified / success, 1 computed but an equality is false,
// 2 usage or input error, 3 a configured cap was exceeded.

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schurweyl/algebra.hpp"
#include "schurweyl/combinatorics.hpp"
#include "schurweyl/diagram.hpp"
#include "schurweyl/duality.hpp"
#include "schurweyl/errors.hpp"
#include "schurweyl/field.hpp"
#include "schurweyl/rational.hpp"

namespace schurweyl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Byte offsets where the items of a top-level JSON array start.
inline std::vector<std::size_t> top_level_item_offsets(const std::string& text) {
  std::vector<std::size_t> out;
  int depth = 0;
  bool in_string = false, escaped = false, expect_item = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (expect_item && !(depth == 1 && c == ']')) out.push_back(i);
    expect_item = false;
    switch (c) {
      case '"': in_string = true; break;
      case '[':
      case '{':
        ++depth;
        if (depth == 1 && c == '[') expect_item = true;
        break;
      case ']':
      case '}': --depth; break;
      case ',':
        if (depth == 1) expect_item = true;
        break;
      default: break;
    }
  }
  return out;
}

/// Text rendering of a JSON report: "key: value" lines, nested keys dotted;
/// arrays of objects become one "k=v ..." line per element.
inline void render_text(const nlohmann::ordered_json& j, std::ostream& out, const std::string& prefix = "") {
  auto scalar = [](const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      const std::string key = prefix.empty() ? k : prefix + "." + k;
      if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_object()))
        render_text(v, out, key);
      else
        out << key << ": " << scalar(v) << "\n";
    }
  } else if (j.is_array()) {
    for (const auto& row : j) {
      if (!prefix.empty()) out << prefix << ": ";
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        out << (first ? "" : " ") << k << "=" << scalar(v);
        first = false;
      }
      out << "\n";
    }
  } else {
    out << (prefix.empty() ? "" : prefix + ": ") << scalar(j) << "\n";
  }
}

struct Options {
  std::string format = "json";
  unsigned threads = 1;
  std::optional<std::uint64_t> prime_seed;
  bool timing = false;
  int enumeration_cap = kDefaultEnumerationCap;
  std::size_t space_cap = kDefaultSpaceCap;
  SolverCaps caps;
};

inline void emit(const nlohmann::ordered_json& j, const Options& o, std::ostream& out) {
  if (o.format == "text")
    render_text(j, out);
  else
    out << j.dump(2) << "\n";
}

inline std::pair<std::uint64_t, std::uint64_t> primes_for(const Options& o) {
  if (!o.prime_seed) return {kDefaultPrimeA, kDefaultPrimeB};
  const std::uint64_t a = prime_from_seed(*o.prime_seed);
  std::uint64_t b = a;
  for (std::uint64_t k = 1; b == a; ++k) b = prime_from_seed(*o.prime_seed + k);
  return {a, b};
}

// ---------------------------------------------------------------------------
// multiply

inline Ring parse_ring_flag(const std::string& x) {
  if (x == "generic") return Ring::generic();
  return Ring::specialized(parse_rational(x));
}

/// One input item: a diagram object, a bare edge list, or an element.
inline AlgebraElement item_to_element(const nlohmann::json& j, const Ring& ring) {
  if (j.is_object() && j.contains("terms")) {
    AlgebraElement a = element_from_json(j);
    if (a.ring() == ring) return a;
    if (a.ring().is_generic() && !ring.is_generic()) return specialize(a, ring.x0());
    throw RingMismatch("element is over " + a.ring().describe() + " but --x asks for " + ring.describe());
  }
  const BrauerDiagram d = j.is_array() ? deserialize(j.dump()) : diagram_from_json(j);
  return AlgebraElement::from_diagram(d, ring);
}

inline int cmd_multiply(const std::string& file, const std::string& x, const Options& o, std::ostream& out,
                        std::ostream& err) {
  Ring ring = Ring::generic();
  try {
    ring = parse_ring_flag(x);
  } catch (const Error& e) {
    err << "error: --x must be 'generic' or a rational p/q: " << e.what() << "\n";
    return kExitUsage;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << file << "'\n";
    return kExitUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    err << "error: " << file << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")\n";
    return kExitUsage;
  }
  // A single diagram or element is accepted as a one-item list.
  const bool is_list = doc.is_array() && !(doc.size() > 0 && doc.front().is_array() && doc.front().size() == 2 &&
                                           doc.front().front().is_string());
  std::vector<nlohmann::json> items;
  std::vector<std::size_t> offsets;
  if (is_list) {
    for (const auto& v : doc) items.push_back(v);
    offsets = top_level_item_offsets(text);
  } else {
    items.push_back(doc);
  }
  if (items.empty()) {
    err << "error: " << file << ":1:1: the input lists no factors\n";
    return kExitUsage;
  }
  std::optional<AlgebraElement> product;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::size_t at = k < offsets.size() ? offsets[k] : 0;
    const auto [line, col] = line_column(text, at);
    try {
      const AlgebraElement a = item_to_element(items[k], ring);
      if (product && product->columns() != a.columns())
        throw SizeMismatch("factor has m = " + std::to_string(a.columns()) + " but earlier factors have m = " +
                           std::to_string(product->columns()));
      product = product ? multiply(*product, a) : a;
    } catch (const Error& e) {
      err << "error: " << file << ":" << line << ":" << col << ": item " << k + 1 << ": " << e.what() << "\n";
      return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
      err << "error: " << file << ":" << line << ":" << col << ": item " << k + 1 << ": " << e.what() << "\n";
      return kExitUsage;
    }
  }
  emit(to_json(*product), o, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dims

inline int cmd_dims(const std::string& family, std::optional<int> r, std::optional<int> s, std::optional<int> n,
                    const Options& o, std::ostream& out, std::ostream& err) {
  if (!r) {
    err << "error: dims needs --r\n";
    return kExitUsage;
  }
  if (*r < 0 || (s && *s < 0)) {
    err << "error: --r and --s must be nonnegative\n";
    return kExitUsage;
  }
  if (s && family != "walled") {
    err << "error: --s only applies to --family walled\n";
    return kExitUsage;
  }
  if (n && family != "deranged") {
    err << "error: --n only applies to --family deranged\n";
    return kExitUsage;
  }
  nlohmann::ordered_json j;
  j["family"] = family;
  j["r"] = *r;
  Integer formula;
  std::optional<std::size_t> enumerated;
  int columns = 0;
  if (family == "brauer") {
    formula = diagram_count(*r);
    columns = *r;
    if (columns <= o.enumeration_cap && columns >= 1) {
      std::size_t count = 0;
      for_each_diagram(columns, [&](const BrauerDiagram&) { ++count; }, o.enumeration_cap);
      enumerated = count;
    }
  } else if (family == "walled") {
    const int ss = s.value_or(0);
    j["s"] = ss;
    formula = walled_count(*r, ss);
    columns = *r + ss;
    if (columns >= 1 && columns <= o.enumeration_cap) {
      const WallContext wall(*r, ss);
      std::size_t count = 0;
      for_each_diagram(columns, [&](const BrauerDiagram& d) { count += is_walled(d, wall) ? 1 : 0; },
                       o.enumeration_cap);
      enumerated = count;
    }
  } else if (family == "deranged") {
    if (n) j["n"] = *n;
    formula = derangements(2 * *r);
    columns = 2 * *r;
    if (*r >= 1 && columns <= o.enumeration_cap) enumerated = deranged_diagrams(*r).size();
    if (n) {
      if (*n < 2 * *r) {
        err << "error: the deranged basis needs n >= 2r\n";
        return kExitUsage;
      }
      j["basis_size"] = deranged_basis(*r, *n).size();
    }
  } else {
    err << "error: --family must be brauer, walled or deranged\n";
    return kExitUsage;
  }
  if (columns == 0) enumerated = 1;  // the empty diagram
  j["formula"] = formula.get_str();
  if (enumerated) {
    j["enumerated"] = *enumerated;
    j["match"] = Integer(static_cast<unsigned long>(*enumerated)) == formula;
  } else {
    j["enumerated"] = nullptr;
    j["match"] = nullptr;
  }
  emit(j, o, out);
  if (!enumerated) {
    err << "error: enumeration of m = " << columns << " exceeds the cap of " << o.enumeration_cap
        << "; only the formula was printed\n";
    return kExitCap;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

inline int cmd_verify(const std::string& duality, int n, int r, int s, const std::string& mode, const Options& o,
                      std::ostream& out) {
  VerifyOptions v;
  v.mode = mode == "modular" ? Mode::modular : Mode::exact;
  v.threads = o.threads;
  std::tie(v.prime_a, v.prime_b) = primes_for(o);
  v.caps = o.caps;
  v.space_cap = o.space_cap;
  v.enumeration_cap = o.enumeration_cap;
  const auto rep = verify_duality(parse_family(duality), n, r, s, v);
  emit(rep.to_json(o.timing), o, out);
  return rep.verified() ? kExitOk : kExitFalse;
}

// ---------------------------------------------------------------------------
// derangements

inline int cmd_derangements(int max_k, const Options& o, std::ostream& out) {
  emit(derangement_table(max_k).to_json(), o, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// multiplicity

inline int cmd_multiplicity(int n, int r, const std::string& mode, const std::string& kind, const Options& o,
                            std::ostream& out) {
  if (n < 2 || r < 1) throw InvalidArgument("multiplicity needs n >= 2 and r >= 1");
  const bool trivial = kind != "adjoint", adjoint = kind != "trivial";
  nlohmann::ordered_json j;
  j["n"] = n;
  j["r"] = r;
  auto run_all = [&](const auto& field) {
    std::optional<std::size_t> t, a, a_dual;
    if (trivial) t = multiplicity_trivial(field, n, r, o.caps, o.space_cap);
    if (adjoint) {
      a = multiplicity_adjoint(field, n, r, o.caps, o.space_cap);
      a_dual = multiplicity_trivial(field, n, r + 1, o.caps, o.space_cap);
    }
    return std::tuple{t, a, a_dual};
  };
  std::optional<std::size_t> t, a, a_dual;
  if (mode == "modular") {
    // Mod-p nullities bound the rational ones from above; keep the smaller.
    const auto [pa, pb] = primes_for(o);
    auto [t1, a1, d1] = run_all(PrimeField(pa));
    auto [t2, a2, d2] = run_all(PrimeField(pb));
    auto lower = [](auto x, auto y) { return x ? std::optional<std::size_t>(std::min(*x, *y)) : x; };
    t = lower(t1, t2);
    a = lower(a1, a2);
    a_dual = lower(d1, d2);
    j["method"] = "mod-p(" + std::to_string(pa) + "," + std::to_string(pb) + ")";
  } else {
    std::tie(t, a, a_dual) = run_all(RationalField{});
    j["method"] = "exact";
  }
  if (t) {
    j["trivial"] = *t;
    j["N(r)"] = derangements(r).get_str();
    j["trivial_matches_N(r)"] = Integer(static_cast<unsigned long>(*t)) == derangements(r);
  }
  if (a) {
    j["adjoint"] = *a;
    j["adjoint_via_invariants"] = *a_dual;
    j["adjoint_routes_agree"] = *a == *a_dual;
    j["N(r-1)"] = derangements(r - 1).get_str();
  }
  emit(j, o, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Brauer-type diagram algebras and Schur-Weyl duality checks", "schurweyl"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", o.threads, "Worker threads for the linear solvers")->check(CLI::Range(1u, 256u));
  app.add_option("--prime-seed", o.prime_seed, "Seed selecting the two primes of modular mode");
  app.add_flag("--timing", o.timing, "Include elapsed_ms in reports");
  app.add_option("--enumeration-cap", o.enumeration_cap, "Largest m for diagram enumeration")
      ->check(CLI::Range(1, 8));
  app.add_option("--space-cap", o.space_cap, "Largest tensor space dimension");
  app.add_option("--exact-cap", o.caps.exact_unknowns, "Largest exact linear system (unknowns)");
  app.add_option("--modp-cap", o.caps.modp_unknowns, "Largest mod-p linear system (unknowns)");

  std::string file, x = "generic";
  auto* multiply = app.add_subcommand("multiply", "Multiply the listed diagrams/elements left to right");
  multiply->add_option("--file", file, "JSON file with a list of diagrams or elements")->required();
  multiply->add_option("--x", x, "Parameter: generic or a rational p/q");

  std::string family;
  std::optional<int> dr, ds, dn;
  auto* dims = app.add_subcommand("dims", "Dimension formulas checked against enumeration");
  dims->add_option("--family", family, "brauer, walled or deranged")
      ->required()
      ->check(CLI::IsMember({"brauer", "walled", "deranged"}));
  dims->add_option("--r", dr, "Columns (left of the wall)");
  dims->add_option("--s", ds, "Columns right of the wall");
  dims->add_option("--n", dn, "Vector space dimension (deranged basis check)");

  std::string duality, mode = "exact";
  int vn = 0, vr = 0, vs = 0;
  auto* verify = app.add_subcommand("verify", "Check a double-centralizer duality");
  verify->add_option("--duality", duality, "glA, sp, o, so-direct, walled or deranged")
      ->required()
      ->check(CLI::IsMember({"glA", "sp", "o", "so-direct", "walled", "deranged"}));
  verify->add_option("--n", vn, "Vector space dimension")->required();
  verify->add_option("--r", vr, "Tensor power (left of the wall)")->required();
  auto* s_opt = verify->add_option("--s", vs, "Dual tensor power (walled only)");
  verify->add_option("--mode", mode, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));

  int max_k = 0;
  auto* der = app.add_subcommand("derangements", "Table of derangement numbers N(0..K)");
  der->add_option("--max", max_k, "Largest k")->required()->check(CLI::Range(0, 100000));

  int mn = 0, mr = 0;
  std::string mmode = "exact", kind = "both";
  auto* mult = app.add_subcommand("multiplicity", "Trivial and adjoint multiplicities in sl_n^(x)r");
  mult->add_option("--n", mn, "n")->required();
  mult->add_option("--r", mr, "r")->required();
  mult->add_option("--mode", mmode, "exact or modular")->check(CLI::IsMember({"exact", "modular"}));
  mult->add_option("--kind", kind, "trivial, adjoint or both")->check(CLI::IsMember({"trivial", "adjoint", "both"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*multiply) return cmd_multiply(file, x, o, out, err);
    if (*dims) return cmd_dims(family, dr, ds, dn, o, out, err);
    if (*verify) {
      if (s_opt->count() > 0 && duality != "walled") {
        err << "error: --s only applies to --duality walled\n";
        return kExitUsage;
      }
      return cmd_verify(duality, vn, vr, vs, mode, o, out);
    }
    if (*der) return cmd_derangements(max_k, o, out);
    if (*mult) return cmd_multiplicity(mn, mr, mmode, kind, o, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace schurweyl::cli
