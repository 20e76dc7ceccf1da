// geodef: coordinate-geometry definability workbench over finite fields
// and the rationals.
//
// Exit codes: 0 success, 1 suite failure, 2 usage/parse errors,
// 3 capacity exceeded, 4 a theorem-hypothesis caveat applies.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geodef/affine.hpp"
#include "geodef/autgrp.hpp"
#include "geodef/defin.hpp"
#include "geodef/errors.hpp"
#include "geodef/fol.hpp"
#include "geodef/geom.hpp"
#include "geodef/specio.hpp"
#include "geodef/util.hpp"
#include "geodef/verify.hpp"

namespace {

using geodef::Err;
using geodef::Error;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitCaveat = 4;

struct CommonOpts {
  std::string field_spec;
  int dim = 0;
  std::vector<std::string> geometry_files;
  std::string relation_spec;
  std::string out_path;
  std::string format = "text";
  std::uint64_t capacity = 10'000'000;
  std::uint32_t search_capacity = 32;
  std::uint64_t seed = 12022;
  std::vector<std::string> only;
  unsigned threads = geodef::default_threads();
};

void write_output(const CommonOpts& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opts.out_path, std::ios::binary);
  if (!f) geodef::fail(Err::InvalidArgument, "cannot write '" + opts.out_path + "'");
  f << text;
}

std::optional<geodef::specio::FieldSpec> field_override(const CommonOpts& opts) {
  if (opts.field_spec.empty()) return std::nullopt;
  return geodef::specio::parse_field_spec(opts.field_spec);
}

std::optional<int> dim_override(const CommonOpts& opts) {
  if (opts.dim == 0) return std::nullopt;
  return opts.dim;
}

geodef::specio::GeometryFile load_one_geometry(const CommonOpts& opts) {
  if (opts.geometry_files.size() != 1)
    geodef::fail(Err::InvalidArgument, "this command takes exactly one --geometry file");
  return geodef::specio::load_geometry(opts.geometry_files[0], field_override(opts),
                                       dim_override(opts));
}

std::string perm_to_string(const geodef::autgrp::Perm& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s += ' ';
    s += std::to_string(p[i]);
  }
  return s;
}

json group_report(const geodef::geom::Geometry& g, const geodef::autgrp::PointGroup& grp) {
  json rep;
  rep["schema"] = "geodef-report/1";
  rep["field"] = g.field.name();
  rep["dim"] = g.d;
  rep["universe"] = g.universe();
  rep["size"] = grp.size();
  json elems = json::array();
  for (const auto& p : grp.elems) elems.push_back(perm_to_string(p));
  rep["elements"] = std::move(elems);
  return rep;
}

// Smallest non-identity elements, a quick handle on the group.
json generator_hint(const geodef::autgrp::PointGroup& grp) {
  json hint = json::array();
  std::size_t count = 0;
  geodef::autgrp::Perm id = geodef::autgrp::identity_perm(grp.universe);
  for (const auto& p : grp.elems) {
    if (p == id) continue;
    hint.push_back(perm_to_string(p));
    if (++count == 2) break;
  }
  return hint;
}

int cmd_group(const CommonOpts& opts, bool affine_only) {
  geodef::specio::GeometryFile gf = load_one_geometry(opts);
  const geodef::geom::Geometry& g = gf.geometry;

  geodef::autgrp::PointGroup grp;
  std::vector<geodef::affine::AffineMap<geodef::Gf>> affine_maps;
  if (affine_only) {
    affine_maps = geodef::affine::affaut_maps(g, opts.capacity);
    std::vector<geodef::autgrp::Perm> perms;
    for (const auto& m : affine_maps)
      perms.push_back(geodef::affine::to_perm(g.field, m, g.d));
    grp = geodef::autgrp::make_group(static_cast<std::uint32_t>(g.universe()), std::move(perms));
  } else {
    grp = geodef::autgrp::brute_force_aut(g, opts.search_capacity, opts.threads);
  }

  json rep = group_report(g, grp);
  rep["geometry"] = gf.name;
  rep["kind"] = affine_only ? "affaut" : "aut";
  rep["generator_hint"] = generator_hint(grp);

  if (!affine_only) {
    // Decomposition of each automorphism into an affine automorphism
    // after an induced field automorphism.
    json table = json::array();
    for (const auto& alpha : grp.elems) {
      json row;
      row["perm"] = perm_to_string(alpha);
      try {
        geodef::autgrp::Decomposition dec = geodef::autgrp::decompose(alpha, g);
        row["affine"] = geodef::affine::serialize_affine(g.field, dec.affine_part);
        row["frobenius_exponent"] = dec.field_part.exponent;
      } catch (const Error& e) {
        row["error"] = geodef::err_name(e.code());
      }
      table.push_back(std::move(row));
    }
    rep["decomposition"] = std::move(table);
  }

  if (opts.format == "json") {
    write_output(opts, rep.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << (affine_only ? "affaut" : "aut") << " of " << gf.name << " over " << g.field.name()
       << " d=" << g.d << "\n";
    os << "size " << grp.size() << "\n";
    for (const auto& hint : generator_hint(grp))
      os << "hint " << hint.get<std::string>() << "\n";
    if (affine_only) {
      for (const auto& m : affine_maps)
        os << geodef::affine::serialize_affine(g.field, m) << "\n";
    } else {
      for (const auto& p : grp.elems) {
        os << perm_to_string(p);
        try {
          geodef::autgrp::Decomposition dec = geodef::autgrp::decompose(p, g);
          os << " | " << geodef::affine::serialize_affine(g.field, dec.affine_part) << " frob "
             << dec.field_part.exponent;
        } catch (const Error& e) {
          os << " | " << geodef::err_name(e.code());
        }
        os << "\n";
      }
    }
    write_output(opts, os.str());
  }
  return kExitOk;
}

int cmd_definable(const CommonOpts& opts) {
  geodef::specio::GeometryFile gf = load_one_geometry(opts);
  const geodef::geom::Geometry& g = gf.geometry;
  if (opts.relation_spec.empty())
    geodef::fail(Err::InvalidArgument, "--relation '<formula> : <arity>' is required");
  geodef::fol::RelSymbol rel = geodef::specio::parse_relation_spec(opts.relation_spec, g.d);
  geodef::geom::ExtRelation ext = geodef::geom::materialize(rel, g.field, g.d);
  geodef::defin::GroupsContext ctx =
      geodef::defin::compute_groups(g, opts.search_capacity, opts.capacity, opts.threads);
  geodef::defin::DefinabilityReport rep = geodef::defin::theorem1_check(ext, g, ctx);

  json j;
  j["schema"] = "geodef-report/1";
  j["field"] = g.field.name();
  j["dim"] = g.d;
  j["geometry"] = gf.name;
  j["relation"] = opts.relation_spec;
  j["definable_in_geometry"] = rep.definable_in_geometry;
  j["field_definable"] = rep.field_definable;
  j["closed_under_aut"] = rep.closed_under_aut;
  j["closed_under_affaut"] = rep.closed_under_affaut;
  j["clause_ii"] = rep.clause_ii;
  j["clause_iii"] = rep.clause_iii;
  j["consistent"] = rep.consistent;
  j["two_element_caveat"] = rep.two_element_caveat;
  auto witness = [](const std::optional<geodef::defin::ClosureWitness>& w) -> json {
    if (!w) return nullptr;
    json out;
    out["map"] = perm_to_string(w->map);
    out["tuple"] = w->tuple;
    return out;
  };
  j["witness_aut"] = witness(rep.witness_aut);
  j["witness_affaut"] = witness(rep.witness_affaut);

  if (opts.format == "json") {
    write_output(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "definability of '" << opts.relation_spec << "' in " << gf.name << "\n";
    os << "(i)   definable in the geometry: " << (rep.definable_in_geometry ? "yes" : "no") << "\n";
    os << "(ii)  field-definable and Aut-closed: " << (rep.clause_ii ? "yes" : "no") << "\n";
    os << "(iii) field-definable and AffAut-closed: " << (rep.clause_iii ? "yes" : "no") << "\n";
    os << "consistent: " << (rep.consistent ? "yes" : "no") << "\n";
    if (rep.two_element_caveat)
      os << "caveat: clause (iii) sits outside the equivalence hypothesis over gf(2)\n";
    write_output(opts, os.str());
  }
  if (!rep.consistent) return kExitFailure;
  return rep.two_element_caveat ? kExitCaveat : kExitOk;
}

int cmd_compare(const CommonOpts& opts) {
  if (opts.geometry_files.size() != 2)
    geodef::fail(Err::InvalidArgument, "compare takes exactly two --geometry files");
  auto a = geodef::specio::load_geometry(opts.geometry_files[0], field_override(opts),
                                         dim_override(opts));
  auto b = geodef::specio::load_geometry(opts.geometry_files[1], field_override(opts),
                                         dim_override(opts));
  geodef::defin::ComparisonVerdict v = geodef::defin::compare_concepts(
      a.geometry, b.geometry, opts.search_capacity, opts.capacity, opts.threads);

  json j;
  j["schema"] = "geodef-report/1";
  j["left"] = a.name;
  j["right"] = b.name;
  j["order"] = geodef::defin::cn_order_name(v.order);
  j["order_via_aut"] = geodef::defin::cn_order_name(v.order_via_aut);
  auto witness = [](const std::optional<geodef::defin::ConceptWitness>& w) -> json {
    if (!w) return nullptr;
    json out;
    out["relation"] = w->relation_name;
    out["map"] = perm_to_string(w->violation.map);
    out["tuple"] = w->violation.tuple;
    return out;
  };
  j["witness_not_in_left"] = witness(v.missing_left);
  j["witness_not_in_right"] = witness(v.missing_right);

  if (opts.format == "json") {
    write_output(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "Cn(" << a.name << ") vs Cn(" << b.name << "): " << geodef::defin::cn_order_name(v.order)
       << "\n";
    if (v.missing_left)
      os << "concept of " << b.name << " outside Cn(" << a.name
         << "): " << v.missing_left->relation_name << "\n";
    if (v.missing_right)
      os << "concept of " << a.name << " outside Cn(" << b.name
         << "): " << v.missing_right->relation_name << "\n";
    write_output(opts, os.str());
  }
  return kExitOk;
}

int cmd_hasse(const CommonOpts& opts) {
  if (opts.geometry_files.empty())
    geodef::fail(Err::InvalidArgument, "hasse needs at least one --geometry file");
  std::vector<std::pair<std::string, geodef::geom::Geometry>> named;
  for (const std::string& path : opts.geometry_files) {
    auto gf = geodef::specio::load_geometry(path, field_override(opts), dim_override(opts));
    named.emplace_back(gf.name, std::move(gf.geometry));
  }
  geodef::defin::HasseResult h = geodef::defin::hasse(named, opts.capacity);
  if (opts.format == "json") {
    json j;
    j["schema"] = "geodef-report/1";
    j["classes"] = h.classes;
    json edges = json::array();
    for (auto& [s, t] : h.edges) edges.push_back({s, t});
    j["edges"] = std::move(edges);
    write_output(opts, j.dump(2) + "\n");
  } else {
    write_output(opts, geodef::specio::emit_dot(h));
  }
  return kExitOk;
}

int cmd_verify(const CommonOpts& opts) {
  geodef::verify::Options vo;
  vo.only = opts.only;
  vo.seed = opts.seed;
  vo.threads = opts.threads;
  for (const std::string& name : vo.only) {
    bool known = false;
    for (const std::string& n : geodef::verify::check_names()) known = known || n == name;
    if (!known) geodef::fail(Err::InvalidArgument, "unknown check '" + name + "'");
  }
  std::vector<geodef::verify::Outcome> outcomes = geodef::verify::run_checks(vo);

  bool all_pass = true;
  if (opts.format == "json") {
    json j;
    j["schema"] = "geodef-report/1";
    j["seed"] = vo.seed;
    json checks = json::array();
    for (const auto& o : outcomes) {
      json c;
      c["name"] = o.name;
      c["pass"] = o.pass;
      c["detail"] = o.detail;
      checks.push_back(std::move(c));
      all_pass = all_pass && o.pass;
    }
    j["checks"] = std::move(checks);
    j["notes"] = geodef::verify::deviation_notes();
    write_output(opts, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& o : outcomes) {
      os << (o.pass ? "PASS" : "FAIL") << " " << o.name << " - " << o.detail << "\n";
      all_pass = all_pass && o.pass;
    }
    for (const std::string& n : geodef::verify::deviation_notes()) os << "note: " << n << "\n";
    write_output(opts, os.str());
  }
  for (const auto& o : outcomes)
    std::cerr << o.name << ": " << o.seconds << "s\n";
  return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinate-geometry definability workbench"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub, bool with_geometry = true) {
    sub->add_option("--field", opts.field_spec, "field spec: gf(q), gf(p^k) or Q");
    sub->add_option("--dim", opts.dim, "dimension d >= 2");
    if (with_geometry)
      sub->add_option("--geometry", opts.geometry_files, "geometry spec file (.geo)");
    sub->add_option("--out", opts.out_path, "write output to a file instead of stdout");
    sub->add_option("--format", opts.format, "output format: text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--capacity", opts.capacity, "affine enumeration capacity bound");
    sub->add_option("--search-capacity", opts.search_capacity,
                    "universe bound for the automorphism search");
    sub->add_option("--seed", opts.seed, "seed for randomized suites");
    sub->add_option("--threads", opts.threads, "worker threads");
  };

  CLI::App* aut = app.add_subcommand("aut", "full automorphism group of a geometry");
  add_common(aut);
  CLI::App* affaut = app.add_subcommand("affaut", "affine automorphism group of a geometry");
  add_common(affaut);
  CLI::App* definable =
      app.add_subcommand("definable", "three-way definability report for a relation");
  add_common(definable);
  definable->add_option("--relation", opts.relation_spec, "'<formula> : <arity>'");
  CLI::App* compare = app.add_subcommand("compare", "compare the concept-sets of two geometries");
  add_common(compare);
  CLI::App* hasse = app.add_subcommand("hasse", "concept-set diagram of several geometries");
  add_common(hasse);
  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suites");
  add_common(verify, false);
  verify->add_option("--only", opts.only, "run only the named checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("aut")) return cmd_group(opts, false);
    if (app.got_subcommand("affaut")) return cmd_group(opts, true);
    if (app.got_subcommand("definable")) return cmd_definable(opts);
    if (app.got_subcommand("compare")) return cmd_compare(opts);
    if (app.got_subcommand("hasse")) return cmd_hasse(opts);
    if (app.got_subcommand("verify")) return cmd_verify(opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Err::CapacityExceeded ? kExitCapacity : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
