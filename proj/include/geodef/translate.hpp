#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geodef/fol.hpp"
#include "geodef/geom.hpp"

namespace geodef::translate {

/// Binds every geometry relation symbol S to a field formula defining the
/// flattened relation; point variable i owns field variables
/// v_{1+(i-1)d}..v_{id}.
struct SymbolBinding {
  int d = 2;
  std::map<std::string, fol::RelSymbol> sigma;
};

/// Recursive translation from geometry-language formulas to field
/// formulas. Disjunction, implication, equivalence and universal
/// quantification go through their definitions from negation, conjunction
/// and existential quantification.
fol::Formula tr(const fol::Formula& geometry_formula, const SymbolBinding& binding);

struct TrVerification {
  bool ok = true;
  /// Point indices for the free geometry variables (ascending order)
  /// where the two sides disagree.
  std::vector<std::uint32_t> counterexample;
  std::vector<int> free_geometry_vars;
  std::uint64_t assignments_checked = 0;
  bool exhaustive = true;
};

struct TrOptions {
  /// Assignment spaces up to this size are swept exhaustively; larger
  /// ones are sampled.
  std::uint64_t exhaustive_bound = 1u << 20;
  std::uint64_t sample_budget = 100'000;
  std::uint64_t seed = 1;
};

/// Checks that the geometry satisfies the formula exactly when the field
/// satisfies its translation, over all (or sampled) assignments of points
/// to the free geometry variables.
TrVerification verify_tr(const fol::Formula& geometry_formula, const SymbolBinding& binding,
                         const geom::Geometry& g, const TrOptions& opts = {});

}  // namespace geodef::translate
