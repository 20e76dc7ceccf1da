#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geodef/defin.hpp"
#include "geodef/field.hpp"
#include "geodef/geom.hpp"
#include "geodef/translate.hpp"

namespace geodef::specio {

/// "gf(q)", "gf(p^k)" or "Q".
struct FieldSpec {
  bool rational = false;
  int p = 0;
  int k = 0;

  Gf make() const;
  std::string str() const;
  bool operator==(const FieldSpec&) const = default;
};

FieldSpec parse_field_spec(const std::string& text);

/// One "name := formula" or "name := formula : arity" line.
struct Stanza {
  std::string name;
  std::string formula_text;
  std::optional<int> arity;
};

/// Stanza files: one stanza per line, '#' starts a comment, blank lines
/// are ignored. Geometry files may also carry "field <spec>" and
/// "dim <d>" directive lines.
struct StanzaFile {
  std::optional<FieldSpec> field;
  std::optional<int> dim;
  std::vector<Stanza> stanzas;
};

StanzaFile parse_stanza_file(std::istream& is);
StanzaFile load_stanza_file(const std::string& path);

struct GeometryFile {
  std::string name;  // file stem
  geom::Geometry geometry;
};

/// Builds the geometry of a .geo file; field/dim may come from the file
/// or from the overrides, and must agree when both are present.
GeometryFile load_geometry(const std::string& path, std::optional<FieldSpec> field_override,
                           std::optional<int> dim_override);

std::vector<std::pair<std::string, fol::Formula>> load_formulas(const std::string& path);

translate::SymbolBinding load_binding(const std::string& path, int d);

/// Parses "<formula> : <arity>" into a relation symbol for dimension d.
fol::RelSymbol parse_relation_spec(const std::string& text, int d);

std::string emit_dot(const defin::HasseResult& hasse);

}  // namespace geodef::specio
