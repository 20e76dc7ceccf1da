#include "geodef/specio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace geodef::specio {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string file_stem(const std::string& path) {
  std::size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  std::size_t dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace

Gf FieldSpec::make() const {
  if (rational) fail(Err::NotEnumerable, "the rationals are not a finite field");
  return make_gf(p, k);
}

std::string FieldSpec::str() const {
  if (rational) return "Q";
  if (k == 1) return "gf(" + std::to_string(p) + ")";
  return "gf(" + std::to_string(p) + "^" + std::to_string(k) + ")";
}

FieldSpec parse_field_spec(const std::string& text) {
  std::string t = trim(text);
  if (t == "Q" || t == "q") return FieldSpec{true, 0, 0};
  if (t.rfind("gf(", 0) != 0 || t.back() != ')')
    fail(Err::SyntaxError, "bad field spec '" + text + "' (expected gf(q), gf(p^k) or Q)");
  std::string inner = t.substr(3, t.size() - 4);
  auto caret = inner.find('^');
  auto to_int = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      fail(Err::SyntaxError, "bad number '" + s + "' in field spec");
    return std::stoi(s);
  };
  if (caret != std::string::npos) {
    int p = to_int(inner.substr(0, caret));
    int k = to_int(inner.substr(caret + 1));
    if (!is_prime(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
    return FieldSpec{false, p, k};
  }
  int q = to_int(inner);
  if (q < 2) fail(Err::SyntaxError, "field size must be at least 2");
  // Factor q as a prime power.
  for (int p = 2; p <= q; ++p) {
    if (!is_prime(p) || q % p != 0) continue;
    int k = 0;
    int rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (rest != 1) fail(Err::NotPrime, std::to_string(q) + " is not a prime power");
    return FieldSpec{false, p, k};
  }
  fail(Err::NotPrime, std::to_string(q) + " is not a prime power");
}

StanzaFile parse_stanza_file(std::istream& is) {
  StanzaFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("field ", 0) == 0) {
      out.field = parse_field_spec(line.substr(6));
      continue;
    }
    if (line.rfind("dim ", 0) == 0) {
      out.dim = std::stoi(trim(line.substr(4)));
      continue;
    }
    auto assign = line.find(":=");
    if (assign == std::string::npos)
      fail(Err::SyntaxError, "line " + std::to_string(lineno) + ": expected 'name := formula'");
    Stanza st;
    st.name = trim(line.substr(0, assign));
    std::string rhs = trim(line.substr(assign + 2));
    // An arity suffix is the last ':' not part of ':='.
    auto colon = rhs.rfind(':');
    if (colon != std::string::npos) {
      std::string tail = trim(rhs.substr(colon + 1));
      if (!tail.empty() && std::all_of(tail.begin(), tail.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          })) {
        st.arity = std::stoi(tail);
        rhs = trim(rhs.substr(0, colon));
      }
    }
    if (st.name.empty() || rhs.empty())
      fail(Err::SyntaxError, "line " + std::to_string(lineno) + ": empty stanza side");
    st.formula_text = rhs;
    out.stanzas.push_back(std::move(st));
  }
  return out;
}

StanzaFile load_stanza_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Err::InvalidArgument, "cannot open '" + path + "'");
  return parse_stanza_file(f);
}

GeometryFile load_geometry(const std::string& path, std::optional<FieldSpec> field_override,
                           std::optional<int> dim_override) {
  StanzaFile sf = load_stanza_file(path);
  std::optional<FieldSpec> fs = sf.field;
  if (field_override) {
    if (fs && !(*fs == *field_override))
      fail(Err::FieldMismatch, "field flag disagrees with '" + path + "'");
    fs = field_override;
  }
  if (!fs) fail(Err::InvalidArgument, "no field given for '" + path + "'");
  std::optional<int> dim = sf.dim;
  if (dim_override) {
    if (dim && *dim != *dim_override)
      fail(Err::FieldMismatch, "dim flag disagrees with '" + path + "'");
    dim = dim_override;
  }
  if (!dim) fail(Err::InvalidArgument, "no dimension given for '" + path + "'");
  if (sf.stanzas.empty()) fail(Err::EmptyDelta, "no relations in '" + path + "'");

  Gf field = fs->make();
  std::vector<std::pair<std::string, fol::RelSymbol>> delta;
  for (const Stanza& st : sf.stanzas) {
    if (!st.arity) fail(Err::SyntaxError, "relation '" + st.name + "' is missing ': arity'");
    delta.emplace_back(st.name,
                       fol::make_rel_symbol(fol::parse(st.formula_text), *st.arity, *dim));
  }
  return GeometryFile{file_stem(path), geom::build_geometry(std::move(delta), field, *dim)};
}

std::vector<std::pair<std::string, fol::Formula>> load_formulas(const std::string& path) {
  StanzaFile sf = load_stanza_file(path);
  std::vector<std::pair<std::string, fol::Formula>> out;
  for (const Stanza& st : sf.stanzas) out.emplace_back(st.name, fol::parse(st.formula_text));
  return out;
}

translate::SymbolBinding load_binding(const std::string& path, int d) {
  StanzaFile sf = load_stanza_file(path);
  translate::SymbolBinding b;
  b.d = d;
  for (const Stanza& st : sf.stanzas) {
    if (!st.arity) fail(Err::SyntaxError, "binding '" + st.name + "' is missing ': arity'");
    b.sigma.emplace(st.name, fol::make_rel_symbol(fol::parse(st.formula_text), *st.arity, d));
  }
  return b;
}

fol::RelSymbol parse_relation_spec(const std::string& text, int d) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos)
    fail(Err::SyntaxError, "expected '<formula> : <arity>' in '" + text + "'");
  std::string tail = trim(text.substr(colon + 1));
  if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      }))
    fail(Err::SyntaxError, "bad arity '" + tail + "'");
  return fol::make_rel_symbol(fol::parse(trim(text.substr(0, colon))), std::stoi(tail), d);
}

std::string emit_dot(const defin::HasseResult& hasse) {
  auto label = [&](int cls) {
    std::string s;
    for (std::size_t i = 0; i < hasse.classes[cls].size(); ++i) {
      if (i > 0) s += " = ";
      s += hasse.classes[cls][i];
    }
    return s;
  };
  std::string out = "digraph concepts {\n";
  for (std::size_t c = 0; c < hasse.classes.size(); ++c)
    out += "  \"" + label(static_cast<int>(c)) + "\";\n";
  for (const auto& [src, dst] : hasse.edges)
    out += "  \"" + label(src) + "\" -> \"" + label(dst) + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace geodef::specio
