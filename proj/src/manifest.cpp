#include "defcol/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "defcol/text.hpp"

namespace defcol {

namespace {

bool is_number(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

int parse_color(std::string_view s) {
  const int c = parse_int(s);
  if (c < 1) throw std::invalid_argument("colors are 1-based: " + std::string(s));
  return c - 1;
}

}  // namespace

Atom Atom::negated() const {
  Atom a = *this;
  switch (kind) {
    case Kind::has_color: a.kind = Kind::not_color; break;
    case Kind::not_color: a.kind = Kind::has_color; break;
    case Kind::same: a.kind = Kind::differ; break;
    case Kind::differ: a.kind = Kind::same; break;
    case Kind::saturated: a.kind = Kind::unsaturated; break;
    case Kind::unsaturated: a.kind = Kind::saturated; break;
  }
  return a;
}

std::string Atom::str() const {
  switch (kind) {
    case Kind::has_color: return v + "=" + std::to_string(color + 1);
    case Kind::not_color: return v + "!=" + std::to_string(color + 1);
    case Kind::same: return v + "==" + w;
    case Kind::differ: return v + "!=" + w;
    case Kind::saturated: return "sat(" + v + ")";
    case Kind::unsaturated: return "unsat(" + v + ")";
  }
  return "?";
}

Atom parse_atom(std::string_view text) {
  text = trim(text);
  Atom a;
  auto call = [&](std::string_view head, Atom::Kind kind) {
    if (!starts_with(text, head) || text.back() != ')') return false;
    a.kind = kind;
    a.v = std::string(text.substr(head.size(), text.size() - head.size() - 1));
    if (a.v.empty()) throw std::invalid_argument("empty vertex in " + std::string(text));
    return true;
  };
  if (call("sat(", Atom::Kind::saturated) || call("unsat(", Atom::Kind::unsaturated)) return a;
  std::size_t pos;
  if ((pos = text.find("!=")) != std::string_view::npos) {
    a.v = std::string(text.substr(0, pos));
    const auto rhs = text.substr(pos + 2);
    if (is_number(rhs)) {
      a.kind = Atom::Kind::not_color;
      a.color = parse_color(rhs);
    } else {
      a.kind = Atom::Kind::differ;
      a.w = std::string(rhs);
    }
  } else if ((pos = text.find("==")) != std::string_view::npos) {
    a.kind = Atom::Kind::same;
    a.v = std::string(text.substr(0, pos));
    a.w = std::string(text.substr(pos + 2));
  } else if ((pos = text.find('=')) != std::string_view::npos) {
    a.kind = Atom::Kind::has_color;
    a.v = std::string(text.substr(0, pos));
    a.color = parse_color(text.substr(pos + 1));
  } else {
    throw std::invalid_argument("not a pattern atom: " + std::string(text));
  }
  if (a.v.empty() || ((a.kind == Atom::Kind::same || a.kind == Atom::Kind::differ) && a.w.empty()))
    throw std::invalid_argument("incomplete pattern atom: " + std::string(text));
  return a;
}

std::vector<Atom> parse_atoms(std::string_view text) {
  std::vector<Atom> out;
  for (auto tok : split_ws(text)) out.push_back(parse_atom(tok));
  return out;
}

std::string NamedAssumption::str() const {
  std::string out = vertex + "=" + std::to_string(color + 1);
  if (budget) out += ":" + std::to_string(*budget);
  return out;
}

NamedAssumption parse_named_assumption(std::string_view text) {
  text = trim(text);
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw std::invalid_argument("assumption must look like v=c[:b]: " + std::string(text));
  NamedAssumption a;
  a.vertex = std::string(text.substr(0, eq));
  auto rest = text.substr(eq + 1);
  const auto colon = rest.find(':');
  a.color = parse_color(rest.substr(0, colon));
  if (colon != std::string_view::npos) a.budget = parse_int(rest.substr(colon + 1));
  return a;
}

std::vector<Assumption> resolve(const std::vector<NamedAssumption>& as, const Graph& g) {
  std::vector<Assumption> out;
  for (const auto& a : as) out.push_back({g.resolve(a.vertex), a.color, a.budget});
  return out;
}

std::string to_string(PropertyKind k) {
  switch (k) {
    case PropertyKind::noncolorable: return "noncolorable";
    case PropertyKind::same_color: return "same-color";
    case PropertyKind::forced: return "forced";
    case PropertyKind::unextendable: return "unextendable";
    case PropertyKind::exists: return "exists";
    case PropertyKind::forall: return "forall";
    case PropertyKind::girth: return "girth";
    case PropertyKind::degeneracy: return "degeneracy";
    case PropertyKind::planar: return "planar";
    case PropertyKind::note: return "note";
  }
  return "?";
}

bool Property::has_spec() const {
  switch (kind) {
    case PropertyKind::girth:
    case PropertyKind::degeneracy:
    case PropertyKind::planar:
    case PropertyKind::note: return false;
    default: return true;
  }
}

namespace {

PropertyKind parse_kind(std::string_view s) {
  for (auto k : {PropertyKind::noncolorable, PropertyKind::same_color, PropertyKind::forced, PropertyKind::unextendable,
                 PropertyKind::exists, PropertyKind::forall, PropertyKind::girth, PropertyKind::degeneracy,
                 PropertyKind::planar, PropertyKind::note})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown property kind '" + std::string(s) + "'");
}

VertexState parse_state(std::string_view tok) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')') throw std::invalid_argument("state must look like (c,d)");
  const auto parts = split_on(tok.substr(1, tok.size() - 2), ',');
  if (parts.size() != 2) throw std::invalid_argument("state must look like (c,d)");
  return {parse_color(trim(parts[0])), parse_int(trim(parts[1]))};
}

}  // namespace

Property parse_property(std::string_view line) {
  const auto tok = split_ws(line);
  if (tok.size() < 2 || tok[0] != "property") throw std::invalid_argument("expected 'property <kind> ...'");
  Property p;
  p.kind = parse_kind(tok[1]);
  std::size_t i = 2;
  switch (p.kind) {
    case PropertyKind::note: {
      const auto pos = line.find(tok[1]) + tok[1].size();
      p.text = std::string(trim(line.substr(pos)));
      if (p.text.empty()) throw std::invalid_argument("note needs text");
      return p;
    }
    case PropertyKind::planar:
      if (tok.size() != 2) throw std::invalid_argument("planar takes no arguments");
      return p;
    case PropertyKind::girth:
    case PropertyKind::degeneracy:
      if (tok.size() != 3) throw std::invalid_argument(to_string(p.kind) + " takes one integer");
      p.value = parse_int(tok[2]);
      return p;
    default: break;
  }
  if (tok.size() < 3) throw std::invalid_argument("missing color spec");
  p.spec = ColorSpec::parse(tok[i++]);
  if (p.kind == PropertyKind::same_color) {
    if (tok.size() != 5) throw std::invalid_argument("same-color needs exactly two vertices");
    p.pair = {std::string(tok[3]), std::string(tok[4])};
    return p;
  }
  bool in_consequence = false;
  while (i < tok.size()) {
    const auto word = tok[i++];
    if (word == "assume") {
      if (i >= tok.size()) throw std::invalid_argument("assume needs a list");
      for (auto part : split_on(tok[i++], ',')) p.assume.push_back(parse_named_assumption(part));
    } else if (word == "at") {
      if (i >= tok.size()) throw std::invalid_argument("at needs a vertex");
      p.at = std::string(tok[i++]);
    } else if (word == "states") {
      while (i < tok.size() && !tok[i].empty() && tok[i].front() == '(') p.states.insert(parse_state(tok[i++]));
    } else if (word == "pattern") {
      while (i < tok.size()) {
        if (tok[i] == "implies") {
          if (p.kind != PropertyKind::forall || in_consequence) throw std::invalid_argument("misplaced 'implies'");
          in_consequence = true;
          ++i;
          continue;
        }
        (in_consequence ? p.consequence : p.pattern).push_back(parse_atom(tok[i++]));
      }
    } else {
      throw std::invalid_argument("unexpected token '" + std::string(word) + "'");
    }
  }
  if (p.kind == PropertyKind::forced && p.at.empty()) throw std::invalid_argument("forced needs 'at <vertex>'");
  if (p.kind == PropertyKind::forall && !in_consequence) {
    // `pattern X` alone means every coloring satisfies X
    p.consequence = std::move(p.pattern);
    p.pattern.clear();
  }
  if (p.kind == PropertyKind::forall && p.consequence.empty()) throw std::invalid_argument("forall needs a consequence");
  return p;
}

Manifest parse_manifest(std::string_view text) {
  Manifest m;
  std::size_t n = 0;
  for (auto line : split_lines(text)) {
    ++n;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      m.properties.push_back(parse_property(t));
    } catch (const std::invalid_argument& e) {
      throw ParseError(n, e.what());
    }
  }
  return m;
}

std::string format_property(const Property& p) {
  std::ostringstream os;
  os << "property " << to_string(p.kind);
  switch (p.kind) {
    case PropertyKind::note: os << ' ' << p.text; return os.str();
    case PropertyKind::planar: return os.str();
    case PropertyKind::girth:
    case PropertyKind::degeneracy: os << ' ' << p.value; return os.str();
    default: break;
  }
  os << ' ' << p.spec.str();
  if (p.kind == PropertyKind::same_color) {
    os << ' ' << p.pair.at(0) << ' ' << p.pair.at(1);
    return os.str();
  }
  if (!p.assume.empty()) {
    os << " assume ";
    for (std::size_t i = 0; i < p.assume.size(); ++i) os << (i ? "," : "") << p.assume[i].str();
  }
  if (!p.at.empty()) os << " at " << p.at;
  if (p.kind == PropertyKind::forced) {
    os << " states";
    for (const auto& [c, d] : p.states) os << " (" << c + 1 << ',' << d << ')';
  }
  if (!p.pattern.empty() || !p.consequence.empty()) {
    os << " pattern";
    for (const auto& a : p.pattern) os << ' ' << a.str();
    if (p.kind == PropertyKind::forall) {
      if (!p.pattern.empty()) os << " implies";
      for (const auto& a : p.consequence) os << ' ' << a.str();
    }
  }
  return os.str();
}

std::string serialize_manifest(const Manifest& m) {
  std::string out;
  for (const auto& p : m.properties) out += format_property(p) + "\n";
  return out;
}

void check_manifest_terminals(const Manifest& m, const Graph& g) {
  auto need = [&](const std::string& name) {
    if (!name.empty()) (void)g.resolve(name);
  };
  for (const auto& p : m.properties) {
    for (const auto& a : p.assume) need(a.vertex);
    for (const auto& v : p.pair) need(v);
    need(p.at);
    for (const auto* list : {&p.pattern, &p.consequence})
      for (const auto& a : *list) {
        need(a.v);
        need(a.w);
      }
  }
}

}  // namespace defcol
