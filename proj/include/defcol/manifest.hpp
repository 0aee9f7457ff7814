#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "defcol/graph.hpp"
#include "defcol/solver.hpp"

namespace defcol {

/// One literal of a coloring pattern. Colors are 0-based here and 1-based in text.
///   v=c  v!=c  v==w  v!=w  sat(v)  unsat(v)
struct Atom {
  enum class Kind { has_color, not_color, same, differ, saturated, unsaturated };
  Kind kind = Kind::has_color;
  std::string v;
  std::string w;
  int color = 0;

  [[nodiscard]] Atom negated() const;
  [[nodiscard]] std::string str() const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

Atom parse_atom(std::string_view text);
/// Whitespace-separated conjunction of atoms.
std::vector<Atom> parse_atoms(std::string_view text);

/// Assumption that still refers to a terminal by name (resolved against a graph on use).
struct NamedAssumption {
  std::string vertex;
  int color = 0;
  std::optional<int> budget;

  [[nodiscard]] std::string str() const;
  friend bool operator==(const NamedAssumption&, const NamedAssumption&) = default;
};

NamedAssumption parse_named_assumption(std::string_view text);
std::vector<Assumption> resolve(const std::vector<NamedAssumption>& as, const Graph& g);

enum class PropertyKind {
  noncolorable,
  same_color,
  forced,
  unextendable,
  exists,
  forall,
  girth,
  degeneracy,
  planar,
  note,  ///< free-text annotation that is recorded but not checked
};

std::string to_string(PropertyKind k);

struct Property {
  PropertyKind kind = PropertyKind::noncolorable;
  ColorSpec spec;
  std::vector<NamedAssumption> assume;
  std::vector<std::string> pair;    ///< same-color
  std::string at;                   ///< forced
  std::set<VertexState> states;     ///< forced, 0-based colors
  std::vector<Atom> pattern;        ///< exists: the pattern; forall: the condition
  std::vector<Atom> consequence;    ///< forall
  int value = 0;                    ///< girth / degeneracy
  std::string text;                 ///< note

  [[nodiscard]] bool has_spec() const;
  friend bool operator==(const Property&, const Property&) = default;
};

struct Manifest {
  std::vector<Property> properties;
  friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Line grammar:
///   property <kind> <spec> [assume v=c[:b],...] [at v] [states (c,d)...] [pattern atoms [implies atoms]]
///   property same-color <spec> v w
///   property girth <n> | property degeneracy <n> | property planar | property note <text>
/// Blank lines and `#` comments are ignored.
Manifest parse_manifest(std::string_view text);
Property parse_property(std::string_view line);
std::string format_property(const Property& p);
std::string serialize_manifest(const Manifest& m);
/// Throws GraphError naming the first terminal a property mentions that g lacks.
void check_manifest_terminals(const Manifest& m, const Graph& g);

}  // namespace defcol
