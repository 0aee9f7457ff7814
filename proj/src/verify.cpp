#include "defcol/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "defcol/analysis.hpp"

namespace defcol {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::verified: return "verified";
    case Outcome::refuted: return "refuted";
    case Outcome::timeout: return "timeout";
    case Outcome::unchecked: return "unchecked";
  }
  return "?";
}

bool pattern_holds(const Graph& g, const ColorSpec& spec, const Coloring& c, const std::vector<Atom>& atoms) {
  for (const auto& a : atoms) {
    const VertexId v = g.resolve(a.v);
    const int cv = c.at(v);
    bool ok = true;
    switch (a.kind) {
      case Atom::Kind::has_color: ok = cv == a.color; break;
      case Atom::Kind::not_color: ok = cv != a.color; break;
      case Atom::Kind::same: ok = cv == c.at(g.resolve(a.w)); break;
      case Atom::Kind::differ: ok = cv != c.at(g.resolve(a.w)); break;
      case Atom::Kind::saturated: ok = defect_of(g, c, v) == spec.bound(cv); break;
      case Atom::Kind::unsaturated: ok = defect_of(g, c, v) < spec.bound(cv); break;
    }
    if (!ok) return false;
  }
  return true;
}

SolveResult solve_pattern(const Graph& g, const ColorSpec& spec, const std::vector<Assumption>& assumptions,
                          const std::vector<Atom>& atoms, const SolveOptions& options) {
  const int L = spec.colors();
  // union-find over the mentioned vertices, merged along == atoms
  std::vector<VertexId> verts;
  auto index_of = [&](VertexId v) {
    const auto it = std::find(verts.begin(), verts.end(), v);
    if (it != verts.end()) return static_cast<int>(it - verts.begin());
    verts.push_back(v);
    return static_cast<int>(verts.size()) - 1;
  };
  std::vector<int> parent;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& a : atoms) {
    index_of(g.resolve(a.v));
    if (!a.w.empty()) index_of(g.resolve(a.w));
  }
  parent.resize(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& a : atoms)
    if (a.kind == Atom::Kind::same) parent[find(index_of(g.resolve(a.v)))] = find(index_of(g.resolve(a.w)));

  std::vector<int> roots;
  std::vector<int> class_of(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const int r = find(static_cast<int>(i));
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      it = roots.end() - 1;
    }
    class_of[i] = static_cast<int>(it - roots.begin());
  }
  const std::size_t K = roots.size();
  std::vector<std::uint32_t> mask(K, (1u << L) - 1);
  std::vector<std::pair<int, int>> differ;
  for (const auto& a : atoms) {
    const int ci = class_of[static_cast<std::size_t>(index_of(g.resolve(a.v)))];
    if (a.kind == Atom::Kind::has_color) mask[ci] &= 1u << a.color;
    if (a.kind == Atom::Kind::not_color) mask[ci] &= ~(1u << a.color);
    if (a.kind == Atom::Kind::differ) {
      const int cj = class_of[static_cast<std::size_t>(index_of(g.resolve(a.w)))];
      if (ci == cj) return SolveResult{};
      differ.emplace_back(ci, cj);
    }
  }
  for (const auto& as : assumptions)
    if (const auto it = std::find(verts.begin(), verts.end(), as.vertex); it != verts.end())
      mask[class_of[static_cast<std::size_t>(it - verts.begin())]] &= 1u << as.color;

  SolveResult best;
  best.status = SolveResult::Status::unsat;
  bool timed_out = false;
  std::vector<int> color(K, -1);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == K) {
      SolveOptions o = options;
      bool possible = true;
      for (std::size_t v = 0; v < verts.size(); ++v) {
        auto it = o.allowed.find(verts[v]);
        const std::uint32_t m = 1u << color[class_of[v]];
        o.allowed[verts[v]] = it == o.allowed.end() ? m : (it->second & m);
      }
      for (const auto& a : atoms) {
        if (a.kind != Atom::Kind::saturated && a.kind != Atom::Kind::unsaturated) continue;
        const VertexId v = g.resolve(a.v);
        const int c = color[class_of[static_cast<std::size_t>(index_of(v))]];
        const int b = spec.bound(c);
        if (a.kind == Atom::Kind::saturated) {
          o.windows.push_back({v, c, b, b});
        } else if (b == 0) {
          possible = false;
        } else {
          o.windows.push_back({v, c, 0, b - 1});
        }
      }
      if (!possible) return false;
      const SolveResult r = solve(g, spec, assumptions, o);
      best.stats.nodes += r.stats.nodes;
      best.stats.elapsed_ms += r.stats.elapsed_ms;
      if (r.timed_out()) timed_out = true;
      if (r.sat()) {
        best.status = SolveResult::Status::sat;
        best.certificate = r.certificate;
        return true;
      }
      return false;
    }
    for (int c = 0; c < L; ++c) {
      if (!(mask[i] >> c & 1u)) continue;
      bool ok = true;
      for (const auto& [x, y] : differ) {
        const std::size_t other = static_cast<std::size_t>(x) == i ? y : static_cast<std::size_t>(y) == i ? x : K;
        if (other < i && color[other] == c) ok = false;
      }
      if (!ok) continue;
      color[i] = c;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
  if (!best.sat() && timed_out) best.status = SolveResult::Status::timeout;
  return best;
}

namespace {

std::string state_list(const std::set<VertexState>& s) {
  std::string out;
  for (const auto& [c, d] : s) out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(c + 1) + "," + std::to_string(d) + ")";
  return out.empty() ? "none" : out;
}

std::string atoms_str(const std::vector<Atom>& atoms) {
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : " ") + a.str();
  return out;
}

void take(PropertyResult& out, const SolveResult& r) {
  out.stats.nodes += r.stats.nodes;
  out.stats.elapsed_ms += r.stats.elapsed_ms;
}

void verify_structural(const Graph& g, const Property& p, PropertyResult& out) {
  switch (p.kind) {
    case PropertyKind::girth: {
      const auto r = girth(g);
      const int value = r.length ? *r.length : 0;
      out.outcome = r.length && *r.length == p.value ? Outcome::verified : Outcome::refuted;
      out.detail = "girth " + (r.length ? std::to_string(value) : std::string("infinite"));
      break;
    }
    case PropertyKind::degeneracy: {
      const auto r = degeneracy(g);
      out.outcome = r.value == p.value ? Outcome::verified : Outcome::refuted;
      out.detail = "degeneracy " + std::to_string(r.value);
      break;
    }
    case PropertyKind::planar: {
      const auto r = planarity(g);
      out.outcome = r.planar ? Outcome::verified : Outcome::refuted;
      out.detail = r.planar ? "planar" : "Kuratowski subdivision with " + std::to_string(r.kuratowski.size()) + " edges";
      break;
    }
    default:
      out.outcome = Outcome::unchecked;
      out.detail = p.text;
      break;
  }
}

}  // namespace

PropertyResult verify_property(const Graph& g, const Property& p, const SolveOptions& options) {
  PropertyResult out;
  out.property = p;
  if (!p.has_spec()) {
    verify_structural(g, p, out);
    return out;
  }
  const ColorSpec& spec = p.spec;
  const auto assume = resolve(p.assume, g);
  auto refute = [&](const Coloring& c, std::string why) {
    out.outcome = Outcome::refuted;
    out.coloring = c;
    out.detail = std::move(why);
  };
  auto from = [&](const SolveResult& r, const std::string& sat_why) {
    take(out, r);
    if (r.timed_out()) {
      out.outcome = Outcome::timeout;
      out.detail = "solver budget exhausted";
    } else if (r.sat()) {
      refute(r.certificate, sat_why);
    } else {
      out.outcome = Outcome::verified;
    }
  };

  switch (p.kind) {
    case PropertyKind::noncolorable:
      from(solve(g, spec, {}, options), "coloring exists");
      break;
    case PropertyKind::unextendable:
      from(solve(g, spec, assume, options), "extension exists");
      break;
    case PropertyKind::same_color: {
      const VertexId a = g.resolve(p.pair.at(0)), b = g.resolve(p.pair.at(1));
      out.outcome = Outcome::verified;
      if (a == b) break;
      for (int c1 = 0; c1 < spec.colors() && out.outcome == Outcome::verified; ++c1)
        for (int c2 = 0; c2 < spec.colors() && out.outcome == Outcome::verified; ++c2) {
          if (c1 == c2) continue;
          from(solve(g, spec, {{a, c1, std::nullopt}, {b, c2, std::nullopt}}, options),
               p.pair[0] + " and " + p.pair[1] + " colored differently");
        }
      break;
    }
    case PropertyKind::forced: {
      const VertexId q = g.resolve(p.at);
      const auto fs = forced_states(g, spec, assume, q, options);
      if (!fs.complete) {
        out.outcome = Outcome::timeout;
        out.detail = "solver budget exhausted";
        break;
      }
      out.detail = "states " + state_list(fs.states);
      if (fs.states == p.states) {
        out.outcome = Outcome::verified;
        break;
      }
      out.outcome = Outcome::refuted;
      for (const auto& [c, d] : fs.states) {
        if (p.states.count({c, d})) continue;
        SolveOptions o = options;
        o.allowed[q] = 1u << c;
        o.windows.push_back({q, c, d, d});
        const auto r = solve(g, spec, assume, o);
        take(out, r);
        if (r.sat()) out.coloring = r.certificate;
        break;
      }
      break;
    }
    case PropertyKind::exists: {
      const auto r = solve_pattern(g, spec, assume, p.pattern, options);
      take(out, r);
      if (r.timed_out()) {
        out.outcome = Outcome::timeout;
      } else if (r.sat()) {
        out.outcome = Outcome::verified;
        out.coloring = r.certificate;
        out.detail = "witness found";
      } else {
        out.outcome = Outcome::refuted;
        out.detail = "no coloring matches " + atoms_str(p.pattern);
      }
      break;
    }
    case PropertyKind::forall: {
      out.outcome = Outcome::verified;
      for (const auto& atom : p.consequence) {
        auto query = p.pattern;
        query.push_back(atom.negated());
        const auto r = solve_pattern(g, spec, assume, query, options);
        take(out, r);
        if (r.timed_out()) {
          out.outcome = Outcome::timeout;
          out.detail = "solver budget exhausted on " + atom.negated().str();
        } else if (r.sat()) {
          refute(r.certificate, "coloring with " + atoms_str(query));
          break;
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

std::vector<PropertyResult> verify_manifest(const Graph& g, const Manifest& m, const SolveOptions& options) {
  check_manifest_terminals(m, g);
  std::vector<PropertyResult> out;
  for (const auto& p : m.properties) out.push_back(verify_property(g, p, options));
  return out;
}

PropertyResult verify_property_brute_force(const Graph& g, const Property& p) {
  PropertyResult out;
  out.property = p;
  if (!p.has_spec()) {
    verify_structural(g, p, out);
    return out;
  }
  const auto assume = resolve(p.assume, g);
  out.outcome = Outcome::verified;
  auto refute_if = [&](bool bad, const Coloring& c) {
    if (!bad) return true;
    out.outcome = Outcome::refuted;
    out.coloring = c;
    return false;
  };
  switch (p.kind) {
    case PropertyKind::noncolorable:
      for_each_coloring(g, p.spec, {}, [&](const Coloring& c) { return refute_if(true, c); });
      break;
    case PropertyKind::unextendable:
      for_each_coloring(g, p.spec, assume, [&](const Coloring& c) { return refute_if(true, c); });
      break;
    case PropertyKind::same_color: {
      const VertexId a = g.resolve(p.pair.at(0)), b = g.resolve(p.pair.at(1));
      for_each_coloring(g, p.spec, {}, [&](const Coloring& c) { return refute_if(c.at(a) != c.at(b), c); });
      break;
    }
    case PropertyKind::forced: {
      const VertexId q = g.resolve(p.at);
      std::set<VertexState> seen;
      for_each_coloring(g, p.spec, assume, [&](const Coloring& c) {
        seen.emplace(c.at(q), defect_of(g, c, q));
        return true;
      });
      out.detail = "states " + state_list(seen);
      if (seen != p.states) out.outcome = Outcome::refuted;
      break;
    }
    case PropertyKind::exists:
      out.outcome = Outcome::refuted;
      for_each_coloring(g, p.spec, assume, [&](const Coloring& c) {
        if (!pattern_holds(g, p.spec, c, p.pattern)) return true;
        out.outcome = Outcome::verified;
        out.coloring = c;
        return false;
      });
      break;
    case PropertyKind::forall:
      for_each_coloring(g, p.spec, assume, [&](const Coloring& c) {
        return refute_if(pattern_holds(g, p.spec, c, p.pattern) && !pattern_holds(g, p.spec, c, p.consequence), c);
      });
      break;
    default:
      break;
  }
  return out;
}

namespace {

std::vector<std::string> terminal_names(const Property& p) {
  std::vector<std::string> names;
  auto add = [&](const std::string& n) {
    if (!n.empty() && std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  };
  for (const auto& a : p.assume) add(a.vertex);
  for (const auto& v : p.pair) add(v);
  add(p.at);
  for (const auto* list : {&p.pattern, &p.consequence})
    for (const auto& a : *list) {
      add(a.v);
      add(a.w);
    }
  return names;
}

Graph from_mask(int n, std::uint64_t mask, const std::vector<std::pair<int, int>>& pairs,
                const std::vector<std::string>& names) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex(v);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (mask >> i & 1u) g.add_edge(pairs[i].first, pairs[i].second);
  for (std::size_t i = 0; i < names.size(); ++i) g.set_terminal(names[i], static_cast<VertexId>(i));
  return g;
}

}  // namespace

std::optional<Gadget> search_gadget(const Property& p, int max_vertices, const SearchOptions& options) {
  if (max_vertices > 12) throw std::invalid_argument("search_gadget: max_vertices must be at most 12");
  const auto names = terminal_names(p);
  SolveOptions so;
  so.budget = options.per_check_budget;
  std::mt19937_64 rng(options.seed);
  const int first = std::max<int>(1, static_cast<int>(names.size()));
  for (int n = first; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    auto accept = [&](const Graph& candidate) -> std::optional<Gadget> {
      std::optional<Graph> refined;
      if (options.refine) {
        refined = options.refine(candidate);
        if (!refined) return std::nullopt;
      }
      const Graph& g = refined ? *refined : candidate;
      const auto r = verify_property(g, p, so);
      if (r.outcome != Outcome::verified) return std::nullopt;
      Gadget gd{"found_" + std::to_string(g.vertex_count()), g, Manifest{{p}}, "search_gadget"};
      gd.graph.set_name(gd.name);
      return gd;
    };
    if (n <= options.exhaustive_up_to) {
      const std::uint64_t total = std::uint64_t{1} << pairs.size();
      // fewest edges first so the returned witness is small
      for (std::size_t m = 0; m <= pairs.size(); ++m)
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          if (static_cast<std::size_t>(__builtin_popcountll(mask)) != m) continue;
          if (auto found = accept(from_mask(n, mask, pairs, names))) return found;
        }
      continue;
    }
    std::uniform_real_distribution<double> density(0.15, 0.85), coin(0.0, 1.0);
    for (int attempt = 0; attempt < options.random_attempts; ++attempt) {
      const double q = density(rng);
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (coin(rng) < q) mask |= std::uint64_t{1} << i;
      if (auto found = accept(from_mask(n, mask, pairs, names))) return found;
    }
  }
  return std::nullopt;
}

}  // namespace defcol
