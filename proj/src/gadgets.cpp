#include "defcol/gadgets.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "defcol/text.hpp"

#ifndef DEFCOL_DEFAULT_DATA_DIR
#define DEFCOL_DEFAULT_DATA_DIR "data"
#endif

namespace defcol {

std::string data_dir() {
  if (const char* env = std::getenv("DEFCOL_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return DEFCOL_DEFAULT_DATA_DIR;
}

namespace {

std::string provenance_of(std::string_view text) {
  for (auto line : split_lines(text)) {
    const auto t = trim(line);
    if (!starts_with(t, "#")) continue;
    const auto body = trim(t.substr(1));
    if (starts_with(body, "provenance:")) return std::string(trim(body.substr(11)));
  }
  return {};
}

std::string read_gadget_file(const std::string& file, std::string& provenance) {
  const auto path = (std::filesystem::path(data_dir()) / "gadgets" / file).string();
  if (!std::filesystem::exists(path)) throw std::runtime_error("missing transcription file " + path);
  auto text = read_text_file(path);
  provenance = provenance_of(text);
  if (provenance.empty()) throw std::runtime_error(path + ": missing '# provenance:' line");
  return text;
}

Gadget make(std::string name, Graph g, std::string_view manifest, std::string provenance) {
  Gadget out{std::move(name), std::move(g), parse_manifest(manifest), std::move(provenance)};
  out.graph.set_name(out.name);
  check_manifest_terminals(out.manifest, out.graph);
  return out;
}

void glue(Graph& g, const std::string& keep, const std::string& drop) { g.identify(g.resolve(keep), g.resolve(drop)); }

std::string str(int v) { return std::to_string(v); }

std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : " ") + a.str();
  return out;
}

// Index expression: an integer, N, i, or i/N followed by +c or -c.
int eval_index(std::string_view expr, int n, int i, bool have_i) {
  expr = trim(expr);
  std::size_t op = expr.find_first_of("+-", 1);
  const auto head = trim(expr.substr(0, op));
  int base;
  if (head == "N") {
    base = n;
  } else if (head == "i") {
    if (!have_i) throw std::invalid_argument("index 'i' used outside a for clause");
    base = i;
  } else {
    base = parse_int(head);
  }
  if (op == std::string_view::npos) return base;
  const int off = parse_int(trim(expr.substr(op + 1)));
  return expr[op] == '+' ? base + off : base - off;
}

std::string vertex_name(std::string_view tok, int n, int i, bool have_i) {
  const auto open = tok.find('[');
  if (open == std::string_view::npos) return std::string(tok);
  if (tok.back() != ']') throw std::invalid_argument("bad vertex token " + std::string(tok));
  return std::string(tok.substr(0, open)) + str(eval_index(tok.substr(open + 1, tok.size() - open - 2), n, i, have_i));
}

}  // namespace

Gadget load_transcription(const std::string& file) {
  std::string provenance;
  const auto text = read_gadget_file(file, provenance);
  Graph g = parse_graph(text);
  const std::string name = g.name().empty() ? std::filesystem::path(file).stem().string() : g.name();
  return Gadget{name, std::move(g), {}, std::move(provenance)};
}

Graph expand_template(std::string_view text, int n) {
  Graph g;
  VertexId next = 0;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto tok = split_ws(line);
    try {
      if (tok[0] == "template") {
        if (tok.size() != 2) throw std::invalid_argument("expected 'template <name>'");
        g.set_name(std::string(tok[1]));
        continue;
      }
      const std::size_t arity = tok[0] == "vertex" ? 1 : tok[0] == "edge" ? 2 : 0;
      if (arity == 0) throw std::invalid_argument("unknown directive '" + std::string(tok[0]) + "'");
      int lo = 0, hi = 0;
      bool ranged = false;
      if (tok.size() == arity + 5) {
        if (tok[arity + 1] != "for" || tok[arity + 2] != "i" || tok[arity + 3] != "in")
          throw std::invalid_argument("expected 'for i in LO..HI'");
        const auto range = tok[arity + 4];
        const auto dots = range.find("..");
        if (dots == std::string_view::npos) throw std::invalid_argument("range must look like LO..HI");
        lo = eval_index(range.substr(0, dots), n, 0, false);
        hi = eval_index(range.substr(dots + 2), n, 0, false);
        ranged = true;
      } else if (tok.size() != arity + 1) {
        throw std::invalid_argument("wrong number of fields");
      }
      for (int i = lo; i <= hi; ++i) {
        if (arity == 1) {
          const auto name = vertex_name(tok[1], n, i, ranged);
          if (g.terminal(name)) throw std::invalid_argument("duplicate vertex " + name);
          g.add_vertex(next);
          g.set_terminal(name, next++);
        } else {
          g.add_edge(g.resolve(vertex_name(tok[1], n, i, ranged)), g.resolve(vertex_name(tok[2], n, i, ranged)));
        }
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return g;
}

std::map<VertexId, VertexId> add_copy(Graph& host, const Graph& part, const std::string& prefix) {
  std::map<VertexId, VertexId> map;
  VertexId next = host.max_id() + 1;
  for (VertexId v : part.vertices()) {
    map[v] = next;
    host.add_vertex(next++);
  }
  for (const auto& [u, v] : part.edges()) host.add_edge(map[u], map[v]);
  for (const auto& [name, v] : part.terminals()) host.set_terminal(prefix + name, map[v]);
  return map;
}

Gadget gadget_H_kj(int k, int j) {
  if (k < 0 || j < 0) throw std::invalid_argument("k and j must be nonnegative");
  const int m = k + j + 1;
  Graph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.set_terminal("x", 0);
  g.set_terminal("y", 1);
  for (int i = 0; i < m; ++i) {
    g.add_vertex(2 + i);
    g.add_edge(0, 2 + i);
    g.add_edge(1, 2 + i);
    g.set_terminal("m" + str(i + 1), 2 + i);
  }
  const std::string spec = str(k) + "," + str(j);
  std::string manifest = "property same-color " + spec + " x y\nproperty planar\n";
  if (m >= 2) manifest += "property girth 4\n";
  return make("H" + str(k) + str(j), std::move(g), manifest, "K_{2,k+j+1} construction");
}

Gadget gadget_g4(int k, int j) {
  if (k < 0 || j < 0 || k + j == 0) throw std::invalid_argument("gadget_g4 needs k, j >= 0 and (k,j) != (0,0)");
  // the construction assumes k >= j; (k,j) and (j,k) differ only by renaming the colors
  const int big = std::max(k, j);
  const Gadget h = gadget_H_kj(k, j);
  Graph g;
  g.add_vertex(0);
  g.set_terminal("u", 0);
  for (int i = 1; i <= big + 2; ++i) {
    g.add_vertex(i);
    g.set_terminal("v" + str(i), i);
    if (i > 1) g.add_edge(1, i);
  }
  for (int i = 1; i <= big + 2; ++i) {
    const std::string p = "H" + str(i) + "/";
    add_copy(g, h.graph, p);
    glue(g, "u", p + "x");
    glue(g, "v" + str(i), p + "y");
  }
  const std::string spec = str(k) + "," + str(j);
  return make("G4_" + str(k) + str(j), std::move(g),
              "property noncolorable " + spec +
                  "\nproperty girth 4\nproperty degeneracy 2\nproperty planar\n"
                  "property note K4-minor free (not checked)\n",
              "u plus a star on max(k,j)+2 vertices, each star vertex linked to u by a copy of H");
}

G5Family gadget_g5() {
  G5Family f;
  f.H = load_transcription("H31.graph");
  f.H.manifest = parse_manifest(
      "property unextendable 3,1 assume x=1:0,y=1:0\n"
      "property girth 5\nproperty degeneracy 2\nproperty planar\n");
  check_manifest_terminals(f.H.manifest, f.H.graph);

  Graph s;
  for (VertexId v = 0; v < 4; ++v) s.add_vertex(v);
  s.set_terminal("z", 0);
  s.set_terminal("r", 1);
  s.set_terminal("s", 2);
  s.set_terminal("t", 3);
  s.add_edge(1, 2);
  s.add_edge(2, 3);
  for (const char* end : {"r", "s", "t"})
    for (int i = 1; i <= 7; ++i) {
      const std::string p = std::string("H") + end + str(i) + "/";
      add_copy(s, f.H.graph, p);
      glue(s, "z", p + "x");
      glue(s, end, p + "y");
    }
  f.S = make("S_zrst", std::move(s),
             "property girth 5\nproperty degeneracy 2\nproperty planar\n"
             "property note 2-outerplanar (not checked)\n",
             "seven copies of H between z and each of r, s, t, plus the path r s t");

  Graph g;
  for (int i = 1; i <= 3; ++i) {
    const std::string p = "S" + str(i) + "/";
    add_copy(g, f.S.graph, p);
    g.set_terminal("z" + str(i), g.resolve(p + "z"));
  }
  g.add_edge(g.resolve("z1"), g.resolve("z2"));
  g.add_edge(g.resolve("z2"), g.resolve("z3"));
  f.G = make("G5", std::move(g),
             "property noncolorable 3,1\nproperty girth 5\nproperty degeneracy 2\nproperty planar\n",
             "three copies of S joined by the edges z1z2 and z2z3");
  return f;
}

G7Family gadget_g7() {
  G7Family f;
  f.T = load_transcription("T.graph");
  f.T.manifest = parse_manifest("property forced 2,0 assume x=1:0,y=1:0,z=1:0 at w states (1,2)\nproperty planar\n");
  check_manifest_terminals(f.T.manifest, f.T.graph);

  f.S = load_transcription("S7.graph");
  f.S.manifest = parse_manifest(
      "property unextendable 2,0 assume a=1:0,b=2,c=1,d=1,e=1,f=1,g=2\n"
      "property girth 7\nproperty planar\n");
  check_manifest_terminals(f.S.manifest, f.S.graph);

  Graph hz;
  hz.add_vertex(0);
  hz.set_terminal("z", 0);
  VertexId next = 1;
  auto fresh = [&](const std::string& name) {
    hz.add_vertex(next);
    hz.set_terminal(name, next);
    return next++;
  };
  for (int i = 1; i <= 7; ++i) {
    const auto p = fresh("p" + str(i));
    const auto q = fresh("q" + str(i));
    const auto v = fresh("v" + str(i));
    hz.add_edge(0, p);
    hz.add_edge(p, q);
    hz.add_edge(q, v);
  }
  for (int i = 1; i <= 7; ++i) hz.add_edge(hz.resolve("v" + str(i)), hz.resolve("v" + str(i % 7 + 1)));
  for (int i = 1; i <= 7; ++i) {
    const int n = i % 7 + 1;
    const std::string p = "F" + str(i) + "/";
    add_copy(hz, f.S.graph, p);
    const std::vector<std::pair<std::string, std::string>> face = {
        {"z", "a"}, {"p" + str(i), "b"}, {"q" + str(i), "c"}, {"v" + str(i), "d"},
        {"v" + str(n), "e"}, {"q" + str(n), "f"}, {"p" + str(n), "g"}};
    for (const auto& [host, part] : face) glue(hz, host, p + part);
  }
  f.Hz = make("Hz", std::move(hz),
              "property unextendable 2,0 assume z=1:0\nproperty girth 7\nproperty planar\n",
              "z joined to a 7-cycle by paths on four vertices, a copy of S in each face F_i");

  Graph g;
  g.add_vertex(0);
  g.add_vertex(1);
  g.set_terminal("u", 0);
  g.set_terminal("v", 1);
  g.add_edge(0, 1);
  for (int i = 1; i <= 6; ++i) {
    const std::string p = "H" + str(i) + "/";
    add_copy(g, f.Hz.graph, p);
    glue(g, i <= 3 ? "u" : "v", p + "z");
  }
  f.G = make("G7", std::move(g), "property noncolorable 2,0\nproperty girth 7\nproperty planar\n",
             "edge uv with three copies of H_z at u and three at v");
  return f;
}

std::vector<Atom> E_parity_pattern(int N, const std::string& prefix) {
  std::vector<std::string> atoms = {"a!=b", "a!=x1", "b!=x1"};
  for (int i = 0; i <= N; ++i) {
    if (i != 1) atoms.push_back((i % 2 == 0 ? "a==x" : "x1==x") + str(i));
    atoms.push_back((i % 2 == 0 ? "b==y" : "x1==y") + str(i));
  }
  std::vector<Atom> out;
  for (auto& text : atoms) {
    Atom a = parse_atom(text);
    a.v = prefix + a.v;
    if (!a.w.empty()) a.w = prefix + a.w;
    out.push_back(a);
  }
  return out;
}

EFamily gadget_E_family(int k) {
  if (k < 1) throw std::invalid_argument("gadget_E_family needs k >= 1");
  EFamily f;
  f.k = k;
  const int t = k % 2 == 0 ? 1 : 0;
  f.N = 3 * k + 3 + t;
  std::string provenance;
  const auto text = read_gadget_file("E.template", provenance);
  const std::string spec = str(k) + "," + str(k) + ",1";

  Graph e = expand_template(text, f.N);
  std::string colored = " x1=3";  // the pattern with concrete colors, after fixing a=1, b=2
  for (const auto& a : E_parity_pattern(f.N, "")) {
    if (a.kind != Atom::Kind::same) continue;
    const int c = a.v == "a" ? 1 : a.v == "b" ? 2 : 3;
    colored += " " + a.w + "=" + str(c);
  }
  f.E = make("E_k" + str(k), std::move(e),
             "property exists 0,0,0 pattern " + join_atoms(E_parity_pattern(f.N, "")) +
                 "\nproperty forall 0,0,0 pattern a=1 b=2 implies" + colored + "\nproperty planar\n",
             provenance);

  Graph ep;
  ep.add_vertex(0);
  ep.add_vertex(1);
  ep.set_terminal("a", 0);
  ep.set_terminal("b", 1);
  ep.add_edge(0, 1);
  for (int i = 1; i <= 2 * k - 1; ++i) {
    const std::string p = "E" + str(i) + "/";
    add_copy(ep, f.E.graph, p);
    glue(ep, "a", p + "a");
    glue(ep, "b", p + "b");
  }
  f.Eprime = make("Eprime_k" + str(k), std::move(ep),
                  "property forall " + spec + " pattern a==b implies a=3\nproperty planar\n",
                  "2k-1 copies of E sharing the edge ab");

  Graph epp;
  for (int i = 1; i <= 4; ++i) add_copy(epp, f.Eprime.graph, "P" + str(i) + "/");
  const std::vector<std::pair<std::string, std::string>> triangle = {{"y0", "x0"}, {"y0", "x1"}, {"x0", "x1"}};
  for (int i = 2; i <= 4; ++i) {
    const auto& [ta, tb] = triangle[static_cast<std::size_t>(i - 2)];
    const std::string p = "P" + str(i) + "/";
    glue(epp, "P1/E1/" + ta, p + "a");
    glue(epp, "P1/E1/" + tb, p + "b");
  }
  epp.set_terminal("a", epp.resolve("P1/a"));
  epp.set_terminal("b", epp.resolve("P1/b"));
  f.Epp = make("Epp_k" + str(k), std::move(epp),
               "property exists 0,0,0 pattern " + join_atoms(E_parity_pattern(f.N, "P1/E1/")) +
                   "\nproperty forall " + spec + " pattern a!=b\nproperty planar\n",
               "four copies of E' glued along the triangle y0 x0 x1 of the first");
  return f;
}

}  // namespace defcol
