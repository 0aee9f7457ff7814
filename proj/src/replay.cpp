#include "defcol/replay.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "defcol/text.hpp"
#include "defcol/verify.hpp"

namespace defcol {

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Lines {
  std::vector<std::pair<std::size_t, std::string_view>> items;
  std::size_t pos = 0;

  [[nodiscard]] bool done() const { return pos >= items.size(); }
  [[nodiscard]] std::string_view peek() const { return items[pos].second; }
  [[nodiscard]] std::size_t line() const { return done() ? (items.empty() ? 0 : items.back().first) : items[pos].first; }
};

std::string_view first_word(std::string_view s) {
  const auto tok = split_ws(s);
  return tok.empty() ? std::string_view{} : tok[0];
}

std::vector<NamedAssumption> parse_assume_list(std::string_view tok) {
  std::vector<NamedAssumption> out;
  for (auto part : split_on(tok, ',')) out.push_back(parse_named_assumption(part));
  return out;
}

std::vector<std::string> parse_name_list(std::string_view tok) {
  std::vector<std::string> out;
  for (auto part : split_on(tok, ','))
    if (!trim(part).empty()) out.emplace_back(trim(part));
  return out;
}

std::vector<ReplayStep> parse_block(Lines& in, bool nested);

ReplayStep parse_step(std::string_view line, std::size_t lineno) {
  ReplayStep st;
  st.line = lineno;
  st.text = std::string(line);
  std::string_view head = line, tail;
  const auto colon = line.find(" : ");
  if (colon != std::string_view::npos) {
    head = line.substr(0, colon);
    tail = line.substr(colon + 3);
  }
  const auto tok = split_ws(head);
  if (tok.size() < 2) throw std::invalid_argument("incomplete step");
  const auto kind = tok[1];
  std::size_t i = 2;
  auto need = [&](std::string_view word) {
    if (i >= tok.size() || tok[i] != word) throw std::invalid_argument("expected '" + std::string(word) + "'");
    ++i;
    if (i >= tok.size()) throw std::invalid_argument("missing value after '" + std::string(word) + "'");
    return tok[i++];
  };
  if (kind == "count") {
    st.kind = ReplayStep::Kind::count;
    if (i >= tok.size()) throw std::invalid_argument("count needs the shared vertices");
    st.shared = parse_name_list(tok[i++]);
    st.color = parse_int(need("color")) - 1;
    st.copies = parse_name_list(need("over"));
    if (i < tok.size()) st.choose = std::string(need("choose"));
    if (i != tok.size()) throw std::invalid_argument("trailing tokens in count step");
    if (st.choose.empty() && st.copies.size() != 1) throw std::invalid_argument("count over several copies needs 'choose'");
    if (st.choose.empty()) st.choose = st.copies[0];
    if (std::find(st.copies.begin(), st.copies.end(), st.choose) == st.copies.end())
      throw std::invalid_argument("chosen copy is not among the copies");
    return st;
  }
  if (kind == "forced") {
    st.kind = ReplayStep::Kind::forced;
  } else if (kind == "unextendable") {
    st.kind = ReplayStep::Kind::unextendable;
  } else if (kind == "cover") {
    st.kind = ReplayStep::Kind::cover;
  } else {
    throw std::invalid_argument("unknown step kind '" + std::string(kind) + "'");
  }
  st.region = std::string(need("on"));
  while (i < tok.size()) {
    const auto word = tok[i];
    if (word == "assume") {
      st.assume = parse_assume_list(need("assume"));
    } else if (word == "at" && st.kind == ReplayStep::Kind::forced) {
      st.at = std::string(need("at"));
      if (i >= tok.size()) throw std::invalid_argument("'at' needs 'states' or 'colors'");
      if (tok[i] == "colors") {
        for (auto c : split_on(need("colors"), ',')) st.colors.push_back(parse_int(trim(c)) - 1);
      } else if (tok[i] == "states") {
        ++i;
        while (i < tok.size() && tok[i].front() == '(') {
          const auto t = tok[i++];
          const auto parts = split_on(t.substr(1, t.size() - 2), ',');
          if (t.back() != ')' || parts.size() != 2) throw std::invalid_argument("state must look like (c,d)");
          st.states.emplace(parse_int(trim(parts[0])) - 1, parse_int(trim(parts[1])));
        }
        if (st.states.empty()) throw std::invalid_argument("'states' needs at least one (c,d)");
      } else {
        throw std::invalid_argument("'at' needs 'states' or 'colors'");
      }
    } else {
      throw std::invalid_argument("unexpected token '" + std::string(word) + "'");
    }
  }
  if (st.kind == ReplayStep::Kind::cover) {
    if (colon == std::string_view::npos) throw std::invalid_argument("cover needs ' : D1 | D2 | ...'");
    for (auto part : split_on(tail, '|')) {
      auto atoms = parse_atoms(part);
      if (atoms.empty()) throw std::invalid_argument("empty disjunct in cover");
      st.disjuncts.push_back(std::move(atoms));
    }
  } else if (colon != std::string_view::npos) {
    throw std::invalid_argument("only cover steps take ' : '");
  }
  return st;
}

ReplayCase parse_case(Lines& in) {
  ReplayCase c;
  c.line = in.line();
  auto tok = split_ws(in.peek());
  ++in.pos;
  std::size_t end = tok.size();
  if (end > 1 && tok.back() == "symmetric") {
    c.symmetric = true;
    --end;
  }
  for (std::size_t i = 1; i < end; ++i) c.atoms.push_back(parse_atom(tok[i]));
  if (c.atoms.empty()) throw ParseError(c.line, "case needs its atoms");
  c.steps = parse_block(in, true);
  if (in.done() || first_word(in.peek()) != "end") throw ParseError(in.line(), "case without 'end'");
  ++in.pos;
  if (c.symmetric && !c.steps.empty()) throw ParseError(c.line, "a symmetric case has no steps");
  return c;
}

std::vector<ReplayStep> parse_block(Lines& in, bool nested) {
  std::vector<ReplayStep> steps;
  while (!in.done()) {
    const auto word = first_word(in.peek());
    if (word == "end") {
      if (!nested) throw ParseError(in.line(), "'end' outside a case");
      return steps;
    }
    if (word != "step") throw ParseError(in.line(), "expected 'step', got '" + std::string(word) + "'");
    try {
      steps.push_back(parse_step(in.peek(), in.line()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(in.line(), e.what());
    }
    ++in.pos;
    auto& st = steps.back();
    if (st.kind == ReplayStep::Kind::cover)
      for (std::size_t k = 0; k < st.disjuncts.size(); ++k) {
        if (in.done() || first_word(in.peek()) != "case")
          throw ParseError(in.line(), "cover with " + std::to_string(st.disjuncts.size()) + " disjuncts needs as many cases");
        st.cases.push_back(parse_case(in));
      }
  }
  return steps;
}

}  // namespace

ReplayScript parse_replay(std::string_view text) {
  ReplayScript s;
  Lines in;
  std::size_t n = 0;
  for (auto raw : split_lines(text)) {
    ++n;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    in.items.emplace_back(n, line);
  }
  bool have_spec = false;
  while (!in.done() && first_word(in.peek()) != "step") {
    const auto tok = split_ws(in.peek());
    const auto lineno = in.line();
    try {
      if (tok[0] == "replay" && tok.size() == 2) {
        s.name = std::string(tok[1]);
      } else if (tok[0] == "gadget" && tok.size() == 2) {
        s.gadget = std::string(tok[1]);
      } else if (tok[0] == "spec" && tok.size() == 2) {
        s.spec = ColorSpec::parse(tok[1]);
        have_spec = true;
      } else if (tok[0] == "premise") {
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (tok[i].find(':') != std::string_view::npos) {
            s.premise_budgets.push_back(parse_named_assumption(tok[i]));
          } else {
            for (auto part : split_on(tok[i], ','))
              if (!trim(part).empty()) s.premise.push_back(parse_atom(part));
          }
        }
      } else {
        throw std::invalid_argument("unknown header line");
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    ++in.pos;
  }
  if (!have_spec) throw ParseError(0, "replay script needs a 'spec' line");
  s.steps = parse_block(in, false);
  return s;
}

ReplayScript read_replay_file(const std::string& path) { return parse_replay(read_text_file(path)); }

// ---------------------------------------------------------------------------
// gadgets by id

Gadget gadget_by_id(const std::string& id) {
  std::smatch m;
  if (std::regex_match(id, m, std::regex(R"(H(\d)(\d))"))) return gadget_H_kj(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(id, m, std::regex(R"(G4_(\d)(\d))"))) return gadget_g4(std::stoi(m[1]), std::stoi(m[2]));
  if (id == "H31") return gadget_g5().H;
  if (id == "S_zrst") return gadget_g5().S;
  if (id == "G5") return gadget_g5().G;
  if (id == "T") return gadget_g7().T;
  if (id == "S7") return gadget_g7().S;
  if (id == "Hz") return gadget_g7().Hz;
  if (id == "G7") return gadget_g7().G;
  if (std::regex_match(id, m, std::regex(R"((E|Eprime|Epp)_k(\d+))"))) {
    auto f = gadget_E_family(std::stoi(m[2]));
    return m[1] == "E" ? f.E : m[1] == "Eprime" ? f.Eprime : f.Epp;
  }
  throw std::invalid_argument("unknown gadget id '" + id + "'");
}

// ---------------------------------------------------------------------------
// execution

namespace {

struct Clean {
  std::set<VertexId> copy;
  std::set<VertexId> shared;
  int color = 0;
};

struct Facts {
  std::map<VertexId, std::uint32_t> mask;
  std::vector<Atom> atoms;
  std::map<VertexId, std::pair<int, int>> budget;  // premise: color, budget
  std::vector<Clean> cleans;
};

struct StepFailure {
  std::string why;
  std::optional<Coloring> evidence;
};

std::string mask_str(std::uint32_t m) {
  std::string out = "{";
  for (int c = 0; m >> c; ++c)
    if (m >> c & 1u) out += (out.size() > 1 ? "," : "") + std::to_string(c + 1);
  return out + "}";
}

class Runner {
 public:
  Runner(const Graph& g, const ColorSpec& spec, const SolveOptions& o, ReplayResult& r)
      : g_(g), spec_(spec), opts_(o), res_(r), all_((1u << spec.colors()) - 1) {}

  /// Runs a block; true iff it ends in a contradiction.
  bool block(const std::vector<ReplayStep>& steps, Facts& f, int depth) {
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const auto& st = steps[i];
      current_ = &st;
      bool closes = false;
      std::string detail;
      switch (st.kind) {
        case ReplayStep::Kind::forced: detail = forced(st, f); break;
        case ReplayStep::Kind::unextendable:
          detail = unextendable(st, f);
          closes = true;
          break;
        case ReplayStep::Kind::count: detail = count(st, f); break;
        case ReplayStep::Kind::cover: {
          detail = cover_check(st, f);
          log(st.line, depth, st.text, detail);
          for (std::size_t k = 0; k < st.cases.size(); ++k) run_case(st, k, f, depth + 1);
          closes = true;
          detail.clear();
          break;
        }
      }
      ++res_.steps_checked;
      if (st.kind != ReplayStep::Kind::cover) log(st.line, depth, st.text, detail);
      if (closes) {
        if (i + 1 != steps.size()) {
          current_ = &steps[i + 1];
          fail("steps after a contradiction are unreachable");
        }
        return true;
      }
    }
    return false;
  }

  void apply(Facts& f, const Atom& a) const {
    const VertexId v = g_.resolve(a.v);
    if (a.kind == Atom::Kind::has_color || a.kind == Atom::Kind::not_color) check_color(a.color);
    if (a.kind == Atom::Kind::has_color) {
      f.mask[v] = mask(f, v) & (1u << a.color);
    } else if (a.kind == Atom::Kind::not_color) {
      f.mask[v] = mask(f, v) & ~(1u << a.color);
    } else {
      f.atoms.push_back(a);
    }
  }

  [[noreturn]] void fail(std::string why, std::optional<Coloring> evidence = std::nullopt) const {
    throw StepFailure{std::move(why), std::move(evidence)};
  }

  const ReplayStep* current_ = nullptr;

 private:
  void log(std::size_t line, int depth, const std::string& text, const std::string& detail) {
    res_.log.push_back({line, depth, text, true, detail});
  }

  void check_color(int c) const {
    if (c < 0 || c >= spec_.colors()) fail("color " + std::to_string(c + 1) + " outside the spec");
  }

  std::uint32_t mask(const Facts& f, VertexId v) const {
    const auto it = f.mask.find(v);
    return it == f.mask.end() ? all_ : it->second;
  }

  std::set<VertexId> vertices_with_prefix(const std::string& prefix) const {
    std::set<VertexId> out;
    for (const auto& [name, v] : g_.terminals())
      if (starts_with(name, prefix)) out.insert(v);
    if (out.empty()) fail("no terminal starts with '" + prefix + "'");
    return out;
  }

  std::set<VertexId> region(const std::string& text) const {
    std::set<VertexId> out;
    for (const auto& item : parse_name_list(text)) {
      if (item == "all") {
        for (VertexId v : g_.vertices()) out.insert(v);
      } else if (item.back() == '/') {
        const auto part = vertices_with_prefix(item);
        out.insert(part.begin(), part.end());
      } else {
        out.insert(g_.resolve(item));
      }
    }
    return out;
  }

  struct Query {
    Graph sub;
    std::vector<Assumption> assume;
    std::vector<Atom> atoms;
    SolveOptions options;
  };

  Query query(const std::set<VertexId>& R, const std::vector<NamedAssumption>& assume, const Facts& f) const {
    Query q;
    q.sub = g_.induced(R);
    q.options = opts_;
    for (VertexId v : R)
      if (const auto m = mask(f, v); m != all_) q.options.allowed[v] = m;
    for (const auto& a : f.atoms) {
      const bool in = R.count(g_.resolve(a.v)) && (a.w.empty() || R.count(g_.resolve(a.w)));
      if (in) q.atoms.push_back(a);
    }
    for (const auto& na : assume) {
      check_color(na.color);
      const VertexId v = g_.resolve(na.vertex);
      if (!R.count(v)) fail("assumption on " + na.vertex + " outside the region");
      justify(na, v, R, f);
      q.assume.push_back({v, na.color, na.budget});
    }
    return q;
  }

  void justify(const NamedAssumption& na, VertexId v, const std::set<VertexId>& R, const Facts& f) const {
    const int c = na.color;
    if (mask(f, v) != (1u << c))
      fail(na.str() + " is not established: known colors of " + na.vertex + " are " + mask_str(mask(f, v)));
    if (!na.budget) return;
    const int b = *na.budget;
    int known_out = 0;
    for (VertexId w : g_.neighbors(v))
      if (!R.count(w) && mask(f, w) == (1u << c)) ++known_out;
    if (b >= spec_.bound(c) - known_out) return;
    if (const auto it = f.budget.find(v); it != f.budget.end() && it->second.first == c && b >= it->second.second - known_out)
      return;
    for (const auto& cl : f.cleans) {
      if (cl.color != c || !cl.shared.count(v)) continue;
      if (!std::includes(cl.copy.begin(), cl.copy.end(), R.begin(), R.end())) continue;
      int need = 0;
      for (VertexId w : g_.neighbors(v))
        if (R.count(w) && cl.shared.count(w) && (mask(f, w) >> c & 1u)) ++need;
      if (b >= need) return;
    }
    fail("budget in " + na.str() + " does not follow from the facts (" + std::to_string(known_out) +
         " known same-colored neighbors outside the region)");
  }

  SolveResult run(const Query& q, const std::vector<Atom>& extra = {}, const SolveOptions* o = nullptr) const {
    auto atoms = q.atoms;
    atoms.insert(atoms.end(), extra.begin(), extra.end());
    const auto r = solve_pattern(q.sub, spec_, q.assume, atoms, o ? *o : q.options);
    if (r.timed_out()) fail("solver budget exhausted");
    return r;
  }

  std::string forced(const ReplayStep& st, Facts& f) {
    const auto R = region(st.region);
    const Query q = query(R, st.assume, f);
    std::ostringstream detail;
    if (!st.at.empty()) {
      const VertexId v = g_.resolve(st.at);
      if (!R.count(v)) fail(st.at + " is outside the region");
      std::set<VertexState> states;
      std::map<VertexState, Coloring> witness;
      std::vector<int> colors;
      const int deg = static_cast<int>(q.sub.degree(v));
      for (int c = 0; c < spec_.colors(); ++c) {
        SolveOptions o = q.options;
        const auto it = o.allowed.find(v);
        o.allowed[v] = (it == o.allowed.end() ? all_ : it->second) & (1u << c);
        if (!run(q, {}, &o).sat()) continue;
        colors.push_back(c);
        for (int d = 0; d <= std::min(deg, spec_.bound(c)); ++d) {
          SolveOptions od = o;
          od.windows.push_back({v, c, d, d});
          auto r = run(q, {}, &od);
          if (!r.sat()) continue;
          states.emplace(c, d);
          witness.emplace(VertexState{c, d}, std::move(r.certificate));
        }
      }
      if (!st.colors.empty()) {
        auto want = st.colors;
        std::sort(want.begin(), want.end());
        if (want != colors) fail(st.at + " takes colors " + mask_str(to_mask(colors)) + ", expected " + mask_str(to_mask(want)));
        detail << st.at << " in " << mask_str(to_mask(colors));
      } else {
        std::string got;
        for (const auto& [c, d] : states) got += " (" + std::to_string(c + 1) + "," + std::to_string(d) + ")";
        if (states != st.states) {
          std::optional<Coloring> evidence;
          for (const auto& s : states)
            if (!st.states.count(s)) {
              evidence = witness.at(s);
              break;
            }
          fail(st.at + " takes states" + (got.empty() ? std::string(" none") : got), evidence);
        }
        detail << st.at << ":" << got;
      }
    }
    // every vertex of the region keeps only the colors some coloring gives it
    std::map<VertexId, std::uint32_t> possible;
    auto absorb = [&](const Coloring& c) {
      for (const auto& [v, col] : c) possible[v] |= 1u << col;
    };
    const auto base = run(q);
    if (!base.sat()) fail("the region has no coloring; state this as an unextendable step");
    absorb(base.certificate);
    std::string changes;
    for (VertexId v : R) {
      for (int c = 0; c < spec_.colors(); ++c) {
        if (!(mask(f, v) >> c & 1u) || (possible[v] >> c & 1u)) continue;
        SolveOptions o = q.options;
        o.allowed[v] = 1u << c;
        const auto r = run(q, {}, &o);
        if (r.sat()) absorb(r.certificate);
      }
      const std::uint32_t m = mask(f, v) & possible[v];
      if (m != mask(f, v)) {
        f.mask[v] = m;
        changes += " " + display_name(v) + mask_str(m);
      }
    }
    if (!changes.empty()) detail << (detail.tellp() > 0 ? "; " : "") << "fixed" << changes;
    return detail.str();
  }

  /// Shortest alias, preferring names outside copy namespaces.
  std::string display_name(VertexId v) const {
    std::string best;
    for (const auto& n : g_.names_of(v)) {
      const bool flat = n.find('/') == std::string::npos, best_flat = !best.empty() && best.find('/') == std::string::npos;
      if (best.empty() || (flat && !best_flat) || (flat == best_flat && n.size() < best.size())) best = n;
    }
    return best.empty() ? std::to_string(v) : best;
  }

  static std::uint32_t to_mask(const std::vector<int>& colors) {
    std::uint32_t m = 0;
    for (int c : colors) m |= 1u << c;
    return m;
  }

  std::string unextendable(const ReplayStep& st, Facts& f) {
    const auto R = region(st.region);
    const Query q = query(R, st.assume, f);
    const auto r = run(q);
    if (r.sat()) fail("the region has a coloring", r.certificate);
    return "no coloring of " + std::to_string(R.size()) + " vertices";
  }

  std::string cover_check(const ReplayStep& st, Facts& f) {
    const auto R = region(st.region);
    const Query q = query(R, st.assume, f);
    for (const auto& d : st.disjuncts)
      for (const auto& a : d)
        if (!R.count(g_.resolve(a.v)) || (!a.w.empty() && !R.count(g_.resolve(a.w))))
          fail("cover atom " + a.str() + " leaves the region");
    // no coloring falsifies every disjunct: one negated atom per disjunct, all choices
    double combos = 1;
    for (const auto& d : st.disjuncts) combos *= static_cast<double>(d.size());
    if (combos > 1e6) fail("cover is too large to check");
    std::vector<std::size_t> pick(st.disjuncts.size(), 0);
    std::size_t checked = 0;
    for (;;) {
      std::vector<Atom> extra;
      for (std::size_t i = 0; i < pick.size(); ++i) extra.push_back(st.disjuncts[i][pick[i]].negated());
      const auto r = run(q, extra);
      if (r.sat()) fail("a coloring satisfies none of the cases", r.certificate);
      ++checked;
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < st.disjuncts[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
    return std::to_string(st.disjuncts.size()) + " cases exhaust the region (" + std::to_string(checked) + " queries)";
  }

  void run_case(const ReplayStep& st, std::size_t k, const Facts& f, int depth) {
    const auto& cs = st.cases[k];
    auto key = [](const std::vector<Atom>& atoms) {
      std::vector<std::string> s;
      for (const auto& a : atoms) s.push_back(a.str());
      std::sort(s.begin(), s.end());
      return s;
    };
    if (key(cs.atoms) != key(st.disjuncts[k]))
      throw StepFailure{"case at line " + std::to_string(cs.line) + " does not match disjunct " + std::to_string(k + 1), {}};
    std::string text = "case";
    for (const auto& a : cs.atoms) text += " " + a.str();
    if (cs.symmetric) {
      ++res_.unchecked;
      log(cs.line, depth, text + " symmetric", "taken by symmetry (unchecked)");
      return;
    }
    log(cs.line, depth, text, "");
    Facts g = f;
    for (const auto& a : cs.atoms) apply(g, a);
    if (!block(cs.steps, g, depth + 1)) {
      current_ = nullptr;
      throw StepFailure{"case at line " + std::to_string(cs.line) + " does not reach a contradiction", {}};
    }
  }

  std::string count(const ReplayStep& st, Facts& f) {
    const int c = st.color;
    check_color(c);
    std::set<VertexId> shared;
    for (const auto& name : st.shared) {
      const VertexId v = g_.resolve(name);
      if (mask(f, v) != (1u << c)) fail(name + " is not known to be colored " + std::to_string(c + 1));
      shared.insert(v);
    }
    std::vector<std::set<VertexId>> copies;
    std::set<VertexId> covered;
    for (const auto& prefix : st.copies) {
      copies.push_back(vertices_with_prefix(prefix));
      covered.insert(copies.back().begin(), copies.back().end());
    }
    for (std::size_t i = 0; i < copies.size(); ++i)
      for (std::size_t j = i + 1; j < copies.size(); ++j)
        for (VertexId v : copies[i])
          if (copies[j].count(v) && !shared.count(v)) fail(st.copies[i] + " and " + st.copies[j] + " meet outside the shared vertices");
    int slack = 0;
    for (VertexId v : shared) {
      int cap = spec_.bound(c);
      if (const auto it = f.budget.find(v); it != f.budget.end() && it->second.first == c) cap = std::min(cap, it->second.second);
      int used = 0;
      for (VertexId w : g_.neighbors(v))
        if ((shared.count(w) || !covered.count(w)) && mask(f, w) == (1u << c)) ++used;
      slack += std::max(0, cap - used);
    }
    if (static_cast<int>(copies.size()) <= slack)
      fail(std::to_string(copies.size()) + " copies do not exceed the " + std::to_string(slack) +
           " same-colored neighbors still allowed");
    const auto idx = static_cast<std::size_t>(std::find(st.copies.begin(), st.copies.end(), st.choose) - st.copies.begin());
    f.cleans.push_back({copies[idx], shared, c});
    std::string detail = std::to_string(copies.size()) + " copies > " + std::to_string(slack) + " allowed neighbors";
    if (copies.size() > 1) {
      ++res_.unchecked;
      detail += "; " + st.choose + " stands for the clean copy (unchecked choice)";
    }
    return detail;
  }

  const Graph& g_;
  const ColorSpec& spec_;
  SolveOptions opts_;
  ReplayResult& res_;
  std::uint32_t all_;
};

}  // namespace

ReplayResult replay_proof(const ReplayScript& script, const Graph& g, const SolveOptions& options) {
  ReplayResult res;
  Runner runner(g, script.spec, options, res);
  try {
    Facts f;
    for (const auto& b : script.premise_budgets) {
      const VertexId v = g.resolve(b.vertex);
      runner.apply(f, Atom{Atom::Kind::has_color, b.vertex, "", b.color});
      if (b.budget) f.budget[v] = {b.color, *b.budget};
    }
    for (const auto& a : script.premise) runner.apply(f, a);
    res.closed = runner.block(script.steps, f, 0);
    res.verified = res.closed;
    if (!res.closed) res.failure = "the steps do not reach a contradiction";
  } catch (const StepFailure& e) {
    res.verified = false;
    res.failure = e.why;
    res.evidence = e.evidence;
    if (runner.current_) {
      res.failed_line = runner.current_->line;
      res.log.push_back({runner.current_->line, 0, runner.current_->text, false, e.why});
    }
  } catch (const GraphError& e) {
    res.verified = false;
    res.failure = e.what();
    if (runner.current_) res.failed_line = runner.current_->line;
  }
  return res;
}

ReplayResult replay_proof(const ReplayScript& script, const SolveOptions& options) {
  const Gadget gd = gadget_by_id(script.gadget);
  return replay_proof(script, gd.graph, options);
}

}  // namespace defcol
