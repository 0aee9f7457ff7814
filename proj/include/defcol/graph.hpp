#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace defcol {

using VertexId = std::int64_t;

/// Raised by the text parsers; carries the 1-based line of the offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Violated structural invariant (self-loop, duplicate edge, dangling terminal, ...).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense 0-based view of a Graph. Index i corresponds to ids[i]; ids are sorted.
struct Adjacency {
  std::vector<VertexId> ids;
  std::vector<std::vector<int>> nbrs;

  [[nodiscard]] int size() const { return static_cast<int>(ids.size()); }
  [[nodiscard]] int index(VertexId id) const;
  [[nodiscard]] std::size_t edge_count() const;
};

/// Finite simple undirected graph with stable vertex ids and named terminals.
/// Several names may refer to the same vertex (identification keeps every alias).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::string name) : name_(std::move(name)) {}

  void add_vertex(VertexId v);
  void add_edge(VertexId u, VertexId v);
  /// Adds the edge unless it already exists; self-loops are still rejected.
  bool add_edge_if_absent(VertexId u, VertexId v);
  void remove_vertex(VertexId v);
  void remove_edge(VertexId u, VertexId v);
  void set_terminal(const std::string& name, VertexId v);
  void set_name(std::string name) { name_ = std::move(name); }
  /// Quotient by keep ~ drop: drop's edges move to keep (duplicates collapse), its names follow.
  /// Throws GraphError when the two are adjacent, since that would create a loop.
  void identify(VertexId keep, VertexId drop);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
  [[nodiscard]] bool has_edge(VertexId u, VertexId v) const;
  [[nodiscard]] std::size_t vertex_count() const { return adj_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] std::size_t degree(VertexId v) const;
  [[nodiscard]] std::vector<VertexId> vertices() const;
  [[nodiscard]] std::vector<std::pair<VertexId, VertexId>> edges() const;
  [[nodiscard]] const std::set<VertexId>& neighbors(VertexId v) const;
  [[nodiscard]] const std::map<std::string, VertexId>& terminals() const { return terminals_; }
  [[nodiscard]] std::optional<VertexId> terminal(std::string_view name) const;
  /// Terminal name if `token` names one, else a numeric id present in the graph.
  [[nodiscard]] VertexId resolve(std::string_view token) const;
  [[nodiscard]] std::vector<std::string> names_of(VertexId v) const;
  [[nodiscard]] VertexId max_id() const { return adj_.empty() ? -1 : adj_.rbegin()->first; }
  [[nodiscard]] std::size_t min_degree() const;
  [[nodiscard]] std::size_t max_degree() const;

  [[nodiscard]] Adjacency adjacency() const;
  /// Subgraph induced by `keep`; terminals pointing outside are dropped.
  [[nodiscard]] Graph induced(const std::set<VertexId>& keep) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.name_ == b.name_ && a.adj_ == b.adj_ && a.terminals_ == b.terminals_;
  }

 private:
  std::string name_;
  std::map<VertexId, std::set<VertexId>> adj_;
  std::map<std::string, VertexId> terminals_;
  std::size_t edge_count_ = 0;
};

Graph parse_graph(std::string_view text);
/// Canonical form: header, sorted `v` lines, sorted `e` lines (smaller id first), sorted `t` lines.
std::string serialize_graph(const Graph& g);
Graph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g);

/// Named small graphs used throughout tests and examples.
namespace named {
Graph path(int n);
Graph cycle(int n);
Graph complete(int n);
Graph complete_bipartite(int a, int b);
Graph star(int leaves);
Graph petersen();
Graph icosahedron();
}  // namespace named

}  // namespace defcol
