#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gencon {

using Vertex = std::int32_t;

// Undirected edge, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool has(Vertex x) const noexcept { return x == u || x == v; }
  Vertex other(Vertex x) const noexcept { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest product the dense id encoding accepts.
inline constexpr std::int64_t kMaxVertices = 1'000'000;

// Immutable simple undirected graph over vertices 0..n-1.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0 || n > kMaxVertices) {
      throw GraphError("vertex count out of range: " + std::to_string(n));
    }
    for (const Edge& e : edges_) {
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (e.u < 0 || e.v >= n_) {
        throw GraphError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") out of range");
      }
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end()) {
      throw GraphError("duplicate edge (" + std::to_string(it->u) + "," +
                       std::to_string(it->v) + ")");
    }
    adj_.assign(static_cast<std::size_t>(n_), {});
    for (const Edge& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  // Builds from possibly duplicated / unordered pairs, dropping duplicates.
  static Graph from_pairs(int n, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    std::set<Edge> unique;
    for (auto [a, b] : pairs) unique.insert(Edge(a, b));
    return Graph(n, std::vector<Edge>(unique.begin(), unique.end()));
  }

  int order() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
    const auto& list = adj_[a];
    return std::binary_search(list.begin(), list.end(), b);
  }
  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }

  int min_degree() const {
    int best = n_ == 0 ? 0 : degree(0);
    for (Vertex v = 0; v < n_; ++v) best = std::min(best, degree(v));
    return best;
  }

  bool is_complete() const {
    return static_cast<std::int64_t>(size()) * 2 == static_cast<std::int64_t>(n_) * (n_ - 1);
  }

  bool connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adj_[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count == n_;
  }

  // Same vertex ids; every edge touching a removed vertex is dropped.
  Graph without_vertices(std::span<const Vertex> removed) const {
    std::vector<char> gone(n_, 0);
    for (Vertex v : removed) gone.at(v) = 1;
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
      if (!gone[e.u] && !gone[e.v]) kept.push_back(e);
    }
    return Graph(n_, std::move(kept));
  }

  Graph without_edges(std::span<const Edge> removed) const {
    std::vector<Edge> drop(removed.begin(), removed.end());
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> kept;
    std::set_difference(edges_.begin(), edges_.end(), drop.begin(), drop.end(),
                        std::back_inserter(kept));
    return Graph(n_, std::move(kept));
  }

  // Adds edges that are not already present.
  Graph with_edges(std::span<const Edge> added) const {
    std::set<Edge> all(edges_.begin(), edges_.end());
    all.insert(added.begin(), added.end());
    return Graph(n_, std::vector<Edge>(all.begin(), all.end()));
  }

  // Graph on n+extra vertices with the same edges.
  Graph with_extra_vertices(int extra) const { return Graph(n_ + extra, edges_); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

// Induced subgraph on `keep` (relabelled 0..k-1 in the given order).
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_parent;  // local id -> parent id
};

inline InducedSubgraph induced(const Graph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> local(g.order(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) local.at(keep[i]) = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] >= 0 && local[e.v] >= 0) edges.emplace_back(local[e.u], local[e.v]);
  }
  return {Graph(static_cast<int>(keep.size()), std::move(edges)),
          std::vector<Vertex>(keep.begin(), keep.end())};
}

// ---------------------------------------------------------------------------
// Products, joins and fibers.

// Coordinates of a vertex of G□H. Flat id is u * |V(H)| + v.
struct ProductVertex {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const ProductVertex&, const ProductVertex&) = default;
};

class ProductLayout {
 public:
  ProductLayout(int g_order, int h_order) : n_(g_order), m_(h_order) {
    if (n_ < 1 || m_ < 1) throw std::invalid_argument("product factors must be nonempty");
    if (static_cast<std::int64_t>(n_) * m_ > kMaxVertices) {
      throw GraphError("product too large for dense ids");
    }
  }

  int g_order() const noexcept { return n_; }
  int h_order() const noexcept { return m_; }
  int order() const noexcept { return n_ * m_; }

  Vertex flat(Vertex u, Vertex v) const { return u * m_ + v; }
  Vertex flat(ProductVertex p) const { return flat(p.u, p.v); }
  ProductVertex coords(Vertex x) const { return {x / m_, x % m_}; }

 private:
  int n_;
  int m_;
};

inline Graph cartesian_product(const Graph& g, const Graph& h) {
  ProductLayout layout(g.order(), h.order());
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(g.size()) * h.order() +
                static_cast<std::size_t>(h.size()) * g.order());
  for (Vertex u = 0; u < g.order(); ++u) {
    for (const Edge& e : h.edges()) edges.emplace_back(layout.flat(u, e.u), layout.flat(u, e.v));
  }
  for (Vertex v = 0; v < h.order(); ++v) {
    for (const Edge& e : g.edges()) edges.emplace_back(layout.flat(e.u, v), layout.flat(e.v, v));
  }
  return Graph(layout.order(), std::move(edges));
}

// Vertices of g keep their ids; vertices of h are shifted by |V(g)|.
inline Graph join(const Graph& g, const Graph& h) {
  if (g.order() < 1 || h.order() < 1) throw std::invalid_argument("join factors must be nonempty");
  const int off = g.order();
  std::vector<Edge> edges(g.edges());
  for (const Edge& e : h.edges()) edges.emplace_back(e.u + off, e.v + off);
  for (Vertex a = 0; a < g.order(); ++a) {
    for (Vertex b = 0; b < h.order(); ++b) edges.emplace_back(a, b + off);
  }
  return Graph(g.order() + h.order(), std::move(edges));
}

// Copy of a G-subgraph (given by its edges and vertices) in layer v of G□H.
struct Fiber {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

inline Fiber fiber_g(const ProductLayout& layout, std::span<const Vertex> g_vertices,
                     std::span<const Edge> g_edges, Vertex v) {
  Fiber f;
  for (Vertex u : g_vertices) f.vertices.push_back(layout.flat(u, v));
  for (const Edge& e : g_edges) f.edges.emplace_back(layout.flat(e.u, v), layout.flat(e.v, v));
  std::sort(f.vertices.begin(), f.vertices.end());
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

inline Fiber fiber_h(const ProductLayout& layout, std::span<const Vertex> h_vertices,
                     std::span<const Edge> h_edges, Vertex u) {
  Fiber f;
  for (Vertex v : h_vertices) f.vertices.push_back(layout.flat(u, v));
  for (const Edge& e : h_edges) f.edges.emplace_back(layout.flat(u, e.u), layout.flat(u, e.v));
  std::sort(f.vertices.begin(), f.vertices.end());
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

inline std::vector<Vertex> all_vertices(const Graph& g) {
  std::vector<Vertex> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = v;
  return out;
}

inline Fiber fiber_g(const ProductLayout& layout, const Graph& g, Vertex v) {
  auto vs = all_vertices(g);
  return fiber_g(layout, vs, g.edges(), v);
}

inline Fiber fiber_h(const ProductLayout& layout, const Graph& h, Vertex u) {
  auto vs = all_vertices(h);
  return fiber_h(layout, vs, h.edges(), u);
}

// ---------------------------------------------------------------------------
// Generators. Canonical labelling: parts and cycle order follow ascending ids.

namespace generate {

inline Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return Graph(n, std::move(edges));
}

inline Graph empty(int n) {
  if (n < 1) throw std::invalid_argument("empty: n must be >= 1");
  return Graph(n, {});
}

inline Graph complete_multipartite(std::span<const int> parts) {
  int n = 0;
  for (int p : parts) {
    if (p < 1) throw std::invalid_argument("complete_multipartite: part sizes must be >= 1");
    n += p;
  }
  std::vector<int> part_of;
  for (std::size_t i = 0; i < parts.size(); ++i) part_of.insert(part_of.end(), parts[i], static_cast<int>(i));
  std::vector<Edge> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (part_of[a] != part_of[b]) edges.emplace_back(a, b);
  return Graph(n, std::move(edges));
}

inline Graph complete_bipartite(int a, int b) {
  const int parts[] = {a, b};
  return complete_multipartite(parts);
}

inline Graph complete_tripartite(int a, int b, int c) {
  const int parts[] = {a, b, c};
  return complete_multipartite(parts);
}

inline Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

inline Graph path(int n) {
  if (n < 1) throw std::invalid_argument("path: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

// K_a joined with two nonadjacent vertices (K_{a+2} minus one edge).
inline Graph join_complete_empty2(int a) { return join(complete(a), empty(2)); }

}  // namespace generate

// Dispatch by family name; used by the CLI and the named-family oracles.
inline Graph generate_family(const std::string& family, std::span<const int> params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw std::invalid_argument(family + ": expected " + std::to_string(k) + " parameter(s)");
    }
  };
  if (family == "complete") { need(1); return generate::complete(params[0]); }
  if (family == "complete_bipartite") { need(2); return generate::complete_bipartite(params[0], params[1]); }
  if (family == "complete_tripartite") {
    need(3);
    return generate::complete_tripartite(params[0], params[1], params[2]);
  }
  if (family == "cycle") { need(1); return generate::cycle(params[0]); }
  if (family == "path") { need(1); return generate::path(params[0]); }
  if (family == "join_complete_empty2") { need(1); return generate::join_complete_empty2(params[0]); }
  throw std::invalid_argument("unknown family: " + family);
}

// ---------------------------------------------------------------------------
// Edge-list text: header "n m", then m lines "u v"; '#' starts a comment.

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  auto fail = [&](const std::string& msg) {
    throw GraphError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long a = 0;
    long long b = 0;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) fail("expected two integers");
      continue;
    }
    if (!(ls >> b)) fail("expected two integers");
    std::string rest;
    if (ls >> rest) fail("trailing garbage '" + rest + "'");
    if (n < 0) {
      if (a < 0 || b < 0 || a > kMaxVertices) fail("bad header");
      n = a;
      m = b;
      continue;
    }
    if (a < 0 || b < 0 || a >= n || b >= n) fail("vertex out of range");
    if (a == b) fail("self-loop at vertex " + std::to_string(a));
    Edge e(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!seen.insert(e).second) fail("duplicate edge " + std::to_string(a) + " " + std::to_string(b));
    edges.push_back(e);
  }
  if (n < 0) throw GraphError("missing header line");
  if (static_cast<long long>(edges.size()) != m) {
    throw GraphError("header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace gencon
