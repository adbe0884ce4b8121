#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gencon/budget.hpp"
#include "gencon/graph.hpp"

namespace gencon {

// A tree subgraph whose vertex set contains the terminal set.
struct STree {
  std::vector<Edge> edges;  // sorted

  std::vector<Vertex> vertices() const {
    std::set<Vertex> vs;
    for (const Edge& e : edges) {
      vs.insert(e.u);
      vs.insert(e.v);
    }
    return {vs.begin(), vs.end()};
  }
};

struct STreeBundle {
  std::vector<Vertex> terminals;  // S
  std::vector<STree> trees;
};

// Re-checks every tree and the pairwise internal-disjointness contract.
inline std::optional<std::string> verify_bundle(const Graph& g, const STreeBundle& bundle) {
  const auto& s = bundle.terminals;
  std::set<Vertex> terminals(s.begin(), s.end());
  if (terminals.size() != s.size()) return "terminal set has repeated vertices";
  if (terminals.size() < 2) return "terminal set needs at least two vertices";
  for (Vertex x : s) {
    if (x < 0 || x >= g.order()) return "terminal " + std::to_string(x) + " out of range";
  }
  std::map<Edge, std::size_t> edge_owner;
  std::map<Vertex, std::size_t> vertex_owner;
  for (std::size_t i = 0; i < bundle.trees.size(); ++i) {
    const std::string tag = "tree " + std::to_string(i) + ": ";
    const auto& edges = bundle.trees[i].edges;
    std::set<Edge> local;
    for (const Edge& e : edges) {
      if (!g.has_edge(e)) {
        return tag + "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in graph";
      }
      if (!local.insert(e).second) return tag + "repeated edge";
    }
    const auto vs = bundle.trees[i].vertices();
    for (Vertex x : s) {
      if (!std::binary_search(vs.begin(), vs.end(), x)) {
        return tag + "missing terminal " + std::to_string(x);
      }
    }
    if (vs.size() != edges.size() + 1) {
      return tag + (vs.size() <= edges.size() ? "contains a cycle" : "disconnected");
    }
    // Union-find connectivity; with |V| = |E| + 1 this also rules out cycles.
    std::map<Vertex, Vertex> parent;
    for (Vertex v : vs) parent[v] = v;
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const Edge& e : edges) {
      Vertex a = find(e.u);
      Vertex b = find(e.v);
      if (a == b) return tag + "contains a cycle";
      parent[a] = b;
    }
    for (const Edge& e : edges) {
      auto [it, fresh] = edge_owner.emplace(e, i);
      if (!fresh) {
        return "trees " + std::to_string(it->second) + " and " + std::to_string(i) + " share edge " +
               std::to_string(e.u) + "-" + std::to_string(e.v);
      }
    }
    for (Vertex v : vs) {
      if (terminals.count(v)) continue;
      auto [it, fresh] = vertex_owner.emplace(v, i);
      if (!fresh) {
        return "trees " + std::to_string(it->second) + " and " + std::to_string(i) +
               " share non-terminal vertex " + std::to_string(v);
      }
    }
  }
  return std::nullopt;
}

// Spanning tree of the subgraph (vertices, edges) grown from terminals[0],
// then stripped of non-terminal leaves. Returns nullopt if the subgraph does
// not connect the terminals.
inline std::optional<STree> tree_from_subgraph(std::span<const Edge> edges,
                                               std::span<const Vertex> terminals) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [v, list] : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  std::set<Edge> tree;
  std::set<Vertex> seen{terminals[0]};
  std::vector<Vertex> queue{terminals[0]};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Vertex x = queue[qi];
    for (Vertex y : adj[x]) {
      if (seen.insert(y).second) {
        tree.insert(Edge(x, y));
        queue.push_back(y);
      }
    }
  }
  for (Vertex t : terminals) {
    if (!seen.count(t)) return std::nullopt;
  }
  std::set<Vertex> keep(terminals.begin(), terminals.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Vertex, int> deg;
    for (const Edge& e : tree) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (auto it = tree.begin(); it != tree.end();) {
      bool leaf = (deg[it->u] == 1 && !keep.count(it->u)) || (deg[it->v] == 1 && !keep.count(it->v));
      if (leaf) {
        it = tree.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return STree{{tree.begin(), tree.end()}};
}

// Boundary-edge signature of a tree: a reporting label only.
struct MinimalSTreeProfile {
  std::vector<int> boundary_degree;  // per terminal: tree edges to non-terminals
  int terminal_edges = 0;            // tree edges with both ends in S
  int steiner_vertices = 0;          // |V(T) \ S|

  std::string label() const {
    std::ostringstream out;
    out << "ss=" << terminal_edges << " b=[";
    for (std::size_t i = 0; i < boundary_degree.size(); ++i) out << (i ? "," : "") << boundary_degree[i];
    out << "] x=" << steiner_vertices;
    return out.str();
  }
};

inline MinimalSTreeProfile profile_tree(const STree& tree, std::span<const Vertex> terminals) {
  MinimalSTreeProfile p;
  p.boundary_degree.assign(terminals.size(), 0);
  auto index = [&](Vertex v) -> int {
    auto it = std::find(terminals.begin(), terminals.end(), v);
    return it == terminals.end() ? -1 : static_cast<int>(it - terminals.begin());
  };
  for (const Edge& e : tree.edges) {
    int a = index(e.u);
    int b = index(e.v);
    if (a >= 0 && b >= 0) {
      ++p.terminal_edges;
    } else if (a >= 0) {
      ++p.boundary_degree[a];
    } else if (b >= 0) {
      ++p.boundary_degree[b];
    }
  }
  p.steiner_vertices = static_cast<int>(tree.vertices().size() - terminals.size());
  return p;
}

// ---------------------------------------------------------------------------
// Exact packing search.
//
// r internally disjoint S-trees exist iff the non-terminal vertices can be
// split into r classes (plus unused) and the S-S edges handed to at most one
// class each, so that every class together with S is connected. The search
// assigns S-S edges first, then vertices nearest S, and prunes a class as
// soon as S cannot be connected through its own plus still-free vertices.

class TreePacker {
 public:
  using Mask = std::uint64_t;
  static constexpr int kMaxOrder = 64;

  TreePacker(const Graph& g, std::vector<Vertex> terminals, SearchBudget& budget)
      : g_(g), s_(std::move(terminals)), budget_(budget) {
    if (g.order() > kMaxOrder) throw std::invalid_argument("exact packing supports at most 64 vertices");
    std::vector<Vertex> sorted(s_);
    std::sort(sorted.begin(), sorted.end());
    if (s_.size() < 2 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("terminal set must have at least two distinct vertices");
    }
    for (Vertex x : s_) {
      if (x < 0 || x >= g.order()) throw std::invalid_argument("terminal out of range");
      smask_ |= bit(x);
    }
    nbr_.assign(g.order(), 0);
    for (Vertex v = 0; v < g.order(); ++v) {
      for (Vertex w : g.neighbors(v)) nbr_[v] |= bit(w);
      if (smask_ & bit(v)) nbr_[v] &= ~smask_;
    }
    for (std::size_t i = 0; i < s_.size(); ++i)
      for (std::size_t j = i + 1; j < s_.size(); ++j)
        if (g.adjacent(s_[i], s_[j])) ss_edges_.emplace_back(s_[i], s_[j]);

    // Non-terminals: most terminal neighbours first, then BFS distance from S.
    std::vector<int> dist(g.order(), -1);
    std::vector<Vertex> queue(s_.begin(), s_.end());
    for (Vertex x : s_) dist[x] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (Vertex y : g.neighbors(queue[qi])) {
        if (dist[y] < 0) {
          dist[y] = dist[queue[qi]] + 1;
          queue.push_back(y);
        }
      }
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      if (!(smask_ & bit(v)) && dist[v] >= 0) order_.push_back(v);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
      int sa = std::popcount(nbr_[a] & smask_);
      int sb = std::popcount(nbr_[b] & smask_);
      if (sa != sb) return sa > sb;
      return dist[a] < dist[b];
    });
  }

  // Upper bound on kappa(S): min terminal degree and |E| / (|S| - 1).
  int upper_bound() const {
    int ub = std::numeric_limits<int>::max();
    for (Vertex x : s_) ub = std::min(ub, g_.degree(x));
    return std::min(ub, g_.size() / static_cast<int>(s_.size() - 1));
  }

  std::optional<STreeBundle> pack(int r) {
    if (r <= 0) return STreeBundle{s_, {}};
    if (r > upper_bound()) return std::nullopt;
    r_ = r;
    class_mask_.assign(r, 0);
    class_ss_.assign(r, {});
    free_ = 0;
    for (Vertex v : order_) free_ |= bit(v);
    opened_ = 0;
    if (!assign_ss(0)) return std::nullopt;
    return build();
  }

 private:
  static Mask bit(Vertex v) { return Mask{1} << v; }

  bool reaches_all(int c, Mask avail) const {
    Mask reach = bit(s_[0]);
    Mask frontier = reach;
    while (frontier) {
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) {
        Vertex v = static_cast<Vertex>(std::countr_zero(f));
        next |= nbr_[v] & avail;
        if (smask_ & bit(v)) {
          for (const Edge& e : class_ss_[c]) {
            if (e.has(v)) next |= bit(e.other(v));
          }
        }
      }
      next &= ~reach;
      reach |= next;
      frontier = next;
    }
    return (reach & smask_) == smask_;
  }

  bool feasible() const {
    for (int c = 0; c < r_; ++c) {
      if (!reaches_all(c, smask_ | class_mask_[c] | free_)) return false;
    }
    // Every class needs its own edge at every terminal.
    for (Vertex x : s_) {
      int lacking = 0;
      for (int c = 0; c < r_; ++c) {
        bool has = (nbr_[x] & class_mask_[c]) != 0;
        for (const Edge& e : class_ss_[c]) has = has || e.has(x);
        if (!has) ++lacking;
      }
      if (lacking > std::popcount(nbr_[x] & free_)) return false;
    }
    return true;
  }

  bool complete() const {
    for (int c = 0; c < r_; ++c) {
      if (!reaches_all(c, smask_ | class_mask_[c])) return false;
    }
    return true;
  }

  bool assign_ss(std::size_t i) {
    budget_.charge("tree packing");
    if (i == ss_edges_.size()) {
      if (!feasible()) return false;
      return assign_vertex(0);
    }
    const int limit = std::min(opened_ + 1, r_);
    for (int c = 0; c < limit; ++c) {
      const int saved = opened_;
      opened_ = std::max(opened_, c + 1);
      class_ss_[c].push_back(ss_edges_[i]);
      if (assign_ss(i + 1)) return true;
      class_ss_[c].pop_back();
      opened_ = saved;
    }
    return assign_ss(i + 1);  // edge left unused
  }

  bool assign_vertex(std::size_t i) {
    budget_.charge("tree packing");
    if (complete()) return true;
    if (i == order_.size()) return false;
    const Vertex v = order_[i];
    free_ &= ~bit(v);
    const int limit = std::min(opened_ + 1, r_);
    for (int c = 0; c < limit; ++c) {
      const int saved = opened_;
      opened_ = std::max(opened_, c + 1);
      class_mask_[c] |= bit(v);
      if (feasible() && assign_vertex(i + 1)) return true;
      class_mask_[c] &= ~bit(v);
      opened_ = saved;
    }
    if (feasible() && assign_vertex(i + 1)) return true;
    free_ |= bit(v);
    return false;
  }

  STreeBundle build() const {
    STreeBundle bundle{s_, {}};
    for (int c = 0; c < r_; ++c) {
      const Mask mine = smask_ | class_mask_[c];
      std::vector<Edge> edges(class_ss_[c]);
      for (const Edge& e : g_.edges()) {
        const bool both_s = (smask_ & bit(e.u)) && (smask_ & bit(e.v));
        if (!both_s && (mine & bit(e.u)) && (mine & bit(e.v))) edges.push_back(e);
      }
      bundle.trees.push_back(*tree_from_subgraph(edges, s_));
    }
    return bundle;
  }

  const Graph& g_;
  std::vector<Vertex> s_;
  SearchBudget& budget_;
  Mask smask_ = 0;
  std::vector<Mask> nbr_;
  std::vector<Edge> ss_edges_;
  std::vector<Vertex> order_;

  int r_ = 0;
  int opened_ = 0;
  Mask free_ = 0;
  std::vector<Mask> class_mask_;
  std::vector<std::vector<Edge>> class_ss_;
};

// r internally disjoint S-trees, or nullopt when none exist.
inline std::optional<STreeBundle> pack_trees(const Graph& g, const std::vector<Vertex>& terminals, int r,
                                             SearchBudget& budget) {
  TreePacker packer(g, terminals, budget);
  return packer.pack(r);
}

struct PackingResult {
  int count = 0;
  STreeBundle bundle;
};

// Exact kappa(S) with a witness bundle. `cap` limits the largest r tried.
inline PackingResult max_internally_disjoint_trees(const Graph& g, const std::vector<Vertex>& terminals,
                                                   SearchBudget& budget,
                                                   int cap = std::numeric_limits<int>::max()) {
  TreePacker packer(g, terminals, budget);
  for (int r = std::min(cap, packer.upper_bound()); r >= 1; --r) {
    if (auto found = packer.pack(r)) return {r, std::move(*found)};
  }
  return {0, STreeBundle{terminals, {}}};
}

inline PackingResult max_internally_disjoint_trees(const Graph& g, const std::vector<Vertex>& terminals) {
  SearchBudget budget;
  return max_internally_disjoint_trees(g, terminals, budget);
}

// ---------------------------------------------------------------------------
// Automorphisms, for orbit pruning of terminal subsets.

// All automorphisms as image arrays, or nullopt when there are more than
// `cap` of them.
inline std::optional<std::vector<std::vector<Vertex>>> automorphisms(const Graph& g, std::size_t cap = 50'000) {
  const int n = g.order();
  std::vector<std::vector<Vertex>> found;
  std::vector<Vertex> image(n, -1);
  std::vector<char> used(n, 0);
  bool overflow = false;
  auto extend = [&](auto&& self, Vertex v) -> void {
    if (overflow) return;
    if (v == n) {
      if (found.size() >= cap) {
        overflow = true;
        return;
      }
      found.push_back(image);
      return;
    }
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (Vertex x = 0; x < v && ok; ++x) ok = g.adjacent(v, x) == g.adjacent(w, image[x]);
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      self(self, v + 1);
      used[w] = 0;
      image[v] = -1;
    }
  };
  extend(extend, 0);
  if (overflow) return std::nullopt;
  return found;
}

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<Vertex>&)>& fn) {
  std::vector<Vertex> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  if (k > n) return;
  while (true) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace detail

struct KappaKOptions {
  bool use_symmetry = false;
  std::size_t automorphism_cap = 50'000;
};

struct KappaKResult {
  int value = 0;
  std::vector<Vertex> witness;  // a k-subset attaining the minimum
  STreeBundle bundle;           // value trees for the witness
  bool symmetry_used = false;
  std::size_t subsets_examined = 0;
};

// Minimum of kappa(S) over all k-subsets S.
inline KappaKResult kappa_k(const Graph& g, int k, SearchBudget& budget, const KappaKOptions& opts = {}) {
  if (k < 2 || k > g.order()) throw std::invalid_argument("kappa_k: need 2 <= k <= |V|");
  std::vector<std::vector<Vertex>> subsets;
  KappaKResult result;
  std::optional<std::vector<std::vector<Vertex>>> autos;
  if (opts.use_symmetry) autos = automorphisms(g, opts.automorphism_cap);
  if (autos) {
    result.symmetry_used = true;
    std::set<std::vector<Vertex>> seen;
    detail::for_each_subset(g.order(), k, [&](const std::vector<Vertex>& s) {
      if (seen.count(s)) return;
      subsets.push_back(s);
      for (const auto& a : *autos) {
        std::vector<Vertex> img;
        for (Vertex x : s) img.push_back(a[x]);
        std::sort(img.begin(), img.end());
        seen.insert(std::move(img));
      }
    });
  } else {
    detail::for_each_subset(g.order(), k, [&](const std::vector<Vertex>& s) { subsets.push_back(s); });
  }
  auto degree_bound = [&](const std::vector<Vertex>& s) {
    int ub = std::numeric_limits<int>::max();
    for (Vertex x : s) ub = std::min(ub, g.degree(x));
    return ub;
  };
  std::stable_sort(subsets.begin(), subsets.end(),
                   [&](const auto& a, const auto& b) { return degree_bound(a) < degree_bound(b); });

  int best = std::numeric_limits<int>::max();
  for (const auto& s : subsets) {
    ++result.subsets_examined;
    auto found = max_internally_disjoint_trees(g, s, budget, best);
    if (found.count < best) {
      best = found.count;
      result.witness = s;
      result.bundle = std::move(found.bundle);
    }
    if (best == 0) break;
  }
  result.value = best;
  return result;
}

inline KappaKResult kappa_k(const Graph& g, int k, const KappaKOptions& opts = {}) {
  SearchBudget budget;
  return kappa_k(g, k, budget, opts);
}

// ---------------------------------------------------------------------------
// Closed-form kappa_3 values for named families.

enum class Kappa3Family {
  complete,                      // K_n
  complete_bipartite,            // K_{a,b}
  complete_tripartite,           // K_{a,b,c}
  cycle_product,                 // C_1 □ ... □ C_k
  complete_times_complete,       // K_{a+1} □ K_b  (and (K_a ∨ 2K_1) □ K_b)
  complete_times_tripartite_aaa, // K_b □ K_{a,a,a}
  complete_times_tripartite_a_a1_a1,  // K_b □ K_{a,a+1,a+1}
};

inline int kappa3_formula(Kappa3Family family, std::vector<int> p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw std::invalid_argument("kappa3_formula: wrong parameter count");
  };
  auto range = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("kappa3_formula: ") + what);
  };
  switch (family) {
    case Kappa3Family::complete:
      need(1);
      range(p[0] >= 3, "K_n needs n >= 3");
      return p[0] - 2;
    case Kappa3Family::complete_bipartite: {
      need(2);
      std::sort(p.begin(), p.end());
      range(p[0] >= 1 && p[0] + p[1] >= 3, "K_{a,b} needs 1 <= a and a + b >= 3");
      return p[0] == p[1] ? p[0] - 1 : p[0];
    }
    case Kappa3Family::complete_tripartite: {
      need(3);
      std::sort(p.begin(), p.end());
      const int a = p[0], b = p[1], c = p[2];
      range(a >= 1, "K_{a,b,c} needs a >= 1");
      if (a == 1 && b == 1) return c == 1 ? 1 : 2;
      return a + b <= c ? a + b : (a + b + c) / 2;
    }
    case Kappa3Family::cycle_product:
      need(1);
      range(p[0] >= 1, "cycle product needs k >= 1");
      return 2 * p[0] - 1;
    case Kappa3Family::complete_times_complete:
      need(2);
      range(p[0] >= 1 && p[1] >= 2, "needs a >= 1, b >= 2");
      return p[0] + p[1] - 2;
    case Kappa3Family::complete_times_tripartite_aaa: {
      need(2);
      const int a = p[0], b = p[1];
      range(a >= 1 && b >= 2, "needs a >= 1, b >= 2");
      return b >= a - 1 ? 2 * a + b - 2 : (3 * a + 3 * b - 3) / 2;
    }
    case Kappa3Family::complete_times_tripartite_a_a1_a1: {
      need(2);
      const int a = p[0], b = p[1];
      range(a >= 1 && b >= 2, "needs a >= 1, b >= 2");
      return b >= a - 1 ? 2 * a + b - 1 : (3 * a + 3 * b - 1) / 2;
    }
  }
  throw std::invalid_argument("kappa3_formula: unknown family");
}

}  // namespace gencon
