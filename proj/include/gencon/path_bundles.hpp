#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gencon/budget.hpp"
#include "gencon/connectivity.hpp"
#include "gencon/flow.hpp"
#include "gencon/graph.hpp"

namespace gencon {

// s u1-u2 paths; u3 is internal to exactly the first t of them and the paths
// share no internal vertex other than u3.
struct OriginalPathBundle {
  Vertex u1 = 0;
  Vertex u2 = 0;
  Vertex u3 = 0;
  int t = 0;
  std::vector<Path> paths;
};

// An original bundle with k = paths.size() plus k - 2t connectors from u3;
// connector i ends on paths[t + i].
struct ReducedPathBundle {
  OriginalPathBundle base;
  std::vector<Path> connectors;

  int k() const noexcept { return static_cast<int>(base.paths.size()); }
  int t() const noexcept { return base.t; }
};

inline std::optional<std::string> verify_original_bundle(const Graph& g, const OriginalPathBundle& b) {
  const int s = static_cast<int>(b.paths.size());
  if (b.u1 == b.u2 || b.u1 == b.u3 || b.u2 == b.u3) return "anchor vertices not distinct";
  if (b.t < 0 || b.t > s) return "t out of range";
  if (b.t >= 1 && s < b.t + 1) return "need s >= t + 1";
  std::vector<std::set<Vertex>> internal(s);
  std::set<Edge> used;
  for (int j = 0; j < s; ++j) {
    const Path& p = b.paths[j];
    const std::string tag = "path " + std::to_string(j + 1) + ": ";
    if (auto bad = check_simple_path(g, p)) return tag + *bad;
    if (p.front() != b.u1 || p.back() != b.u2) return tag + "endpoints are not u1, u2";
    internal[j] = std::set<Vertex>(p.begin() + 1, p.end() - 1);
    const bool has_u3 = internal[j].count(b.u3) > 0;
    if (j < b.t && !has_u3) return tag + "u3 missing from designated path";
    if (j >= b.t && has_u3) return tag + "u3 on non-designated path";
    for (const Edge& e : path_edges(p)) {
      if (!used.insert(e).second) return tag + "edge shared with an earlier path";
    }
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      for (Vertex x : internal[i]) {
        if (x != b.u3 && internal[j].count(x)) {
          return "paths " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                 " share internal vertex " + std::to_string(x);
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> verify_reduced_bundle(const Graph& g, const ReducedPathBundle& rb) {
  const auto& b = rb.base;
  if (auto bad = verify_original_bundle(g, b)) return bad;
  const int k = rb.k();
  const int t = b.t;
  if (t > k / 2) return "t exceeds floor(k/2)";
  if (static_cast<int>(rb.connectors.size()) != k - 2 * t) return "expected k - 2t connectors";
  std::set<Vertex> x_set;
  for (int j = t; j < k; ++j) x_set.insert(b.paths[j].begin(), b.paths[j].end());
  std::set<Vertex> through;  // V(P_1..P_t) - {u1,u2,u3}
  for (int j = 0; j < t; ++j) through.insert(b.paths[j].begin(), b.paths[j].end());
  through.erase(b.u1);
  through.erase(b.u2);
  through.erase(b.u3);
  std::set<Edge> used;
  for (const Path& p : b.paths)
    for (const Edge& e : path_edges(p)) used.insert(e);
  std::set<Vertex> taken;
  for (std::size_t i = 0; i < rb.connectors.size(); ++i) {
    const Path& m = rb.connectors[i];
    const std::string tag = "connector " + std::to_string(i + 1) + ": ";
    if (auto bad = check_simple_path(g, m)) return tag + *bad;
    if (m.front() != b.u3) return tag + "does not start at u3";
    if (m.size() < 2) return tag + "too short";
    const Vertex end = m.back();
    const Path& host = b.paths[t + i];
    if (std::find(host.begin(), host.end(), end) == host.end()) return tag + "terminal not on its path";
    for (std::size_t j = 1; j + 1 < m.size(); ++j) {
      if (x_set.count(m[j])) return tag + "internal vertex on a u3-free path";
      if (through.count(m[j])) return tag + "internal vertex on a path through u3";
      if (!taken.insert(m[j]).second) return tag + "shares an internal vertex";
    }
    if (end != b.u1 && end != b.u2 && !taken.insert(end).second) return tag + "terminal shared";
    for (const Edge& e : path_edges(m)) {
      if (!used.insert(e).second) return tag + "reuses an edge";
    }
  }
  return std::nullopt;
}

struct BundleSearchOptions {
  int min_t = 0;
  std::uint64_t max_nodes = SearchBudget::kDefaultBundleNodes;
};

namespace detail {

// Depth-first enumeration of simple src-dst paths through vertices allowed by
// `ok`, nearest-to-dst first. `visit` returns true to stop the enumeration.
// Not reentrant: nested enumerations need their own instance.
class PathEnumerator {
 public:
  PathEnumerator(const Graph& g, SearchBudget& budget) : g_(g), budget_(budget) {}

  bool each(Vertex src, Vertex dst, const std::vector<char>& ok, const std::set<Edge>& banned,
            const std::function<bool(const Path&)>& visit) {
    ok_ = &ok;
    banned_ = &banned;
    dst_ = dst;
    if (distances(dst, std::vector<char>(g_.order(), 0))[src] < 0) return false;
    std::vector<char> on(g_.order(), 0);
    Path p{src};
    on[src] = 1;
    return extend(p, on, visit);
  }

 private:
  std::vector<int> distances(Vertex from, const std::vector<char>& on) const {
    std::vector<int> d(g_.order(), -1);
    d[from] = 0;
    std::vector<Vertex> queue{from};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Vertex x = queue[qi];
      if (x != from && !(*ok_)[x]) continue;
      for (Vertex y : g_.neighbors(x)) {
        if (d[y] < 0 && !on[y] && !banned_->count(Edge(x, y))) {
          d[y] = d[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return d;
  }

  bool extend(Path& p, std::vector<char>& on, const std::function<bool(const Path&)>& visit) {
    budget_.charge("path enumeration");
    const Vertex x = p.back();
    if (x == dst_) return visit(p);
    // Re-check reachability of dst avoiding the current path.
    auto d = distances(dst_, on);
    std::vector<Vertex> next;
    for (Vertex y : g_.neighbors(x)) {
      if (on[y] || banned_->count(Edge(x, y))) continue;
      if (y != dst_ && !(*ok_)[y]) continue;
      if (d[y] < 0) continue;
      next.push_back(y);
    }
    std::stable_sort(next.begin(), next.end(), [&](Vertex a, Vertex b) { return d[a] < d[b]; });
    for (Vertex y : next) {
      p.push_back(y);
      on[y] = 1;
      if (extend(p, on, visit)) return true;
      on[y] = 0;
      p.pop_back();
    }
    return false;
  }

  const Graph& g_;
  SearchBudget& budget_;
  const std::vector<char>* ok_ = nullptr;
  const std::set<Edge>* banned_ = nullptr;
  Vertex dst_ = 0;
};

class BundleSearch {
 public:
  BundleSearch(const Graph& g, int k, Vertex u1, Vertex u2, Vertex u3, SearchBudget& budget)
      : g_(g), k_(k), u1_(u1), u2_(u2), u3_(u3), budget_(budget) {}

  std::optional<ReducedPathBundle> run(int t) {
    t_ = t;
    left_.clear();
    right_.clear();
    free_.clear();
    used_.assign(g_.order(), 0);
    banned_.clear();
    result_.reset();
    choose_segments();
    return result_;
  }

 private:
  // Vertices still usable as internal vertices of new paths.
  std::vector<char> usable(bool allow_u3) const {
    std::vector<char> ok(g_.order(), 1);
    for (Vertex v = 0; v < g_.order(); ++v) ok[v] = !used_[v];
    ok[u1_] = ok[u2_] = 0;
    ok[u3_] = allow_u3 ? ok[u3_] : 0;
    return ok;
  }

  int segment_capacity(int need_left, int need_right) const {
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex v = 0; v < g_.order(); ++v) blocked[v] = used_[v];
    blocked[u1_] = blocked[u2_] = 1;
    Graph h = g_.without_edges(std::vector<Edge>(banned_.begin(), banned_.end()));
    SplitNetwork split(h, 1, blocked);
    const int sink = split.extra(0);
    split.net().add_arc(SplitNetwork::in(u1_), sink, need_left);
    split.net().add_arc(SplitNetwork::in(u2_), sink, need_right);
    return split.net().max_flow(SplitNetwork::out(u3_), sink, need_left + need_right);
  }

  int free_capacity(int need) const {
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex v = 0; v < g_.order(); ++v) blocked[v] = used_[v];
    blocked[u3_] = 1;
    Graph h = g_.without_edges(std::vector<Edge>(banned_.begin(), banned_.end()));
    SplitNetwork split(h, 0, blocked);
    return split.net().max_flow(SplitNetwork::out(u1_), SplitNetwork::in(u2_), need);
  }

  bool viable() const {
    const int need_left = t_ - static_cast<int>(left_.size());
    const int need_right = t_ - static_cast<int>(right_.size());
    if (segment_capacity(need_left, need_right) < need_left + need_right) return false;
    const int need_free = k_ - t_ - static_cast<int>(free_.size());
    return free_capacity(need_free) >= need_free;
  }

  void occupy(const Path& p, int delta) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) used_[p[i]] += delta;
    for (const Edge& e : path_edges(p)) {
      if (delta > 0) banned_.insert(e);
      else banned_.erase(e);
    }
  }

  // Stage 1: t segments u1 -> u3 and t segments u3 -> u2.
  bool choose_segments() {
    budget_.charge("bundle search");
    if (!viable()) return false;
    const bool want_left = static_cast<int>(left_.size()) < t_;
    const bool want_right = !want_left && static_cast<int>(right_.size()) < t_;
    if (!want_left && !want_right) return choose_free();
    std::vector<char> ok = usable(false);
    ok[u3_] = 0;
    auto& list = want_left ? left_ : right_;
    const Vertex src = want_left ? u1_ : u3_;
    const Vertex dst = want_left ? u3_ : u2_;
    const Vertex floor = list.empty() ? -1 : list.back()[1];
    return PathEnumerator(g_, budget_).each(src, dst, ok, banned_, [&](const Path& p) {
      if (p[1] <= floor) return false;
      list.push_back(p);
      occupy(p, +1);
      const bool done = choose_segments();
      occupy(p, -1);
      list.pop_back();
      return done;
    });
  }

  // Stage 2: k - t u1-u2 paths avoiding u3.
  bool choose_free() {
    budget_.charge("bundle search");
    if (static_cast<int>(free_.size()) == k_ - t_) return connect();
    if (!viable()) return false;
    std::vector<char> ok = usable(false);
    const Vertex floor = free_.empty() ? -1 : free_.back()[1];
    return PathEnumerator(g_, budget_).each(u1_, u2_, ok, banned_, [&](const Path& p) {
      if (p[1] <= floor) return false;
      free_.push_back(p);
      occupy(p, +1);
      const bool done = choose_free();
      occupy(p, -1);
      free_.pop_back();
      return done;
    });
  }

  // Stage 3: connectors by max flow; each u3-free path accepts at most one.
  bool connect() {
    const int need = k_ - 2 * t_;
    const int groups = k_ - t_;
    std::vector<char> in_x(g_.order(), 0);
    std::vector<int> owner(g_.order(), -1);
    for (int i = 0; i < groups; ++i) {
      for (Vertex v : free_[i]) {
        in_x[v] = 1;
        owner[v] = i;
      }
    }
    std::vector<char> through(g_.order(), 0);
    for (int i = 0; i < t_; ++i) {
      for (Vertex v : left_[i]) through[v] = 1;
      for (Vertex v : right_[i]) through[v] = 1;
    }
    through[u1_] = through[u2_] = through[u3_] = 0;

    // Free vertices may be connector internals; X vertices may only end one.
    std::vector<char> blocked(g_.order(), 0);
    for (Vertex v = 0; v < g_.order(); ++v) blocked[v] = in_x[v] || through[v] || v == u3_;
    Graph h = g_.without_edges(std::vector<Edge>(banned_.begin(), banned_.end()));
    std::vector<Edge> keep;
    for (const Edge& e : h.edges()) {
      if (!through[e.u] && !through[e.v] && !(in_x[e.u] && in_x[e.v])) keep.push_back(e);
    }
    Graph net_graph(g_.order(), keep);
    // X vertices are blocked, so flow entering one must leave through its group node.
    SplitNetwork split(net_graph, groups + 1, blocked);
    const int sink = split.extra(groups);
    for (int i = 0; i < groups; ++i) split.net().add_arc(split.extra(i), sink, 1);
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (!in_x[v]) continue;
      if (v == u1_ || v == u2_) {
        for (int i = 0; i < groups; ++i) split.net().add_arc(SplitNetwork::in(v), split.extra(i), 1);
      } else {
        split.net().add_arc(SplitNetwork::in(v), split.extra(owner[v]), 1);
      }
    }
    const int source = SplitNetwork::out(u3_);
    if (split.net().max_flow(source, sink, need) < need) return false;

    std::vector<std::pair<int, Path>> hooked;
    for (int c = 0; c < need; ++c) {
      auto walk = split.net().take_flow_path(source, sink);
      const int group = walk[walk.size() - 2] - split.extra(0);
      hooked.emplace_back(group, split.to_vertices(walk));
    }
    std::sort(hooked.begin(), hooked.end());
    ReducedPathBundle rb;
    rb.base = {u1_, u2_, u3_, t_, {}};
    for (int i = 0; i < t_; ++i) {
      Path p = left_[i];
      p.insert(p.end(), right_[i].begin() + 1, right_[i].end());
      rb.base.paths.push_back(std::move(p));
    }
    std::vector<char> placed(groups, 0);
    for (auto& [group, m] : hooked) {
      rb.base.paths.push_back(free_[group]);
      rb.connectors.push_back(m);
      placed[group] = 1;
    }
    for (int i = 0; i < groups; ++i) {
      if (!placed[i]) rb.base.paths.push_back(free_[i]);
    }
    result_ = std::move(rb);
    return true;
  }

  const Graph& g_;
  int k_;
  Vertex u1_, u2_, u3_;
  SearchBudget& budget_;
  int t_ = 0;
  std::vector<Path> left_, right_, free_;
  std::vector<int> used_;
  std::set<Edge> banned_;
  std::optional<ReducedPathBundle> result_;
};

}  // namespace detail

// A (k, t)-reduced path bundle for the smallest feasible t >= opts.min_t,
// or nullopt if the search space is exhausted without one.
inline std::optional<ReducedPathBundle> find_reduced_bundle(const Graph& g, int k, Vertex u1, Vertex u2, Vertex u3,
                                                            SearchBudget& budget, const BundleSearchOptions& opts = {}) {
  if (u1 == u2 || u1 == u3 || u2 == u3) throw std::invalid_argument("find_reduced_bundle: anchors must be distinct");
  if (k < 1) throw std::invalid_argument("find_reduced_bundle: k must be >= 1");
  detail::BundleSearch search(g, k, u1, u2, u3, budget);
  for (int t = std::max(0, opts.min_t); t <= k / 2; ++t) {
    if (auto found = search.run(t)) return found;
  }
  return std::nullopt;
}

inline std::optional<ReducedPathBundle> find_reduced_bundle(const Graph& g, int k, Vertex u1, Vertex u2, Vertex u3,
                                                            const BundleSearchOptions& opts = {}) {
  SearchBudget budget(opts.max_nodes);
  return find_reduced_bundle(g, k, u1, u2, u3, budget, opts);
}

// ---------------------------------------------------------------------------
// Cycles through three prescribed edges.

using OrientedEdge = std::pair<Vertex, Vertex>;

// Simple cycle a0 a1 ... b0 b1 ... c0 c1 ... (back to a0) that crosses the
// three given edges in this order and direction. Returned starting at a0.
inline std::optional<Path> find_cycle_through_ordered(const Graph& g, const std::array<OrientedEdge, 3>& legs,
                                                      SearchBudget& budget) {
  for (const auto& [x, y] : legs) {
    if (!g.adjacent(x, y)) return std::nullopt;
  }
  const int n = g.order();
  std::vector<char> reserved(n, 0);
  for (const auto& [x, y] : legs) reserved[x] = reserved[y] = 1;
  std::vector<char> on(n, 0);
  Path cycle{legs[0].first, legs[0].second};
  on[legs[0].first] = on[legs[0].second] = 1;

  auto reachable = [&](Vertex from, Vertex to) {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (y == to) return true;
        if (seen[y] || on[y] || reserved[y]) continue;
        seen[y] = 1;
        stack.push_back(y);
      }
    }
    return false;
  };

  // stage s: walking from the head of leg s towards the tail of leg s+1 (mod 3).
  std::function<bool(int)> walk = [&](int stage) -> bool {
    budget.charge("cycle search");
    const Vertex x = cycle.back();
    const Vertex target = legs[(stage + 1) % 3].first;
    if (!reachable(x, target)) return false;
    for (int later = stage + 1; later < 3; ++later) {
      if (!reachable(legs[later].second, legs[(later + 1) % 3].first)) return false;
    }
    for (Vertex y : g.neighbors(x)) {
      if (y == target) {
        if (stage == 2) return true;
        const Vertex head = legs[stage + 1].second;
        cycle.push_back(y);
        cycle.push_back(head);
        on[y] = on[head] = 1;
        if (walk(stage + 1)) return true;
        on[y] = on[head] = 0;
        cycle.pop_back();
        cycle.pop_back();
        continue;
      }
      if (on[y] || reserved[y]) continue;
      cycle.push_back(y);
      on[y] = 1;
      if (walk(stage)) return true;
      on[y] = 0;
      cycle.pop_back();
    }
    return false;
  };
  if (walk(0)) return cycle;
  return std::nullopt;
}

// Rotates/reflects a cycle to start at its lowest vertex with the smaller
// neighbour second.
inline Path canonical_cycle(Path c) {
  auto low = std::min_element(c.begin(), c.end());
  std::rotate(c.begin(), low, c.end());
  if (c.size() > 2 && c.back() < c[1]) std::reverse(c.begin() + 1, c.end());
  return c;
}

inline bool pairwise_nonadjacent(const Edge& a, const Edge& b, const Edge& c) {
  std::set<Vertex> ends{a.u, a.v, b.u, b.v, c.u, c.v};
  return ends.size() == 6;
}

// A simple cycle containing all three edges, or nullopt (exactly when the
// three edges form an edge cut of a 3-connected graph).
inline std::optional<Path> find_cycle_through_edges(const Graph& g, const Edge& e1, const Edge& e2, const Edge& e3,
                                                    SearchBudget& budget) {
  if (!pairwise_nonadjacent(e1, e2, e3)) throw std::invalid_argument("edges must be pairwise nonadjacent");
  if (!g.has_edge(e1) || !g.has_edge(e2) || !g.has_edge(e3)) throw std::invalid_argument("edge not in graph");
  if (vertex_connectivity(g) < 3) throw std::invalid_argument("graph must be 3-connected");
  const std::array<std::pair<Edge, Edge>, 2> orders{{{e2, e3}, {e3, e2}}};
  for (const auto& [second, third] : orders) {
    for (int flip = 0; flip < 4; ++flip) {
      OrientedEdge b = (flip & 1) ? OrientedEdge{second.v, second.u} : OrientedEdge{second.u, second.v};
      OrientedEdge c = (flip & 2) ? OrientedEdge{third.v, third.u} : OrientedEdge{third.u, third.v};
      if (auto cyc = find_cycle_through_ordered(g, {OrientedEdge{e1.u, e1.v}, b, c}, budget)) {
        return canonical_cycle(*cyc);
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Path> find_cycle_through_edges(const Graph& g, const Edge& e1, const Edge& e2, const Edge& e3) {
  SearchBudget budget(SearchBudget::kDefaultBundleNodes);
  return find_cycle_through_edges(g, e1, e2, e3, budget);
}

}  // namespace gencon
