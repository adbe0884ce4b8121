#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "gencon/graph.hpp"

namespace gencon {

// Small integer max-flow network. Augmenting paths are found by BFS that
// scans arcs in insertion order, so results are reproducible.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : arcs_(static_cast<std::size_t>(nodes)) {}

  int nodes() const noexcept { return static_cast<int>(arcs_.size()); }

  void add_arc(int from, int to, int cap) {
    arcs_[from].push_back({to, cap, cap, static_cast<int>(arcs_[to].size())});
    arcs_[to].push_back({from, 0, 0, static_cast<int>(arcs_[from].size()) - 1});
  }

  // Pushes flow until `limit` is reached or no augmenting path remains.
  int max_flow(int source, int sink, int limit = std::numeric_limits<int>::max()) {
    int total = 0;
    std::vector<std::pair<int, int>> parent(arcs_.size());
    while (total < limit) {
      std::fill(parent.begin(), parent.end(), std::pair{-1, -1});
      parent[source] = {source, -1};
      std::vector<int> queue{source};
      for (std::size_t qi = 0; qi < queue.size() && parent[sink].first < 0; ++qi) {
        int x = queue[qi];
        for (int i = 0; i < static_cast<int>(arcs_[x].size()); ++i) {
          const Arc& a = arcs_[x][i];
          if (a.cap > 0 && parent[a.to].first < 0) {
            parent[a.to] = {x, i};
            queue.push_back(a.to);
          }
        }
      }
      if (parent[sink].first < 0) break;
      int push = limit - total;
      for (int y = sink; y != source; y = parent[y].first) {
        push = std::min(push, arcs_[parent[y].first][parent[y].second].cap);
      }
      for (int y = sink; y != source; y = parent[y].first) {
        Arc& a = arcs_[parent[y].first][parent[y].second];
        a.cap -= push;
        arcs_[y][a.rev].cap += push;
      }
      total += push;
    }
    return total;
  }

  // Walks one unit of flow from source to sink, always taking the flowing
  // arc with the smallest head, and removes it. Returns the node sequence.
  std::vector<int> take_flow_path(int source, int sink) {
    std::vector<int> walk{source};
    int x = source;
    while (x != sink) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(arcs_[x].size()); ++i) {
        const Arc& a = arcs_[x][i];
        if (a.cap0 > 0 && a.cap < a.cap0 && (best < 0 || a.to < arcs_[x][best].to)) best = i;
      }
      if (best < 0) return {};
      Arc& a = arcs_[x][best];
      a.cap += 1;
      arcs_[a.to][a.rev].cap -= 1;
      x = a.to;
      walk.push_back(x);
    }
    return walk;
  }

 private:
  struct Arc {
    int to;
    int cap;   // residual
    int cap0;  // original
    int rev;
  };
  std::vector<std::vector<Arc>> arcs_;
};

// Vertex-split network of a graph: node 2v is v_in, 2v+1 is v_out, with a
// unit arc v_in -> v_out. Blocked vertices get no internal arc.
class SplitNetwork {
 public:
  static int in(Vertex v) { return 2 * v; }
  static int out(Vertex v) { return 2 * v + 1; }

  SplitNetwork(const Graph& g, int extra_nodes = 0, std::span<const char> blocked = {})
      : net_(2 * g.order() + extra_nodes), base_(2 * g.order()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      if (blocked.empty() || !blocked[v]) net_.add_arc(in(v), out(v), 1);
    }
    for (Vertex a = 0; a < g.order(); ++a) {
      for (Vertex b : g.neighbors(a)) net_.add_arc(out(a), in(b), 1);
    }
  }

  FlowNetwork& net() noexcept { return net_; }
  int extra(int i) const noexcept { return base_ + i; }
  int base() const noexcept { return base_; }

  // Converts a node walk into vertex ids, collapsing in/out pairs and
  // dropping extra nodes.
  std::vector<Vertex> to_vertices(const std::vector<int>& walk) const {
    std::vector<Vertex> path;
    for (int node : walk) {
      if (node >= base_) continue;
      Vertex v = node / 2;
      if (path.empty() || path.back() != v) path.push_back(v);
    }
    return path;
  }

 private:
  FlowNetwork net_;
  int base_;
};

}  // namespace gencon
