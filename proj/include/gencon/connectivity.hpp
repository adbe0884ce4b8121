#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gencon/flow.hpp"
#include "gencon/graph.hpp"

namespace gencon {

using Path = std::vector<Vertex>;

// Internally disjoint u-v paths.
struct PathSystem {
  Vertex source = 0;
  Vertex target = 0;
  std::vector<Path> paths;
};

// Internally disjoint paths from `source` into `targets`, one per distinct
// terminal, with no internal vertex in `targets`.
struct Fan {
  Vertex source = 0;
  std::vector<Vertex> targets;
  std::vector<Path> paths;
};

inline std::vector<Edge> path_edges(const Path& p) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) out.emplace_back(p[i], p[i + 1]);
  return out;
}

// A simple walk along edges of g; empty result means ok.
inline std::optional<std::string> check_simple_path(const Graph& g, const Path& p) {
  if (p.empty()) return "empty path";
  std::set<Vertex> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0 || p[i] >= g.order()) return "vertex out of range";
    if (!seen.insert(p[i]).second) return "vertex " + std::to_string(p[i]) + " repeated";
    if (i + 1 < p.size() && !g.adjacent(p[i], p[i + 1])) {
      return "missing edge " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]);
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_path_system(const Graph& g, const PathSystem& ps) {
  std::set<Vertex> internal;
  std::set<Edge> used;
  for (std::size_t i = 0; i < ps.paths.size(); ++i) {
    const Path& p = ps.paths[i];
    if (auto bad = check_simple_path(g, p)) return "path " + std::to_string(i) + ": " + *bad;
    if (p.front() != ps.source || p.back() != ps.target) {
      return "path " + std::to_string(i) + " has wrong endpoints";
    }
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (!internal.insert(p[j]).second) {
        return "internal vertex " + std::to_string(p[j]) + " shared";
      }
    }
    for (const Edge& e : path_edges(p)) {
      if (!used.insert(e).second) return "edge shared between paths";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> check_fan(const Graph& g, const Fan& f) {
  std::set<Vertex> targets(f.targets.begin(), f.targets.end());
  if (targets.count(f.source)) return "source inside target set";
  std::set<Vertex> used;
  std::set<Vertex> terminals;
  for (std::size_t i = 0; i < f.paths.size(); ++i) {
    const Path& p = f.paths[i];
    if (auto bad = check_simple_path(g, p)) return "path " + std::to_string(i) + ": " + *bad;
    if (p.front() != f.source) return "path " + std::to_string(i) + " does not start at source";
    if (!targets.count(p.back())) return "path " + std::to_string(i) + " ends outside targets";
    if (!terminals.insert(p.back()).second) return "terminal shared";
    for (std::size_t j = 1; j < p.size(); ++j) {
      if (j + 1 < p.size() && targets.count(p[j])) return "internal vertex inside targets";
      if (!used.insert(p[j]).second) return "paths not internally disjoint";
    }
  }
  return std::nullopt;
}

namespace detail {

inline std::vector<Path> extract_paths(SplitNetwork& split, int source, int sink, int count) {
  std::vector<Path> paths;
  for (int i = 0; i < count; ++i) paths.push_back(split.to_vertices(split.net().take_flow_path(source, sink)));
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace detail

// Maximum number of internally disjoint u-v paths (a direct edge counts).
inline int local_connectivity(const Graph& g, Vertex u, Vertex v, int limit = 1 << 30) {
  if (u == v) throw std::invalid_argument("local_connectivity: u == v");
  SplitNetwork split(g);
  return split.net().max_flow(SplitNetwork::out(u), SplitNetwork::in(v), limit);
}

inline std::optional<PathSystem> disjoint_paths(const Graph& g, Vertex u, Vertex v, int r) {
  if (u == v) throw std::invalid_argument("disjoint_paths: u == v");
  SplitNetwork split(g);
  const int s = SplitNetwork::out(u);
  const int t = SplitNetwork::in(v);
  if (split.net().max_flow(s, t, r) < r) return std::nullopt;
  return PathSystem{u, v, detail::extract_paths(split, s, t, r)};
}

// r-fan via an auxiliary sink adjacent to every vertex of Y.
inline std::optional<Fan> fan(const Graph& g, Vertex x, const std::vector<Vertex>& targets, int r) {
  std::vector<Vertex> ys(targets);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (std::binary_search(ys.begin(), ys.end(), x)) throw std::invalid_argument("fan: source in target set");
  if (static_cast<int>(ys.size()) < r) return std::nullopt;
  SplitNetwork split(g, 1);
  const int sink = split.extra(0);
  for (Vertex y : ys) split.net().add_arc(SplitNetwork::out(y), sink, 1);
  const int s = SplitNetwork::out(x);
  if (split.net().max_flow(s, sink, r) < r) return std::nullopt;
  Fan f{x, ys, {}};
  for (int i = 0; i < r; ++i) {
    Path p = split.to_vertices(split.net().take_flow_path(s, sink));
    // Cut at the first target so internal vertices avoid Y.
    for (std::size_t j = 1; j < p.size(); ++j) {
      if (std::binary_search(ys.begin(), ys.end(), p[j])) {
        p.resize(j + 1);
        break;
      }
    }
    f.paths.push_back(std::move(p));
  }
  std::sort(f.paths.begin(), f.paths.end(),
            [](const Path& a, const Path& b) { return a.back() < b.back(); });
  return f;
}

inline int vertex_connectivity(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return 0;
  if (!g.connected()) return 0;
  if (g.is_complete()) return n - 1;
  int best = n - 1;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      best = std::min(best, local_connectivity(g, a, b, best));
    }
  }
  return best;
}

// delta - 1 when two minimum-degree vertices are adjacent; upper bound on kappa_3.
inline std::optional<int> kappa3_upper_adjacent_min_degree(const Graph& g) {
  if (g.order() < 3) return std::nullopt;
  const int delta = g.min_degree();
  for (const Edge& e : g.edges()) {
    if (g.degree(e.u) == delta && g.degree(e.v) == delta) return delta - 1;
  }
  return std::nullopt;
}

struct Kappa3Range {
  int lower = 0;
  int upper = 0;
};

// With kappa = 4q + r: 3q + ceil(r/2) <= kappa_3 <= kappa.
inline Kappa3Range kappa3_range_from_kappa(int kappa) {
  if (kappa < 0) throw std::invalid_argument("kappa3_range_from_kappa: kappa < 0");
  const int q = kappa / 4;
  const int r = kappa % 4;
  return {3 * q + (r + 1) / 2, kappa};
}

}  // namespace gencon
