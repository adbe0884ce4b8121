#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gencon/budget.hpp"
#include "gencon/connectivity.hpp"
#include "gencon/graph.hpp"
#include "gencon/steiner.hpp"

namespace gencon {

struct FamilyMatch {
  Kappa3Family family;
  std::vector<int> params;
  std::string name;  // e.g. "K_{2,3}"
};

// Recognises complete graphs, complete bipartite/tripartite graphs and cycles.
inline std::optional<FamilyMatch> recognize_family(const Graph& g) {
  const int n = g.order();
  if (n < 3 || !g.connected()) return std::nullopt;
  if (g.is_complete()) return FamilyMatch{Kappa3Family::complete, {n}, "K_" + std::to_string(n)};
  bool two_regular = true;
  for (Vertex v = 0; v < n; ++v) two_regular = two_regular && g.degree(v) == 2;
  if (two_regular) return FamilyMatch{Kappa3Family::cycle_product, {1}, "C_" + std::to_string(n)};

  // Complete multipartite: vertices with equal neighbourhoods form independent
  // parts and every cross pair is adjacent.
  std::map<std::vector<Vertex>, std::vector<Vertex>> parts;
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    parts[std::vector<Vertex>(nb.begin(), nb.end())].push_back(v);
  }
  std::vector<int> sizes;
  for (const auto& [nb, members] : parts) {
    if (static_cast<int>(nb.size()) != n - static_cast<int>(members.size())) return std::nullopt;
    sizes.push_back(static_cast<int>(members.size()));
  }
  std::sort(sizes.begin(), sizes.end());
  auto label = [&] {
    std::string s = "K_{";
    for (std::size_t i = 0; i < sizes.size(); ++i) s += (i ? "," : "") + std::to_string(sizes[i]);
    return s + "}";
  };
  if (sizes.size() == 2) return FamilyMatch{Kappa3Family::complete_bipartite, sizes, label()};
  if (sizes.size() == 3) return FamilyMatch{Kappa3Family::complete_tripartite, sizes, label()};
  return std::nullopt;
}

// kappa, delta and kappa_3 of a product factor. For a 2-vertex factor
// kappa_3 is undefined; kappa is used in its place and flagged.
struct FactorInvariants {
  int order = 0;
  int kappa = 0;
  int delta = 0;
  int kappa3 = 0;
  bool kappa3_is_convention = false;
  bool kappa3_from_formula = false;
};

inline FactorInvariants factor_invariants(const Graph& g, SearchBudget& budget) {
  if (g.order() < 2 || !g.connected()) throw std::invalid_argument("factor must be nontrivial and connected");
  FactorInvariants f;
  f.order = g.order();
  f.kappa = vertex_connectivity(g);
  f.delta = g.min_degree();
  if (g.order() == 2) {
    f.kappa3 = f.kappa;
    f.kappa3_is_convention = true;
  } else if (auto match = recognize_family(g)) {
    f.kappa3 = kappa3_formula(match->family, match->params);
    f.kappa3_from_formula = true;
  } else {
    f.kappa3 = kappa_k(g, 3, budget).value;
  }
  return f;
}

inline FactorInvariants factor_invariants(const Graph& g) {
  SearchBudget budget;
  return factor_invariants(g, budget);
}

struct Theorem14Bound {
  int value = 0;
  int via_g = 0;      // kappa3(G) + delta(H)
  int via_h = 0;      // kappa3(H) + delta(G)
  int via_kappa = 0;  // kappa(G) + kappa(H) - 1
};

inline Theorem14Bound lower_bound_theorem14(const FactorInvariants& g, const FactorInvariants& h) {
  Theorem14Bound b;
  b.via_g = g.kappa3 + h.delta;
  b.via_h = h.kappa3 + g.delta;
  b.via_kappa = g.kappa + h.kappa - 1;
  b.value = std::min({b.via_g, b.via_h, b.via_kappa});
  return b;
}

inline Theorem14Bound lower_bound_theorem14(const Graph& g, const Graph& h, SearchBudget& budget) {
  return lower_bound_theorem14(factor_invariants(g, budget), factor_invariants(h, budget));
}

inline Theorem14Bound lower_bound_theorem14(const Graph& g, const Graph& h) {
  SearchBudget budget;
  return lower_bound_theorem14(g, h, budget);
}

// kappa_3(G □ H) for an l-connected H, or nullopt outside l <= 7 / l <= 9.
inline std::optional<int> lower_bound_theorem15(int kappa_g, int kappa3_g, int l) {
  if (l < 1) throw std::invalid_argument("lower_bound_theorem15: l must be >= 1");
  if (kappa_g == kappa3_g) {
    if (l <= 7) return kappa3_g + l - 1;
    return std::nullopt;
  }
  if (l <= 9) return kappa3_g + l;
  return std::nullopt;
}

inline std::optional<int> lower_bound_theorem15(const FactorInvariants& g, int l) {
  return lower_bound_theorem15(g.kappa, g.kappa3, l);
}

// Same shape restricted to 1 <= l <= 5, where it follows from the three-way minimum.
inline std::optional<int> corollary36_bound(int kappa_g, int kappa3_g, int l) {
  if (l < 1) throw std::invalid_argument("corollary36_bound: l must be >= 1");
  if (l > 5) return std::nullopt;
  return kappa_g == kappa3_g ? kappa3_g + l - 1 : kappa3_g + l;
}

inline int ceil_half(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

// Lower bound on kappa(S) for S inside one H-fiber, given an (l, t)-reduced
// path bundle in H and delta1 usable neighbours of the fiber's G-vertex.
inline int same_fiber_bound(int l, int delta1, int t) {
  if (l < 1 || delta1 < 0 || t < 0 || t > l / 2) throw std::invalid_argument("same_fiber_bound: out of range");
  if (t == 0) return l + delta1;
  if (delta1 >= t - 2) return l + delta1 - 1;
  return l + delta1 - ceil_half(t - delta1);
}

inline int prop42_bound(int l, int delta1) {
  if (l < 1 || delta1 < 1) throw std::invalid_argument("prop42_bound: needs l >= 1 and delta1 >= 1");
  const int half = l / 2;
  if (delta1 >= half - 2) return l + delta1 - 1;
  return l + delta1 - ceil_half(half - delta1);
}

}  // namespace gencon
