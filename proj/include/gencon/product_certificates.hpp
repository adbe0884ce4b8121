#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gencon/bounds.hpp"
#include "gencon/budget.hpp"
#include "gencon/connectivity.hpp"
#include "gencon/graph.hpp"
#include "gencon/path_bundles.hpp"
#include "gencon/steiner.hpp"

namespace gencon {

using Triple = std::array<ProductVertex, 3>;

enum class PositionKind {
  all_distinct,         // three distinct G- and H-coordinates
  corner_share,         // {(u1,v1), (u1,v2), (u2,v1)}
  two_share_one_apart,  // {(u1,v1), (u2,v1), (u3,v2)}, possibly with G/H swapped
  same_g_fiber,         // all in one layer: equal H-coordinates
  same_h_fiber,         // all in one column: equal G-coordinates
};

inline const char* to_string(PositionKind k) {
  switch (k) {
    case PositionKind::all_distinct: return "AllDistinct";
    case PositionKind::corner_share: return "CornerShare";
    case PositionKind::two_share_one_apart: return "TwoShareOneApart";
    case PositionKind::same_g_fiber: return "SameGFiber";
    case PositionKind::same_h_fiber: return "SameHFiber";
  }
  return "?";
}

// slots[i] is the index in the caller's S of the vertex playing canonical
// role i. `swapped` means the canonical shape holds in H □ G.
struct SPosition {
  PositionKind kind = PositionKind::all_distinct;
  bool swapped = false;
  std::array<int, 3> slots{0, 1, 2};

  // Applies the normalisation: canonical triple in the (possibly swapped) frame.
  Triple normalize(const Triple& s) const {
    Triple out;
    for (int i = 0; i < 3; ++i) {
      const ProductVertex p = s[slots[i]];
      out[i] = swapped ? ProductVertex{p.v, p.u} : p;
    }
    return out;
  }

  // Inverse of normalize.
  Triple denormalize(const Triple& canonical) const {
    Triple out;
    for (int i = 0; i < 3; ++i) {
      const ProductVertex p = canonical[i];
      out[slots[i]] = swapped ? ProductVertex{p.v, p.u} : p;
    }
    return out;
  }
};

inline SPosition classify_position(const Triple& s) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (s[i] == s[j]) throw std::invalid_argument("classify_position: vertices must be distinct");
  auto same_u = [&](int i, int j) { return s[i].u == s[j].u; };
  auto same_v = [&](int i, int j) { return s[i].v == s[j].v; };
  const int distinct_u = static_cast<int>(std::set<Vertex>{s[0].u, s[1].u, s[2].u}.size());
  const int distinct_v = static_cast<int>(std::set<Vertex>{s[0].v, s[1].v, s[2].v}.size());
  SPosition pos;
  if (distinct_u == 1) {
    pos.kind = PositionKind::same_h_fiber;
  } else if (distinct_v == 1) {
    pos.kind = PositionKind::same_g_fiber;
  } else if (distinct_u == 3 && distinct_v == 3) {
    pos.kind = PositionKind::all_distinct;
  } else if (distinct_u == 2 && distinct_v == 2) {
    pos.kind = PositionKind::corner_share;
    for (int c = 0; c < 3; ++c) {
      const int a = (c + 1) % 3, b = (c + 2) % 3;
      if (same_u(c, a) && same_v(c, b)) pos.slots = {c, a, b};
      if (same_u(c, b) && same_v(c, a)) pos.slots = {c, b, a};
    }
  } else {
    pos.kind = PositionKind::two_share_one_apart;
    pos.swapped = distinct_v == 3;  // the pair shares its G-coordinate
    auto shares = [&](int i, int j) { return pos.swapped ? same_u(i, j) : same_v(i, j); };
    for (int apart = 0; apart < 3; ++apart) {
      const int a = (apart + 1) % 3, b = (apart + 2) % 3;
      if (shares(a, b)) pos.slots = {std::min(a, b), std::max(a, b), apart};
    }
  }
  return pos;
}

inline SPosition classify_position(const Graph& g, const Graph& h, const Triple& s) {
  for (const auto& p : s) {
    if (p.u < 0 || p.u >= g.order() || p.v < 0 || p.v >= h.order()) {
      throw std::invalid_argument("classify_position: vertex outside the product");
    }
  }
  return classify_position(s);
}

inline constexpr const char* kFallbackTag = "search-fallback";

struct Certificate {
  Graph g;
  Graph h;
  Triple s{};
  std::string provenance;
  int claimed_bound = 0;
  std::string bound_expression;
  STreeBundle bundle;  // flat ids of g □ h; terminals follow the order of s

  bool is_fallback() const { return provenance == kFallbackTag; }
};

struct CertifyOptions {
  std::uint64_t max_nodes = SearchBudget::kDefaultPackNodes;
  std::uint64_t bundle_nodes = SearchBudget::kDefaultBundleNodes;
  std::optional<std::chrono::seconds> timeout;
  int min_t = 0;              // smallest t accepted from the path-bundle finder
  bool allow_fallback = true;
};

// Raised when a construction cannot realise its standing hypotheses.
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// The factors in the orientation a construction works in.
class Frame {
 public:
  Frame(const Graph& g, const Graph& h, bool swapped)
      : g_(swapped ? h : g), h_(swapped ? g : h), swapped_(swapped), layout_(g_.order(), h_.order()) {}

  const Graph& g() const { return g_; }
  const Graph& h() const { return h_; }
  bool swapped() const { return swapped_; }
  const ProductLayout& layout() const { return layout_; }
  Vertex at(Vertex u, Vertex v) const { return layout_.flat(u, v); }
  Vertex at(ProductVertex p) const { return layout_.flat(p); }

  // Flat id of a frame vertex in the caller's G □ H.
  Vertex to_original(Vertex x) const {
    if (!swapped_) return x;
    const ProductVertex p = layout_.coords(x);
    return p.v * g_.order() + p.u;
  }

 private:
  Graph g_;
  Graph h_;
  bool swapped_;
  ProductLayout layout_;
};

// Union of fiber pieces making up one tree, in frame ids.
class Assembly {
 public:
  explicit Assembly(const Frame& f) : f_(&f) {}

  Assembly& g_edge(Vertex a, Vertex b, Vertex v) {
    edges_.emplace_back(f_->at(a, v), f_->at(b, v));
    return *this;
  }
  Assembly& h_edge(Vertex a, Vertex b, Vertex u) {
    edges_.emplace_back(f_->at(u, a), f_->at(u, b));
    return *this;
  }
  Assembly& g_path(const Path& p, Vertex v) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) g_edge(p[i], p[i + 1], v);
    return *this;
  }
  Assembly& h_path(const Path& p, Vertex u) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) h_edge(p[i], p[i + 1], u);
    return *this;
  }
  Assembly& g_fiber(Vertex v) {
    for (const Edge& e : f_->g().edges()) g_edge(e.u, e.v, v);
    return *this;
  }
  // H minus `removed` in column u.
  Assembly& h_fiber(Vertex u, const std::vector<Vertex>& removed = {}) {
    std::set<Vertex> gone(removed.begin(), removed.end());
    for (const Edge& e : f_->h().edges()) {
      if (!gone.count(e.u) && !gone.count(e.v)) h_edge(e.u, e.v, u);
    }
    return *this;
  }
  Assembly& raw(const std::vector<Edge>& frame_edges) {
    edges_.insert(edges_.end(), frame_edges.begin(), frame_edges.end());
    return *this;
  }

  const std::vector<Edge>& edges() const { return edges_; }

 private:
  const Frame* f_;
  std::vector<Edge> edges_;
};

inline Path drop_last(Path p) {
  p.pop_back();
  return p;
}

inline Path drop_first(Path p) {
  p.erase(p.begin());
  return p;
}

// Fan from x reaching every target exactly once, keyed by terminal.
inline std::map<Vertex, Path> full_fan(const Graph& g, Vertex x, const std::vector<Vertex>& targets) {
  std::set<Vertex> distinct(targets.begin(), targets.end());
  if (distinct.size() != targets.size()) throw HypothesisFailure("fan targets not distinct");
  if (distinct.count(x)) throw HypothesisFailure("fan source among targets");
  std::map<Vertex, Path> out;
  if (targets.empty()) return out;
  auto f = fan(g, x, targets, static_cast<int>(targets.size()));
  if (!f) throw HypothesisFailure("fan does not exist");
  for (auto& p : f->paths) out[p.back()] = p;
  return out;
}

inline std::vector<Path> paths_or_fail(const Graph& g, Vertex a, Vertex b, int r) {
  if (r <= 0) return {};
  auto ps = disjoint_paths(g, a, b, r);
  if (!ps) throw HypothesisFailure("not enough disjoint paths");
  return ps->paths;
}

// H minus `removed` must be connected and keep the listed vertices.
inline void require_connected_remainder(const Graph& h, const std::vector<Vertex>& removed,
                                        std::initializer_list<Vertex> keep) {
  std::set<Vertex> gone(removed.begin(), removed.end());
  for (Vertex v : keep) {
    if (gone.count(v)) throw HypothesisFailure("pruned fiber loses a terminal row");
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < h.order(); ++v) {
    if (!gone.count(v)) rest.push_back(v);
  }
  if (!induced(h, rest).graph.connected()) throw HypothesisFailure("pruned fiber is disconnected");
}

// Trims each union to a tree and maps everything back to the caller's ids.
inline STreeBundle finish(const Frame& f, const Triple& canonical, const std::vector<Assembly>& parts,
                          const Triple& original) {
  std::vector<Vertex> frame_terms;
  for (const auto& p : canonical) frame_terms.push_back(f.at(p));
  STreeBundle bundle;
  const int h_order = f.swapped() ? f.g().order() : f.h().order();
  for (const auto& p : original) bundle.terminals.push_back(p.u * h_order + p.v);
  for (const Assembly& a : parts) {
    auto tree = tree_from_subgraph(a.edges(), frame_terms);
    if (!tree) throw std::logic_error("assembled piece does not connect the terminals");
    STree mapped;
    for (const Edge& e : tree->edges) mapped.edges.emplace_back(f.to_original(e.u), f.to_original(e.v));
    std::sort(mapped.edges.begin(), mapped.edges.end());
    bundle.trees.push_back(std::move(mapped));
  }
  return bundle;
}

inline std::string sum_expression(const std::string& names, const std::vector<int>& terms, int offset) {
  std::string s = names + " = ";
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? " + " : "") + std::to_string(terms[i]);
  if (offset < 0) s += " - " + std::to_string(-offset);
  if (offset > 0) s += " + " + std::to_string(offset);
  return s;
}

inline Certificate make_certificate(const Graph& g, const Graph& h, const Triple& s, std::string provenance,
                                    int bound, std::string expression, STreeBundle bundle) {
  return Certificate{g, h, s, std::move(provenance), bound, std::move(expression), std::move(bundle)};
}

inline Certificate fallback(const Graph& g, const Graph& h, const Triple& s, int bound, std::string expression,
                            SearchBudget& budget) {
  const Graph product = cartesian_product(g, h);
  std::vector<Vertex> terms;
  for (const auto& p : s) terms.push_back(p.u * h.order() + p.v);
  auto found = pack_trees(product, terms, bound, budget);
  if (!found) throw std::logic_error("exact search found fewer trees than the proven bound");
  return make_certificate(g, h, s, kFallbackTag, bound, std::move(expression), std::move(*found));
}

inline void require_kind(const Triple& s, PositionKind want, const char* who) {
  if (classify_position(s).kind != want) {
    throw std::invalid_argument(std::string(who) + ": S must be " + to_string(want));
  }
}

inline void require_factors(const Graph& g, const Graph& h, const Triple& s) {
  if (g.order() < 2 || h.order() < 2 || !g.connected() || !h.connected()) {
    throw std::invalid_argument("factors must be nontrivial and connected");
  }
  classify_position(g, h, s);
}

// --- AllDistinct -----------------------------------------------------------

inline bool is_triangle(const Graph& g, Vertex a, Vertex b, Vertex c) {
  return g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c);
}

// S = {(u1,v1),(u2,v2),(u3,v3)} with v1, v2 nonadjacent in H.
inline std::pair<std::string, std::vector<Assembly>> all_distinct_general(const Frame& f, const Triple& s) {
  const Graph& g = f.g();
  const Graph& h = f.h();
  const auto [u1, v1] = s[0];
  const auto [u2, v2] = s[1];
  const auto [u3, v3] = s[2];
  if (h.adjacent(v1, v2)) throw HypothesisFailure("v1 adjacent to v2");
  const int k = vertex_connectivity(g);
  const int l = vertex_connectivity(h);

  // H side: the path through v3 (if any) goes last.
  std::vector<Path> p = paths_or_fail(h, v1, v2, l);
  std::stable_partition(p.begin(), p.end(),
                        [&](const Path& q) { return std::find(q.begin(), q.end(), v3) == q.end(); });
  std::vector<Vertex> vi;
  for (int j = 0; j + 1 < l; ++j) vi.push_back(p[j][p[j].size() - 2]);
  std::vector<Vertex> q_targets = vi;
  q_targets.push_back(v1);
  auto q = full_fan(h, v3, q_targets);
  require_connected_remainder(h, vi, {v1, v2, v3});

  std::vector<Assembly> trees;
  for (int j = 0; j + 1 < l; ++j) {
    Assembly a(f);
    a.h_path(drop_last(p[j]), u1).g_fiber(vi[j]).h_edge(v2, vi[j], u2).h_path(q.at(vi[j]), u3);
    trees.push_back(std::move(a));
  }

  // G side: R_j are u1u2-paths; up[j] is the neighbour of u2 on R_j.
  std::vector<Path> r = paths_or_fail(g, u1, u2, k);
  auto before_u2 = [](const Path& x) { return x[x.size() - 2]; };
  std::optional<Path> direct, via_u3;
  std::vector<Path> rest;
  for (const Path& x : r) {
    if (before_u2(x) == u1) direct = x;
    else if (before_u2(x) == u3) via_u3 = x;
    else rest.push_back(x);
  }
  const bool case12 = via_u3.has_value();
  std::vector<Path> ordered = rest;
  if (case12) {
    if (k < 2) throw HypothesisFailure("k = 1 with the only path entering u2 from u3");
    if (direct) ordered.push_back(*direct);
    ordered.push_back(*via_u3);
  } else if (direct) {
    if (ordered.empty()) throw HypothesisFailure("k = 1 with u1 adjacent to u2");
    ordered.insert(ordered.end() - 1, *direct);
  }
  std::vector<Vertex> up;
  for (const Path& x : ordered) up.push_back(before_u2(x));

  std::vector<Vertex> s_targets(up.begin(), up.begin() + std::max(0, k - 2));
  if (k >= 2) s_targets.push_back(u2);
  std::map<Vertex, Path> sf;
  if (case12) {
    sf = full_fan(g.without_vertices(std::vector<Vertex>{u1}), u3, s_targets);
  } else {
    s_targets.push_back(up[k - 1]);
    sf = full_fan(g, u3, s_targets);
  }
  auto column_tree = [&](int j) {
    Assembly a(f);
    a.g_path(drop_last(ordered[j]), v1).h_fiber(up[j], vi).g_edge(up[j], u2, v2).g_path(sf.at(up[j]), v3);
    return a;
  };
  for (int j = 0; j + 2 < k; ++j) trees.push_back(column_tree(j));
  if (k >= 2) {
    Assembly a(f);
    a.g_path(ordered[k - 2], v1).h_fiber(u2, vi).g_path(sf.at(u2), v3);
    trees.push_back(std::move(a));
  }
  if (case12) {
    Assembly a(f);
    a.h_path(q.at(v1), u3).g_path(drop_last(ordered[k - 1]), v1).h_path(p[l - 1], u1).g_path(ordered[k - 2], v2);
    trees.push_back(std::move(a));
  } else {
    trees.push_back(column_tree(k - 1));
  }
  return {case12 ? "3.1/1.2" : "3.1/1.1", std::move(trees)};
}

// Both coordinate triples induce triangles.
inline std::vector<Assembly> all_distinct_triangles(const Frame& f, const Triple& s, SearchBudget& budget) {
  const Graph& g = f.g();
  const Graph& h = f.h();
  const auto [u1, v1] = s[0];
  const auto [u2, v2] = s[1];
  const auto [u3, v3] = s[2];
  const int k = vertex_connectivity(g);
  const int l = vertex_connectivity(h);
  std::vector<Assembly> trees;

  // Three trees inside the 3 x 3 grid spanned by S.
  const Graph product = cartesian_product(g, h);
  std::vector<Vertex> grid;
  for (Vertex u : {u1, u2, u3})
    for (Vertex v : {v1, v2, v3}) grid.push_back(f.at(u, v));
  std::sort(grid.begin(), grid.end());
  const InducedSubgraph sub = induced(product, grid);
  std::vector<Vertex> local_terms;
  for (const auto& p : s) {
    local_terms.push_back(static_cast<Vertex>(std::lower_bound(grid.begin(), grid.end(), f.at(p)) - grid.begin()));
  }
  auto three = pack_trees(sub.graph, local_terms, 3, budget);
  if (!three) throw HypothesisFailure("no three trees in the 3 x 3 grid");
  for (const STree& t : three->trees) {
    std::vector<Edge> es;
    for (const Edge& e : t.edges) es.emplace_back(sub.to_parent[e.u], sub.to_parent[e.v]);
    Assembly a(f);
    a.raw(es);
    trees.push_back(std::move(a));
  }

  const Graph h_cut = h.without_vertices(std::vector<Vertex>{v3}).without_edges(std::vector<Edge>{Edge(v1, v2)});
  std::vector<Path> p = paths_or_fail(h_cut, v1, v2, l - 2);
  std::vector<Vertex> vi;
  for (const Path& x : p) vi.push_back(x[x.size() - 2]);
  auto q = full_fan(h.without_vertices(std::vector<Vertex>{v1, v2}), v3, vi);
  require_connected_remainder(h, vi, {v1, v2, v3});
  for (std::size_t j = 0; j < p.size(); ++j) {
    Assembly a(f);
    a.h_path(drop_last(p[j]), u1).g_fiber(vi[j]).h_edge(v2, vi[j], u2).h_path(q.at(vi[j]), u3);
    trees.push_back(std::move(a));
  }

  const Graph g_cut = g.without_vertices(std::vector<Vertex>{u3}).without_edges(std::vector<Edge>{Edge(u1, u2)});
  std::vector<Path> r = paths_or_fail(g_cut, u1, u2, k - 2);
  std::vector<Vertex> up;
  for (const Path& x : r) up.push_back(x[x.size() - 2]);
  auto sf = full_fan(g.without_vertices(std::vector<Vertex>{u1, u2}), u3, up);
  for (std::size_t j = 0; j < r.size(); ++j) {
    Assembly a(f);
    a.g_path(drop_last(r[j]), v1).h_fiber(up[j], vi).g_edge(up[j], u2, v2).g_path(sf.at(up[j]), v3);
    trees.push_back(std::move(a));
  }
  return trees;
}

}  // namespace detail

// kappa(S) >= kappa(G) + kappa(H) - 1 for S with pairwise distinct coordinates.
inline Certificate construct_lemma31(const Graph& g, const Graph& h, const Triple& s, SearchBudget& budget,
                                     const CertifyOptions& opts = {}) {
  detail::require_factors(g, h, s);
  detail::require_kind(s, PositionKind::all_distinct, "construct_lemma31");
  const int k = vertex_connectivity(g);
  const int l = vertex_connectivity(h);
  const int bound = k + l - 1;
  const std::string expr = detail::sum_expression("kappa(G) + kappa(H) - 1", {k, l}, -1);

  const bool triangles = detail::is_triangle(g, s[0].u, s[1].u, s[2].u) && detail::is_triangle(h, s[0].v, s[1].v, s[2].v);
  for (bool swapped : {false, true}) {
    std::array<int, 3> perm{0, 1, 2};
    do {
      SPosition pos{PositionKind::all_distinct, swapped, perm};
      const Triple canon = pos.normalize(s);
      detail::Frame frame(g, h, swapped);
      try {
        if (triangles) {
          auto trees = detail::all_distinct_triangles(frame, canon, budget);
          return detail::make_certificate(g, h, s, "3.1/2", bound, expr, detail::finish(frame, canon, trees, s));
        }
        auto [tag, trees] = detail::all_distinct_general(frame, canon);
        return detail::make_certificate(g, h, s, tag, bound, expr, detail::finish(frame, canon, trees, s));
      } catch (const HypothesisFailure&) {
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (!opts.allow_fallback) throw HypothesisFailure("construct_lemma31: no relabelling satisfies the hypotheses");
  return detail::fallback(g, h, s, bound, expr, budget);
}

// S = {(u1,v1),(u1,v2),(u2,v1)}.
inline Certificate construct_lemma32(const Graph& g, const Graph& h, const Triple& s, SearchBudget& budget,
                                     const CertifyOptions& opts = {}) {
  detail::require_factors(g, h, s);
  const SPosition pos = classify_position(s);
  if (pos.kind != PositionKind::corner_share) throw std::invalid_argument("construct_lemma32: S must be CornerShare");
  const int k = vertex_connectivity(g);
  const int l = vertex_connectivity(h);
  const int bound = k + l - 1;
  const std::string expr = detail::sum_expression("kappa(G) + kappa(H) - 1", {k, l}, -1);
  const Triple canon = pos.normalize(s);
  const detail::Frame frame(g, h, false);
  const auto [u1, v1] = canon[0];
  const Vertex v2 = canon[1].v;
  const Vertex u2 = canon[2].u;
  try {
    auto direct_last = [](std::vector<Path> ps) {
      std::stable_partition(ps.begin(), ps.end(), [](const Path& x) { return x.size() > 2; });
      return ps;
    };
    std::vector<Path> p = direct_last(detail::paths_or_fail(h, v1, v2, l));
    std::vector<Path> q = direct_last(detail::paths_or_fail(g, u1, u2, k));
    std::vector<Vertex> vi;
    for (int j = 0; j + 1 < l; ++j) vi.push_back(p[j][1]);
    detail::require_connected_remainder(h, vi, {v1, v2});
    std::vector<detail::Assembly> trees;
    for (int j = 0; j + 1 < l; ++j) {
      detail::Assembly a(frame);
      a.h_path(p[j], u1).g_fiber(vi[j]).h_edge(v1, vi[j], u2);
      trees.push_back(std::move(a));
    }
    for (int j = 0; j + 1 < k; ++j) {
      detail::Assembly a(frame);
      a.g_path(q[j], v1).h_fiber(q[j][1], vi).g_edge(u1, q[j][1], v2);
      trees.push_back(std::move(a));
    }
    detail::Assembly last(frame);
    last.h_path(p[l - 1], u1).g_path(q[k - 1], v1);
    trees.push_back(std::move(last));
    return detail::make_certificate(g, h, s, "3.2", bound, expr, detail::finish(frame, canon, trees, s));
  } catch (const HypothesisFailure&) {
    if (!opts.allow_fallback) throw;
  }
  return detail::fallback(g, h, s, bound, expr, budget);
}

// S = {(u1,v1),(u2,v1),(u3,v2)}, in either orientation.
inline Certificate construct_lemma33(const Graph& g, const Graph& h, const Triple& s, SearchBudget& budget,
                                     const CertifyOptions& opts = {}) {
  detail::require_factors(g, h, s);
  const SPosition pos = classify_position(s);
  if (pos.kind != PositionKind::two_share_one_apart) {
    throw std::invalid_argument("construct_lemma33: S must be TwoShareOneApart");
  }
  const detail::Frame frame(g, h, pos.swapped);
  const int k = vertex_connectivity(frame.g());
  const int l = vertex_connectivity(frame.h());
  const int bound = k + l - 1;
  const std::string expr = detail::sum_expression("kappa(G) + kappa(H) - 1", {vertex_connectivity(g), vertex_connectivity(h)}, -1);
  const Triple canon = pos.normalize(s);
  const auto [u1, v1] = canon[0];
  const Vertex u2 = canon[1].u;
  const auto [u3, v2] = canon[2];
  try {
    std::vector<Path> p = detail::paths_or_fail(frame.h(), v1, v2, l);
    std::stable_partition(p.begin(), p.end(), [](const Path& x) { return x.size() > 2; });
    std::vector<Vertex> vi;
    for (int j = 0; j + 1 < l; ++j) vi.push_back(p[j][1]);
    detail::require_connected_remainder(frame.h(), vi, {v1, v2});

    std::vector<Path> q = detail::paths_or_fail(frame.g(), u1, u2, k);
    std::stable_partition(q.begin(), q.end(), [&](const Path& x) { return x[1] != u2 && x[1] != u3; });
    for (int j = 0; j + 2 < k; ++j) {
      if (q[j][1] == u2 || q[j][1] == u3) throw HypothesisFailure("too many special u1u2-paths");
    }
    std::vector<Vertex> targets;
    for (int j = 0; j + 2 < k; ++j) targets.push_back(q[j][1]);
    if (k >= 2) targets.push_back(u1);
    targets.push_back(u2);
    auto r = detail::full_fan(frame.g(), u3, targets);

    std::vector<detail::Assembly> trees;
    for (int j = 0; j + 1 < l; ++j) {
      detail::Assembly a(frame);
      a.h_edge(v1, vi[j], u1).h_edge(v1, vi[j], u2).g_fiber(vi[j]).h_path(detail::drop_first(p[j]), u3);
      trees.push_back(std::move(a));
    }
    for (int j = 0; j < k; ++j) {
      Vertex column = j + 2 < k ? q[j][1] : (j + 1 < k ? u1 : u2);
      detail::Assembly a(frame);
      a.g_path(q[j], v1).h_fiber(column, vi).g_path(r.at(column), v2);
      trees.push_back(std::move(a));
    }
    return detail::make_certificate(g, h, s, "3.3", bound, expr, detail::finish(frame, canon, trees, s));
  } catch (const HypothesisFailure&) {
    if (!opts.allow_fallback) throw;
  }
  return detail::fallback(g, h, s, bound, expr, budget);
}

// S inside one G-layer: kappa(S) >= kappa_3(G) + delta(H).
inline Certificate construct_lemma34(const Graph& g, const Graph& h, const Triple& s, SearchBudget& budget,
                                     const CertifyOptions& = {}) {
  detail::require_factors(g, h, s);
  detail::require_kind(s, PositionKind::same_g_fiber, "construct_lemma34");
  const FactorInvariants gi = factor_invariants(g, budget);
  const int bound = gi.kappa3 + h.min_degree();
  const std::string expr = detail::sum_expression("kappa3(G) + delta(H)", {gi.kappa3, h.min_degree()}, 0);
  const detail::Frame frame(g, h, false);
  const Vertex v1 = s[0].v;
  const std::vector<Vertex> terms{s[0].u, s[1].u, s[2].u};
  const PackingResult layer = max_internally_disjoint_trees(g, terms, budget);
  std::vector<detail::Assembly> trees;
  for (const STree& t : layer.bundle.trees) {
    detail::Assembly a(frame);
    for (const Edge& e : t.edges) a.g_edge(e.u, e.v, v1);
    trees.push_back(std::move(a));
  }
  for (Vertex w : h.neighbors(v1)) {
    detail::Assembly a(frame);
    for (Vertex u : terms) a.h_edge(v1, w, u);
    a.g_fiber(w);
    trees.push_back(std::move(a));
  }
  return detail::make_certificate(g, h, s, "3.4", bound, expr, detail::finish(frame, s, trees, s));
}

namespace detail {

struct HalfPaths {
  Path to_v3;    // v1 ... v3
  Path from_v3;  // v3 ... v2
};

inline HalfPaths split_at(const Path& p, Vertex v3) {
  auto it = std::find(p.begin(), p.end(), v3);
  return {Path(p.begin(), it + 1), Path(it, p.end())};
}

// Three trees using the through-path `through`, the free path `free` and
// the whole H-fiber in column w, routed along a cycle of H - {v1,v2,v3}.
inline std::optional<std::array<Assembly, 3>> cycle_group(const Frame& f, Vertex u1, Vertex w, Vertex v1, Vertex v2,
                                                          Vertex v3, const Path& through, const Path& free,
                                                          SearchBudget& budget) {
  const Graph& h = f.h();
  const HalfPaths halves = split_at(through, v3);
  if (halves.to_v3.size() < 3 || halves.from_v3.size() < 3 || free.size() < 3) return std::nullopt;
  const Vertex a = halves.to_v3[1];
  const Vertex b = halves.from_v3[1];
  const Vertex c = free[free.size() - 2];
  const Graph core = h.without_vertices(std::vector<Vertex>{v1, v2, v3});
  auto candidates = [&](Vertex centre, Vertex taken) {
    std::vector<Vertex> out;
    for (Vertex x : h.neighbors(centre)) {
      if (x != taken && x != v1 && x != v2 && x != v3) out.push_back(x);
    }
    return out;
  };
  for (Vertex a2 : candidates(v1, a)) {
    for (Vertex b2 : candidates(v3, b)) {
      for (Vertex c2 : candidates(v2, c)) {
        if (std::set<Vertex>{a, a2, b, b2, c, c2}.size() != 6) continue;
        const Graph aux = core.with_edges(std::vector<Edge>{Edge(a, a2), Edge(b, b2), Edge(c, c2)});
        auto cyc = find_cycle_through_ordered(aux, {OrientedEdge{a, a2}, {b, b2}, {c, c2}}, budget);
        if (!cyc) continue;
        // cyc = a a2 ... b b2 ... c c2 ... (closing back to a)
        auto pos = [&](Vertex x) { return std::find(cyc->begin(), cyc->end(), x) - cyc->begin(); };
        const Path c1(cyc->begin() + pos(a2), cyc->begin() + pos(b) + 1);
        const Path c2p(cyc->begin() + pos(b2), cyc->begin() + pos(c) + 1);
        Path c3(cyc->begin() + pos(c2), cyc->end());
        c3.push_back(a);
        Assembly t1(f), t2(f), t3(f);
        t1.h_path(halves.from_v3, u1).g_edge(u1, w, v1).g_edge(u1, w, b).h_edge(v1, a2, w).h_path(c1, w);
        t2.h_path(free, u1).g_edge(u1, w, v3).g_edge(u1, w, c).h_edge(v3, b2, w).h_path(c2p, w);
        t3.h_path(halves.to_v3, u1).g_edge(u1, w, v2).g_edge(u1, w, a).h_edge(v2, c2, w).h_path(c3, w);
        return std::array<Assembly, 3>{std::move(t1), std::move(t2), std::move(t3)};
      }
    }
  }
  return std::nullopt;
}

// Trees for S = {(u1,v1),(u1,v2),(u1,v3)} from a reduced bundle in H with
// anchors v1, v2 and through-vertex v3. Returns the case tag.
inline std::string same_column_trees(const Frame& f, Vertex u1, ReducedPathBundle rb, SearchBudget& budget,
                                     std::vector<Assembly>& trees) {
  const Graph& g = f.g();
  const Vertex v1 = rb.base.u1, v2 = rb.base.u2, v3 = rb.base.u3;
  const int l = rb.k();
  const int t = rb.t();
  auto& p = rb.base.paths;
  const std::vector<Vertex> nb(g.neighbors(u1).begin(), g.neighbors(u1).end());
  const int d = static_cast<int>(nb.size());

  for (int j = 0; j < l - 2 * t; ++j) {
    Assembly a(f);
    a.h_path(rb.connectors[j], u1).h_path(p[t + j], u1);
    trees.push_back(std::move(a));
  }
  auto neighbour_tree = [&](Vertex w) {
    Assembly a(f);
    a.g_edge(u1, w, v1).g_edge(u1, w, v2).g_edge(u1, w, v3).h_fiber(w);
    return a;
  };
  auto halves = [&](int j) { return split_at(p[j], v3); };

  if (t <= 2) {
    for (Vertex w : nb) trees.push_back(neighbour_tree(w));
    if (t == 1) {
      Assembly a(f);
      a.h_path(p[0], u1);
      trees.push_back(std::move(a));
    } else if (t == 2) {
      Assembly a(f), b(f), c(f);
      a.h_path(p[l - 1], u1).h_path(halves(0).to_v3, u1);
      b.h_path(halves(1).to_v3, u1).h_path(halves(0).from_v3, u1);
      c.h_path(halves(1).from_v3, u1).h_path(p[l - 2], u1);
      trees.push_back(std::move(a));
      trees.push_back(std::move(b));
      trees.push_back(std::move(c));
    }
    return "4.1/t=" + std::to_string(t);
  }
  if (l < 7) throw HypothesisFailure("t >= 3 with l = 6 has no direct construction");

  // Paths with a length-1 piece are moved away from the cycle groups: long
  // through-paths first, short free paths first in the non-carrier block.
  auto long_halves = [&](const Path& x) {
    const HalfPaths hp = split_at(x, v3);
    return hp.to_v3.size() >= 3 && hp.from_v3.size() >= 3;
  };
  std::stable_partition(p.begin(), p.begin() + t, long_halves);
  std::stable_partition(p.begin() + (l - t), p.end(), [](const Path& x) { return x.size() < 3; });

  const int groups = d >= t - 2 ? t - 2 : d;
  for (int i = 0; i < groups; ++i) {
    auto three = cycle_group(f, u1, nb[i], v1, v2, v3, p[i], p[l - 1 - i], budget);
    if (!three) throw HypothesisFailure("no cycle through the three auxiliary edges");
    for (auto& a : *three) trees.push_back(std::move(a));
  }
  if (d >= t - 2) {
    for (int i = groups; i < d; ++i) trees.push_back(neighbour_tree(nb[i]));
    Assembly a(f), b(f), c(f);
    a.h_path(p[l - t + 1], u1).h_path(halves(t - 2).to_v3, u1);
    b.h_path(halves(t - 1).to_v3, u1).h_path(halves(t - 2).from_v3, u1);
    c.h_path(halves(t - 1).from_v3, u1).h_path(p[l - t], u1);
    trees.push_back(std::move(a));
    trees.push_back(std::move(b));
    trees.push_back(std::move(c));
  } else {
    // Pair the remaining pieces so no tree uses two pieces of the same kind.
    std::vector<Path> pieces;
    for (int i = groups; i < t; ++i) pieces.push_back(halves(i).to_v3);
    for (int i = groups; i < t; ++i) pieces.push_back(halves(i).from_v3);
    for (int i = groups; i < t; ++i) pieces.push_back(p[l - 1 - i]);
    const int m = t - groups;
    const int shift = (3 * m + 1) / 2;
    for (int i = 0; i < 3 * m / 2; ++i) {
      Assembly a(f);
      a.h_path(pieces[i], u1).h_path(pieces[i + shift], u1);
      trees.push_back(std::move(a));
    }
  }
  return "4.1/case2.1";
}

}  // namespace detail

// S inside one H-fiber: bound from a reduced path bundle in H.
inline Certificate construct_lemma41(const Graph& g, const Graph& h, const Triple& s, SearchBudget& budget,
                                     const CertifyOptions& opts = {}) {
  detail::require_factors(g, h, s);
  detail::require_kind(s, PositionKind::same_h_fiber, "construct_lemma41");
  const int l = vertex_connectivity(h);
  const int delta1 = g.min_degree();
  const detail::Frame frame(g, h, false);
  const Vertex u1 = s[0].u;

  // Any of the three terminals may play the through-vertex; keep the
  // smallest t found.
  std::optional<ReducedPathBundle> best;
  for (int role = 2; role >= 0; --role) {
    const Vertex v3 = s[role].v;
    const Vertex v1 = s[(role + 1) % 3].v;
    const Vertex v2 = s[(role + 2) % 3].v;
    const Vertex a = std::min(v1, v2), b = std::max(v1, v2);
    try {
      SearchBudget local(opts.bundle_nodes, opts.timeout);
      auto found = find_reduced_bundle(h, l, a, b, v3, local, BundleSearchOptions{opts.min_t, opts.bundle_nodes});
      if (found && (!best || found->t() < best->t())) best = std::move(found);
    } catch (const BudgetExceeded&) {
    }
  }

  const int t = best ? best->t() : l / 2;
  const int bound = best ? same_fiber_bound(l, delta1, t) : prop42_bound(l, std::max(1, delta1));
  std::string expr;
  if (!best) {
    expr = "prop42(l, delta1) with l = " + std::to_string(l) + ", delta1 = " + std::to_string(delta1);
  } else if (t == 0) {
    expr = detail::sum_expression("l + delta1", {l, delta1}, 0);
  } else if (delta1 >= t - 2) {
    expr = detail::sum_expression("l + delta1 - 1", {l, delta1}, -1);
  } else {
    expr = "l + delta1 - ceil((t - delta1)/2) = " + std::to_string(l) + " + " + std::to_string(delta1) +
           " - ceil((" + std::to_string(t) + " - " + std::to_string(delta1) + ")/2)";
  }
  if (best) {
    try {
      std::vector<detail::Assembly> trees;
      const std::string tag = detail::same_column_trees(frame, u1, *best, budget, trees);
      return detail::make_certificate(g, h, s, tag, bound, expr, detail::finish(frame, s, trees, s));
    } catch (const HypothesisFailure&) {
      if (!opts.allow_fallback) throw;
    }
  } else if (!opts.allow_fallback) {
    throw HypothesisFailure("construct_lemma41: no reduced path bundle found");
  }
  return detail::fallback(g, h, s, bound, expr, budget);
}

// Classifies S and runs the matching construction. Callers verify the
// result with verify_certificate.
inline Certificate certify(const Graph& g, const Graph& h, const Triple& s, const CertifyOptions& opts = {}) {
  SearchBudget budget(opts.max_nodes, opts.timeout);
  const SPosition pos = classify_position(g, h, s);
  Certificate cert;
  switch (pos.kind) {
    case PositionKind::all_distinct: cert = construct_lemma31(g, h, s, budget, opts); break;
    case PositionKind::corner_share: cert = construct_lemma32(g, h, s, budget, opts); break;
    case PositionKind::two_share_one_apart: cert = construct_lemma33(g, h, s, budget, opts); break;
    case PositionKind::same_g_fiber: cert = construct_lemma34(g, h, s, budget, opts); break;
    case PositionKind::same_h_fiber: cert = construct_lemma41(g, h, s, budget, opts); break;
  }
  return cert;
}

inline std::optional<std::string> verify_certificate(const Certificate& c) {
  const Graph product = cartesian_product(c.g, c.h);
  std::vector<Vertex> terms;
  for (const auto& p : c.s) terms.push_back(p.u * c.h.order() + p.v);
  if (c.bundle.terminals != terms) return "terminal list does not match S";
  if (auto bad = verify_bundle(product, c.bundle)) return bad;
  if (static_cast<int>(c.bundle.trees.size()) < c.claimed_bound) {
    return "only " + std::to_string(c.bundle.trees.size()) + " trees for claimed bound " +
           std::to_string(c.claimed_bound);
  }
  return std::nullopt;
}

}  // namespace gencon
