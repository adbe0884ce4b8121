#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann::json, vendored

#include "gencon/graph.hpp"
#include "gencon/product_certificates.hpp"
#include "gencon/steiner.hpp"

namespace gencon {

inline constexpr int kSchemaVersion = 1;

// Malformed or inconsistent certificate document.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// FNV-1a (64 bit) over the canonical edge-list text, as 16 hex digits.
inline std::string graph_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_edge_list(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CertificateDocument {
  Certificate cert;
  std::string g_name;
  std::string h_name;
};

namespace detail {

inline nlohmann::ordered_json factor_json(const Graph& g, const std::string& name) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["n"] = g.order();
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  j["hash"] = graph_hash(g);
  return j;
}

template <class J>
const J& field(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DocumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class J>
int int_field(const J& j, const char* key) {
  const J& v = field(j, key);
  if (!v.is_number_integer()) throw DocumentError(std::string("field '") + key + "' is not an integer");
  return v.template get<int>();
}

template <class J>
std::string string_field(const J& j, const char* key) {
  const J& v = field(j, key);
  if (!v.is_string()) throw DocumentError(std::string("field '") + key + "' is not a string");
  return v.template get<std::string>();
}

template <class J>
Edge edge_from(const J& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
    throw DocumentError("edge must be a pair of integers");
  }
  return Edge(pair[0].template get<Vertex>(), pair[1].template get<Vertex>());
}

template <class J>
Graph factor_from(const J& j, const char* which) {
  const int n = int_field(j, "n");
  const J& list = field(j, "edges");
  if (!list.is_array()) throw DocumentError(std::string("factor ") + which + ": edges is not an array");
  std::vector<Edge> edges;
  for (const auto& e : list) edges.push_back(edge_from(e));
  Graph g = [&] {
    try {
      return Graph(n, edges);
    } catch (const std::exception& ex) {
      throw DocumentError(std::string("factor ") + which + ": " + ex.what());
    }
  }();
  if (string_field(j, "hash") != graph_hash(g)) throw DocumentError(std::string("factor ") + which + ": hash mismatch");
  return g;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CertificateDocument& doc) {
  const Certificate& c = doc.cert;
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["factors"]["g"] = detail::factor_json(c.g, doc.g_name);
  j["factors"]["h"] = detail::factor_json(c.h, doc.h_name);
  j["product_n"] = c.g.order() * c.h.order();
  j["product_m"] = c.g.size() * c.h.order() + c.h.size() * c.g.order();
  auto s = nlohmann::ordered_json::array();
  for (const auto& p : c.s) {
    nlohmann::ordered_json x;
    x["id"] = p.u * c.h.order() + p.v;
    x["u"] = p.u;
    x["v"] = p.v;
    s.push_back(std::move(x));
  }
  j["s"] = std::move(s);
  j["provenance"] = c.provenance;
  j["claimed_bound"] = c.claimed_bound;
  j["bound_expression"] = c.bound_expression;
  auto trees = nlohmann::ordered_json::array();
  for (const STree& t : c.bundle.trees) {
    auto edges = nlohmann::ordered_json::array();
    std::vector<Edge> sorted = t.edges;
    std::sort(sorted.begin(), sorted.end());
    for (const Edge& e : sorted) edges.push_back({e.u, e.v});
    trees.push_back(std::move(edges));
  }
  j["trees"] = std::move(trees);
  return j;
}

inline std::string dump_certificate(const CertificateDocument& doc) { return to_json(doc).dump(2) + "\n"; }

// Rebuilds a certificate from JSON. Structural problems (missing fields,
// hash or size mismatches, S inconsistent with the factors) throw
// DocumentError; tree validity is left to verify_certificate.
inline CertificateDocument parse_certificate(const nlohmann::json& j) {
  if (detail::int_field(j, "schema_version") != kSchemaVersion) throw DocumentError("unsupported schema_version");
  const auto& factors = detail::field(j, "factors");
  CertificateDocument doc;
  Certificate& c = doc.cert;
  c.g = detail::factor_from(detail::field(factors, "g"), "g");
  c.h = detail::factor_from(detail::field(factors, "h"), "h");
  doc.g_name = detail::string_field(detail::field(factors, "g"), "name");
  doc.h_name = detail::string_field(detail::field(factors, "h"), "name");
  if (detail::int_field(j, "product_n") != c.g.order() * c.h.order()) throw DocumentError("product_n mismatch");
  if (detail::int_field(j, "product_m") != c.g.size() * c.h.order() + c.h.size() * c.g.order()) {
    throw DocumentError("product_m mismatch");
  }
  const auto& s = detail::field(j, "s");
  if (!s.is_array() || s.size() != 3) throw DocumentError("s must list three vertices");
  for (int i = 0; i < 3; ++i) {
    ProductVertex p{detail::int_field(s[i], "u"), detail::int_field(s[i], "v")};
    if (p.u < 0 || p.u >= c.g.order() || p.v < 0 || p.v >= c.h.order()) throw DocumentError("s vertex out of range");
    if (detail::int_field(s[i], "id") != p.u * c.h.order() + p.v) throw DocumentError("s id does not match (u,v)");
    c.s[i] = p;
    c.bundle.terminals.push_back(p.u * c.h.order() + p.v);
  }
  c.provenance = detail::string_field(j, "provenance");
  c.claimed_bound = detail::int_field(j, "claimed_bound");
  c.bound_expression = detail::string_field(j, "bound_expression");
  const auto& trees = detail::field(j, "trees");
  if (!trees.is_array()) throw DocumentError("trees must be an array");
  for (const auto& t : trees) {
    if (!t.is_array()) throw DocumentError("tree must be an array of edges");
    STree tree;
    for (const auto& e : t) tree.edges.push_back(detail::edge_from(e));
    c.bundle.trees.push_back(std::move(tree));
  }
  return doc;
}

inline CertificateDocument parse_certificate(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  return parse_certificate(j);
}

}  // namespace gencon
