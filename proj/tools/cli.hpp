#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gencon/gencon.hpp"

namespace gencon::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kBudget = 3, kInternal = 4 };

namespace detail {

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_edge_list(in);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

inline std::string factor_name(const Graph& g, const std::string& path) {
  if (auto m = recognize_family(g)) return m->name;
  return std::filesystem::path(path).stem().string();
}

// "u1,v1;u2,v2;u3,v3"
inline Triple parse_s(const std::string& spec) {
  Triple s;
  std::istringstream in(spec);
  std::string item;
  int i = 0;
  while (std::getline(in, item, ';')) {
    if (i == 3) throw std::invalid_argument("--s: expected three pairs");
    int u = 0, v = 0;
    char comma = 0;
    std::istringstream pair(item);
    if (!(pair >> u >> comma >> v) || comma != ',' || !(pair >> std::ws).eof()) {
      throw std::invalid_argument("--s: malformed pair '" + item + "'");
    }
    s[i++] = {u, v};
  }
  if (i != 3) throw std::invalid_argument("--s: expected three pairs");
  return s;
}

inline std::string join_vertices(const std::vector<Vertex>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
  return out + "}";
}

inline std::optional<std::chrono::seconds> timeout_of(int secs) {
  if (secs <= 0) return std::nullopt;
  return std::chrono::seconds(secs);
}

inline void print_factor(std::ostream& out, const char* label, const FactorInvariants& f) {
  out << label << ": n=" << f.order << " kappa=" << f.kappa << " delta=" << f.delta << " kappa3=" << f.kappa3;
  if (f.kappa3_is_convention) out << " (2-vertex factor, kappa used)";
  else if (f.kappa3_from_formula) out << " (formula)";
  else out << " (exact)";
  out << '\n';
}

struct Budgets {
  std::uint64_t max_nodes = SearchBudget::kDefaultPackNodes;
  int timeout_secs = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-nodes,--budget", max_nodes, "Search node budget");
    cmd->add_option("--timeout-secs", timeout_secs, "Wall-clock limit in seconds (0 = none)");
  }
  SearchBudget make() const { return SearchBudget(max_nodes, timeout_of(timeout_secs)); }
};

}  // namespace detail

// Runs the command line in-process. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized 3-connectivity of graphs and certified bounds for Cartesian products", "gencon"};
  app.require_subcommand(1);

  std::string family, out_path;
  std::vector<int> params;
  auto* gen = app.add_subcommand("gen", "Write a named graph family as an edge list");
  gen->add_option("family", family,
                  "complete | complete_bipartite | complete_tripartite | cycle | path | join_complete_empty2")
      ->required();
  gen->add_option("params", params, "Family parameters")->required();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  std::string g_file, h_file;
  auto* product = app.add_subcommand("product", "Write the Cartesian product of two edge-list graphs");
  product->add_option("g_file", g_file)->required();
  product->add_option("h_file", h_file)->required();
  product->add_option("--out", out_path, "Output file (default stdout)");

  std::string graph_file, mode = "exact";
  bool no_symmetry = false;
  detail::Budgets budgets;
  auto* kappa3 = app.add_subcommand("kappa3", "Generalized 3-connectivity of a graph");
  kappa3->add_option("graph_file", graph_file)->required();
  kappa3->add_option("--mode", mode, "exact | formula | bounds")
      ->check(CLI::IsMember({"exact", "formula", "bounds"}));
  kappa3->add_flag("--no-symmetry", no_symmetry, "Disable automorphism pruning in exact mode");
  budgets.add_to(kappa3);

  std::string s_spec;
  std::uint64_t bundle_nodes = SearchBudget::kDefaultBundleNodes;
  int min_t = 0;
  bool no_fallback = false;
  auto* certify_cmd = app.add_subcommand("certify", "Build and verify an S-tree certificate in G □ H");
  certify_cmd->add_option("g_file", g_file)->required();
  certify_cmd->add_option("h_file", h_file)->required();
  certify_cmd->add_option("--s", s_spec, "Terminals as \"u1,v1;u2,v2;u3,v3\"")->required();
  certify_cmd->add_option("--out", out_path, "Certificate file (default stdout)");
  certify_cmd->add_option("--bundle-nodes", bundle_nodes, "Node budget for the path-bundle finder");
  certify_cmd->add_option("--min-t", min_t, "Smallest t accepted for same-fiber bundles");
  certify_cmd->add_flag("--no-fallback", no_fallback, "Fail instead of falling back to exact search");
  budgets.add_to(certify_cmd);

  std::string cert_file;
  auto* verify = app.add_subcommand("verify", "Check a certificate document");
  verify->add_option("cert_file", cert_file)->required();

  int exact_max_order = 12;
  auto* bounds = app.add_subcommand("bounds", "Lower bounds on kappa3(G □ H)");
  bounds->add_option("g_file", g_file)->required();
  bounds->add_option("h_file", h_file)->required();
  bounds->add_option("--exact-max-order", exact_max_order, "Largest product order solved exactly");
  budgets.add_to(bounds);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  // Reports that may be cut short by the budget are streamed, so a partial
  // report survives BudgetExceeded.
  try {
    if (*gen) {
      const Graph g = generate_family(family, params);
      if (out_path.empty()) write_edge_list(out, g);
      else detail::write_text(out_path, to_edge_list(g));
      return kOk;
    }

    if (*product) {
      const Graph p = cartesian_product(detail::load_graph(g_file), detail::load_graph(h_file));
      if (out_path.empty()) write_edge_list(out, p);
      else detail::write_text(out_path, to_edge_list(p));
      return kOk;
    }

    if (*kappa3) {
      const Graph g = detail::load_graph(graph_file);
      if (g.order() < 3) throw std::invalid_argument("kappa3 needs at least 3 vertices");
      if (mode == "formula") {
        auto m = recognize_family(g);
        if (!m) {
          err << "no closed-form family recognised\n";
          return kInputError;
        }
        out << "kappa3 = " << kappa3_formula(m->family, m->params) << " (formula, " << m->name << ")\n";
        return kOk;
      }
      const int kappa = vertex_connectivity(g);
      const Kappa3Range range = kappa3_range_from_kappa(kappa);
      if (mode == "bounds") {
        out << "kappa = " << kappa << '\n';
        out << range.lower << " <= kappa3 <= " << range.upper << '\n';
        if (auto ub = kappa3_upper_adjacent_min_degree(g)) {
          out << "kappa3 <= " << *ub << " (adjacent minimum-degree vertices)\n";
        }
        return kOk;
      }
      SearchBudget budget = budgets.make();
      KappaKOptions opts;
      opts.use_symmetry = !no_symmetry;
      try {
        const KappaKResult r = kappa_k(g, 3, budget, opts);
        out << "kappa3 = " << r.value << '\n';
        out << "witness S = " << detail::join_vertices(r.witness) << '\n';
        return kOk;
      } catch (const BudgetExceeded& e) {
        out << "budget exhausted: " << e.what() << '\n';
        out << range.lower << " <= kappa3 <= " << range.upper << '\n';
        return kBudget;
      }
    }

    if (*certify_cmd) {
      const Graph g = detail::load_graph(g_file);
      const Graph h = detail::load_graph(h_file);
      const Triple s = detail::parse_s(s_spec);
      CertifyOptions opts;
      opts.max_nodes = budgets.max_nodes;
      opts.bundle_nodes = bundle_nodes;
      opts.timeout = detail::timeout_of(budgets.timeout_secs);
      opts.min_t = min_t;
      opts.allow_fallback = !no_fallback;
      CertificateDocument doc{certify(g, h, s, opts), detail::factor_name(g, g_file), detail::factor_name(h, h_file)};
      if (auto bad = verify_certificate(doc.cert)) {
        err << "internal error: constructed certificate fails verification: " << *bad << '\n';
        return kInternal;
      }
      const std::string text = dump_certificate(doc);
      std::ostream& report = out_path.empty() ? err : out;
      if (out_path.empty()) out << text;
      else detail::write_text(out_path, text);
      report << "provenance: " << doc.cert.provenance << '\n';
      report << "claimed bound: " << doc.cert.claimed_bound << " (" << doc.cert.bound_expression << ")\n";
      report << "trees: " << doc.cert.bundle.trees.size() << '\n';
      return kOk;
    }

    if (*verify) {
      const CertificateDocument doc = parse_certificate(detail::read_text(cert_file));
      if (auto bad = verify_certificate(doc.cert)) {
        out << "FAIL: " << *bad << '\n';
        return kVerifyFailed;
      }
      out << "OK: " << doc.cert.bundle.trees.size() << " trees, claimed bound " << doc.cert.claimed_bound << '\n';
      return kOk;
    }

    if (*bounds) {
      const Graph g = detail::load_graph(g_file);
      const Graph h = detail::load_graph(h_file);
      SearchBudget budget = budgets.make();
      const FactorInvariants fg = factor_invariants(g, budget);
      detail::print_factor(out, "G", fg);
      const FactorInvariants fh = factor_invariants(h, budget);
      detail::print_factor(out, "H", fh);

      const Theorem14Bound t14 = lower_bound_theorem14(fg, fh);
      out << "Theorem 1.4: " << t14.value << " = min{kappa3(G)+delta(H) = " << t14.via_g
          << ", kappa3(H)+delta(G) = " << t14.via_h << ", kappa(G)+kappa(H)-1 = " << t14.via_kappa << "}\n";
      int best = t14.value;
      auto report = [&](const char* tag, const char* roles, std::optional<int> v, int l) {
        out << tag << " (" << roles << ", l = " << l << "): ";
        if (v) {
          out << *v << '\n';
          best = std::max(best, *v);
        } else {
          out << "not applicable\n";
        }
      };
      report("Theorem 1.5", "G with l-connected H", lower_bound_theorem15(fg, fh.kappa), fh.kappa);
      report("Theorem 1.5", "H with l-connected G", lower_bound_theorem15(fh, fg.kappa), fg.kappa);
      report("Corollary 3.6", "G with l-connected H", corollary36_bound(fg.kappa, fg.kappa3, fh.kappa), fh.kappa);
      report("Corollary 3.6", "H with l-connected G", corollary36_bound(fh.kappa, fh.kappa3, fg.kappa), fg.kappa);
      out << "best lower bound: " << best << '\n';

      const int order = g.order() * h.order();
      if (order > exact_max_order) {
        out << "exact: skipped (product has " << order << " vertices)\n";
        return kOk;
      }
      KappaKOptions opts;
      opts.use_symmetry = true;
      try {
        const int exact = kappa_k(cartesian_product(g, h), 3, budget, opts).value;
        out << "exact kappa3(G □ H) = " << exact << ' ' << (exact == best ? "tight" : "slack") << '\n';
        if (exact < best) {
          err << "internal error: exact value below a proven lower bound\n";
          return kInternal;
        }
      } catch (const BudgetExceeded& e) {
        out << "exact: budget exhausted (" << e.what() << ")\n";
        return kBudget;
      }
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const DocumentError& e) {
    err << "invalid certificate: " << e.what() << '\n';
    return kInputError;
  } catch (const GraphError& e) {
    err << "invalid graph: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInputError;
}

}  // namespace gencon::cli
