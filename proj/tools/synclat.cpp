// Command-line front end for synchrony-subspace lattices of coupled cell
// networks.
//
// Exit codes: 0 success, 1 validation failure (or unequal compare), 2 method
// inapplicable, 3 enumeration cap exceeded, 4 I/O or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccn/errors.hpp"
#include "ccn/json_io.hpp"
#include "ccn/oracle.hpp"
#include "ccn/pipeline.hpp"

namespace {

using ccn::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw ccn::ParseError("cannot open input file \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ccn::ParseError("cannot open output file \"" + path + "\"");
  f << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

ccn::Network load_network(const std::string& path) { return ccn::parse_network(read_input(path)); }

/// Accepts a file path or, when the value starts with '[', inline JSON.
ccn::Partition load_partition(const std::string& spec, const std::vector<std::string>& cells) {
  std::string text = (!spec.empty() && spec.front() == '[') ? spec : read_input(spec);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ccn::ParseError(std::string("invalid partition JSON: ") + e.what());
  }
  return ccn::partition_from_json(doc, cells);
}

std::string lattice_table(const ccn::SyncLattice& l) {
  std::vector<std::pair<int, std::string>> rows;
  for (const ccn::Partition& p : l.elements()) {
    std::string text = p.is_singletons() ? std::string("⊤") : ccn::render(p, l.cells());
    rows.emplace_back(p.class_count(), std::move(text));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [cnt, text] : rows) out += text + "\n";
  return out;
}

json stages_to_json(const ccn::PipelineResult& r) {
  json prov;
  prov["method"] = r.method;
  prov["stages"] = json::array();
  for (const auto& [name, count] : r.stages)
    prov["stages"].push_back({{"name", name}, {"count", count}});
  return prov;
}

int run(int argc, char** argv) {
  CLI::App app{"synchrony-subspace lattices of coupled cell networks"};
  app.require_subcommand(1);

  std::string input = "-", output, format = "json", partition_spec, method = "auto";
  std::string compare_a, compare_b;
  bool ignore_top = false, parallel = false;
  int max_cells = 12;

  auto add_io = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("--input", input, "network document, or - for stdin");
    cmd->add_option("--output", output, "output file, default stdout");
    if (with_format) cmd->add_option("--format", format, "json|dot|table")->check(CLI::IsMember({"json", "dot", "table"}));
  };

  auto* c_validate = app.add_subcommand("validate", "structural validation report");
  add_io(c_validate);

  auto* c_analyze = app.add_subcommand("analyze", "per-type decomposition and spectral data");
  add_io(c_analyze);

  auto* c_irr = app.add_subcommand("irreducibles", "join-irreducible balanced partitions");
  add_io(c_irr);

  auto* c_lattice = app.add_subcommand("lattice", "synchrony lattice");
  add_io(c_lattice);
  c_lattice->add_option("--method", method, "auto|irreducible|compose|intersect|brute")
      ->check(CLI::IsMember({"auto", "irreducible", "compose", "intersect", "brute"}));
  c_lattice->add_option("--max-cells", max_cells, "enumeration cap for oracle-backed methods");
  c_lattice->add_flag("--parallel", parallel, "parallel enumeration");

  auto* c_quotient = app.add_subcommand("quotient", "quotient network at a balanced partition");
  add_io(c_quotient);
  c_quotient->add_option("--partition", partition_spec, "partition file or inline JSON")
      ->required();

  auto* c_check = app.add_subcommand("check", "balanced / invariance check for a partition");
  add_io(c_check);
  c_check->add_option("--partition", partition_spec, "partition file or inline JSON")->required();

  auto* c_oracle = app.add_subcommand("oracle", "exhaustive lattice enumeration");
  add_io(c_oracle);
  c_oracle->add_option("--max-cells", max_cells, "enumeration cap (default 12)");
  c_oracle->add_flag("--parallel", parallel, "parallel enumeration");

  auto* c_compare = app.add_subcommand("compare", "diff two lattice documents");
  c_compare->add_option("a", compare_a, "first lattice document")->required();
  c_compare->add_option("b", compare_b, "second lattice document")->required();
  c_compare->add_flag("--ignore-top", ignore_top, "ignore the all-singleton top");
  c_compare->add_option("--output", output, "output file, default stdout");

  auto* c_hasse = app.add_subcommand("hasse", "cover relation of a lattice document");
  add_io(c_hasse);

  CLI11_PARSE(app, argc, argv);

  ccn::OracleConfig cfg;
  cfg.max_cells = max_cells;
  cfg.parallel = parallel;

  if (c_validate->parsed()) {
    const ccn::Network net = load_network(input);
    const ccn::ValidationReport r = ccn::validate(net);
    if (format == "table") {
      std::string out;
      out += std::string("homogeneous: ") + (r.is_homogeneous ? "yes" : "no") + "\n";
      out += std::string("asymmetric inputs: ") + (r.is_asymmetric_inputs ? "yes" : "no") + "\n";
      out += std::string("regular: ") + (r.is_regular ? "yes" : "no") + "\n";
      out += std::string("connected: ") + (r.is_connected ? "yes" : "no") + "\n";
      out += "components: " + std::to_string(r.components) + "\n";
      for (const auto& v : r.violations) out += "violation: " + v + "\n";
      write_output(output, out);
    } else {
      write_output(output, dump(ccn::report_to_json(r)));
    }
    return r.violations.empty() ? 0 : 1;
  }

  if (c_analyze->parsed()) {
    const ccn::Network net = load_network(input);
    json doc;
    doc["validation"] = ccn::report_to_json(ccn::validate(net));
    doc["edge_types"] = json::array();
    for (const std::string& t : net.edge_types) {
      const ccn::Network sub = ccn::edge_type_subnetwork(net, t);
      json tj;
      tj["type"] = t;
      tj["components"] = json::array();
      for (const auto& [comp, cells] : ccn::connected_components(sub)) {
        json cj;
        cj["cells"] = comp.cells;
        const ccn::ValidationReport cr = ccn::validate(comp);
        const bool one_input = cr.is_regular && !cr.valency_per_type.empty() &&
                               cr.valency_per_type[0].second == 1;
        cj["one_input"] = one_input;
        if (one_input) {
          const auto d = ccn::ring_tree_decompose(ccn::as_functional_graph(comp));
          cj["decomposition"] = ccn::decomposition_to_json(d, comp.cells);
          cj["spectral"] = ccn::spectral_to_json(ccn::spectral_summary(d), comp.cells);
        }
        tj["components"].push_back(std::move(cj));
      }
      doc["edge_types"].push_back(std::move(tj));
    }
    write_output(output, dump(doc));
    return 0;
  }

  if (c_irr->parsed()) {
    const ccn::Network net = load_network(input);
    const ccn::ValidationReport r = ccn::validate(net);
    if (!(r.is_regular && !r.valency_per_type.empty() && r.valency_per_type[0].second == 1 &&
          r.is_connected))
      throw ccn::MethodInapplicable("irreducibles need a connected 1-input regular network");
    const auto d = ccn::ring_tree_decompose(ccn::as_functional_graph(net));
    const auto detailed = ccn::enumerate_join_irreducibles_detailed(d);
    if (format == "table") {
      std::string out;
      for (const auto& ji : detailed) {
        std::string text =
            ji.partition.is_singletons() ? std::string("⊤") : ccn::render(ji.partition, net.cells);
        out += text + "\n";
      }
      write_output(output, out);
    } else {
      json doc;
      doc["cells"] = net.cells;
      doc["irreducibles"] = json::array();
      for (const auto& ji : detailed) {
        json e;
        e["partition"] = ccn::partition_to_json(ji.partition, net.cells);
        if (ji.kind == ccn::JoinIrreducible::Kind::Divisor) {
          e["origin"] = "divisor";
          e["q"] = ji.q;
        } else {
          e["origin"] = "chain";
          json fam = json::array();
          for (int root : ji.family) fam.push_back(net.cells[static_cast<std::size_t>(root)]);
          e["family"] = std::move(fam);
        }
        doc["irreducibles"].push_back(std::move(e));
      }
      write_output(output, dump(doc));
    }
    return 0;
  }

  if (c_lattice->parsed() || c_oracle->parsed()) {
    const ccn::Network net = load_network(input);
    ccn::LatticeMethod m = ccn::LatticeMethod::Brute;
    if (c_lattice->parsed()) {
      if (method == "auto") m = ccn::LatticeMethod::Auto;
      else if (method == "irreducible") m = ccn::LatticeMethod::Irreducible;
      else if (method == "compose") m = ccn::LatticeMethod::Compose;
      else if (method == "intersect") m = ccn::LatticeMethod::Intersect;
      else m = ccn::LatticeMethod::Brute;
    }
    const ccn::PipelineResult r = ccn::run_lattice(net, m, cfg);
    if (format == "dot") {
      write_output(output, ccn::lattice_to_dot(r.lattice));
    } else if (format == "table") {
      write_output(output, lattice_table(r.lattice));
    } else {
      const json prov = stages_to_json(r);
      write_output(output, dump(ccn::lattice_to_json(r.lattice, &prov)));
    }
    return 0;
  }

  if (c_quotient->parsed()) {
    const ccn::Network net = load_network(input);
    const ccn::Partition p = load_partition(partition_spec, net.cells);
    if (!ccn::is_balanced(net, p)) {
      std::cerr << "partition {" << ccn::render(p, net.cells) << "} is not balanced\n";
      return 1;
    }
    const ccn::QuotientResult q = ccn::quotient(net, p);
    json doc;
    doc["quotient"] = ccn::network_to_json(q.quotient);
    json cm = json::object();
    for (int c = 0; c < net.cell_count(); ++c)
      cm[net.cells[static_cast<std::size_t>(c)]] =
          q.quotient.cells[static_cast<std::size_t>(q.class_map[static_cast<std::size_t>(c)])];
    doc["class_map"] = std::move(cm);
    doc["representatives"] = q.quotient.cells;
    write_output(output, dump(doc));
    return 0;
  }

  if (c_check->parsed()) {
    const ccn::Network net = load_network(input);
    const ccn::Partition p = load_partition(partition_spec, net.cells);
    const bool balanced = ccn::is_balanced(net, p);
    const bool invariant = ccn::invariance_check(net, p);
    json doc;
    doc["partition"] = ccn::partition_to_json(p, net.cells);
    doc["balanced"] = balanced;
    doc["invariance_check"] = invariant;
    doc["routes_agree"] = (balanced == invariant);
    const ccn::ValidationReport r = ccn::validate(net);
    if (balanced && r.is_regular && !r.valency_per_type.empty() &&
        r.valency_per_type[0].second == 1 && r.is_connected) {
      const auto d = ccn::ring_tree_decompose(ccn::as_functional_graph(net));
      doc["pattern"] = ccn::pattern_to_json(ccn::classify_pattern(d, p), d, net.cells);
    }
    write_output(output, dump(doc));
    if (balanced != invariant) throw std::logic_error("balance routes disagree");
    return balanced ? 0 : 1;
  }

  if (c_compare->parsed()) {
    const ccn::LatticeDoc a = ccn::lattice_doc_from_json(json::parse(read_input(compare_a)));
    const ccn::LatticeDoc b = ccn::lattice_doc_from_json(json::parse(read_input(compare_b)));
    const ccn::LatticeDiff d = ccn::compare_lattice_docs(a, b, ignore_top);
    write_output(output, dump(ccn::diff_to_json(d, a.cells)));
    return d.equal ? 0 : 1;
  }

  if (c_hasse->parsed()) {
    // Covers are re-derived order-theoretically from the element set; cover
    // edges present in the input are ignored.
    const ccn::LatticeDoc docin = ccn::lattice_doc_from_json(json::parse(read_input(input)));
    const std::vector<ccn::Partition>& elems = docin.elements;
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (i == j || elems[i] == elems[j] || !ccn::subspace_leq(elems[i], elems[j])) continue;
        bool direct = true;
        for (std::size_t k = 0; k < elems.size() && direct; ++k)
          if (k != i && k != j && ccn::subspace_leq(elems[i], elems[k]) &&
              ccn::subspace_leq(elems[k], elems[j]))
            direct = false;
        if (direct) covers.emplace_back(i, j);
      }
    if (format == "dot") {
      std::string dot = "digraph synchrony_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
      for (std::size_t i = 0; i < elems.size(); ++i) {
        std::string label =
            elems[i].is_singletons() ? std::string("⊤") : ccn::render(elems[i], docin.cells);
        dot += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
      }
      for (auto [i, j] : covers)
        dot += "  n" + std::to_string(i) + " -> n" + std::to_string(j) + ";\n";
      dot += "}\n";
      write_output(output, dot);
    } else {
      json doc;
      doc["cells"] = docin.cells;
      doc["elements"] = json::array();
      for (const auto& p : elems) doc["elements"].push_back(ccn::partition_to_json(p, docin.cells));
      json edges = json::array();
      for (auto [i, j] : covers) edges.push_back({i, j});
      doc["cover_edges"] = std::move(edges);
      write_output(output, dump(doc));
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ccn::MethodInapplicable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ccn::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ccn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ccn::UniverseMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
