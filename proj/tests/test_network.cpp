#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ccn/json_io.hpp"
#include "ccn/network.hpp"
#include "ccn/oracle.hpp"
#include "fixtures.hpp"

using ccn::Network;
using ccn::Partition;

namespace {

/// Input map of a single-type 1-input network, by cell name.
std::map<std::string, std::string> input_map(const Network& n, const std::string& type) {
  std::map<std::string, std::string> f;
  int t = n.type_index(type);
  for (const auto& e : n.edges)
    if (e.type == t)
      f[n.cells[static_cast<std::size_t>(e.target)]] = n.cells[static_cast<std::size_t>(e.source)];
  return f;
}

/// Equality of networks up to cell order: same name set, same edge multiset.
bool same_up_to_order(const Network& a, const Network& b) {
  if (std::set<std::string>(a.cells.begin(), a.cells.end()) !=
      std::set<std::string>(b.cells.begin(), b.cells.end()))
    return false;
  if (a.edge_types != b.edge_types) return false;
  std::multiset<std::tuple<std::string, std::string, std::string>> ea, eb;
  for (const auto& e : a.edges)
    ea.insert({a.cells[static_cast<std::size_t>(e.source)],
               a.cells[static_cast<std::size_t>(e.target)],
               a.edge_types[static_cast<std::size_t>(e.type)]});
  for (const auto& e : b.edges)
    eb.insert({b.cells[static_cast<std::size_t>(e.source)],
               b.cells[static_cast<std::size_t>(e.target)],
               b.edge_types[static_cast<std::size_t>(e.type)]});
  return ea == eb;
}

}  // namespace

TEST_CASE("parse_network decodes the 7-cell two-type document") {
  const Network n = fx::seven_cell();
  REQUIRE(input_map(n, "solid") ==
          std::map<std::string, std::string>{
              {"1", "5"}, {"2", "7"}, {"3", "2"}, {"4", "1"}, {"5", "1"}, {"6", "5"}, {"7", "2"}});
  REQUIRE(input_map(n, "dashed") ==
          std::map<std::string, std::string>{
              {"1", "4"}, {"2", "1"}, {"3", "2"}, {"4", "3"}, {"5", "1"}, {"6", "5"}, {"7", "2"}});
}

TEST_CASE("parse_network errors") {
  REQUIRE_NOTHROW(ccn::parse_network(
      R"({"cells":["1"],"edge_types":["t"],"edges":[{"source":"1","target":"1","type":"t"}]})"));
  REQUIRE_THROWS_AS(ccn::parse_network("{"), ccn::ParseError);
  REQUIRE_THROWS_AS(
      ccn::parse_network(
          R"({"cells":["1"],"edge_types":["t"],"edges":[{"source":"9","target":"1","type":"t"}]})"),
      ccn::ParseError);
  REQUIRE_THROWS_AS(ccn::parse_network(R"({"cells":[],"edge_types":[],"edges":[]})"),
                    ccn::ParseError);
  REQUIRE_THROWS_AS(
      ccn::parse_network(R"({"cells":["1","1"],"edge_types":[],"edges":[]})"),
      ccn::ParseError);
}

TEST_CASE("network documents round-trip byte for byte") {
  const std::string text = ccn::network_to_json(fx::seven_cell()).dump(2);
  const Network reparsed = ccn::parse_network(text);
  REQUIRE(ccn::network_to_json(reparsed).dump(2) == text);
}

TEST_CASE("validate classifies the fixtures") {
  SECTION("7-cell fixture") {
    const auto r = ccn::validate(fx::seven_cell());
    REQUIRE(r.is_homogeneous);
    REQUIRE(r.is_asymmetric_inputs);
    REQUIRE_FALSE(r.is_regular);
    REQUIRE(r.is_connected);
    REQUIRE(r.valency_per_type ==
            std::vector<std::pair<std::string, int>>{{"solid", 1}, {"dashed", 1}});
    REQUIRE(r.violations.empty());
  }
  SECTION("a cell with two same-type inputs is not asymmetric") {
    const Network n = ccn::make_network({"a", "b"}, {"t"},
                                        {{"a", "b", "t"}, {"a", "b", "t"}, {"b", "a", "t"}});
    const auto r = ccn::validate(n);
    REQUIRE_FALSE(r.is_asymmetric_inputs);
    REQUIRE_FALSE(r.violations.empty());
  }
  SECTION("dashed subnetwork is 1-input regular and connected") {
    const auto r = ccn::validate(fx::dashed_subnetwork());
    REQUIRE(r.is_regular);
    REQUIRE(r.is_connected);
    REQUIRE(r.valency_per_type == std::vector<std::pair<std::string, int>>{{"dashed", 1}});
  }
  SECTION("solid subnetwork has two components") {
    const auto r = ccn::validate(fx::solid_subnetwork());
    REQUIRE(r.is_regular);
    REQUIRE_FALSE(r.is_connected);
    REQUIRE(r.components == 2);
  }
}

TEST_CASE("edge_type_subnetwork keeps cells and filters edges") {
  const Network n = fx::seven_cell();
  const Network solid = ccn::edge_type_subnetwork(n, "solid");
  REQUIRE(solid.cells == n.cells);
  REQUIRE(solid.edge_types == std::vector<std::string>{"solid"});
  REQUIRE(solid.edges.size() == 7);
  REQUIRE_THROWS_AS(ccn::edge_type_subnetwork(n, "dotted"), std::invalid_argument);

  SECTION("single-type network reproduces itself") {
    const Network again = ccn::edge_type_subnetwork(solid, "solid");
    REQUIRE(again.cells == solid.cells);
    REQUIRE(again.edges == solid.edges);
  }
}

TEST_CASE("connected_components splits the solid subnetwork") {
  const auto comps = ccn::connected_components(fx::solid_subnetwork());
  REQUIRE(comps.size() == 2);
  REQUIRE(comps[0].first.cells == std::vector<std::string>{"1", "4", "5", "6"});
  REQUIRE(comps[1].first.cells == std::vector<std::string>{"2", "3", "7"});

  SECTION("connected network yields itself") {
    const auto one = ccn::connected_components(fx::dashed_subnetwork());
    REQUIRE(one.size() == 1);
    REQUIRE(one[0].first.cells == fx::dashed_subnetwork().cells);
    REQUIRE(one[0].first.edges.size() == 7);
  }
  SECTION("9-cell union fixture") {
    const auto two = ccn::connected_components(fx::two_part_nine_cell());
    REQUIRE(two.size() == 2);
    REQUIRE(two[0].first.cells == std::vector<std::string>{"1", "4", "5", "6", "8", "9"});
    REQUIRE(two[1].first.cells == std::vector<std::string>{"2", "3", "7"});
  }
}

TEST_CASE("disjoint_union recomposes components") {
  const Network solid = fx::solid_subnetwork();
  const auto comps = ccn::connected_components(solid);
  const Network u = ccn::disjoint_union(comps[0].first, comps[1].first);
  REQUIRE(same_up_to_order(u, solid));

  SECTION("empty operands are rejected") {
    Network empty;
    empty.edge_types = solid.edge_types;
    REQUIRE_THROWS_AS(ccn::disjoint_union(solid, empty), std::invalid_argument);
  }
  SECTION("overlapping names are rejected") {
    REQUIRE_THROWS_AS(ccn::disjoint_union(solid, solid), std::invalid_argument);
  }
  SECTION("mismatched type lists are rejected") {
    const Network other = ccn::make_network({"x"}, {"other"}, {{"x", "x", "other"}});
    REQUIRE_THROWS_AS(ccn::disjoint_union(solid, other), std::invalid_argument);
  }
}

TEST_CASE("join_networks adds all cross edges of the shared type") {
  SECTION("two self-loops") {
    const Network a = ccn::make_network({"a"}, {"t"}, {{"a", "a", "t"}});
    const Network b = ccn::make_network({"b"}, {"t"}, {{"b", "b", "t"}});
    const Network j = ccn::join_networks(a, b);
    REQUIRE(j.cell_count() == 2);
    REQUIRE(j.edges.size() == 4);  // two loops, two cross edges
    REQUIRE_FALSE(ccn::validate(j).is_asymmetric_inputs);
  }
  SECTION("joining the solid components gives valencies 5 and 4") {
    const auto comps = ccn::connected_components(fx::solid_subnetwork());
    const Network j = ccn::join_networks(comps[1].first, comps[0].first);
    const auto deg = ccn::adjacency_matrix(j, "solid");
    auto row_sum = [&](int r) {
      int s = 0;
      for (int v : deg[static_cast<std::size_t>(r)]) s += v;
      return s;
    };
    for (int c = 0; c < 3; ++c) REQUIRE(row_sum(c) == 5);   // 3-cell side
    for (int c = 3; c < 7; ++c) REQUIRE(row_sum(c) == 4);   // 4-cell side
    REQUIRE_FALSE(ccn::validate(j).is_homogeneous);
    REQUIRE_FALSE(ccn::validate(j).is_asymmetric_inputs);
  }
}

TEST_CASE("adjacency_matrix block structure in ring-first order") {
  const Network dashed = fx::dashed_subnetwork();
  // ring (1,4,3,2), then tree cells by distance: 5, 7, 6
  std::vector<int> order;
  for (const char* name : {"1", "4", "3", "2", "5", "7", "6"})
    order.push_back(dashed.cell_index(name));
  const auto m = ccn::adjacency_matrix(dashed, "dashed", &order);
  const std::vector<std::vector<int>> cyclic{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      REQUIRE(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
              cyclic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  // upper-right zero block, lower-right strictly lower triangular
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 7; ++j) REQUIRE(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0);
  for (int i = 4; i < 7; ++i)
    for (int j = i; j < 7; ++j) REQUIRE(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0);

  SECTION("self-loop") {
    const Network s = ccn::make_network({"a"}, {"t"}, {{"a", "a", "t"}});
    REQUIRE(ccn::adjacency_matrix(s, "t") == ccn::Matrix{{1}});
  }
  SECTION("rows of an asymmetric-input type sum to one") {
    const Network seven = fx::seven_cell();
    for (const auto& type : seven.edge_types) {
      const auto a = ccn::adjacency_matrix(seven, type);
      for (const auto& row : a) {
        int s = 0;
        for (int v : row) s += v;
        REQUIRE(s == 1);
      }
    }
  }
  SECTION("bad order") {
    std::vector<int> bad{0, 0, 1, 2, 3, 4, 5};
    REQUIRE_THROWS_AS(ccn::adjacency_matrix(dashed, "dashed", &bad), std::invalid_argument);
  }
}

TEST_CASE("row sums are the valency exactly when homogeneous") {
  SECTION("homogeneous fixtures") {
    for (const Network& n : {fx::seven_cell(), fx::solid_subnetwork(), fx::three_cell()}) {
      const auto r = ccn::validate(n);
      REQUIRE(r.is_homogeneous);
      for (const auto& [type, valency] : r.valency_per_type) {
        const auto a = ccn::adjacency_matrix(n, type);
        for (const auto& row : a) {
          int s = 0;
          for (int v : row) s += v;
          REQUIRE(s == valency);
        }
      }
    }
  }
  SECTION("an inhomogeneous network has unequal row sums") {
    const auto comps = ccn::connected_components(fx::solid_subnetwork());
    const Network j = ccn::join_networks(comps[0].first, comps[1].first);
    REQUIRE_FALSE(ccn::validate(j).is_homogeneous);
    const auto a = ccn::adjacency_matrix(j, "solid");
    std::set<int> sums;
    for (const auto& row : a) {
      int s = 0;
      for (int v : row) s += v;
      sums.insert(s);
    }
    REQUIRE(sums.size() > 1);
  }
}

TEST_CASE("components of a union are the parts' components in order") {
  const auto comps = ccn::connected_components(fx::solid_subnetwork());
  const Network u = ccn::disjoint_union(comps[1].first, comps[0].first);
  const auto uc = ccn::connected_components(u);
  REQUIRE(uc.size() == 2);
  REQUIRE(uc[0].first.cells == comps[1].first.cells);
  REQUIRE(uc[1].first.cells == comps[0].first.cells);
}

TEST_CASE("is_interior_symmetry") {
  SECTION("3-cell fixture has the swap of 1 and 3") {
    const Network n = fx::three_cell();
    const auto sym = ccn::symmetry_from_transpositions(3, {{0, 2}});
    REQUIRE(ccn::is_interior_symmetry(n, sym));
  }
  SECTION("identity on any support") {
    const Network n = fx::seven_cell();
    ccn::InteriorSymmetry id;
    id.map.resize(7);
    std::iota(id.map.begin(), id.map.end(), 0);
    id.support = {0, 3, 5};
    REQUIRE(ccn::is_interior_symmetry(n, id));
  }
  SECTION("solid subnetwork cross-part swaps") {
    const Network solid = fx::solid_subnetwork();
    auto pair_of = [&](const char* a, const char* b) {
      return std::pair<int, int>{solid.cell_index(a), solid.cell_index(b)};
    };
    REQUIRE(ccn::is_interior_symmetry(
        solid, ccn::symmetry_from_transpositions(7, {pair_of("1", "7"), pair_of("2", "5")})));
    REQUIRE(ccn::is_interior_symmetry(
        solid, ccn::symmetry_from_transpositions(7, {pair_of("1", "2"), pair_of("5", "7")})));
    REQUIRE(ccn::is_interior_symmetry(
        solid, ccn::symmetry_from_transpositions(
                   7, {pair_of("1", "7"), pair_of("2", "5"), pair_of("3", "6")})));
    REQUIRE(ccn::is_interior_symmetry(
        solid, ccn::symmetry_from_transpositions(
                   7, {pair_of("1", "2"), pair_of("5", "7"), pair_of("3", "4")})));
    REQUIRE_FALSE(ccn::is_interior_symmetry(
        solid, ccn::symmetry_from_transpositions(7, {pair_of("1", "2")})));
  }
  SECTION("7-cell fixture transpositions: only cells with identical inputs swap") {
    const Network n = fx::seven_cell();
    const int c3 = n.cell_index("3");
    const int c7 = n.cell_index("7");
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b) {
        const bool holds =
            ccn::is_interior_symmetry(n, ccn::symmetry_from_transpositions(7, {{a, b}}));
        // cells 3 and 7 both read cell 2 on both types; no other pair matches
        REQUIRE(holds == (a == std::min(c3, c7) && b == std::max(c3, c7)));
      }
  }
}

TEST_CASE("quotient collapses balanced classes") {
  const Network seven = fx::seven_cell();
  const Partition p = fx::classes_of(seven, {{1, 3, 7}, {2, 4, 5}});
  const auto q = ccn::quotient(seven, p);
  REQUIRE(q.quotient.cells == std::vector<std::string>{"1", "2", "6"});
  // Quotient network: 1 <- 2 (both types), 2 <- 1 (both types), 6 <- 2 (both types).
  const auto expected = ccn::make_network({"1", "2", "6"}, {"solid", "dashed"},
                                          {{"2", "1", "solid"},
                                           {"2", "1", "dashed"},
                                           {"1", "2", "solid"},
                                           {"1", "2", "dashed"},
                                           {"2", "6", "solid"},
                                           {"2", "6", "dashed"}});
  REQUIRE(same_up_to_order(q.quotient, expected));

  SECTION("all-singleton quotient reproduces the network") {
    const auto qs = ccn::quotient(seven, Partition::singletons(7));
    REQUIRE(same_up_to_order(qs.quotient, seven));
  }
  SECTION("full synchrony collapses a 1-input network to a self-loop") {
    const Network dashed = fx::dashed_subnetwork();
    const auto qb = ccn::quotient(dashed, Partition::one_class(7));
    REQUIRE(qb.quotient.cell_count() == 1);
    REQUIRE(qb.quotient.edges.size() == 1);
    REQUIRE(qb.quotient.edges[0].source == 0);
    REQUIRE(qb.quotient.edges[0].target == 0);
  }
  SECTION("unbalanced partitions are rejected") {
    REQUIRE_THROWS_AS(ccn::quotient(seven, fx::classes_of(seven, {{1, 3, 7}})),
                      std::invalid_argument);
  }
}

TEST_CASE("restrict and lift between network and quotient") {
  const Network seven = fx::seven_cell();
  const auto q = ccn::quotient(seven, fx::classes_of(seven, {{1, 3, 7}, {2, 4, 5}}));

  SECTION("worked restriction") {
    const Partition finer = fx::classes_of(seven, {{1, 3, 6, 7}, {2, 4, 5}});
    const Partition r = ccn::restrict_partition(q, finer);
    // quotient cells (1, 2, 6): classes {1,6} and {2}
    REQUIRE(r == Partition::from_classes(3, {{0, 2}, {1}}));
  }
  SECTION("restricting the defining partition gives all singletons") {
    REQUIRE(ccn::restrict_partition(q, q.partition) == Partition::singletons(3));
  }
  SECTION("worked lift") {
    const Partition qp = Partition::from_classes(3, {{0, 1}, {2}});  // x1 = x2 in the quotient
    REQUIRE(ccn::lift_partition(q, qp) == fx::classes_of(seven, {{1, 2, 3, 4, 5, 7}}));
  }
  SECTION("lifting all singletons returns the defining partition") {
    REQUIRE(ccn::lift_partition(q, Partition::singletons(3)) == q.partition);
  }
  SECTION("round trips") {
    const Partition finer = fx::classes_of(seven, {{1, 3, 6, 7}, {2, 4, 5}});
    REQUIRE(ccn::lift_partition(q, ccn::restrict_partition(q, finer)) == finer);
    const Partition qp = Partition::from_classes(3, {{0, 1}, {2}});
    REQUIRE(ccn::restrict_partition(q, ccn::lift_partition(q, qp)) == qp);
  }
  SECTION("containment precondition") {
    REQUIRE_THROWS_AS(ccn::restrict_partition(q, fx::classes_of(seven, {{1, 3}})),
                      std::invalid_argument);
  }
  SECTION("lift of any balanced quotient partition is balanced") {
    const auto balanced_q = ccn::balanced_partitions(q.quotient);
    for (const auto& qp : balanced_q)
      REQUIRE(ccn::is_balanced(seven, ccn::lift_partition(q, qp)));
  }
}
