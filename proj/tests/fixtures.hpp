#pragma once

// Shared test fixtures: the reference networks and their published synchrony
// tables, transcribed by cell name.

#include <string>
#include <vector>

#include "ccn/network.hpp"
#include "ccn/partition.hpp"

namespace fx {

using ccn::Network;
using ccn::Partition;

/// 7-cell homogeneous network with asymmetric inputs and two edge types.
/// Decoded from its admissible equations: per cell, the solid input is the
/// second argument and the dashed input the third.
inline Network seven_cell() {
  return ccn::make_network(
      {"1", "2", "3", "4", "5", "6", "7"}, {"solid", "dashed"},
      {{"5", "1", "solid"},
       {"7", "2", "solid"},
       {"2", "3", "solid"},
       {"1", "4", "solid"},
       {"1", "5", "solid"},
       {"5", "6", "solid"},
       {"2", "7", "solid"},
       {"4", "1", "dashed"},
       {"1", "2", "dashed"},
       {"2", "3", "dashed"},
       {"3", "4", "dashed"},
       {"1", "5", "dashed"},
       {"5", "6", "dashed"},
       {"2", "7", "dashed"}});
}

inline Network solid_subnetwork() { return ccn::edge_type_subnetwork(seven_cell(), "solid"); }
inline Network dashed_subnetwork() { return ccn::edge_type_subnetwork(seven_cell(), "dashed"); }

/// 3-cell two-type network with an interior symmetry swapping cells 1 and 3.
inline Network three_cell() {
  return ccn::make_network({"1", "2", "3"}, {"solid", "dashed"},
                           {{"2", "1", "solid"},
                            {"3", "2", "solid"},
                            {"2", "3", "solid"},
                            {"2", "1", "dashed"},
                            {"2", "2", "dashed"},
                            {"2", "3", "dashed"}});
}

/// 15-cell 1-input network: ring through {1,2,3} with trees of depth 3 and 5.
inline Network deep_tree() {
  return ccn::make_network(
      {"1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15"}, {"arrow"},
      {{"1", "2", "arrow"},
       {"2", "3", "arrow"},
       {"3", "1", "arrow"},
       {"2", "4", "arrow"},
       {"4", "5", "arrow"},
       {"4", "6", "arrow"},
       {"6", "7", "arrow"},
       {"2", "8", "arrow"},
       {"8", "9", "arrow"},
       {"3", "10", "arrow"},
       {"10", "11", "arrow"},
       {"11", "12", "arrow"},
       {"11", "13", "arrow"},
       {"13", "14", "arrow"},
       {"14", "15", "arrow"}});
}

/// 9-cell union of two 1-input networks: ring (2,7) with leaf 3, and ring
/// (1,5) with leaf 4 and the chain 6-8-9.  Its lattice holds a non-pairing
/// bipartite element that no intersection of a non-bipartite with a pairing
/// bipartite element produces.
inline Network two_part_nine_cell() {
  return ccn::make_network({"1", "2", "3", "4", "5", "6", "7", "8", "9"}, {"arrow"},
                           {{"2", "7", "arrow"},
                            {"7", "2", "arrow"},
                            {"2", "3", "arrow"},
                            {"1", "4", "arrow"},
                            {"1", "5", "arrow"},
                            {"5", "1", "arrow"},
                            {"5", "6", "arrow"},
                            {"6", "8", "arrow"},
                            {"8", "9", "arrow"}});
}

/// Partition from the listed non-singleton classes (by cell name as int);
/// unlisted cells become singletons.
inline Partition classes_of(const Network& n, const std::vector<std::vector<int>>& named) {
  std::vector<int> labels(static_cast<std::size_t>(n.cell_count()));
  for (int i = 0; i < n.cell_count(); ++i) labels[static_cast<std::size_t>(i)] = 1000 + i;
  for (std::size_t k = 0; k < named.size(); ++k)
    for (int name : named[k]) {
      int idx = n.cell_index(std::to_string(name));
      if (idx < 0) throw std::invalid_argument("fixture partition uses unknown cell");
      labels[static_cast<std::size_t>(idx)] = static_cast<int>(k);
    }
  return Partition::from_assignment(labels);
}

// ---------------------------------------------------------------------------
// Published lattice tables

/// Lattice of the 3-cell solid component {2,3,7}: the top plus three rows.
inline std::vector<Partition> comp3_lattice_table(const Network& comp) {
  return {
      Partition::singletons(3),
      classes_of(comp, {{2, 7}}),
      classes_of(comp, {{3, 7}}),
      classes_of(comp, {{2, 3, 7}}),
  };
}

/// Lattice of the 4-cell solid component {1,4,5,6}: the top plus eight rows.
inline std::vector<Partition> comp4_lattice_table(const Network& comp) {
  return {
      Partition::singletons(4),
      classes_of(comp, {{1, 5}}),
      classes_of(comp, {{1, 6}}),
      classes_of(comp, {{4, 5}}),
      classes_of(comp, {{1, 5, 6}}),
      classes_of(comp, {{1, 4, 5}}),
      classes_of(comp, {{1, 5}, {4, 6}}),
      classes_of(comp, {{1, 6}, {4, 5}}),
      classes_of(comp, {{1, 4, 5, 6}}),
  };
}

/// The four pairing bipartite rows of the solid subnetwork.
inline std::vector<Partition> solid_pb_table(const Network& solid) {
  return {
      classes_of(solid, {{1, 7}, {2, 5}}),
      classes_of(solid, {{1, 2}, {5, 7}}),
      classes_of(solid, {{1, 7}, {2, 5}, {3, 6}}),
      classes_of(solid, {{1, 2}, {3, 4}, {5, 7}}),
  };
}

/// The seven published join-irreducible rows of the dashed subnetwork.
inline std::vector<Partition> dashed_irreducibles_table(const Network& dashed) {
  return {
      classes_of(dashed, {{1, 2, 3, 4, 5, 6, 7}}),
      classes_of(dashed, {{1, 3, 6, 7}, {2, 4, 5}}),
      classes_of(dashed, {{2, 5}, {3, 6, 7}}),
      classes_of(dashed, {{1, 2, 3, 4, 5, 6}}),
      classes_of(dashed, {{1, 2, 3, 4, 5, 7}}),
      classes_of(dashed, {{1, 2, 3, 4, 5}, {6, 7}}),
      classes_of(dashed, {{1, 2, 3, 4, 7}}),
  };
}

/// The thirteen published sum rows of the dashed subnetwork.
inline std::vector<Partition> dashed_sums_table(const Network& dashed) {
  return {
      classes_of(dashed, {{1, 3, 6}, {2, 4, 5}}),
      classes_of(dashed, {{1, 3, 7}, {2, 4, 5}}),
      classes_of(dashed, {{1, 3}, {2, 4, 5}, {6, 7}}),
      classes_of(dashed, {{1, 3, 7}, {2, 4}}),
      classes_of(dashed, {{2, 5}, {3, 6}}),
      classes_of(dashed, {{2, 5}, {3, 7}}),
      classes_of(dashed, {{2, 5}, {6, 7}}),
      classes_of(dashed, {{3, 7}}),
      classes_of(dashed, {{1, 2, 3, 4, 5}}),
      classes_of(dashed, {{1, 2, 3, 4}}),
      classes_of(dashed, {{1, 3}, {2, 4, 5}}),
      classes_of(dashed, {{1, 3}, {2, 4}}),
      classes_of(dashed, {{2, 5}}),
  };
}

/// Balanced for the dashed subnetwork and join-irreducible, yet absent from
/// its published tables; the exhaustive enumeration must surface it.
inline Partition dashed_extra_element(const Network& dashed) {
  return classes_of(dashed, {{1, 2, 3, 4}, {5, 7}});
}

/// The five published synchrony subspaces of the full 7-cell network.
inline std::vector<Partition> full_network_table(const Network& seven) {
  return {
      classes_of(seven, {{3, 7}}),
      classes_of(seven, {{1, 3, 7}, {2, 4, 5}}),
      classes_of(seven, {{1, 3, 6, 7}, {2, 4, 5}}),
      classes_of(seven, {{1, 2, 3, 4, 5, 7}}),
      classes_of(seven, {{1, 2, 3, 4, 5, 6, 7}}),
  };
}

}  // namespace fx
