#pragma once

// Ground truth by exhaustive enumeration: every set partition of the cells
// is visited as a restricted-growth string, pruned early when two cells
// already in one class can no longer receive class-matched inputs, and the
// survivors are filtered by is_balanced.

#include <algorithm>
#include <array>
#include <cstdint>
#include <future>
#include <string>
#include <vector>

#include "ccn/errors.hpp"
#include "ccn/lattice.hpp"
#include "ccn/network.hpp"
#include "ccn/partition.hpp"

namespace ccn {

struct OracleConfig {
  int max_cells = 12;
  bool parallel = false;
};

/// Bell numbers B(0)..B(20); B(20) still fits in 64 bits.
inline const std::array<std::uint64_t, 21>& bell_numbers() {
  static const std::array<std::uint64_t, 21> table = {
      1ull,
      1ull,
      2ull,
      5ull,
      15ull,
      52ull,
      203ull,
      877ull,
      4140ull,
      21147ull,
      115975ull,
      678570ull,
      4213597ull,
      27644437ull,
      190899322ull,
      1382958545ull,
      10480142147ull,
      82864869804ull,
      682076806159ull,
      5832742205057ull,
      51724158235372ull};
  return table;
}

namespace detail {

struct EnumContext {
  const Network* net = nullptr;
  int n = 0;
  // inputs[t][c] = source cells of type-t edges into c, sorted
  std::vector<std::vector<std::vector<int>>> inputs;
  // max_input[t][c] = largest source index (-1 when none)
  std::vector<std::vector<int>> max_input;
  bool single_input_everywhere = true;  // at most one input per (cell, type)

  explicit EnumContext(const Network& network) : net(&network), n(network.cell_count()) {
    inputs.assign(static_cast<std::size_t>(network.type_count()),
                  std::vector<std::vector<int>>(static_cast<std::size_t>(n)));
    for (const auto& e : network.edges)
      inputs[static_cast<std::size_t>(e.type)][static_cast<std::size_t>(e.target)].push_back(
          e.source);
    max_input.assign(static_cast<std::size_t>(network.type_count()),
                     std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int t = 0; t < network.type_count(); ++t)
      for (int c = 0; c < n; ++c) {
        auto& in = inputs[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
        std::sort(in.begin(), in.end());
        if (!in.empty()) max_input[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] = in.back();
        if (in.size() > 1) single_input_everywhere = false;
      }
  }

  // Same-class cells whose type-t inputs are all assigned must draw them
  // from matching classes.  Only pairs whose checkability changed at `cell`
  // need a look: pairs involving the cell itself or a consumer of it.
  bool step_ok(const std::vector<int>& assign, int cell) const {
    for (int j = 0; j < cell; ++j) {
      if (assign[static_cast<std::size_t>(j)] != assign[static_cast<std::size_t>(cell)]) continue;
      if (!pair_ok(assign, cell, j, cell)) return false;
    }
    for (std::size_t t = 0; t < inputs.size(); ++t)
      for (int c = 0; c <= cell; ++c) {
        if (max_input[t][static_cast<std::size_t>(c)] != cell) continue;
        for (int j = 0; j <= cell; ++j)
          if (j != c && assign[static_cast<std::size_t>(j)] == assign[static_cast<std::size_t>(c)] &&
              !pair_ok(assign, cell, c, j))
            return false;
      }
    return true;
  }

  bool pair_ok(const std::vector<int>& assign, int upto, int i, int j) const {
    for (std::size_t t = 0; t < inputs.size(); ++t) {
      if (max_input[t][static_cast<std::size_t>(i)] > upto ||
          max_input[t][static_cast<std::size_t>(j)] > upto)
        continue;
      const auto& a = inputs[t][static_cast<std::size_t>(i)];
      const auto& b = inputs[t][static_cast<std::size_t>(j)];
      if (a.size() != b.size()) return false;
      if (single_input_everywhere) {
        if (!a.empty() &&
            assign[static_cast<std::size_t>(a[0])] != assign[static_cast<std::size_t>(b[0])])
          return false;
      } else {
        std::vector<int> ca, cb;
        for (int s : a) ca.push_back(assign[static_cast<std::size_t>(s)]);
        for (int s : b) cb.push_back(assign[static_cast<std::size_t>(s)]);
        std::sort(ca.begin(), ca.end());
        std::sort(cb.begin(), cb.end());
        if (ca != cb) return false;
      }
    }
    return true;
  }

  void recurse(std::vector<int>& assign, int cell, int used, std::vector<Partition>& out) const {
    if (cell == n) {
      Partition p = Partition::from_assignment(assign);
      if (is_balanced(*net, p)) out.push_back(std::move(p));
      return;
    }
    for (int cls = 0; cls <= used && cls < n; ++cls) {
      assign[static_cast<std::size_t>(cell)] = cls;
      if (step_ok(assign, cell))
        recurse(assign, cell + 1, std::max(used, cls + 1), out);
    }
  }
};

}  // namespace detail

inline void require_within_cap(const Network& n, const OracleConfig& cfg) {
  if (n.cell_count() > cfg.max_cells) {
    std::string estimate =
        n.cell_count() <= 20
            ? std::to_string(bell_numbers()[static_cast<std::size_t>(n.cell_count())])
            : std::string("more than ") + std::to_string(bell_numbers()[20]);
    throw CapExceeded("enumeration refused: " + std::to_string(n.cell_count()) +
                      " cells exceed the cap of " + std::to_string(cfg.max_cells) + " (about " +
                      estimate + " set partitions)");
  }
}

/// Every balanced partition of the network, in canonical order.
inline std::vector<Partition> balanced_partitions(const Network& n, const OracleConfig& cfg = {}) {
  require_within_cap(n, cfg);
  detail::EnumContext ctx(n);
  const int nc = n.cell_count();
  std::vector<Partition> out;
  std::vector<int> assign(static_cast<std::size_t>(nc), 0);
  if (nc == 0) return out;

  const int split_depth = (cfg.parallel && nc >= 6) ? 3 : 0;
  if (split_depth == 0) {
    ctx.recurse(assign, 1, 1, out);
  } else {
    // Fan out over the assignments of the first few cells; branches are
    // disjoint, so a plain ordered merge is deterministic.
    std::vector<std::vector<int>> prefixes;
    std::vector<int> pre(static_cast<std::size_t>(split_depth + 1), 0);
    auto gen = [&](auto&& self, int cell, int used) -> void {
      if (cell == split_depth + 1) {
        prefixes.push_back(pre);
        return;
      }
      for (int cls = 0; cls <= used; ++cls) {
        pre[static_cast<std::size_t>(cell)] = cls;
        self(self, cell + 1, std::max(used, cls + 1));
      }
    };
    gen(gen, 1, 1);
    std::vector<std::future<std::vector<Partition>>> tasks;
    for (const auto& prefix : prefixes)
      tasks.push_back(std::async(std::launch::async, [&ctx, prefix, nc]() {
        std::vector<Partition> local;
        std::vector<int> a(static_cast<std::size_t>(nc), 0);
        int used = 1;
        bool viable = true;
        for (int c = 1; c <= static_cast<int>(prefix.size()) - 1; ++c) {
          a[static_cast<std::size_t>(c)] = prefix[static_cast<std::size_t>(c)];
          used = std::max(used, prefix[static_cast<std::size_t>(c)] + 1);
          if (!ctx.step_ok(a, c)) {
            viable = false;
            break;
          }
        }
        if (viable) ctx.recurse(a, static_cast<int>(prefix.size()), used, local);
        return local;
      }));
    for (auto& t : tasks) {
      auto part = t.get();
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Exhaustive synchrony lattice.  Building it re-verifies closure under
/// subspace intersection, and under subspace sum whenever the network has
/// asymmetric inputs.
inline SyncLattice enumerate_balanced(const Network& n, const OracleConfig& cfg = {}) {
  std::vector<Partition> all = balanced_partitions(n, cfg);
  const bool asym = validate(n).is_asymmetric_inputs;
  return SyncLattice::build(std::move(all), n, asym);
}

/// Balanced partitions whose non-singleton classes are exactly cross-part
/// 2-classes; side[c] says which part cell c belongs to.
inline std::vector<Partition> pairing_shaped_balanced(const Network& union_net,
                                                      const std::vector<char>& side,
                                                      const OracleConfig& cfg = {}) {
  if (static_cast<int>(side.size()) != union_net.cell_count())
    throw std::invalid_argument("pairing_shaped_balanced: side vector has wrong size");
  std::vector<Partition> out;
  for (const Partition& p : balanced_partitions(union_net, cfg)) {
    bool pairing = false, shaped = true;
    for (const auto& cls : p.classes()) {
      if (cls.size() == 1) continue;
      if (cls.size() != 2 || side[static_cast<std::size_t>(cls[0])] ==
                                 side[static_cast<std::size_t>(cls[1])]) {
        shaped = false;
        break;
      }
      pairing = true;
    }
    if (shaped && pairing) out.push_back(p);
  }
  return out;
}

}  // namespace ccn
