#pragma once
// Queue-driven thinning: iteratively removes cells whose boundary meets the
// closure of the complement in an acyclic configuration. One engine keeps
// only topology; the other also stops once the object is uniformly thin.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "thincc/acyclicity.hpp"
#include "thincc/top_complex.hpp"

namespace thincc {

enum class ThinningMode { Topology, Shape };

struct ThinningStats {
    CellId initial_count = 0;
    CellId kept_count = 0;
    uint64_t queue_pushes = 0;  // bounded by (max neighbors + 1) * cell count
};

struct ThinningOutcome {
    std::vector<CellId> kept;                           // ascending cell ids
    std::vector<std::pair<CellId, int>> removed_order;  // (cell, pass) in removal order
    int passes = 0;
    ThinningStats stats;
};

// Called right after each removal; lets callers re-verify global invariants
// (slow debug checks) or trace progress.
using RemovalHook = std::function<void(CellId)>;

// O(1) simplicity test: configuration extraction plus one oracle lookup.
bool is_simple(const TopCellComplex& x, CellId t, const AcyclicityOracle& oracle);

// FIFO removal of simple cells until none is left. Pass numbers are breadth
// waves: initially simple cells are wave 1, cells enqueued by a wave-p
// removal are wave p+1.
ThinningOutcome thin_topology(TopCellComplex& x, const AcyclicityOracle& oracle,
                              const RemovalHook& hook = {});

// Layer-synchronized variant: processes one full layer at a time and stops
// as soon as every alive cell has a facet on the current external boundary
// (checked before the first layer and after each completed one). Each
// removal is still gated by the acyclicity test, so topology is preserved
// no matter where it stops.
ThinningOutcome thin_shape(TopCellComplex& x, const AcyclicityOracle& oracle,
                           const RemovalHook& hook = {});

// Anchored thinning is plain thinning on a complex whose anchors were set at
// build time; anchor faces never enter any configuration, which keeps the
// skeleton attached to them.
ThinningOutcome thin_anchored(TopCellComplex& x, const AcyclicityOracle& oracle,
                              ThinningMode mode, const RemovalHook& hook = {});

// Final-sweep check: does any alive cell still test simple?
bool any_simple_cell(const TopCellComplex& x, const AcyclicityOracle& oracle);

// The layer-break condition of thin_shape, exposed for tests.
bool all_alive_on_boundary(const TopCellComplex& x);

} // namespace thincc
