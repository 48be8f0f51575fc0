#include "thincc/thinning.hpp"

#include <deque>

namespace thincc {

namespace {

void require_same_kind(const TopCellComplex& x, const AcyclicityOracle& oracle) {
    if (x.kind() != oracle.kind())
        throw KindMismatchError(std::string("complex holds ") + kind_name(x.kind()) +
                                " cells but the table is for " + kind_name(oracle.kind()));
}

void finish(const TopCellComplex& x, ThinningOutcome& out) {
    out.kept.reserve(static_cast<size_t>(x.alive_count()));
    for (CellId t = 0; t < x.cell_count(); ++t)
        if (x.is_alive(t)) out.kept.push_back(t);
    out.stats.kept_count = static_cast<CellId>(out.kept.size());
}

} // namespace

bool is_simple(const TopCellComplex& x, CellId t, const AcyclicityOracle& oracle) {
    require_same_kind(x, oracle);
    if (x.anchor_pinned(t)) return false;
    return oracle(x.extract_configuration(t));
}

ThinningOutcome thin_topology(TopCellComplex& x, const AcyclicityOracle& oracle,
                              const RemovalHook& hook) {
    require_same_kind(x, oracle);
    ThinningOutcome out;
    out.stats.initial_count = x.cell_count();

    std::deque<std::pair<CellId, int>> queue;
    for (CellId t = 0; t < x.cell_count(); ++t)
        if (x.is_alive(t) && is_simple(x, t, oracle)) {
            queue.emplace_back(t, 1);
            ++out.stats.queue_pushes;
        }

    std::vector<CellId> nbrs;
    while (!queue.empty()) {
        const auto [t, pass] = queue.front();
        queue.pop_front();
        if (!x.is_alive(t)) continue;
        if (!is_simple(x, t, oracle)) continue;

        x.remove(t);
        out.removed_order.emplace_back(t, pass);
        out.passes = std::max(out.passes, pass);
        if (hook) hook(t);

        x.neighbors(t, nbrs);
        for (CellId u : nbrs) {
            queue.emplace_back(u, pass + 1);
            ++out.stats.queue_pushes;
        }
    }
    finish(x, out);
    return out;
}

ThinningOutcome thin_shape(TopCellComplex& x, const AcyclicityOracle& oracle,
                           const RemovalHook& hook) {
    require_same_kind(x, oracle);
    ThinningOutcome out;
    out.stats.initial_count = x.cell_count();

    if (all_alive_on_boundary(x)) {  // already uniformly thin: keep everything
        finish(x, out);
        return out;
    }

    std::deque<CellId> layer, next;
    for (CellId t = 0; t < x.cell_count(); ++t)
        if (x.is_alive(t) && is_simple(x, t, oracle)) {
            layer.push_back(t);
            ++out.stats.queue_pushes;
        }

    std::vector<CellId> nbrs;
    while (!layer.empty()) {
        ++out.passes;
        while (!layer.empty()) {
            const CellId t = layer.front();
            layer.pop_front();
            if (!x.is_alive(t)) continue;
            if (!is_simple(x, t, oracle)) continue;

            x.remove(t);
            out.removed_order.emplace_back(t, out.passes);
            if (hook) hook(t);

            // enqueue for the next layer only on an actual removal; this
            // bounds queue traffic and guarantees termination
            x.neighbors(t, nbrs);
            for (CellId u : nbrs) {
                next.push_back(u);
                ++out.stats.queue_pushes;
            }
        }
        layer.swap(next);
        if (all_alive_on_boundary(x)) break;
    }
    finish(x, out);
    return out;
}

ThinningOutcome thin_anchored(TopCellComplex& x, const AcyclicityOracle& oracle,
                              ThinningMode mode, const RemovalHook& hook) {
    return mode == ThinningMode::Topology ? thin_topology(x, oracle, hook)
                                          : thin_shape(x, oracle, hook);
}

bool any_simple_cell(const TopCellComplex& x, const AcyclicityOracle& oracle) {
    for (CellId t = 0; t < x.cell_count(); ++t)
        if (x.is_alive(t) && is_simple(x, t, oracle)) return true;
    return false;
}

bool all_alive_on_boundary(const TopCellComplex& x) {
    for (CellId t = 0; t < x.cell_count(); ++t)
        if (x.is_alive(t) && !x.has_current_boundary_facet(t)) return false;
    return true;
}

} // namespace thincc
