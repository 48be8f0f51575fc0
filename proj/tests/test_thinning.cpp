#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fixtures.hpp"
#include "thincc/acyclicity.hpp"
#include "thincc/thinning.hpp"
#include "thincc/top_complex.hpp"
#include "thincc/verify.hpp"

using namespace thincc;

namespace {

const AcyclicityTable& table_for(ModelKind k) {
    static const AcyclicityTable s2 = generate_table(ModelKind::Simplex2);
    static const AcyclicityTable s3 = generate_table(ModelKind::Simplex3);
    static const AcyclicityTable c2 = generate_table(ModelKind::Cube2);
    static const AcyclicityTable c3 = generate_table(ModelKind::Cube3, 4);
    switch (k) {
        case ModelKind::Simplex2: return s2;
        case ModelKind::Simplex3: return s3;
        case ModelKind::Cube2: return c2;
        default: return c3;
    }
}

TopCellComplex grid_complex(ModelKind kind, const fixtures::Grid& g) {
    return TopCellComplex::build_cubical(kind, g.nx, g.ny, g.nz, g.present);
}

uint64_t max_neighbor_count(const TopCellComplex& x) {
    uint64_t best = 0;
    std::vector<CellId> scratch;
    for (CellId t = 0; t < x.cell_count(); ++t) {
        x.neighbors(t, scratch);
        best = std::max(best, static_cast<uint64_t>(scratch.size()));
    }
    return best;
}

// initial_max_neighbors must be measured before thinning (dead cells make
// neighborhoods shrink).
void check_common_postconditions(const TopCellComplex& x, const ThinningOutcome& out,
                                 uint64_t initial_max_neighbors) {
    // kept + removed partition the cells, kept ids ascending and alive
    CHECK(out.kept.size() + out.removed_order.size() ==
          static_cast<size_t>(out.stats.initial_count));
    CHECK(std::is_sorted(out.kept.begin(), out.kept.end()));
    for (CellId t : out.kept) CHECK(x.is_alive(t));
    for (const auto& [t, pass] : out.removed_order) {
        CHECK_FALSE(x.is_alive(t));
        CHECK(pass >= 1);
        CHECK(pass <= out.passes);
    }
    // pass numbers never decrease along the removal order
    for (size_t i = 1; i < out.removed_order.size(); ++i)
        CHECK(out.removed_order[i - 1].second <= out.removed_order[i].second);
    CHECK(out.stats.kept_count == static_cast<CellId>(out.kept.size()));
    CHECK(out.stats.queue_pushes <=
          (initial_max_neighbors + 1) * static_cast<uint64_t>(out.stats.initial_count));
}

}  // namespace

TEST_CASE("a triangle fan thins to a single triangle") {
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::fan_disk(6));
    const uint64_t max_k = max_neighbor_count(x);
    const auto out = thin_topology(x, table_for(ModelKind::Simplex2));
    CHECK(out.kept.size() == 1);
    CHECK(out.removed_order.size() == 5);
    CHECK(out.passes >= 1);
    check_common_postconditions(x, out, max_k);
    CHECK_FALSE(any_simple_cell(x, table_for(ModelKind::Simplex2)));
    CHECK(certify_outcome(x, out.kept).isomorphic);
}

TEST_CASE("a lone cell is never removed") {
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex3, {{0, 1, 2, 3}});
    const auto out = thin_topology(x, table_for(ModelKind::Simplex3));
    CHECK(out.kept == std::vector<CellId>{0});
    CHECK(out.removed_order.empty());
    CHECK(out.passes == 0);
    CHECK(out.stats.queue_pushes == 0);
}

TEST_CASE("an annulus keeps its cycle") {
    // every sector triangle touches both rim circles, so its exposed boundary
    // piece has two components and is never acyclic: the annulus is already
    // its own skeleton and must come back untouched
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::annulus(8));
    const uint64_t max_k = max_neighbor_count(x);
    const auto out = thin_topology(x, table_for(ModelKind::Simplex2));
    check_common_postconditions(x, out, max_k);
    const auto report = certify_outcome(x, out.kept);
    CHECK(report.betti_in == std::vector<int>{1, 1, 0});
    CHECK(report.betti_out == std::vector<int>{1, 1, 0});
    CHECK(report.isomorphic);
    CHECK(out.kept.size() == 16);
    CHECK(out.removed_order.empty());
    CHECK_FALSE(any_simple_cell(x, table_for(ModelKind::Simplex2)));
}

TEST_CASE("homology is preserved across the whole suite") {
    struct Case {
        const char* name;
        ModelKind kind;
        fixtures::Cells cells;  // empty for grid cases
        fixtures::Grid grid;
        std::vector<int> betti;
    };
    const std::vector<Case> cases{
        {"fan", ModelKind::Simplex2, fixtures::fan_disk(6), {}, {1, 0, 0}},
        {"annulus", ModelKind::Simplex2, fixtures::annulus(8), {}, {1, 1, 0}},
        {"moebius", ModelKind::Simplex2, fixtures::moebius(5), {}, {1, 1, 0}},
        {"strip", ModelKind::Simplex2, fixtures::strip(4), {}, {1, 0, 0}},
        {"tet ball", ModelKind::Simplex3, fixtures::tet_ball(), {}, {1, 0, 0, 0}},
        {"tet ring", ModelKind::Simplex3, fixtures::tet_ring(), {}, {1, 1, 0, 0}},
        {"voxel ball", ModelKind::Cube3, {}, fixtures::ball_grid(9, 16), {1, 0, 0, 0}},
        {"voxel ring", ModelKind::Cube3, {}, fixtures::ring_grid(), {1, 1, 0, 0}},
        {"pixel ring", ModelKind::Cube2, {}, fixtures::ring_grid(), {1, 1, 0}},
        {"pixel block", ModelKind::Cube2, {}, fixtures::solid_grid(6, 6, 1), {1, 0, 0}},
    };
    for (const auto& cs : cases) {
        for (ThinningMode mode : {ThinningMode::Topology, ThinningMode::Shape}) {
            CAPTURE(cs.name);
            CAPTURE(mode == ThinningMode::Topology ? "topology" : "shape");
            auto x = cs.cells.empty() ? grid_complex(cs.kind, cs.grid)
                                      : TopCellComplex::build_simplicial(cs.kind, cs.cells);
            const uint64_t max_k = max_neighbor_count(x);
            const auto out = thin_anchored(x, table_for(cs.kind), mode);
            check_common_postconditions(x, out, max_k);
            const auto report = certify_outcome(x, out.kept);
            CHECK(report.betti_in == cs.betti);
            CHECK(report.betti_out == cs.betti);
            CHECK(report.torsion_free_in);
            CHECK(report.torsion_free_out);
            CHECK(report.isomorphic);
            if (mode == ThinningMode::Topology)
                CHECK_FALSE(any_simple_cell(x, table_for(cs.kind)));
        }
    }
}

TEST_CASE("solid blocks collapse to one cell under topological thinning") {
    auto x = grid_complex(ModelKind::Cube3, fixtures::solid_grid(5, 5, 5));
    const auto out = thin_topology(x, table_for(ModelKind::Cube3));
    CHECK(out.kept.size() == 1);
    CHECK(certify_outcome(x, out.kept).isomorphic);

    auto ball = grid_complex(ModelKind::Cube3, fixtures::ball_grid(9, 16));
    const auto out2 = thin_topology(ball, table_for(ModelKind::Cube3));
    CHECK(out2.kept.size() == 1);

    auto tets = TopCellComplex::build_simplicial(ModelKind::Simplex3, fixtures::tet_ball());
    const auto out3 = thin_topology(tets, table_for(ModelKind::Simplex3));
    CHECK(out3.kept.size() == 1);
}

TEST_CASE("a ring of eight voxels is already its own skeleton") {
    auto x = grid_complex(ModelKind::Cube3, fixtures::ring_grid());
    const auto out = thin_topology(x, table_for(ModelKind::Cube3));
    CHECK(out.kept.size() == 8);
    CHECK(out.removed_order.empty());
}

TEST_CASE("shape thinning stops when everything lies on the boundary") {
    SUBCASE("a one-voxel-thick slab is returned untouched") {
        auto x = grid_complex(ModelKind::Cube3, fixtures::solid_grid(4, 4, 1));
        REQUIRE(all_alive_on_boundary(x));
        const auto out = thin_shape(x, table_for(ModelKind::Cube3));
        CHECK(out.kept.size() == 16);
        CHECK(out.removed_order.empty());
        CHECK(out.passes == 0);
        CHECK(out.stats.queue_pushes == 0);
    }
    SUBCASE("topological thinning of the same slab keeps eroding") {
        auto x = grid_complex(ModelKind::Cube3, fixtures::solid_grid(4, 4, 1));
        const auto out = thin_topology(x, table_for(ModelKind::Cube3));
        CHECK(out.kept.size() == 1);
    }
    SUBCASE("a flat box erodes to a plate, not a point") {
        // peeling the outer layer of a 7x7x3 box leaves a 5x5x1 plate; every
        // plate voxel then has its top and bottom facets free, so the
        // boundary break fires before a second layer starts
        auto x = grid_complex(ModelKind::Cube3, fixtures::solid_grid(7, 7, 3));
        const auto out = thin_shape(x, table_for(ModelKind::Cube3));
        // the full plate survives, plus at most a couple of shell stragglers
        // that became non-simple late in the first wave
        CHECK(out.kept.size() >= 25);
        CHECK(out.kept.size() <= 30);
        CHECK(out.passes == 1);
        CHECK(all_alive_on_boundary(x));
        CHECK(certify_outcome(x, out.kept).isomorphic);
        for (int yp = 1; yp <= 5; ++yp)
            for (int xp = 1; xp <= 5; ++xp) {
                const CellId plate_cell = (1 * 7 + yp) * 7 + xp;
                CHECK(x.is_alive(plate_cell));
            }
    }
    SUBCASE("topological thinning of the same box reaches a point") {
        auto x = grid_complex(ModelKind::Cube3, fixtures::solid_grid(7, 7, 3));
        const auto out = thin_topology(x, table_for(ModelKind::Cube3));
        CHECK(out.kept.size() == 1);
    }
}

TEST_CASE("thinning is deterministic") {
    for (int run = 0; run < 2; ++run) {
        static std::vector<std::pair<CellId, int>> first_removed;
        static std::vector<CellId> first_kept;
        auto x = grid_complex(ModelKind::Cube3, fixtures::ball_grid(7, 8));
        const auto out = thin_topology(x, table_for(ModelKind::Cube3));
        if (run == 0) {
            first_removed = out.removed_order;
            first_kept = out.kept;
        } else {
            CHECK(out.removed_order == first_removed);
            CHECK(out.kept == first_kept);
        }
    }
    for (int run = 0; run < 2; ++run) {
        static std::vector<std::pair<CellId, int>> first_removed;
        auto x = TopCellComplex::build_simplicial(ModelKind::Simplex3, fixtures::tet_ball());
        const auto out = thin_shape(x, table_for(ModelKind::Simplex3));
        if (run == 0)
            first_removed = out.removed_order;
        else
            CHECK(out.removed_order == first_removed);
    }
}

TEST_CASE("the removal hook fires once per removed cell, in order") {
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::fan_disk(6));
    std::vector<CellId> seen;
    const auto out = thin_topology(x, table_for(ModelKind::Simplex2),
                                   [&](CellId t) { seen.push_back(t); });
    std::vector<CellId> expected;
    for (const auto& [t, pass] : out.removed_order) {
        (void)pass;
        expected.push_back(t);
    }
    CHECK(seen == expected);
}

TEST_CASE("every single removal preserves homology") {
    // recompute full-complex homology after each removal (small inputs only)
    auto run = [](TopCellComplex x, ModelKind kind, ThinningMode mode) {
        const auto in_betti =
            kind == ModelKind::Simplex2
                ? homology_summary(full_complex(kind, x.simplicial_cells())).betti
                : homology_summary(full_complex(kind, x.cubical_cells())).betti;
        auto hook = [&](CellId) {
            std::vector<CellId> alive;
            for (CellId t = 0; t < x.cell_count(); ++t)
                if (x.is_alive(t)) alive.push_back(t);
            const auto report = certify_outcome(x, alive);
            if (report.betti_out != in_betti) {
                CAPTURE(report.betti_out);
                REQUIRE(report.betti_out == in_betti);
            }
        };
        thin_anchored(x, table_for(kind), mode, hook);
    };
    run(TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::fan_disk(8)),
        ModelKind::Simplex2, ThinningMode::Topology);
    run(TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::strip(6)),
        ModelKind::Simplex2, ThinningMode::Topology);
    run(TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::moebius(5)),
        ModelKind::Simplex2, ThinningMode::Topology);
    run(grid_complex(ModelKind::Cube3, fixtures::solid_grid(3, 3, 2)),
        ModelKind::Cube3, ThinningMode::Topology);
    run(grid_complex(ModelKind::Cube3, fixtures::solid_grid(3, 3, 2)),
        ModelKind::Cube3, ThinningMode::Shape);
}

TEST_CASE("anchored thinning keeps the skeleton attached") {
    // strip of 5 quads, both end edges anchored
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::strip(5),
                                              {{0, 100}, {5, 105}});
    const auto out = thin_anchored(x, table_for(ModelKind::Simplex2),
                                   ThinningMode::Topology);
    // the cells carrying the anchored edges survive
    CHECK(std::count(out.kept.begin(), out.kept.end(), CellId{0}) == 1);
    CHECK(std::count(out.kept.begin(), out.kept.end(), CellId{9}) == 1);
    CHECK(certify_outcome(x, out.kept).isomorphic);
    // the kept set still connects the two anchors through shared vertices
    CHECK(certify_outcome(x, out.kept).betti_out[0] == 1);
}

TEST_CASE("the last carrier of an anchored wall face is never removed") {
    // 4x3x3 solid slab with the middle square of the x=0 wall anchored: only
    // the voxel at (0,1,1) carries that square, so it must survive even when
    // the erosion reaches it from behind through its x=1 facet
    auto x = TopCellComplex::build_cubical(ModelKind::Cube3, 4, 3, 3,
                                           fixtures::solid_grid(4, 3, 3).present,
                                           {LatticeFaceKey{0, {0, 1, 1}}});
    const CellId carrier = 0 + 4 * (1 + 3 * 1);
    CHECK(x.anchor_pinned(carrier));
    const auto out = thin_anchored(x, table_for(ModelKind::Cube3),
                                   ThinningMode::Topology);
    CHECK(x.is_alive(carrier));
    const auto rep = certify_outcome(x, out.kept);
    CHECK(rep.isomorphic);
    CHECK(rep.betti_out == std::vector<int>{1, 0, 0, 0});
}

TEST_CASE("anchored removals preserve homology step by step") {
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::strip(5),
                                              {{0, 100}, {5, 105}});
    auto shadow = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::strip(5),
                                                   {{0, 100}, {5, 105}});
    std::vector<CellId> alive;
    for (CellId t = 0; t < shadow.cell_count(); ++t) alive.push_back(t);
    const auto hook = [&](CellId t) {
        alive.erase(std::find(alive.begin(), alive.end(), t));
        const auto rep = certify_outcome(shadow, alive);
        CHECK(rep.isomorphic);
    };
    thin_anchored(x, table_for(ModelKind::Simplex2), ThinningMode::Topology, hook);
}

TEST_CASE("anchoring the entire boundary freezes the complex") {
    auto cells = fixtures::fan_disk(6);
    // collect all boundary edges (each belongs to one triangle): the rim
    std::vector<std::vector<int64_t>> rim;
    for (int i = 0; i < 6; ++i) {
        std::vector<int64_t> e{1 + i, 1 + (i + 1) % 6};
        std::sort(e.begin(), e.end());
        rim.push_back(std::move(e));
    }
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, cells, rim);
    const auto out = thin_anchored(x, table_for(ModelKind::Simplex2),
                                   ThinningMode::Topology);
    CHECK(out.kept.size() == 6);
    CHECK(out.removed_order.empty());
}

TEST_CASE("empty anchor list reproduces plain thinning") {
    auto a = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::annulus(6));
    auto b = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::annulus(6), {});
    const auto out_a = thin_topology(a, table_for(ModelKind::Simplex2));
    const auto out_b = thin_anchored(b, table_for(ModelKind::Simplex2),
                                     ThinningMode::Topology);
    CHECK(out_a.kept == out_b.kept);
    CHECK(out_a.removed_order == out_b.removed_order);
}

TEST_CASE("mismatched oracle kinds are rejected") {
    auto x = TopCellComplex::build_simplicial(ModelKind::Simplex2, fixtures::fan_disk(4));
    CHECK_THROWS_AS(thin_topology(x, table_for(ModelKind::Cube3)), KindMismatchError);
    CHECK_THROWS_AS(is_simple(x, 0, table_for(ModelKind::Simplex3)), KindMismatchError);
}

TEST_CASE("pass numbering reflects erosion depth") {
    // a 7x7 pixel block erodes inward; the survivor needs at least 3 waves
    auto x = grid_complex(ModelKind::Cube2, fixtures::solid_grid(7, 7, 1));
    const auto out = thin_topology(x, table_for(ModelKind::Cube2));
    CHECK(out.kept.size() == 1);
    CHECK(out.passes >= 3);
    // wave-1 removals were simple in the untouched complex
    auto fresh = grid_complex(ModelKind::Cube2, fixtures::solid_grid(7, 7, 1));
    for (const auto& [t, pass] : out.removed_order)
        if (pass == 1) CHECK(is_simple(fresh, t, table_for(ModelKind::Cube2)));
}
