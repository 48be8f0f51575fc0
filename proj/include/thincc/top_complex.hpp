#pragma once
// The thinnable object: top-dimensional cells only. Lower-dimensional
// structure is derived on demand — facet incidence from hashing for meshes,
// lattice arithmetic for images. Tracks which cells are still alive and
// answers the one query thinning needs: the configuration a cell's boundary
// makes with the closure of the current complement.

#include <array>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/errors.hpp"

namespace thincc {

using CellId = int32_t;

// A (d-1)-face of the cubical lattice: the unit square (or edge, for pixel
// grids) orthogonal to `axis` whose minimal corner is `min_corner`.
struct LatticeFaceKey {
    int axis = 0;
    std::array<int, 3> min_corner{0, 0, 0};

    bool operator==(const LatticeFaceKey&) const = default;
};

struct FacetStats {
    uint64_t total = 0;        // distinct (d-1)-faces of the original complex
    uint64_t boundary = 0;     // exactly one incident top cell
    uint64_t shared = 0;       // exactly two
    uint64_t nonmanifold = 0;  // three or more
};

class TopCellComplex {
public:
    // Mesh of sorted global-vertex tuples, one per top cell. Anchor faces are
    // (d-1)-tuples that must lie on the original external boundary.
    static TopCellComplex build_simplicial(ModelKind kind,
                                           std::vector<std::vector<int64_t>> cells,
                                           std::vector<std::vector<int64_t>> anchor_faces = {});

    // Occupancy grid, x fastest, then y, then z (nz = 1 for pixel grids).
    // Cell ids number the occupied positions in grid order.
    static TopCellComplex build_cubical(ModelKind kind, int nx, int ny, int nz,
                                        const std::vector<uint8_t>& present,
                                        std::vector<LatticeFaceKey> anchor_faces = {});

    ModelKind kind() const { return kind_; }
    bool cubical() const { return is_cubical(kind_); }
    CellId cell_count() const { return static_cast<CellId>(alive_.size()); }
    CellId alive_count() const { return alive_count_; }
    bool is_alive(CellId t) const { return alive_[static_cast<size_t>(t)] != 0; }
    bool has_anchors() const { return has_anchors_; }

    // true when t is the last alive cell whose closure carries some anchored
    // element; such a cell can never be removed
    bool anchor_pinned(CellId t) const;

    // C(T): the part of bd T swallowed by the closure of the complement.
    // An element qualifies when it bounds a removed cell or lies in the
    // closed external boundary of the original input, unless it belongs to
    // the closed anchor set. Closedness of the result is asserted whenever
    // no anchors are present (anchors may legitimately puncture closedness,
    // which the table then reads as "not simple").
    ConfigMask extract_configuration(CellId t) const;

    void remove(CellId t);  // throws InvariantViolation on double removal

    // Alive cells sharing at least one vertex with t, t excluded.
    void neighbors(CellId t, std::vector<CellId>& out) const;
    std::vector<CellId> neighbors(CellId t) const;

    // Does t own a (d-1)-face with exactly one alive incident cell? (The
    // face then sits on the external boundary of the current alive set.)
    bool has_current_boundary_facet(CellId t) const;

    // Cell payloads for export and verification.
    const std::vector<std::vector<int64_t>>& simplicial_cells() const;
    const std::vector<std::array<int, 3>>& cubical_cells() const;
    std::array<int, 3> grid_dims() const;

    FacetStats facet_stats() const;  // over the original complex

private:
    TopCellComplex() = default;

    ConfigMask extract_simplicial(CellId t) const;
    ConfigMask extract_cubical(CellId t) const;
    bool lattice_alive(int x, int y, int z) const;

    struct TupleHash {
        size_t operator()(const std::vector<int64_t>& v) const {
            uint64_t h = 1469598103934665603ull;
            for (int64_t x : v) {
                h ^= static_cast<uint64_t>(x);
                h *= 1099511628211ull;
            }
            return static_cast<size_t>(h);
        }
    };
    using TupleSet = std::unordered_set<std::vector<int64_t>, TupleHash>;

    ModelKind kind_{};
    std::vector<uint8_t> alive_;
    CellId alive_count_ = 0;
    bool has_anchors_ = false;

    // carrier bookkeeping: an anchored element must always stay inside the
    // closure of at least one alive cell, so its last alive carrier is pinned
    std::vector<int> anchor_carrier_count_;                      // per anchored element
    std::unordered_map<CellId, std::vector<uint32_t>> anchored_cells_;  // cell -> elements carried

    // --- simplicial backend ---
    std::vector<std::vector<int64_t>> cells_;
    std::unordered_map<std::vector<int64_t>, std::vector<CellId>, TupleHash> face_index_;
    std::unordered_map<int64_t, std::vector<CellId>> vertex_index_;
    TupleSet boundary_closure_;  // every face (all dims) of every boundary facet
    TupleSet anchor_closure_;

    // --- cubical backend (dense grid; off-grid space is exterior) ---
    std::array<int, 3> dims_{0, 0, 0};
    std::vector<CellId> grid_;                      // position -> cell id or -1
    std::vector<std::array<int, 3>> coords_;        // cell id -> position
    std::vector<std::array<int, 3>> probe_offsets_; // positions whose absence feeds C(T)
    std::vector<ConfigMask> probe_masks_;           // elements witnessed by each probe
    std::unordered_set<uint64_t> anchor_elements_;  // packed global element keys
};

} // namespace thincc
