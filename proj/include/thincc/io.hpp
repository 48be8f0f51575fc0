#pragma once
// File formats: node/ele mesh ingestion, occupancy-grid images, skeleton
// id lists, anchor face lists, and legacy-VTK export for viewers.

#include <array>
#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/thinning.hpp"
#include "thincc/top_complex.hpp"

namespace thincc {

struct SimplicialMesh {
    ModelKind kind{};
    std::vector<std::vector<int64_t>> cells;  // sorted vertex tuples
    std::unordered_map<int64_t, std::array<double, 3>> coords;  // export payload only
};

// .node: "count dim 0 0" header then "id x y [z]" lines.
// .ele:  "count arity 0" header then "id v1..vArity" lines;
//        arity 3 -> tri, 4 -> tet, 5 -> simp4. '#' starts a comment.
SimplicialMesh read_simplicial(const std::filesystem::path& node_path,
                               const std::filesystem::path& ele_path);

struct VoxelImage {
    ModelKind kind{};  // Cube2 when nz = 1, else Cube3
    int nx = 0, ny = 0, nz = 1;
    std::vector<uint8_t> values;  // x fastest, then y, then z

    size_t cell_count() const;
};

// "VOX nx ny nz" header then nx*ny*nz whitespace-separated 0/1 values.
VoxelImage read_voxels(const std::filesystem::path& path);

// One kept cell id per line; '#' comment lines carry counts, pass total,
// and the (cell, pass) removal trace.
void write_skeleton(const ThinningOutcome& outcome, const std::filesystem::path& path);
std::vector<CellId> read_skeleton(const std::filesystem::path& path);

// Anchor files: one (d-1)-face per line — sorted vertex ids for meshes,
// "axis x y z" lattice keys for grids.
std::vector<std::vector<int64_t>> read_simplicial_anchors(const std::filesystem::path& path,
                                                          ModelKind kind);
std::vector<LatticeFaceKey> read_lattice_anchors(const std::filesystem::path& path);

// Legacy ASCII UNSTRUCTURED_GRID holding every original cell, with a
// CELL_DATA scalar "kept" in {0,1}. Simplicial export needs vertex
// coordinates; 4-dimensional cells have no VTK type and are refused.
void write_vtk(const TopCellComplex& x, const std::vector<CellId>& kept,
               const std::filesystem::path& path,
               const std::unordered_map<int64_t, std::array<double, 3>>* coords = nullptr);

} // namespace thincc
