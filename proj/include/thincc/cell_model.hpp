#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thincc/errors.hpp"

namespace thincc {

/// The five reference cells. Thinnable complexes are homogeneous collections
/// of one of these.
enum class ModelKind : uint8_t {
    Simplex2 = 0, // triangle
    Simplex3 = 1, // tetrahedron
    Simplex4 = 2, // 4-dimensional simplex
    Cube2 = 3,    // pixel
    Cube3 = 4,    // voxel
};

constexpr int boundary_element_count(ModelKind k) {
    switch (k) {
        case ModelKind::Simplex2: return 6;
        case ModelKind::Simplex3: return 14;
        case ModelKind::Simplex4: return 30;
        case ModelKind::Cube2: return 8;
        case ModelKind::Cube3: return 26;
    }
    return 0;
}

constexpr int cell_dim(ModelKind k) {
    switch (k) {
        case ModelKind::Simplex2: return 2;
        case ModelKind::Simplex3: return 3;
        case ModelKind::Simplex4: return 4;
        case ModelKind::Cube2: return 2;
        case ModelKind::Cube3: return 3;
    }
    return 0;
}

constexpr bool is_cubical(ModelKind k) {
    return k == ModelKind::Cube2 || k == ModelKind::Cube3;
}

constexpr int model_vertex_count(ModelKind k) {
    return is_cubical(k) ? (1 << (cell_dim(k))) : cell_dim(k) + 1;
}

const char* kind_name(ModelKind k); // "tri", "tet", "simp4", "pixel", "voxel"
std::optional<ModelKind> kind_from_name(const std::string& name);

/// Subset of a model cell's boundary elements, packed as a bitmask:
/// bit (l-1) set <=> element with 1-based ordinal l is present.
using ConfigMask = uint32_t;

/// A subset of the boundary elements of one model cell.
struct Configuration {
    ModelKind kind = ModelKind::Simplex2;
    ConfigMask mask = 0;

    Configuration() = default;
    Configuration(ModelKind k, ConfigMask m) : kind(k), mask(m) {}

    static Configuration from_ordinals(ModelKind k, std::span<const int> ordinals);
    static Configuration from_ordinals(ModelKind k, std::initializer_list<int> ordinals);

    bool contains(int ordinal) const { return (mask >> (ordinal - 1)) & 1u; }
    void add(int ordinal) { mask |= ConfigMask{1} << (ordinal - 1); }
    bool empty() const { return mask == 0; }
    int size() const;
    std::vector<int> ordinals() const;

    bool operator==(const Configuration&) const = default;
};

/// Table address of a configuration: sum of 2^(l-1) over member ordinals,
/// i.e. the packed bitmask itself. Bijective onto 0..2^n-1.
uint64_t canonical_index(const Configuration& c);

/// The 1-based index sum of 2^l over member ordinals, kept for reproducing
/// published index values. Always equal to 2 * canonical_index.
uint64_t paper_index(const Configuration& c);

Configuration configuration_from_index(ModelKind k, uint64_t canonical);

/// One boundary element of a model cell.
struct ModelElement {
    int ordinal = 0; // 1-based position in the fixed ordering
    int dim = 0;
    std::vector<int> vertices; // model vertex labels, ascending
    uint32_t vertex_label_mask = 0;
    ConfigMask immediate_face_mask = 0;
    // signed immediate boundary: (face ordinal, +1/-1)
    std::vector<std::pair<int, int>> boundary;
    // cubical kinds only: lattice box relative to the cell's base corner
    std::array<int, 3> lo{0, 0, 0};
    uint8_t extent_axes = 0; // bit a set => element extends along axis a
};

/// Immutable description of one reference cell: the fixed boundary-element
/// ordering, the face lattice, and signed boundary matrices. Construction
/// asserts that consecutive boundary matrices compose to zero.
class ModelCell {
public:
    static const ModelCell& get(ModelKind k);

    ModelKind kind() const { return kind_; }
    int dim() const { return cell_dim(kind_); }
    int element_count() const { return static_cast<int>(elements_.size()); }
    int vertex_count() const { return model_vertex_count(kind_); }

    const std::vector<ModelElement>& elements() const { return elements_; }
    const ModelElement& element(int ordinal) const { return elements_[ordinal - 1]; }

    /// Ordinal of the boundary element spanned by exactly this label set; 0 if
    /// no such element exists (e.g. a cube diagonal).
    int ordinal_of_labels(uint32_t vertex_label_mask) const;
    int ordinal_of_labels(std::span<const int> labels) const;

    /// Lattice offset of a model vertex within the unit cube (cubical kinds).
    std::array<int, 3> corner_offset(int label) const;
    /// Inverse of corner_offset; -1 if the offset is not a corner.
    int corner_label(const std::array<int, 3>& offset) const;

    bool is_closed(ConfigMask mask) const;
    bool is_closed(const Configuration& c) const;
    /// Smallest closed configuration containing `mask`.
    ConfigMask closure(ConfigMask mask) const;

    /// Signed incidence between `elem` and one of its immediate faces
    /// (0 when `face` is not an immediate face of `elem`).
    int incidence(int elem_ordinal, int face_ordinal) const;

private:
    explicit ModelCell(ModelKind k);

    ModelKind kind_;
    std::vector<ModelElement> elements_;
    std::vector<int> ordinal_by_label_mask_; // indexed by vertex_label_mask
    std::array<std::array<int, 3>, 8> corner_offsets_{};
};

/// Order-preserving map from concrete (global) simplex vertices to model
/// labels 0..d. Input must be strictly ascending; duplicates are rejected.
std::vector<std::pair<int64_t, int>> map_concrete_cell(std::span<const int64_t> global_vertex_ids);

/// Corner coordinates of a concrete pixel/voxel at `base`, paired with their
/// model labels under the fixed geometric embedding.
std::vector<std::pair<std::array<int, 3>, int>> map_concrete_cell(ModelKind k,
                                                                  const std::array<int, 3>& base);

} // namespace thincc
