#include "thincc/cell_model.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

namespace thincc {

namespace {

// Boundary-element orderings, one token per element, listed dimension by
// dimension exactly as fixed for the published acyclicity tables. A token is
// the ascending list of model vertex labels spanning the element.
const char* const kSimplex2Order[] = {"0", "1", "2", "01", "02", "12"};

const char* const kSimplex3Order[] = {"0", "1", "2", "3", "01", "02", "03",
                                      "12", "13", "23", "012", "013", "023", "123"};

const char* const kSimplex4Order[] = {
    "0", "1", "2", "3", "4",
    "01", "02", "03", "04", "12", "13", "14", "23", "24", "34",
    "012", "013", "014", "023", "024", "034", "123", "124", "134", "234",
    "0123", "0124", "0134", "0234", "1234"};

const char* const kCube2Order[] = {"0", "1", "2", "3", "01", "02", "13", "23"};

const char* const kCube3Order[] = {
    "0", "1", "2", "3", "4", "5", "6", "7",
    "01", "03", "04", "12", "15", "23", "26", "37", "45", "47", "56", "67",
    "0123", "0145", "0347", "1256", "2367", "4567"};

// Unit-cube corner embedding; labels follow the hexahedron convention
// (bottom ring 0-1-2-3 counterclockwise, top ring 4-5-6-7 above it).
constexpr std::array<std::array<int, 3>, 8> kCube3Corners = {{
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
}};

// Pixel corners, consistent with the edge list 01,02,13,23.
constexpr std::array<std::array<int, 3>, 4> kCube2Corners = {{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
}};

std::span<const char* const> order_tokens(ModelKind k) {
    switch (k) {
        case ModelKind::Simplex2: return kSimplex2Order;
        case ModelKind::Simplex3: return kSimplex3Order;
        case ModelKind::Simplex4: return kSimplex4Order;
        case ModelKind::Cube2: return kCube2Order;
        case ModelKind::Cube3: return kCube3Order;
    }
    return {};
}

std::vector<int> parse_token(const char* tok) {
    std::vector<int> labels;
    for (const char* p = tok; *p; ++p) labels.push_back(*p - '0');
    return labels;
}

} // namespace

const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Simplex2: return "tri";
        case ModelKind::Simplex3: return "tet";
        case ModelKind::Simplex4: return "simp4";
        case ModelKind::Cube2: return "pixel";
        case ModelKind::Cube3: return "voxel";
    }
    return "?";
}

std::optional<ModelKind> kind_from_name(const std::string& name) {
    for (ModelKind k : {ModelKind::Simplex2, ModelKind::Simplex3, ModelKind::Simplex4,
                        ModelKind::Cube2, ModelKind::Cube3}) {
        if (name == kind_name(k)) return k;
    }
    return std::nullopt;
}

Configuration Configuration::from_ordinals(ModelKind k, std::span<const int> ordinals) {
    Configuration c(k, 0);
    const int n = boundary_element_count(k);
    for (int l : ordinals) {
        if (l < 1 || l > n)
            throw UsageError("element ordinal " + std::to_string(l) + " out of range 1.." +
                             std::to_string(n));
        if (c.contains(l))
            throw UsageError("element ordinal " + std::to_string(l) + " listed twice");
        c.add(l);
    }
    return c;
}

Configuration Configuration::from_ordinals(ModelKind k, std::initializer_list<int> ordinals) {
    return from_ordinals(k, std::span<const int>(ordinals.begin(), ordinals.size()));
}

int Configuration::size() const { return std::popcount(mask); }

std::vector<int> Configuration::ordinals() const {
    std::vector<int> out;
    for (ConfigMask m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

uint64_t canonical_index(const Configuration& c) { return c.mask; }

uint64_t paper_index(const Configuration& c) { return uint64_t{c.mask} << 1; }

Configuration configuration_from_index(ModelKind k, uint64_t canonical) {
    const uint64_t limit = uint64_t{1} << boundary_element_count(k);
    if (canonical >= limit)
        throw UsageError("configuration index " + std::to_string(canonical) +
                         " out of range for " + kind_name(k));
    return Configuration(k, static_cast<ConfigMask>(canonical));
}

ModelCell::ModelCell(ModelKind k) : kind_(k) {
    const bool cubical = is_cubical(k);
    const auto tokens = order_tokens(k);

    const auto& corners = (k == ModelKind::Cube2)
                              ? std::span<const std::array<int, 3>>(kCube2Corners)
                              : std::span<const std::array<int, 3>>(kCube3Corners);
    if (cubical) {
        for (int v = 0; v < vertex_count(); ++v) corner_offsets_[v] = corners[v];
    }

    ordinal_by_label_mask_.assign(size_t{1} << vertex_count(), 0);
    std::map<std::vector<int>, int> ordinal_by_labels;

    for (size_t i = 0; i < tokens.size(); ++i) {
        ModelElement e;
        e.ordinal = static_cast<int>(i) + 1;
        e.vertices = parse_token(tokens[i]);
        for (int v : e.vertices) e.vertex_label_mask |= 1u << v;

        if (!cubical) {
            e.dim = static_cast<int>(e.vertices.size()) - 1;
        } else {
            std::array<int, 3> lo{9, 9, 9}, hi{0, 0, 0};
            for (int v : e.vertices) {
                for (int a = 0; a < 3; ++a) {
                    lo[a] = std::min(lo[a], corners[v][a]);
                    hi[a] = std::max(hi[a], corners[v][a]);
                }
            }
            e.lo = lo;
            e.dim = 0;
            for (int a = 0; a < 3; ++a) {
                if (hi[a] > lo[a]) {
                    e.extent_axes |= uint8_t{1} << a;
                    ++e.dim;
                }
            }
            // the label set must be exactly the box corners
            if (std::popcount(e.vertex_label_mask) != (1 << e.dim))
                throw InvariantViolation("model element is not a lattice box");
        }

        ordinal_by_labels[e.vertices] = e.ordinal;
        ordinal_by_label_mask_[e.vertex_label_mask] = e.ordinal;
        elements_.push_back(std::move(e));
    }

    if (static_cast<int>(elements_.size()) != boundary_element_count(k))
        throw InvariantViolation("model element count mismatch");

    // immediate faces with signs
    for (ModelElement& e : elements_) {
        if (e.dim == 0) continue;
        if (!cubical) {
            // alternating signs over ascending vertex labels
            for (size_t i = 0; i < e.vertices.size(); ++i) {
                std::vector<int> face = e.vertices;
                face.erase(face.begin() + static_cast<long>(i));
                const int o = ordinal_by_labels.at(face);
                e.boundary.emplace_back(o, (i % 2 == 0) ? 1 : -1);
            }
        } else {
            // interval (tensor-product) sign rule over the extended axes
            int sign = 1;
            for (int a = 0; a < 3; ++a) {
                if (!(e.extent_axes >> a & 1)) continue;
                for (int side = 1; side >= 0; --side) {
                    const int coord = e.lo[a] + side;
                    uint32_t face_mask = 0;
                    for (int v : e.vertices)
                        if (corner_offsets_[v][a] == coord) face_mask |= 1u << v;
                    const int o = ordinal_by_label_mask_[face_mask];
                    if (o == 0) throw InvariantViolation("cube face not in element list");
                    e.boundary.emplace_back(o, side ? sign : -sign);
                }
                sign = -sign;
            }
        }
        for (const auto& [o, s] : e.boundary) e.immediate_face_mask |= ConfigMask{1} << (o - 1);
    }

    // d(d(x)) = 0 gate over the whole lattice
    for (const ModelElement& e : elements_) {
        std::map<int, long> acc;
        for (const auto& [f, s] : e.boundary)
            for (const auto& [g, t] : elements_[f - 1].boundary) acc[g] += long{s} * t;
        for (const auto& [g, v] : acc)
            if (v != 0) throw InvariantViolation("boundary of boundary nonzero in model");
    }
}

const ModelCell& ModelCell::get(ModelKind k) {
    static std::once_flag flags[5];
    static std::unique_ptr<ModelCell> cells[5];
    const auto i = static_cast<size_t>(k);
    std::call_once(flags[i], [&] { cells[i].reset(new ModelCell(k)); });
    return *cells[i];
}

int ModelCell::ordinal_of_labels(uint32_t vertex_label_mask) const {
    if (vertex_label_mask >= ordinal_by_label_mask_.size()) return 0;
    return ordinal_by_label_mask_[vertex_label_mask];
}

int ModelCell::ordinal_of_labels(std::span<const int> labels) const {
    uint32_t m = 0;
    for (int v : labels) m |= 1u << v;
    return ordinal_of_labels(m);
}

std::array<int, 3> ModelCell::corner_offset(int label) const { return corner_offsets_[label]; }

int ModelCell::corner_label(const std::array<int, 3>& offset) const {
    for (int v = 0; v < vertex_count(); ++v)
        if (corner_offsets_[v] == offset) return v;
    return -1;
}

bool ModelCell::is_closed(ConfigMask mask) const {
    for (ConfigMask m = mask; m; m &= m - 1) {
        const int l = std::countr_zero(m);
        if (elements_[l].immediate_face_mask & ~mask) return false;
    }
    return true;
}

bool ModelCell::is_closed(const Configuration& c) const {
    if (c.kind != kind_) throw KindMismatchError("configuration kind does not match model");
    return is_closed(c.mask);
}

ConfigMask ModelCell::closure(ConfigMask mask) const {
    ConfigMask out = mask;
    // ordinals are sorted by dimension, so one high-to-low sweep suffices
    for (int l = element_count(); l >= 1; --l)
        if (out >> (l - 1) & 1) out |= elements_[l - 1].immediate_face_mask;
    return out;
}

int ModelCell::incidence(int elem_ordinal, int face_ordinal) const {
    for (const auto& [o, s] : elements_[elem_ordinal - 1].boundary)
        if (o == face_ordinal) return s;
    return 0;
}

std::vector<std::pair<int64_t, int>> map_concrete_cell(std::span<const int64_t> global_vertex_ids) {
    std::vector<std::pair<int64_t, int>> out;
    out.reserve(global_vertex_ids.size());
    int64_t prev = 0;
    for (size_t i = 0; i < global_vertex_ids.size(); ++i) {
        const int64_t id = global_vertex_ids[i];
        if (i > 0 && id == prev)
            throw UsageError("malformed cell: duplicate vertex id " + std::to_string(id));
        if (i > 0 && id < prev)
            throw UsageError("malformed cell: vertex ids must be ascending");
        out.emplace_back(id, static_cast<int>(i));
        prev = id;
    }
    return out;
}

std::vector<std::pair<std::array<int, 3>, int>> map_concrete_cell(ModelKind k,
                                                                  const std::array<int, 3>& base) {
    if (!is_cubical(k)) throw UsageError("lattice mapping requested for a simplicial kind");
    const ModelCell& m = ModelCell::get(k);
    std::vector<std::pair<std::array<int, 3>, int>> out;
    out.reserve(static_cast<size_t>(m.vertex_count()));
    for (int v = 0; v < m.vertex_count(); ++v) {
        const auto off = m.corner_offset(v);
        out.push_back({{base[0] + off[0], base[1] + off[1], base[2] + off[2]}, v});
    }
    return out;
}

} // namespace thincc
