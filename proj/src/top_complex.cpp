#include "thincc/top_complex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

namespace thincc {

namespace {

std::string tuple_to_string(const std::vector<int64_t>& t) {
    std::string s = "[";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(t[i]);
    }
    return s + "]";
}

// every nonempty sub-tuple of a sorted tuple
template <typename Fn>
void for_each_subtuple(const std::vector<int64_t>& t, Fn&& fn) {
    const uint32_t full = (uint32_t{1} << t.size()) - 1;
    std::vector<int64_t> sub;
    for (uint32_t m = 1; m <= full; ++m) {
        sub.clear();
        for (size_t i = 0; i < t.size(); ++i)
            if (m >> i & 1) sub.push_back(t[i]);
        fn(sub);
    }
}

uint64_t pack_element(uint8_t extent_axes, const std::array<int, 3>& lo) {
    return uint64_t{extent_axes} | (uint64_t{static_cast<uint32_t>(lo[0])} << 4) |
           (uint64_t{static_cast<uint32_t>(lo[1])} << 24) |
           (uint64_t{static_cast<uint32_t>(lo[2])} << 44);
}

} // namespace

TopCellComplex TopCellComplex::build_simplicial(ModelKind kind,
                                                std::vector<std::vector<int64_t>> cells,
                                                std::vector<std::vector<int64_t>> anchor_faces) {
    if (is_cubical(kind))
        throw UsageError("simplicial builder invoked with a cubical model kind");
    const ModelCell& model = ModelCell::get(kind);
    const size_t arity = static_cast<size_t>(model.vertex_count());

    TopCellComplex x;
    x.kind_ = kind;
    x.cells_ = std::move(cells);
    x.alive_.assign(x.cells_.size(), 1);
    x.alive_count_ = static_cast<CellId>(x.cells_.size());

    TupleSet seen;
    for (size_t t = 0; t < x.cells_.size(); ++t) {
        const auto& tv = x.cells_[t];
        if (tv.size() != arity)
            throw UsageError("cell " + tuple_to_string(tv) + " has " + std::to_string(tv.size()) +
                             " vertices, " + kind_name(kind) + " needs " + std::to_string(arity));
        map_concrete_cell(tv);  // validates sortedness and distinctness
        if (!seen.insert(tv).second)
            throw UsageError("duplicate cell " + tuple_to_string(tv));

        for (int64_t v : tv) x.vertex_index_[v].push_back(static_cast<CellId>(t));
        std::vector<int64_t> facet(arity - 1);
        for (size_t drop = 0; drop < arity; ++drop) {
            size_t k = 0;
            for (size_t i = 0; i < arity; ++i)
                if (i != drop) facet[k++] = tv[i];
            x.face_index_[facet].push_back(static_cast<CellId>(t));
        }
    }

    for (const auto& [facet, cofaces] : x.face_index_)
        if (cofaces.size() == 1)
            for_each_subtuple(facet, [&](const std::vector<int64_t>& sub) {
                x.boundary_closure_.insert(sub);
            });

    std::vector<std::vector<int64_t>> anchored_elements;
    for (auto& a : anchor_faces) {
        std::sort(a.begin(), a.end());
        auto it = x.face_index_.find(a);
        if (it == x.face_index_.end() || it->second.size() != 1)
            throw UsageError("anchor face " + tuple_to_string(a) +
                             " is not on the external boundary of the mesh");
        for_each_subtuple(a, [&](const std::vector<int64_t>& sub) {
            if (x.anchor_closure_.insert(sub).second) anchored_elements.push_back(sub);
        });
    }
    x.has_anchors_ = !x.anchor_closure_.empty();

    x.anchor_carrier_count_.assign(anchored_elements.size(), 0);
    for (size_t t = 0; t < x.cells_.size(); ++t) {
        const auto& tv = x.cells_[t];
        for (uint32_t i = 0; i < anchored_elements.size(); ++i) {
            const auto& e = anchored_elements[i];
            if (std::includes(tv.begin(), tv.end(), e.begin(), e.end())) {
                ++x.anchor_carrier_count_[i];
                x.anchored_cells_[static_cast<CellId>(t)].push_back(i);
            }
        }
    }
    return x;
}

TopCellComplex TopCellComplex::build_cubical(ModelKind kind, int nx, int ny, int nz,
                                             const std::vector<uint8_t>& present,
                                             std::vector<LatticeFaceKey> anchor_faces) {
    if (!is_cubical(kind))
        throw UsageError("cubical builder invoked with a simplicial model kind");
    const int top_d = cell_dim(kind);
    if (top_d == 2 && nz != 1)
        throw UsageError("pixel grids must have nz = 1");
    if (nx < 1 || ny < 1 || nz < 1)
        throw UsageError("grid dimensions must be positive");
    if (present.size() != static_cast<size_t>(nx) * ny * nz)
        throw UsageError("occupancy array size does not match grid dimensions");

    TopCellComplex x;
    x.kind_ = kind;
    x.dims_ = {nx, ny, nz};
    x.grid_.assign(present.size(), -1);
    for (size_t i = 0; i < present.size(); ++i) {
        if (!present[i]) continue;
        const int xi = static_cast<int>(i) % nx;
        const int yi = static_cast<int>(i) / nx % ny;
        const int zi = static_cast<int>(i) / (nx * ny);
        x.grid_[i] = static_cast<CellId>(x.coords_.size());
        x.coords_.push_back({xi, yi, zi});
    }
    x.alive_.assign(x.coords_.size(), 1);
    x.alive_count_ = static_cast<CellId>(x.coords_.size());

    // Positions whose death (absence or removal) pulls boundary elements of a
    // cell into C(T): an element is witnessed by every lattice position whose
    // cube contains it, except the cell's own.
    const ModelCell& model = ModelCell::get(kind);
    std::map<std::array<int, 3>, ConfigMask> probes;
    for (int l = 1; l <= model.element_count(); ++l) {
        const ModelElement& e = model.element(l);
        std::vector<std::array<int, 3>> offs{{0, 0, 0}};
        for (int a = 0; a < top_d; ++a) {
            std::vector<std::array<int, 3>> next;
            for (auto o : offs) {
                if (e.extent_axes >> a & 1) {
                    o[a] = e.lo[a];
                    next.push_back(o);
                } else {
                    for (int c : {e.lo[a] - 1, e.lo[a]}) {
                        o[a] = c;
                        next.push_back(o);
                    }
                }
            }
            offs = std::move(next);
        }
        for (const auto& o : offs)
            if (o != std::array<int, 3>{0, 0, 0}) probes[o] |= ConfigMask{1} << (l - 1);
    }
    for (const auto& [off, mask] : probes) {
        x.probe_offsets_.push_back(off);
        x.probe_masks_.push_back(mask);
    }

    std::vector<std::pair<uint8_t, std::array<int, 3>>> anchored_elements;
    for (const auto& key : anchor_faces) {
        if (key.axis < 0 || key.axis >= top_d)
            throw UsageError("anchor face axis " + std::to_string(key.axis) + " out of range");
        const auto& c = key.min_corner;
        auto present_at = [&](std::array<int, 3> p) {
            if (p[0] < 0 || p[0] >= nx || p[1] < 0 || p[1] >= ny || p[2] < 0 || p[2] >= nz)
                return false;
            return x.grid_[static_cast<size_t>(p[0]) + static_cast<size_t>(nx) * (p[1] + static_cast<size_t>(ny) * p[2])] >= 0;
        };
        std::array<int, 3> upper = c, lower = c;
        lower[key.axis] -= 1;
        if (present_at(upper) == present_at(lower))
            throw UsageError("anchor face (axis " + std::to_string(key.axis) + ", corner " +
                             std::to_string(c[0]) + " " + std::to_string(c[1]) + " " +
                             std::to_string(c[2]) + ") is not on the external boundary");

        // the facet plus all of its subfaces
        uint8_t facet_ext = 0;
        for (int a = 0; a < top_d; ++a)
            if (a != key.axis) facet_ext |= uint8_t{1} << a;
        for (uint8_t sub = 0;; ++sub) {
            if ((sub & facet_ext) == sub) {
                const uint8_t dropped = facet_ext & ~sub;
                std::vector<std::array<int, 3>> los{c};
                for (int a = 0; a < 3; ++a) {
                    if (!(dropped >> a & 1)) continue;
                    std::vector<std::array<int, 3>> next;
                    for (auto lo : los)
                        for (int side : {0, 1}) {
                            auto p = lo;
                            p[a] += side;
                            next.push_back(p);
                        }
                    los = std::move(next);
                }
                for (const auto& lo : los)
                    if (x.anchor_elements_.insert(pack_element(sub, lo)).second)
                        anchored_elements.emplace_back(sub, lo);
            }
            if (sub == facet_ext) break;
        }
    }
    x.has_anchors_ = !x.anchor_elements_.empty();

    x.anchor_carrier_count_.assign(anchored_elements.size(), 0);
    for (uint32_t i = 0; i < anchored_elements.size(); ++i) {
        const auto& [ext, lo] = anchored_elements[i];
        // positions whose closed unit cube contains the element
        std::vector<std::array<int, 3>> positions{lo};
        for (int a = 0; a < 3; ++a) {
            if (ext >> a & 1) continue;
            std::vector<std::array<int, 3>> next;
            for (auto p : positions)
                for (int d : {-1, 0}) {
                    p[a] = lo[a] + d;
                    next.push_back(p);
                }
            positions = std::move(next);
        }
        for (const auto& p : positions) {
            if (p[0] < 0 || p[0] >= nx || p[1] < 0 || p[1] >= ny || p[2] < 0 || p[2] >= nz)
                continue;
            const CellId id = x.grid_[static_cast<size_t>(p[0]) +
                                      static_cast<size_t>(nx) *
                                          (p[1] + static_cast<size_t>(ny) * p[2])];
            if (id < 0) continue;
            ++x.anchor_carrier_count_[i];
            x.anchored_cells_[id].push_back(i);
        }
    }
    return x;
}

bool TopCellComplex::lattice_alive(int px, int py, int pz) const {
    if (px < 0 || px >= dims_[0] || py < 0 || py >= dims_[1] || pz < 0 || pz >= dims_[2])
        return false;
    const CellId id = grid_[static_cast<size_t>(px) +
                            static_cast<size_t>(dims_[0]) * (py + static_cast<size_t>(dims_[1]) * pz)];
    return id >= 0 && alive_[static_cast<size_t>(id)];
}

ConfigMask TopCellComplex::extract_configuration(CellId t) const {
    if (!is_alive(t))
        throw InvariantViolation("configuration requested for a removed cell");
    const ConfigMask mask = cubical() ? extract_cubical(t) : extract_simplicial(t);
    if (!has_anchors_ && !ModelCell::get(kind_).is_closed(mask))
        throw InvariantViolation("extracted configuration is not closed");
    return mask;
}

ConfigMask TopCellComplex::extract_simplicial(CellId t) const {
    const ModelCell& model = ModelCell::get(kind_);
    const auto& tv = cells_[static_cast<size_t>(t)];

    ConfigMask mask = 0;
    std::vector<int64_t> g;
    for (int l = 1; l <= model.element_count(); ++l) {
        const ModelElement& e = model.element(l);
        g.clear();
        for (int label : e.vertices) g.push_back(tv[static_cast<size_t>(label)]);

        if (has_anchors_ && anchor_closure_.contains(g)) continue;

        bool in_c = boundary_closure_.contains(g);
        if (!in_c) {
            for (CellId u : vertex_index_.at(g[0])) {
                if (alive_[static_cast<size_t>(u)]) continue;
                const auto& uv = cells_[static_cast<size_t>(u)];
                if (std::includes(uv.begin(), uv.end(), g.begin(), g.end())) {
                    in_c = true;
                    break;
                }
            }
        }
        if (in_c) mask |= ConfigMask{1} << (l - 1);
    }
    return mask;
}

ConfigMask TopCellComplex::extract_cubical(CellId t) const {
    const auto& base = coords_[static_cast<size_t>(t)];
    ConfigMask mask = 0;
    for (size_t i = 0; i < probe_offsets_.size(); ++i) {
        const auto& o = probe_offsets_[i];
        if (!lattice_alive(base[0] + o[0], base[1] + o[1], base[2] + o[2]))
            mask |= probe_masks_[i];
    }
    if (has_anchors_ && mask) {
        const ModelCell& model = ModelCell::get(kind_);
        for (ConfigMask m = mask; m; m &= m - 1) {
            const int l = std::countr_zero(m) + 1;
            const ModelElement& e = model.element(l);
            const std::array<int, 3> lo{base[0] + e.lo[0], base[1] + e.lo[1], base[2] + e.lo[2]};
            if (anchor_elements_.contains(pack_element(e.extent_axes, lo)))
                mask &= ~(ConfigMask{1} << (l - 1));
        }
    }
    return mask;
}

void TopCellComplex::remove(CellId t) {
    if (!is_alive(t))
        throw InvariantViolation("cell " + std::to_string(t) + " removed twice");
    alive_[static_cast<size_t>(t)] = 0;
    --alive_count_;
    if (has_anchors_) {
        const auto it = anchored_cells_.find(t);
        if (it != anchored_cells_.end())
            for (uint32_t i : it->second) --anchor_carrier_count_[static_cast<size_t>(i)];
    }
}

bool TopCellComplex::anchor_pinned(CellId t) const {
    if (!has_anchors_) return false;
    const auto it = anchored_cells_.find(t);
    if (it == anchored_cells_.end()) return false;
    for (uint32_t i : it->second)
        if (anchor_carrier_count_[static_cast<size_t>(i)] == 1) return true;
    return false;
}

void TopCellComplex::neighbors(CellId t, std::vector<CellId>& out) const {
    out.clear();
    if (cubical()) {
        const auto& c = coords_[static_cast<size_t>(t)];
        const int zr = cell_dim(kind_) == 2 ? 0 : 1;
        for (int dz = -zr; dz <= zr; ++dz)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0 && dz == 0) continue;
                    const int px = c[0] + dx, py = c[1] + dy, pz = c[2] + dz;
                    if (!lattice_alive(px, py, pz)) continue;
                    out.push_back(grid_[static_cast<size_t>(px) +
                                        static_cast<size_t>(dims_[0]) *
                                            (py + static_cast<size_t>(dims_[1]) * pz)]);
                }
        return;
    }
    for (int64_t v : cells_[static_cast<size_t>(t)])
        for (CellId u : vertex_index_.at(v))
            if (u != t && alive_[static_cast<size_t>(u)]) out.push_back(u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::vector<CellId> TopCellComplex::neighbors(CellId t) const {
    std::vector<CellId> out;
    neighbors(t, out);
    return out;
}

bool TopCellComplex::has_current_boundary_facet(CellId t) const {
    if (cubical()) {
        const auto& c = coords_[static_cast<size_t>(t)];
        for (int a = 0; a < cell_dim(kind_); ++a)
            for (int dir : {-1, 1}) {
                auto p = c;
                p[a] += dir;
                if (!lattice_alive(p[0], p[1], p[2])) return true;
            }
        return false;
    }
    const auto& tv = cells_[static_cast<size_t>(t)];
    std::vector<int64_t> facet(tv.size() - 1);
    for (size_t drop = 0; drop < tv.size(); ++drop) {
        size_t k = 0;
        for (size_t i = 0; i < tv.size(); ++i)
            if (i != drop) facet[k++] = tv[i];
        int alive = 0;
        for (CellId u : face_index_.at(facet))
            if (alive_[static_cast<size_t>(u)]) ++alive;
        if (alive == 1) return true;
    }
    return false;
}

const std::vector<std::vector<int64_t>>& TopCellComplex::simplicial_cells() const {
    if (cubical()) throw InvariantViolation("simplicial cells requested from a cubical complex");
    return cells_;
}

const std::vector<std::array<int, 3>>& TopCellComplex::cubical_cells() const {
    if (!cubical()) throw InvariantViolation("cubical cells requested from a simplicial complex");
    return coords_;
}

std::array<int, 3> TopCellComplex::grid_dims() const {
    if (!cubical()) throw InvariantViolation("grid dimensions requested from a simplicial complex");
    return dims_;
}

FacetStats TopCellComplex::facet_stats() const {
    FacetStats s;
    if (!cubical()) {
        for (const auto& [facet, cofaces] : face_index_) {
            ++s.total;
            if (cofaces.size() == 1)
                ++s.boundary;
            else if (cofaces.size() == 2)
                ++s.shared;
            else
                ++s.nonmanifold;
        }
        return s;
    }
    for (const auto& c : coords_) {
        for (int a = 0; a < cell_dim(kind_); ++a) {
            for (int dir : {-1, 1}) {
                auto p = c;
                p[a] += dir;
                const bool neighbor_present =
                    !(p[0] < 0 || p[0] >= dims_[0] || p[1] < 0 || p[1] >= dims_[1] || p[2] < 0 ||
                      p[2] >= dims_[2]) &&
                    grid_[static_cast<size_t>(p[0]) +
                          static_cast<size_t>(dims_[0]) * (p[1] + static_cast<size_t>(dims_[1]) * p[2])] >= 0;
                if (!neighbor_present)
                    ++s.boundary;
                else if (dir == 1)
                    ++s.shared;  // interior facet counted from its lower cell only
            }
        }
    }
    s.total = s.boundary + s.shared;
    return s;
}

} // namespace thincc
