#pragma once
// Shared test fixtures: small meshes and occupancy grids with known
// homology, file helpers, and cross-check oracles that deliberately avoid
// the library's Smith-normal-form code path (union-find components, mod-p
// Gaussian elimination).

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/homology.hpp"

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

namespace fixtures {

using Cells = std::vector<std::vector<int64_t>>;

// ---------------------------------------------------------------------------
// Triangle meshes
// ---------------------------------------------------------------------------

// n triangles around a hub vertex; a disk, Betti (1,0,0).
inline Cells fan_disk(int n) {
    Cells cells;
    for (int i = 0; i < n; ++i) {
        std::vector<int64_t> t{0, 1 + i, 1 + (i + 1) % n};
        std::sort(t.begin(), t.end());
        cells.push_back(std::move(t));
    }
    return cells;
}

// 2n triangles between an inner and an outer vertex ring; Betti (1,1,0).
inline Cells annulus(int n) {
    Cells cells;
    for (int i = 0; i < n; ++i) {
        const int64_t i0 = i, i1 = (i + 1) % n;
        const int64_t o0 = 100 + i, o1 = 100 + (i + 1) % n;
        std::vector<int64_t> a{i0, i1, o0}, b{i1, o0, o1};
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        cells.push_back(std::move(a));
        cells.push_back(std::move(b));
    }
    return cells;
}

// m quads in a row, each split into two triangles; Betti (1,0,0).
// Bottom vertices are 0..m, top vertices 100..100+m.
inline Cells strip(int m) {
    Cells cells;
    for (int i = 0; i < m; ++i) {
        const int64_t a0 = i, a1 = i + 1, b0 = 100 + i, b1 = 100 + i + 1;
        std::vector<int64_t> s{a0, a1, b0}, t{a1, b0, b1};
        std::sort(s.begin(), s.end());
        std::sort(t.begin(), t.end());
        cells.push_back(std::move(s));
        cells.push_back(std::move(t));
    }
    return cells;
}

// m quads closed into a band with one half twist; Betti (1,1,0),
// torsion-free, single boundary circle. Needs m >= 4.
inline Cells moebius(int m) {
    auto col = [m](int i) -> std::pair<int64_t, int64_t> {
        if (i < m) return {i, 100 + i};
        return {100, 0};  // the twist: bottom edge continues into the top row
    };
    Cells cells;
    for (int i = 0; i < m; ++i) {
        auto [a0, b0] = col(i);
        auto [a1, b1] = col(i + 1);
        std::vector<int64_t> s{a0, a1, b0}, t{a1, b0, b1};
        std::sort(s.begin(), s.end());
        std::sort(t.begin(), t.end());
        cells.push_back(std::move(s));
        cells.push_back(std::move(t));
    }
    return cells;
}

// Minimal 6-vertex triangulation of the projective plane: Betti (1,0,0)
// with 2-torsion in H1. Every one of the 15 edges lies in exactly 2 faces.
inline Cells projective_plane() {
    return Cells{{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
                 {2, 3, 5}, {3, 4, 6}, {2, 4, 5}, {3, 5, 6}, {2, 4, 6}};
}

// ---------------------------------------------------------------------------
// Tetrahedral meshes (each lattice cube split into 6 path tetrahedra; the
// subdivision is translation invariant, so neighboring cubes agree on the
// shared square's diagonal)
// ---------------------------------------------------------------------------

inline int64_t lattice_vertex(int x, int y, int z) {
    return int64_t{x} * 10000 + y * 100 + z;
}

inline void append_cube_tets(Cells& out, int cx, int cy, int cz) {
    static const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& perm : perms) {
        std::array<int, 3> p{cx, cy, cz};
        std::vector<int64_t> tet{lattice_vertex(p[0], p[1], p[2])};
        for (int axis : perm) {
            p[static_cast<size_t>(axis)] += 1;
            tet.push_back(lattice_vertex(p[0], p[1], p[2]));
        }
        std::sort(tet.begin(), tet.end());
        out.push_back(std::move(tet));
    }
}

inline Cells tet_block(int nx, int ny, int nz,
                       const std::set<std::array<int, 3>>& skip = {}) {
    Cells cells;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                if (!skip.count({x, y, z})) append_cube_tets(cells, x, y, z);
    return cells;
}

// 48 tetrahedra filling a 2x2x2 cube block; Betti (1,0,0,0).
inline Cells tet_ball() { return tet_block(2, 2, 2); }

// 48 tetrahedra in a 3x3x1 block with the middle cube missing; a solid
// ring, Betti (1,1,0,0).
inline Cells tet_ring() { return tet_block(3, 3, 1, {{1, 1, 0}}); }

// ---------------------------------------------------------------------------
// Occupancy grids
// ---------------------------------------------------------------------------

struct Grid {
    int nx = 0, ny = 0, nz = 1;
    std::vector<uint8_t> present;  // x fastest, then y, then z

    size_t index(int x, int y, int z) const {
        return static_cast<size_t>((z * ny + y) * nx + x);
    }
};

inline Grid solid_grid(int nx, int ny, int nz) {
    Grid g{nx, ny, nz, std::vector<uint8_t>(static_cast<size_t>(nx) * ny * nz, 1)};
    return g;
}

// Digital ball: positions within squared distance r2 of the center of an
// n^3 grid. For n = 9, r2 = 16 this is a 257-voxel ball, Betti (1,0,0,0).
inline Grid ball_grid(int n, int r2) {
    Grid g{n, n, n, std::vector<uint8_t>(static_cast<size_t>(n) * n * n, 0)};
    const int c = n / 2;
    for (int z = 0; z < n; ++z)
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                const int dx = x - c, dy = y - c, dz = z - c;
                if (dx * dx + dy * dy + dz * dz <= r2) g.present[g.index(x, y, z)] = 1;
            }
    return g;
}

// 3x3 block with the center missing: 8 cells forming a ring. As a voxel
// grid (nz = 1 handed to the voxel model) this is a solid torus,
// Betti (1,1,0,0); as a pixel grid it is an annulus, Betti (1,1,0).
inline Grid ring_grid() {
    Grid g = solid_grid(3, 3, 1);
    g.present[g.index(1, 1, 0)] = 0;
    return g;
}

// ---------------------------------------------------------------------------
// Independent homology oracles (no Smith normal form)
// ---------------------------------------------------------------------------

// Number of path components of a closed configuration, by union-find over
// its elements (each element touches its immediate faces).
inline int component_count(thincc::ModelKind kind, thincc::ConfigMask mask) {
    const auto& model = thincc::ModelCell::get(kind);
    const int n = model.element_count();
    std::vector<int> parent(static_cast<size_t>(n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[parent[static_cast<size_t>(v)]];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    for (int l = 1; l <= n; ++l) {
        if (!((mask >> (l - 1)) & 1u)) continue;
        for (const auto& [face, sign] : model.element(l).boundary) {
            (void)sign;
            parent[static_cast<size_t>(find(l))] = find(face);
        }
    }
    int components = 0;
    for (int l = 1; l <= n; ++l)
        if (((mask >> (l - 1)) & 1u) && find(l) == l) ++components;
    return components;
}

// Rank of an integer matrix over GF(p) by plain Gaussian elimination.
inline int rank_mod_p(const thincc::IntMatrix& m, int p) {
    std::vector<std::vector<int>> a(static_cast<size_t>(m.rows),
                                    std::vector<int>(static_cast<size_t>(m.cols)));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            a[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                static_cast<int>(((m.at(r, c) % p) + p) % p);
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(pivot)]);
        // scale pivot row to 1 (p is prime; find the inverse by scan)
        const int pv = a[static_cast<size_t>(rank)][static_cast<size_t>(c)];
        int inv = 1;
        while ((pv * inv) % p != 1) ++inv;
        for (int cc = c; cc < m.cols; ++cc)
            a[static_cast<size_t>(rank)][static_cast<size_t>(cc)] =
                a[static_cast<size_t>(rank)][static_cast<size_t>(cc)] * inv % p;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank) continue;
            const int f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int cc = c; cc < m.cols; ++cc)
                a[static_cast<size_t>(r)][static_cast<size_t>(cc)] =
                    ((a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -
                      f * a[static_cast<size_t>(rank)][static_cast<size_t>(cc)]) %
                         p +
                     p) %
                    p;
        }
        ++rank;
    }
    return rank;
}

// Betti numbers of a chain complex over GF(p).
inline std::vector<int> betti_mod_p(const thincc::ChainComplex& c, int p) {
    std::vector<int> ranks(c.boundary.size() + 1, 0);
    for (size_t d = 0; d < c.boundary.size(); ++d)
        ranks[d] = rank_mod_p(c.boundary[d], p);
    std::vector<int> betti(c.dims.size());
    for (size_t d = 0; d < c.dims.size(); ++d) {
        const int below = d == 0 ? 0 : ranks[d - 1];
        const int above = d < c.boundary.size() ? ranks[d] : 0;
        betti[d] = c.dims[d] - below - above;
    }
    return betti;
}

// Mod-p acyclicity verdict: one component (union-find) and trivial reduced
// homology over GF(2), GF(3), and GF(5). Agrees with integer acyclicity
// unless a configuration hides torsion at a prime above 5 — the exhaustive
// comparison tests would surface such a disagreement loudly.
inline bool acyclic_by_modp(const thincc::Configuration& config) {
    if (config.mask == 0) return false;
    if (fixtures::component_count(config.kind, config.mask) != 1) return false;
    const thincc::ChainComplex cc = thincc::configuration_complex(config);
    for (int p : {2, 3, 5}) {
        const std::vector<int> b = betti_mod_p(cc, p);
        if (b[0] != 1) return false;
        for (size_t d = 1; d < b.size(); ++d)
            if (b[d] != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Scratch directories and data files
// ---------------------------------------------------------------------------

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        const int id = counter.fetch_add(1);
#ifdef _WIN32
        const int pid = _getpid();
#else
        const int pid = static_cast<int>(::getpid());
#endif
        path_ = std::filesystem::temp_directory_path() /
                ("thincc-test-" + std::to_string(pid) + "-" + std::to_string(id));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes <stem>.node / <stem>.ele for a mesh, synthesizing coordinates from
// the vertex ids (x = id mod 100, y = id / 100 mod 100, z = id / 10000 —
// the inverse of lattice_vertex, and harmless for small ids).
inline std::pair<std::filesystem::path, std::filesystem::path> write_node_ele(
    const TempDir& dir, const std::string& stem, const Cells& cells) {
    std::set<int64_t> verts;
    size_t arity = 0;
    for (const auto& c : cells) {
        arity = c.size();
        verts.insert(c.begin(), c.end());
    }
    const auto node_path = dir.file(stem + ".node");
    const auto ele_path = dir.file(stem + ".ele");
    {
        std::ofstream out(node_path, std::ios::trunc);
        out << verts.size() << " 3 0 0\n";
        for (int64_t v : verts)
            out << v << " " << v % 100 << " " << v / 100 % 100 << " " << v / 10000 << "\n";
    }
    {
        std::ofstream out(ele_path, std::ios::trunc);
        out << cells.size() << " " << arity << " 0\n";
        size_t id = 0;
        for (const auto& c : cells) {
            out << id++;
            for (int64_t v : c) out << " " << v;
            out << "\n";
        }
    }
    return {node_path, ele_path};
}

inline std::filesystem::path write_vox(const TempDir& dir, const std::string& name,
                                       const Grid& g) {
    const auto p = dir.file(name);
    std::ofstream out(p, std::ios::trunc);
    out << "VOX " << g.nx << " " << g.ny << " " << g.nz << "\n";
    for (size_t i = 0; i < g.present.size(); ++i)
        out << int(g.present[i]) << ((i + 1) % 16 == 0 ? "\n" : " ");
    out << "\n";
    return p;
}

}  // namespace fixtures
