#include "thincc/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>
#include <unordered_set>

namespace thincc {

namespace {

void check_scale(size_t n) {
    if (n > kVerifyCellLimit)
        throw UsageError("full-complex verification is limited to " +
                         std::to_string(kVerifyCellLimit) + " top cells; this input has " +
                         std::to_string(n));
}

// The boundary matrices are dense; refuse sizes that would not fit in memory.
void check_matrix_budget(const std::vector<int>& dims) {
    uint64_t entries = 0;
    for (size_t d = 1; d < dims.size(); ++d)
        entries += static_cast<uint64_t>(dims[d - 1]) * static_cast<uint64_t>(dims[d]);
    if (entries > 250'000'000)
        throw UsageError("dense homology verification would need " + std::to_string(entries) +
                         " matrix entries; certify a smaller input");
}

// global cubical element: extent-axis bits plus minimal lattice corner
using BoxKey = std::array<int, 4>;

BoxKey box_key(uint8_t ext, const std::array<int, 3>& lo) {
    return {static_cast<int>(ext), lo[0], lo[1], lo[2]};
}

} // namespace

ChainComplex full_complex(ModelKind kind, const std::vector<std::vector<int64_t>>& cells) {
    if (is_cubical(kind))
        throw UsageError("simplicial verification invoked with a cubical model kind");
    check_scale(cells.size());
    const int D = cell_dim(kind);

    // every nonempty sub-tuple of every cell, deduplicated per dimension;
    // ordered maps pin the index assignment independently of input order
    std::vector<std::map<std::vector<int64_t>, int>> faces(static_cast<size_t>(D) + 1);
    std::vector<int64_t> sub;
    for (const auto& tv : cells) {
        if (tv.size() != static_cast<size_t>(D) + 1 || !std::is_sorted(tv.begin(), tv.end()) ||
            std::adjacent_find(tv.begin(), tv.end()) != tv.end())
            throw UsageError("malformed cell tuple in verification input");
        const uint32_t full = (uint32_t{1} << tv.size()) - 1;
        for (uint32_t m = 1; m <= full; ++m) {
            sub.clear();
            for (size_t i = 0; i < tv.size(); ++i)
                if (m >> i & 1) sub.push_back(tv[i]);
            faces[sub.size() - 1][sub] = 0;
        }
    }

    ChainComplex out;
    out.dims.assign(static_cast<size_t>(D) + 1, 0);
    for (int d = 0; d <= D; ++d) {
        int idx = 0;
        for (auto& [key, value] : faces[static_cast<size_t>(d)]) value = idx++;
        out.dims[static_cast<size_t>(d)] = idx;
    }
    check_matrix_budget(out.dims);

    for (int d = 1; d <= D; ++d) {
        IntMatrix bd(out.dims[static_cast<size_t>(d) - 1], out.dims[static_cast<size_t>(d)]);
        for (const auto& [tuple, col] : faces[static_cast<size_t>(d)]) {
            for (size_t drop = 0; drop < tuple.size(); ++drop) {
                sub.clear();
                for (size_t i = 0; i < tuple.size(); ++i)
                    if (i != drop) sub.push_back(tuple[i]);
                const int row = faces[static_cast<size_t>(d) - 1].at(sub);
                bd.at(row, col) = drop % 2 == 0 ? 1 : -1;
            }
        }
        out.boundary.push_back(std::move(bd));
    }
    return out;
}

ChainComplex full_complex(ModelKind kind, const std::vector<std::array<int, 3>>& cells) {
    if (!is_cubical(kind))
        throw UsageError("cubical verification invoked with a simplicial model kind");
    check_scale(cells.size());
    const int D = cell_dim(kind);
    const uint8_t all_axes = static_cast<uint8_t>((1 << D) - 1);

    std::vector<std::map<BoxKey, int>> faces(static_cast<size_t>(D) + 1);
    for (const auto& p : cells) {
        for (uint8_t ext = 0; ext <= all_axes; ++ext) {
            if ((ext & all_axes) != ext) continue;
            // corners of the collapsed axes pick the sub-box position
            std::vector<std::array<int, 3>> los{p};
            for (int a = 0; a < D; ++a) {
                if (ext >> a & 1) continue;
                std::vector<std::array<int, 3>> grown;
                for (auto lo : los)
                    for (int side : {0, 1}) {
                        lo[a] = p[a] + side;
                        grown.push_back(lo);
                    }
                los = std::move(grown);
            }
            const int d = std::popcount(ext);
            for (const auto& lo : los) faces[static_cast<size_t>(d)][box_key(ext, lo)] = 0;
        }
    }

    ChainComplex out;
    out.dims.assign(static_cast<size_t>(D) + 1, 0);
    for (int d = 0; d <= D; ++d) {
        int idx = 0;
        for (auto& [key, value] : faces[static_cast<size_t>(d)]) value = idx++;
        out.dims[static_cast<size_t>(d)] = idx;
    }
    check_matrix_budget(out.dims);

    for (int d = 1; d <= D; ++d) {
        IntMatrix bd(out.dims[static_cast<size_t>(d) - 1], out.dims[static_cast<size_t>(d)]);
        for (const auto& [key, col] : faces[static_cast<size_t>(d)]) {
            const auto ext = static_cast<uint8_t>(key[0]);
            const std::array<int, 3> lo{key[1], key[2], key[3]};
            int sign = 1;
            for (int a = 0; a < D; ++a) {
                if (!(ext >> a & 1)) continue;
                for (int side : {1, 0}) {
                    auto flo = lo;
                    flo[a] += side;
                    const int row =
                        faces[static_cast<size_t>(d) - 1].at(box_key(ext & ~(uint8_t{1} << a), flo));
                    bd.at(row, col) = side ? sign : -sign;
                }
                sign = -sign;
            }
        }
        out.boundary.push_back(std::move(bd));
    }
    return out;
}

int64_t euler_characteristic(const ChainComplex& c) {
    int64_t chi = 0;
    for (size_t d = 0; d < c.dims.size(); ++d)
        chi += d % 2 == 0 ? c.dims[d] : -c.dims[d];
    return chi;
}

namespace {

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

struct BoxHash {
    size_t operator()(const BoxKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (int x : k) {
            h ^= static_cast<uint32_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

} // namespace

std::vector<int64_t> face_counts(ModelKind kind, const std::vector<std::vector<int64_t>>& cells) {
    if (is_cubical(kind))
        throw UsageError("simplicial verification invoked with a cubical model kind");
    const int D = cell_dim(kind);
    std::vector<std::unordered_set<std::vector<int64_t>, TupleHash>> faces(static_cast<size_t>(D) + 1);
    std::vector<int64_t> sub;
    for (const auto& tv : cells) {
        const uint32_t full = (uint32_t{1} << tv.size()) - 1;
        for (uint32_t m = 1; m <= full; ++m) {
            sub.clear();
            for (size_t i = 0; i < tv.size(); ++i)
                if (m >> i & 1) sub.push_back(tv[i]);
            faces[sub.size() - 1].insert(sub);
        }
    }
    std::vector<int64_t> counts;
    for (const auto& s : faces) counts.push_back(static_cast<int64_t>(s.size()));
    return counts;
}

std::vector<int64_t> face_counts(ModelKind kind, const std::vector<std::array<int, 3>>& cells) {
    if (!is_cubical(kind))
        throw UsageError("cubical verification invoked with a simplicial model kind");
    const int D = cell_dim(kind);
    const uint8_t all_axes = static_cast<uint8_t>((1 << D) - 1);
    std::vector<std::unordered_set<BoxKey, BoxHash>> faces(static_cast<size_t>(D) + 1);
    for (const auto& p : cells) {
        for (uint8_t ext = 0; ext <= all_axes; ++ext) {
            std::vector<std::array<int, 3>> los{p};
            for (int a = 0; a < D; ++a) {
                if (ext >> a & 1) continue;
                std::vector<std::array<int, 3>> grown;
                for (auto lo : los)
                    for (int side : {0, 1}) {
                        lo[a] = p[a] + side;
                        grown.push_back(lo);
                    }
                los = std::move(grown);
            }
            for (const auto& lo : los)
                faces[static_cast<size_t>(std::popcount(ext))].insert(box_key(ext, lo));
        }
    }
    std::vector<int64_t> counts;
    for (const auto& s : faces) counts.push_back(static_cast<int64_t>(s.size()));
    return counts;
}

namespace {

template <typename Cell>
CertificationReport certify_impl(ModelKind kind, const std::vector<Cell>& input,
                                 const std::vector<Cell>& kept) {
    const std::set<Cell> universe(input.begin(), input.end());
    for (const auto& c : kept)
        if (!universe.contains(c))
            throw UsageError("skeleton contains a cell that is not part of the input");

    CertificationReport rep;
    const HomologySummary in = homology_summary(full_complex(kind, input));
    const HomologySummary out = homology_summary(full_complex(kind, kept));
    rep.betti_in = in.betti;
    rep.betti_out = out.betti;
    rep.torsion_free_in = in.torsion_free();
    rep.torsion_free_out = out.torsion_free();
    rep.isomorphic =
        rep.betti_in == rep.betti_out && rep.torsion_free_in == rep.torsion_free_out;
    return rep;
}

} // namespace

CertificationReport certify(ModelKind kind, const std::vector<std::vector<int64_t>>& input,
                            const std::vector<std::vector<int64_t>>& kept) {
    return certify_impl(kind, input, kept);
}

CertificationReport certify(ModelKind kind, const std::vector<std::array<int, 3>>& input,
                            const std::vector<std::array<int, 3>>& kept) {
    return certify_impl(kind, input, kept);
}

CertificationReport certify_outcome(const TopCellComplex& x, const std::vector<CellId>& kept) {
    if (x.cubical()) {
        const auto& all = x.cubical_cells();
        std::vector<std::array<int, 3>> keep;
        keep.reserve(kept.size());
        for (CellId t : kept) keep.push_back(all[static_cast<size_t>(t)]);
        return certify(x.kind(), all, keep);
    }
    const auto& all = x.simplicial_cells();
    std::vector<std::vector<int64_t>> keep;
    keep.reserve(kept.size());
    for (CellId t : kept) keep.push_back(all[static_cast<size_t>(t)]);
    return certify(x.kind(), all, keep);
}

} // namespace thincc
