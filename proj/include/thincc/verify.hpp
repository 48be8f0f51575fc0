#pragma once
// Independent ground truth: rebuilds the FULL cell complex (every face of
// every dimension) of a set of top cells and computes its Betti numbers from
// scratch. Deliberately shares nothing with the thinning fast path beyond
// the sign conventions, so it can certify thinning outcomes as an oracle.

#include <array>
#include <cstdint>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/homology.hpp"
#include "thincc/top_complex.hpp"

namespace thincc {

// Hard size gate: cubic-time integer reduction is for desk-scale inputs.
inline constexpr size_t kVerifyCellLimit = 100'000;

// Full chain complex of a simplicial top-cell list (sorted global tuples).
ChainComplex full_complex(ModelKind kind, const std::vector<std::vector<int64_t>>& cells);

// Full chain complex of a cubical top-cell list (lattice coordinates).
ChainComplex full_complex(ModelKind kind, const std::vector<std::array<int, 3>>& cells);

int64_t euler_characteristic(const ChainComplex& c);

// Cell counts per dimension of the full complex, computed without
// assembling boundary matrices (cheap enough for large inputs).
std::vector<int64_t> face_counts(ModelKind kind, const std::vector<std::vector<int64_t>>& cells);
std::vector<int64_t> face_counts(ModelKind kind, const std::vector<std::array<int, 3>>& cells);

struct CertificationReport {
    std::vector<int> betti_in;
    std::vector<int> betti_out;
    bool torsion_free_in = true;
    bool torsion_free_out = true;
    bool isomorphic = false;  // equal Betti vectors and matching torsion verdicts
};

CertificationReport certify(ModelKind kind, const std::vector<std::vector<int64_t>>& input,
                            const std::vector<std::vector<int64_t>>& kept);
CertificationReport certify(ModelKind kind, const std::vector<std::array<int, 3>>& input,
                            const std::vector<std::array<int, 3>>& kept);

// Certifies a thinning outcome against the original cells of the complex it
// ran on (kept = surviving cell ids).
CertificationReport certify_outcome(const TopCellComplex& x, const std::vector<CellId>& kept);

} // namespace thincc
