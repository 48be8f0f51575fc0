#pragma once
// Integer homology of small chain complexes, computed exactly via the Smith
// normal form. Sized for configuration complexes (tens of cells), not for
// large meshes.

#include <cstdint>
#include <vector>

#include "thincc/cell_model.hpp"
#include "thincc/errors.hpp"

namespace thincc {

// Dense row-major integer matrix.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int64_t> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    int64_t& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int64_t at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

struct SmithResult {
    int rank = 0;                   // nonzero diagonal entries (= rank over Q)
    std::vector<int64_t> diagonal;  // positive invariant factors, d1 | d2 | ...
};

// Diagonalizes an integer matrix by invertible row/column operations.
// Throws InvariantViolation if intermediate values leave the int64 range.
SmithResult smith_normal_form(IntMatrix m);

// A finite chain complex. dims[d] counts the d-cells; boundary[d-1] is the
// matrix of the boundary map from d-chains to (d-1)-chains (rows indexed by
// (d-1)-cells, columns by d-cells). boundary has dims.size()-1 entries.
struct ChainComplex {
    std::vector<int> dims;
    std::vector<IntMatrix> boundary;

    int top_dim() const { return static_cast<int>(dims.size()) - 1; }
};

// Throws InvariantViolation unless every composition of consecutive boundary
// maps is zero and the matrix shapes agree with dims.
void validate_chain_complex(const ChainComplex& c);

struct HomologySummary {
    std::vector<int> betti;         // betti[d] = rank of H_d, unreduced
    std::vector<int64_t> torsion;   // invariant factors > 1, all dimensions pooled

    bool torsion_free() const { return torsion.empty(); }

    // Trivial reduced homology: one connected component, nothing above, no
    // torsion. The empty complex (betti[0] == 0) does not qualify.
    bool acyclic() const;
};

HomologySummary homology_summary(const ChainComplex& c);

// Chain complex spanned by the elements of a closed configuration, with the
// incidence signs of its model cell. Throws InvariantViolation if the
// configuration is not closed (the restriction is not a complex then).
ChainComplex configuration_complex(const Configuration& c);

// Homology of a closed configuration's complex.
HomologySummary configuration_homology(const Configuration& c);

// True iff the closed configuration carries trivial reduced homology.
bool is_acyclic(const Configuration& c);

} // namespace thincc
