#include "thincc/homology.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace thincc {

namespace {

int64_t checked_mul(int64_t a, int64_t b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > (__int128{1} << 62) || p < -(__int128{1} << 62))
        throw InvariantViolation("integer overflow during matrix reduction");
    return static_cast<int64_t>(p);
}

// row[r] -= q * row[t], columns from..cols-1
void row_axpy(IntMatrix& m, int r, int t, int64_t q, int from) {
    for (int c = from; c < m.cols; ++c) m.at(r, c) -= checked_mul(q, m.at(t, c));
}

void col_axpy(IntMatrix& m, int c, int t, int64_t q, int from) {
    for (int r = from; r < m.rows; ++r) m.at(r, c) -= checked_mul(q, m.at(r, t));
}

} // namespace

SmithResult smith_normal_form(IntMatrix m) {
    SmithResult res;
    const int bound = std::min(m.rows, m.cols);

    for (int t = 0; t < bound; ++t) {
        // smallest-magnitude nonzero entry of the trailing submatrix -> (t,t);
        // a unit entry is optimal, so stop scanning at the first one
        int pr = -1, pc = -1;
        int64_t best_abs = 0;
        for (int r = t; r < m.rows && best_abs != 1; ++r)
            for (int c = t; c < m.cols; ++c) {
                const int64_t v = std::abs(m.at(r, c));
                if (v != 0 && (best_abs == 0 || v < best_abs)) {
                    pr = r;
                    pc = c;
                    best_abs = v;
                    if (v == 1) break;
                }
            }
        if (pr < 0) break;

        for (;;) {
            for (int c = t; c < m.cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
            for (int r = t; r < m.rows; ++r) std::swap(m.at(r, t), m.at(r, pc));
            const int64_t p = m.at(t, t);

            // remainder iteration: any leftover becomes the next, smaller pivot
            int64_t best = 0;
            pr = pc = t;
            for (int r = t + 1; r < m.rows; ++r) {
                if (m.at(r, t) == 0) continue;
                row_axpy(m, r, t, m.at(r, t) / p, t);
                const int64_t rem = std::abs(m.at(r, t));
                if (rem != 0 && (best == 0 || rem < best)) { best = rem; pr = r; pc = t; }
            }
            if (best == 0) {
                for (int c = t + 1; c < m.cols; ++c) {
                    if (m.at(t, c) == 0) continue;
                    col_axpy(m, c, t, m.at(t, c) / p, t);
                    const int64_t rem = std::abs(m.at(t, c));
                    if (rem != 0 && (best == 0 || rem < best)) { best = rem; pr = t; pc = c; }
                }
            }
            if (best == 0) break;
        }
        res.diagonal.push_back(std::abs(m.at(t, t)));
    }

    // enforce the divisibility chain d1 | d2 | ... by pairwise gcd/lcm fixes
    auto& d = res.diagonal;
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i)
            for (size_t j = i + 1; j < d.size(); ++j) {
                if (d[j] % d[i] == 0) continue;
                const int64_t g = std::gcd(d[i], d[j]);
                d[j] = checked_mul(d[i] / g, d[j]);
                d[i] = g;
                changed = true;
            }
    }
    res.rank = static_cast<int>(d.size());
    return res;
}

void validate_chain_complex(const ChainComplex& c) {
    const int D = c.top_dim();
    if (static_cast<int>(c.boundary.size()) != std::max(D, 0))
        throw InvariantViolation("chain complex has wrong number of boundary maps");
    for (int d = 1; d <= D; ++d) {
        const IntMatrix& bd = c.boundary[static_cast<size_t>(d) - 1];
        if (bd.rows != c.dims[static_cast<size_t>(d) - 1] || bd.cols != c.dims[static_cast<size_t>(d)])
            throw InvariantViolation("boundary matrix shape disagrees with cell counts");
    }
    for (int d = 2; d <= D; ++d) {
        const IntMatrix& hi = c.boundary[static_cast<size_t>(d) - 1];
        const IntMatrix& lo = c.boundary[static_cast<size_t>(d) - 2];
        for (int r = 0; r < lo.rows; ++r)
            for (int col = 0; col < hi.cols; ++col) {
                int64_t acc = 0;
                for (int k = 0; k < hi.rows; ++k)
                    acc += checked_mul(lo.at(r, k), hi.at(k, col));
                if (acc != 0)
                    throw InvariantViolation("boundary of boundary is nonzero");
            }
    }
}

bool HomologySummary::acyclic() const {
    if (!torsion_free()) return false;
    if (betti.empty() || betti[0] != 1) return false;
    for (size_t d = 1; d < betti.size(); ++d)
        if (betti[d] != 0) return false;
    return true;
}

HomologySummary homology_summary(const ChainComplex& c) {
    const int D = c.top_dim();
    HomologySummary out;
    out.betti.assign(static_cast<size_t>(D) + 1, 0);

    std::vector<int> rank(static_cast<size_t>(D) + 2, 0);
    for (int d = 1; d <= D; ++d) {
        SmithResult s = smith_normal_form(c.boundary[static_cast<size_t>(d) - 1]);
        rank[static_cast<size_t>(d)] = s.rank;
        for (int64_t v : s.diagonal)
            if (v != 1) out.torsion.push_back(v);
    }
    for (int d = 0; d <= D; ++d)
        out.betti[static_cast<size_t>(d)] =
            c.dims[static_cast<size_t>(d)] - rank[static_cast<size_t>(d)] - rank[static_cast<size_t>(d) + 1];
    return out;
}

ChainComplex configuration_complex(const Configuration& c) {
    const ModelCell& m = ModelCell::get(c.kind);
    if (!m.is_closed(c.mask))
        throw InvariantViolation("configuration complex requested for a non-closed set");

    const int D = cell_dim(c.kind) - 1; // configurations live on the cell boundary
    ChainComplex out;
    out.dims.assign(static_cast<size_t>(D) + 1, 0);

    // column/row index of each present element within its dimension
    std::vector<int> local(static_cast<size_t>(m.element_count()) + 1, -1);
    for (int l = 1; l <= m.element_count(); ++l) {
        if (!(c.mask >> (l - 1) & 1)) continue;
        const int d = m.element(l).dim;
        local[static_cast<size_t>(l)] = out.dims[static_cast<size_t>(d)]++;
    }

    for (int d = 1; d <= D; ++d)
        out.boundary.emplace_back(out.dims[static_cast<size_t>(d) - 1], out.dims[static_cast<size_t>(d)]);

    for (int l = 1; l <= m.element_count(); ++l) {
        if (local[static_cast<size_t>(l)] < 0) continue;
        const ModelElement& e = m.element(l);
        if (e.dim == 0) continue;
        IntMatrix& bd = out.boundary[static_cast<size_t>(e.dim) - 1];
        for (const auto& [f, s] : e.boundary)
            bd.at(local[static_cast<size_t>(f)], local[static_cast<size_t>(l)]) = s;
    }
    return out;
}

HomologySummary configuration_homology(const Configuration& c) {
    return homology_summary(configuration_complex(c));
}

bool is_acyclic(const Configuration& c) { return configuration_homology(c).acyclic(); }

} // namespace thincc
