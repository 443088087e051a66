#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "encell/berger.hpp"

namespace encell {

using Int = boost::multiprecision::cpp_int;

struct Triplet {
    std::int64_t row = 0;
    std::int64_t col = 0;
    Int value;

    bool operator<(const Triplet& o) const {
        if (row != o.row) return row < o.row;
        return col < o.col;
    }
};

// Sparse matrix over Z.  Triplets are kept sorted by (row, col) with no
// duplicates and no zero entries.
struct SparseIntMatrix {
    std::int64_t rows = 0;
    std::int64_t cols = 0;
    std::vector<Triplet> triplets;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::int64_t r, std::int64_t c) : rows(r), cols(c) {}

    void add_entry(std::int64_t r, std::int64_t c, Int v);
    // sort triplets, combine duplicates, drop zeros
    void normalize();
    bool operator==(const SparseIntMatrix& o) const {
        return rows == o.rows && cols == o.cols && triplets == o.triplets;
    }
};

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);

// Graded boundary data: boundary[d] maps degree-d generators to degree-(d-1)
// generators (boundary[0] is the empty map out of degree 0).
struct ChainComplex {
    std::vector<std::int64_t> generators;
    std::vector<SparseIntMatrix> boundary;

    int top_degree() const { return static_cast<int>(generators.size()) - 1; }
    bool boundaries_compose_to_zero() const;
};

struct HomologyGroups {
    std::vector<std::int64_t> betti;
    std::vector<std::vector<Int>> torsion;  // divisibility-ordered, each > 1

    bool torsion_free() const;
    bool operator==(const HomologyGroups& o) const {
        return betti == o.betti && torsion == o.torsion;
    }
};

struct SmithDecomposition {
    SparseIntMatrix u;  // unimodular, rows x rows
    SparseIntMatrix d;  // diagonal, d1 | d2 | ...
    SparseIntMatrix v;  // unimodular, cols x cols
};

// U * M * V = D with U, V unimodular and the diagonal of D divisibility-ordered.
SmithDecomposition smith_normal_form(const SparseIntMatrix& m);

// Nonzero diagonal of the Smith form only (no transforms).
std::vector<Int> invariant_factors(const SparseIntMatrix& m);

// Exact homotopy-equivalent shrinking of a chain complex: repeatedly
// eliminates incidence pairs with a +-1 coefficient.  Homology is unchanged.
ChainComplex reduce_complex(const ChainComplex& cc);

struct HomologyOptions {
    bool reduce_first = true;
    bool validate = true;  // check boundary * boundary == 0 before computing
    int threads = 1;
};

HomologyGroups homology(const ChainComplex& cc, const HomologyOptions& opts = {});

// Normalized chains of a poset's order complex: alternating face deletion.
ChainComplex boundary_matrices(const PosetComplex& pc);

struct XiModel;  // xi.hpp
ChainComplex boundary_matrices(const XiModel& model);

std::int64_t euler_characteristic(const ChainComplex& cc);

// Coefficients of prod_{i=1}^{k-1} (1 + i*t^(n-1)), the expected Poincare
// polynomial of the arity-k configuration model.
std::vector<std::int64_t> configuration_poincare(int n, int k);

}  // namespace encell
