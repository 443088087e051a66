#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "encell/berger.hpp"
#include "encell/combinat.hpp"

namespace encell {

// Complexity bound: use kUnfiltered together with an explicit dimension
// truncation for the unfiltered model.
inline constexpr int kUnfiltered = std::numeric_limits<int>::max();

struct Cell {
    Diagram d;
    int dim = 0;  // length(f) - k

    bool operator==(const Cell& o) const { return d == o.d; }
    bool operator<(const Cell& o) const;
};

// Normal form of an ell-simplex: a diagram together with one weakly
// increasing coordinate map per label, hitting every position of the domain
// (full support) with no adjacent positions equal in both f and h.
struct SimplexNF {
    Diagram d;
    std::vector<std::vector<int>> sigmas;  // sigmas[i-1] : [ell] -> positions in fiber(i)
    int ell = 0;

    bool operator==(const SimplexNF& o) const {
        return d == o.d && sigmas == o.sigmas && ell == o.ell;
    }
    bool operator<(const SimplexNF& o) const;
};

// enumerate_cells(n, k, s): all nondegenerate diagrams of complexity <= n.
// With n == kUnfiltered a dimension truncation must be supplied.
std::vector<Cell> enumerate_cells(int n, int k, int s,
                                  std::optional<int> max_dim = std::nullopt);

// Support restriction followed by adjacent merges; the result satisfies the
// SimplexNF invariants.  Input sigmas must be weakly increasing into the
// fibers of d.
SimplexNF reduce_simplex(const Diagram& d, std::vector<std::vector<int>> sigmas, int ell);

bool is_degenerate(const SimplexNF& x);

// j-th face: precompose every sigma with the [ell-1] -> [ell] coface missing
// j, then reduce.
SimplexNF face(const SimplexNF& x, int j);

struct XiModel {
    int n = 0;  // kUnfiltered for the unbounded model
    int k = 0;
    int s = 0;
    int max_dim = 0;
    std::vector<Cell> cells;
    std::vector<std::vector<SimplexNF>> simplices;        // per degree, sorted
    std::vector<std::vector<std::vector<std::int32_t>>> faces;  // faces[l][i][j], -1 = degenerate

    std::int64_t simplex_count(int ell) const {
        if (ell < 0 || ell >= static_cast<int>(simplices.size())) return 0;
        return static_cast<std::int64_t>(simplices[static_cast<size_t>(ell)].size());
    }
    // index of a normal form in its degree list, -1 if absent
    std::int64_t index_of(const SimplexNF& x) const;
};

XiModel build_model(int n, int k, int s, std::optional<int> max_dim = std::nullopt,
                    int threads = 1);

Cell sigma_star(const Cell& x, const Perm& sigma);
SimplexNF sigma_star(const SimplexNF& x, const Perm& sigma);

// Composition along a diagram: inner i is a simplex over the i-th fiber of
// the outer diagram (target size |fiber(i)| - 1).  All inners must have equal
// degree.
SimplexNF gamma_compose(const Diagram& outer, const std::vector<SimplexNF>& inners);

// Diagram-level composition (the same assembly without coordinates).
Diagram compose_diagrams(const Diagram& outer, const std::vector<Diagram>& inners);

struct Regrouped {
    Diagram outer;
    std::vector<SimplexNF> inners;
};

// Inverse of gamma_compose in the unfiltered model: collapse labels along
// the block structure (j_1,...,j_k).
Regrouped lambda_regroup(const SimplexNF& x, const std::vector<int>& grouping);

// Sub-model of the simplices whose label map lies below x in the
// interleaving order.
XiModel restrict_to_bT(const XiModel& model, const BergerElem& x);

std::int64_t euler_characteristic(const XiModel& model);

}  // namespace encell
