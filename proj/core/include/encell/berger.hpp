#pragma once

#include <cstdint>
#include <vector>

#include "encell/combinat.hpp"

namespace encell {

// An element of the interleaving poset is the same data as the invariant of
// a label map.
using BergerElem = BergerInvariant;

// Partial order: componentwise on b, strictly on every pair whose relative
// order differs between the two sides.
bool leq(const BergerElem& a, const BergerElem& b);

// All (b,t) with b({i,j}) < n, in lexicographic (b, then one-line order)
// order.  Count is n^C(k,2) * k!.
std::vector<BergerElem> enumerate_poset(int n, int k);

// Right action: b'({i,j}) = b({rho(i),rho(j)}), i < j in t' iff rho(i) < rho(j) in t.
BergerElem sigma_act(const BergerElem& x, const Perm& rho);

// Operad composition: within-block data from ys, cross-block data from x.
BergerElem operad_compose(const BergerElem& x, const std::vector<BergerElem>& ys);

// x o_i y = operad_compose(x, (1,...,y,...,1)) with y in slot i (1-based).
BergerElem compose_at(const BergerElem& x, const BergerElem& y, int i);

// Order complex of a finite poset: all strict chains, stored flat per
// dimension with stride d+1.
struct PosetComplex {
    std::vector<BergerElem> vertices;
    std::vector<std::vector<std::int32_t>> chains;  // chains[d], stride d+1

    int dim() const { return static_cast<int>(chains.size()) - 1; }
    std::int64_t chain_count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return static_cast<std::int64_t>(chains[static_cast<size_t>(d)].size()) / (d + 1);
    }
};

PosetComplex order_complex(const std::vector<BergerElem>& elems);

// true iff (b_f, T_f) <= x.
bool q_membership(const LabelMap& f, const BergerElem& x);

}  // namespace encell
