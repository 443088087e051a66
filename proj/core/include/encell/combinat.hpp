#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace encell {

// A permutation of {1,...,k} in one-line notation: images[i-1] = sigma(i).
struct Perm {
    std::vector<int> images;

    explicit Perm(std::vector<int> imgs) : images(std::move(imgs)) { validate(); }
    static Perm identity(int k);

    int k() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[static_cast<size_t>(i) - 1]; }
    Perm inverse() const;
    // (a.compose(b))(i) = a(b(i))
    Perm compose(const Perm& other) const;
    bool operator==(const Perm& other) const { return images == other.images; }

private:
    void validate() const;
};

// All permutations of {1,...,k} in lexicographic one-line order.
std::vector<Perm> all_perms(int k);

// f : [m] -> {1,...,k} as the value sequence (empty sequence encodes the
// empty domain).
struct LabelMap {
    int k = 0;
    std::vector<int> values;

    LabelMap() = default;
    LabelMap(int arity, std::vector<int> vals) : k(arity), values(std::move(vals)) {
        validate();
    }

    int length() const { return static_cast<int>(values.size()); }
    int operator()(int pos) const { return values[static_cast<size_t>(pos)]; }
    std::vector<int> fiber(int label) const;
    bool surjective() const;
    bool operator==(const LabelMap& o) const { return k == o.k && values == o.values; }
    bool operator<(const LabelMap& o) const {
        return values != o.values ? values < o.values : k < o.k;
    }

private:
    void validate() const;
};

// A pair (f,[m],h) with h : [m] -> [s] weakly increasing.
struct Diagram {
    LabelMap f;
    std::vector<int> h;
    int s = 0;

    Diagram() = default;
    Diagram(LabelMap fmap, std::vector<int> hmap, int target);

    int length() const { return f.length(); }
    bool operator==(const Diagram& o) const { return f == o.f && h == o.h && s == o.s; }
    bool operator<(const Diagram& o) const;
};

// Number of 2-element subsets of {1,...,k}.
int pair_count(int k);

// Index of {i,j}, i<j, in the lexicographic list (1,2),(1,3),...,(k-1,k).
int pair_index(int k, int i, int j);

// Inverse of pair_index.
std::pair<int, int> pair_unrank(int k, int idx);

// The pair (b_f, T_f): per-pair interleaving counts and the order of first
// occurrences.
struct BergerInvariant {
    int k = 0;
    std::vector<int> b;      // indexed by pair_index
    std::vector<int> order;  // the elements of {1,...,k} listed in increasing order

    BergerInvariant() = default;
    BergerInvariant(int arity, std::vector<int> bvals, std::vector<int> total_order);

    int b_at(int i, int j) const { return b[static_cast<size_t>(pair_index(k, std::min(i, j), std::max(i, j)))]; }
    // true iff i precedes j in the stored total order
    bool before(int i, int j) const;
    bool operator==(const BergerInvariant& o) const {
        return k == o.k && b == o.b && order == o.order;
    }
    bool operator<(const BergerInvariant& o) const {
        if (b != o.b) return b < o.b;
        if (order != o.order) return order < o.order;
        return k < o.k;
    }
};

// Number of alternations of f, maximised over 2-element label subsets.
int complexity(const LabelMap& f);

// Complexity of the subsequence of f lying in {a,b}, as a binary sequence.
int pair_complexity(const LabelMap& f, int a, int b);

// Requires f surjective.
BergerInvariant berger_invariant(const LabelMap& f);

bool is_nondegenerate(const Diagram& d);

Diagram delete_position(const Diagram& d, int j);

// Requires f(j) == f(j+1) and h(j) == h(j+1).
Diagram merge_adjacent(const Diagram& d, int j);

// f composed with a relabeling of {1,...,k}: (sigma_relabel(f, s))(x) = s^{-1}(f(x)).
LabelMap relabel(const LabelMap& f, const Perm& sigma_inverse);

}  // namespace encell
