#include "encell/combinat.hpp"

#include <algorithm>
#include <numeric>

namespace encell {

void Perm::validate() const {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 1 || v > k() || seen[static_cast<size_t>(v) - 1])
            throw std::invalid_argument("Perm: not a permutation of {1,...,k}");
        seen[static_cast<size_t>(v) - 1] = true;
    }
}

Perm Perm::identity(int k) {
    std::vector<int> imgs(static_cast<size_t>(k));
    std::iota(imgs.begin(), imgs.end(), 1);
    return Perm(std::move(imgs));
}

Perm Perm::inverse() const {
    std::vector<int> inv(images.size());
    for (int i = 1; i <= k(); ++i) inv[static_cast<size_t>((*this)(i)) - 1] = i;
    return Perm(std::move(inv));
}

Perm Perm::compose(const Perm& other) const {
    if (k() != other.k()) throw std::invalid_argument("Perm::compose: size mismatch");
    std::vector<int> imgs(images.size());
    for (int i = 1; i <= k(); ++i) imgs[static_cast<size_t>(i) - 1] = (*this)(other(i));
    return Perm(std::move(imgs));
}

std::vector<Perm> all_perms(int k) {
    std::vector<int> imgs(static_cast<size_t>(k));
    std::iota(imgs.begin(), imgs.end(), 1);
    std::vector<Perm> out;
    do {
        out.emplace_back(imgs);
    } while (std::next_permutation(imgs.begin(), imgs.end()));
    return out;
}

void LabelMap::validate() const {
    if (k < 0) throw std::invalid_argument("LabelMap: negative arity");
    for (int v : values)
        if (v < 1 || v > k) throw std::invalid_argument("LabelMap: value outside {1,...,k}");
}

std::vector<int> LabelMap::fiber(int label) const {
    std::vector<int> out;
    for (int pos = 0; pos < length(); ++pos)
        if (values[static_cast<size_t>(pos)] == label) out.push_back(pos);
    return out;
}

bool LabelMap::surjective() const {
    std::vector<bool> hit(static_cast<size_t>(k), false);
    for (int v : values) hit[static_cast<size_t>(v) - 1] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

Diagram::Diagram(LabelMap fmap, std::vector<int> hmap, int target)
    : f(std::move(fmap)), h(std::move(hmap)), s(target) {
    if (f.length() != static_cast<int>(h.size()))
        throw std::invalid_argument("Diagram: f and h length mismatch");
    if (s < 0) throw std::invalid_argument("Diagram: negative target size");
    for (size_t j = 0; j < h.size(); ++j) {
        if (h[j] < 0 || h[j] > s) throw std::invalid_argument("Diagram: h value outside [s]");
        if (j > 0 && h[j] < h[j - 1]) throw std::invalid_argument("Diagram: h not monotone");
    }
}

bool Diagram::operator<(const Diagram& o) const {
    if (!(f == o.f)) return f < o.f;
    if (h != o.h) return h < o.h;
    return s < o.s;
}

int pair_count(int k) { return k * (k - 1) / 2; }

int pair_index(int k, int i, int j) {
    if (i < 1 || j <= i || j > k) throw std::invalid_argument("pair_index: bad pair");
    return (2 * k - i) * (i - 1) / 2 + (j - i) - 1;
}

std::pair<int, int> pair_unrank(int k, int idx) {
    for (int i = 1; i < k; ++i) {
        int block = k - i;
        if (idx < block) return {i, i + 1 + idx};
        idx -= block;
    }
    throw std::invalid_argument("pair_unrank: index out of range");
}

BergerInvariant::BergerInvariant(int arity, std::vector<int> bvals, std::vector<int> total_order)
    : k(arity), b(std::move(bvals)), order(std::move(total_order)) {
    if (static_cast<int>(b.size()) != pair_count(k))
        throw std::invalid_argument("BergerInvariant: b must cover all 2-element subsets");
    Perm check(order);  // validates that order is a permutation of {1,...,k}
    for (int v : b)
        if (v < 0) throw std::invalid_argument("BergerInvariant: negative b value");
}

bool BergerInvariant::before(int i, int j) const {
    for (int v : order) {
        if (v == i) return true;
        if (v == j) return false;
    }
    throw std::logic_error("BergerInvariant::before: labels not found");
}

int pair_complexity(const LabelMap& f, int a, int b) {
    int blocks = 0;
    int last = 0;
    for (int v : f.values) {
        if (v != a && v != b) continue;
        if (v != last) ++blocks;
        last = v;
    }
    return blocks == 0 ? 0 : blocks - 1;
}

int complexity(const LabelMap& f) {
    if (f.k <= 1) return 0;
    if (f.k == 2) return pair_complexity(f, 1, 2);
    int best = 0;
    for (int a = 1; a <= f.k; ++a)
        for (int b = a + 1; b <= f.k; ++b) best = std::max(best, pair_complexity(f, a, b));
    return best;
}

BergerInvariant berger_invariant(const LabelMap& f) {
    if (!f.surjective())
        throw std::invalid_argument("berger_invariant: f must be surjective");
    int k = f.k;
    std::vector<int> b(static_cast<size_t>(pair_count(k)));
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            b[static_cast<size_t>(pair_index(k, i, j))] = pair_complexity(f, i, j) - 1;
    // order labels by first occurrence
    std::vector<int> first(static_cast<size_t>(k), -1);
    for (int pos = 0; pos < f.length(); ++pos) {
        int v = f(pos);
        if (first[static_cast<size_t>(v) - 1] < 0) first[static_cast<size_t>(v) - 1] = pos;
    }
    std::vector<int> order(static_cast<size_t>(k));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return first[static_cast<size_t>(i) - 1] < first[static_cast<size_t>(j) - 1];
    });
    return BergerInvariant(k, std::move(b), std::move(order));
}

bool is_nondegenerate(const Diagram& d) {
    if (!d.f.surjective()) return false;
    for (int j = 0; j + 1 < d.length(); ++j)
        if (d.f(j) == d.f(j + 1) && d.h[static_cast<size_t>(j)] == d.h[static_cast<size_t>(j) + 1])
            return false;
    return true;
}

Diagram delete_position(const Diagram& d, int j) {
    if (j < 0 || j >= d.length()) throw std::out_of_range("delete_position: bad position");
    LabelMap f = d.f;
    std::vector<int> h = d.h;
    f.values.erase(f.values.begin() + j);
    h.erase(h.begin() + j);
    return Diagram(std::move(f), std::move(h), d.s);
}

Diagram merge_adjacent(const Diagram& d, int j) {
    if (j < 0 || j + 1 >= d.length()) throw std::out_of_range("merge_adjacent: bad position");
    if (d.f(j) != d.f(j + 1) || d.h[static_cast<size_t>(j)] != d.h[static_cast<size_t>(j) + 1])
        throw std::invalid_argument("merge_adjacent: positions differ in f or h");
    return delete_position(d, j + 1);
}

LabelMap relabel(const LabelMap& f, const Perm& sigma_inverse) {
    if (sigma_inverse.k() != f.k) throw std::invalid_argument("relabel: arity mismatch");
    LabelMap out = f;
    for (int& v : out.values) v = sigma_inverse(v);
    return out;
}

}  // namespace encell
