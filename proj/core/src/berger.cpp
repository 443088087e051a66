#include "encell/berger.hpp"

#include <algorithm>
#include <numeric>

namespace encell {

namespace {

// position of each label in the stored order, for O(1) comparisons
std::vector<int> positions(const BergerElem& x) {
    std::vector<int> pos(static_cast<size_t>(x.k) + 1, 0);
    for (int p = 0; p < x.k; ++p) pos[static_cast<size_t>(x.order[static_cast<size_t>(p)])] = p;
    return pos;
}

}  // namespace

bool leq(const BergerElem& a, const BergerElem& b) {
    if (a.k != b.k) throw std::invalid_argument("leq: arity mismatch");
    const auto pa = positions(a);
    const auto pb = positions(b);
    for (int i = 1; i <= a.k; ++i) {
        for (int j = i + 1; j <= a.k; ++j) {
            int idx = pair_index(a.k, i, j);
            int av = a.b[static_cast<size_t>(idx)];
            int bv = b.b[static_cast<size_t>(idx)];
            if (av > bv) return false;
            bool differ = (pa[static_cast<size_t>(i)] < pa[static_cast<size_t>(j)]) !=
                          (pb[static_cast<size_t>(i)] < pb[static_cast<size_t>(j)]);
            if (differ && av >= bv) return false;
        }
    }
    return true;
}

std::vector<BergerElem> enumerate_poset(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("enumerate_poset: need n >= 1, k >= 0");
    const int np = pair_count(k);
    std::vector<BergerElem> out;
    std::vector<int> b(static_cast<size_t>(np), 0);
    const auto perms = all_perms(k);
    while (true) {
        for (const auto& p : perms) out.emplace_back(k, b, p.images);
        // next b in lexicographic order, most significant first
        int pos = np - 1;
        while (pos >= 0 && b[static_cast<size_t>(pos)] == n - 1) b[static_cast<size_t>(pos--)] = 0;
        if (pos < 0) break;
        ++b[static_cast<size_t>(pos)];
    }
    return out;
}

BergerElem sigma_act(const BergerElem& x, const Perm& rho) {
    if (rho.k() != x.k) throw std::invalid_argument("sigma_act: arity mismatch");
    const int k = x.k;
    std::vector<int> b(static_cast<size_t>(pair_count(k)));
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            b[static_cast<size_t>(pair_index(k, i, j))] =
                x.b_at(std::min(rho(i), rho(j)), std::max(rho(i), rho(j)));
    const auto px = positions(x);
    std::vector<int> order(static_cast<size_t>(k));
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return px[static_cast<size_t>(rho(i))] < px[static_cast<size_t>(rho(j))];
    });
    return BergerElem(k, std::move(b), std::move(order));
}

BergerElem operad_compose(const BergerElem& x, const std::vector<BergerElem>& ys) {
    if (static_cast<int>(ys.size()) != x.k)
        throw std::invalid_argument("operad_compose: need one inner element per label");
    const int k = x.k;
    std::vector<int> offset(static_cast<size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i)
        offset[static_cast<size_t>(i)] = offset[static_cast<size_t>(i) - 1] + ys[static_cast<size_t>(i) - 1].k;
    const int total = offset[static_cast<size_t>(k)];

    // block(r) = the i with r in the i-th block after offset relabeling
    std::vector<int> block(static_cast<size_t>(total) + 1);
    for (int i = 1; i <= k; ++i)
        for (int r = offset[static_cast<size_t>(i) - 1] + 1; r <= offset[static_cast<size_t>(i)]; ++r)
            block[static_cast<size_t>(r)] = i;

    std::vector<int> b(static_cast<size_t>(pair_count(total)));
    for (int r = 1; r <= total; ++r) {
        for (int s = r + 1; s <= total; ++s) {
            int i = block[static_cast<size_t>(r)], j = block[static_cast<size_t>(s)];
            int v;
            if (i == j)
                v = ys[static_cast<size_t>(i) - 1].b_at(r - offset[static_cast<size_t>(i) - 1],
                                                        s - offset[static_cast<size_t>(i) - 1]);
            else
                v = x.b_at(std::min(i, j), std::max(i, j));
            b[static_cast<size_t>(pair_index(total, r, s))] = v;
        }
    }
    // order: blocks arranged by x's order, inner order within each block
    std::vector<int> order;
    order.reserve(static_cast<size_t>(total));
    for (int i : x.order)
        for (int v : ys[static_cast<size_t>(i) - 1].order)
            order.push_back(v + offset[static_cast<size_t>(i) - 1]);
    return BergerElem(total, std::move(b), std::move(order));
}

BergerElem compose_at(const BergerElem& x, const BergerElem& y, int i) {
    if (i < 1 || i > x.k) throw std::out_of_range("compose_at: slot out of range");
    std::vector<BergerElem> ys;
    ys.reserve(static_cast<size_t>(x.k));
    const BergerElem unit(1, {}, {1});
    for (int j = 1; j <= x.k; ++j) ys.push_back(j == i ? y : unit);
    return operad_compose(x, ys);
}

PosetComplex order_complex(const std::vector<BergerElem>& elems) {
    PosetComplex pc;
    pc.vertices = elems;
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<std::int32_t>> up(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && leq(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]))
                up[static_cast<size_t>(i)].push_back(j);

    std::vector<std::int32_t> cur(static_cast<size_t>(n));
    std::iota(cur.begin(), cur.end(), 0);
    int d = 0;
    while (!cur.empty()) {
        pc.chains.push_back(cur);
        // extend every chain by each upper neighbour of its last element
        std::vector<std::int32_t> next;
        const int stride = d + 1;
        for (size_t c = 0; c + static_cast<size_t>(stride) <= cur.size(); c += static_cast<size_t>(stride)) {
            std::int32_t last = cur[c + static_cast<size_t>(stride) - 1];
            for (std::int32_t w : up[static_cast<size_t>(last)]) {
                next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(c),
                            cur.begin() + static_cast<std::ptrdiff_t>(c + static_cast<size_t>(stride)));
                next.push_back(w);
            }
        }
        cur = std::move(next);
        ++d;
    }
    return pc;
}

bool q_membership(const LabelMap& f, const BergerElem& x) {
    return leq(berger_invariant(f), x);
}

}  // namespace encell
