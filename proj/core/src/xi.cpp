#include "encell/xi.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <map>
#include <numeric>

#include "encell/homology.hpp"

namespace encell {

bool Cell::operator<(const Cell& o) const {
    if (dim != o.dim) return dim < o.dim;
    return d < o.d;
}

bool SimplexNF::operator<(const SimplexNF& o) const {
    if (ell != o.ell) return ell < o.ell;
    if (!(d == o.d)) return d < o.d;
    return sigmas < o.sigmas;
}

// ---------------------------------------------------------------------------
// Cell enumeration
// ---------------------------------------------------------------------------

namespace {

// Incremental complexity tracking: for each label pair, the number of blocks
// seen so far in the pair subsequence and its last value.
struct ComplexityTracker {
    int k;
    std::vector<int> blocks;  // per pair_index
    std::vector<int> last;    // per pair_index, 0 = none yet
    int current = 0;

    explicit ComplexityTracker(int arity)
        : k(arity), blocks(static_cast<size_t>(pair_count(arity)), 0),
          last(static_cast<size_t>(pair_count(arity)), 0) {}

    // returns the new complexity after appending value v
    int push(int v, std::vector<std::pair<int, int>>& undo) {
        for (int w = 1; w <= k; ++w) {
            if (w == v) continue;
            int idx = pair_index(k, std::min(v, w), std::max(v, w));
            if (last[static_cast<size_t>(idx)] != v) {
                undo.push_back({idx, last[static_cast<size_t>(idx)]});
                last[static_cast<size_t>(idx)] = v;
                ++blocks[static_cast<size_t>(idx)];
                current = std::max(current, blocks[static_cast<size_t>(idx)] - 1);
            }
        }
        return current;
    }

    void pop(const std::vector<std::pair<int, int>>& undo) {
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            last[static_cast<size_t>(it->first)] = it->second;
            --blocks[static_cast<size_t>(it->first)];
        }
        current = 0;
        for (int b : blocks) current = std::max(current, b - 1);
    }
};

}  // namespace

std::vector<Cell> enumerate_cells(int n, int k, int s, std::optional<int> max_dim) {
    if (k < 0 || s < 0 || (n != kUnfiltered && n < 1))
        throw std::invalid_argument("enumerate_cells: bad parameters");
    if (n == kUnfiltered && !max_dim)
        throw std::invalid_argument("enumerate_cells: the unfiltered model needs a truncation");

    std::vector<Cell> out;
    if (k == 0) {
        out.push_back({Diagram(LabelMap(0, {}), {}, s), 0});
        return out;
    }

    const int len_cap = max_dim ? *max_dim + k : std::numeric_limits<int>::max();
    std::vector<int> f, h;
    std::vector<int> label_count(static_cast<size_t>(k) + 1, 0);
    int missing = k;
    ComplexityTracker tracker(k);

    auto rec = [&](auto&& self) -> void {
        if (!f.empty() && missing == 0) {
            Cell c{Diagram(LabelMap(k, f), h, s), static_cast<int>(f.size()) - k};
            out.push_back(std::move(c));
        }
        if (static_cast<int>(f.size()) >= len_cap) return;
        const int hmin = h.empty() ? 0 : h.back();
        for (int hv = hmin; hv <= s; ++hv) {
            for (int fv = 1; fv <= k; ++fv) {
                if (!f.empty() && fv == f.back() && hv == h.back()) continue;
                std::vector<std::pair<int, int>> undo;
                int cx = tracker.push(fv, undo);
                if (n == kUnfiltered || cx <= n) {
                    f.push_back(fv);
                    h.push_back(hv);
                    if (label_count[static_cast<size_t>(fv)]++ == 0) --missing;
                    self(self);
                    if (--label_count[static_cast<size_t>(fv)] == 0) ++missing;
                    f.pop_back();
                    h.pop_back();
                }
                tracker.pop(undo);
            }
        }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Simplex normal forms
// ---------------------------------------------------------------------------

SimplexNF reduce_simplex(const Diagram& d, std::vector<std::vector<int>> sigmas, int ell) {
    const int k = d.f.k;
    if (static_cast<int>(sigmas.size()) != k)
        throw std::invalid_argument("reduce_simplex: one sigma per label required");

    const int m1 = d.length();
    std::vector<char> supported(static_cast<size_t>(m1), 0);
    for (const auto& sg : sigmas)
        for (int v : sg) supported[static_cast<size_t>(v)] = 1;

    // restrict to the support
    std::vector<int> remap(static_cast<size_t>(m1), -1);
    std::vector<int> f, h;
    int next = 0;
    for (int pos = 0; pos < m1; ++pos) {
        if (!supported[static_cast<size_t>(pos)]) continue;
        remap[static_cast<size_t>(pos)] = next++;
        f.push_back(d.f(pos));
        h.push_back(d.h[static_cast<size_t>(pos)]);
    }
    for (auto& sg : sigmas)
        for (int& v : sg) v = remap[static_cast<size_t>(v)];

    // merge adjacent positions equal in both coordinates until stable
    bool again = true;
    while (again) {
        again = false;
        for (size_t j = 0; j + 1 < f.size(); ++j) {
            if (f[j] == f[j + 1] && h[j] == h[j + 1]) {
                f.erase(f.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                h.erase(h.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                for (auto& sg : sigmas)
                    for (int& v : sg)
                        if (v > static_cast<int>(j)) --v;
                again = true;
                break;
            }
        }
    }

    SimplexNF out{Diagram(LabelMap(k, std::move(f)), std::move(h), d.s), std::move(sigmas), ell};
    return out;
}

bool is_degenerate(const SimplexNF& x) {
    for (int j = 0; j + 1 <= x.ell; ++j) {
        bool all_equal = true;
        for (const auto& sg : x.sigmas)
            if (sg[static_cast<size_t>(j)] != sg[static_cast<size_t>(j) + 1]) {
                all_equal = false;
                break;
            }
        if (all_equal) return true;
    }
    return false;
}

SimplexNF face(const SimplexNF& x, int j) {
    if (x.ell < 1 || j < 0 || j > x.ell) throw std::out_of_range("face: bad index");
    std::vector<std::vector<int>> sigmas(x.sigmas.size());
    for (size_t i = 0; i < x.sigmas.size(); ++i) {
        sigmas[i].reserve(static_cast<size_t>(x.ell));
        for (int r = 0; r <= x.ell; ++r)
            if (r != j) sigmas[i].push_back(x.sigmas[i][static_cast<size_t>(r)]);
    }
    return reduce_simplex(x.d, std::move(sigmas), x.ell - 1);
}

// ---------------------------------------------------------------------------
// Model construction
// ---------------------------------------------------------------------------

namespace {

// all weakly increasing surjections [ell] ->> values, as position sequences;
// a surjection is a choice of the d slots (out of ell) where the value steps
void monotone_surjections(const std::vector<int>& values, int ell,
                          std::vector<std::vector<int>>& out) {
    out.clear();
    const int d = static_cast<int>(values.size()) - 1;
    if (d > ell || d < 0) return;
    std::vector<int> steps(static_cast<size_t>(d));
    std::iota(steps.begin(), steps.end(), 0);
    while (true) {
        std::vector<int> sg(static_cast<size_t>(ell) + 1);
        int sidx = 0;
        for (int r = 0; r <= ell; ++r) {
            while (sidx < d && steps[static_cast<size_t>(sidx)] < r) ++sidx;
            sg[static_cast<size_t>(r)] = values[static_cast<size_t>(sidx)];
        }
        out.push_back(std::move(sg));
        int t = d - 1;
        while (t >= 0 && steps[static_cast<size_t>(t)] == ell - d + t) --t;
        if (t < 0) break;
        ++steps[static_cast<size_t>(t)];
        for (int u = t + 1; u < d; ++u)
            steps[static_cast<size_t>(u)] = steps[static_cast<size_t>(u) - 1] + 1;
    }
}

std::vector<SimplexNF> degree_simplices(const std::vector<Cell>& cells, int k, int ell) {
    std::vector<SimplexNF> out;
    for (const auto& c : cells) {
        std::vector<std::vector<std::vector<int>>> choices(static_cast<size_t>(k));
        bool ok = true;
        for (int i = 1; i <= k; ++i) {
            monotone_surjections(c.d.f.fiber(i), ell, choices[static_cast<size_t>(i) - 1]);
            if (choices[static_cast<size_t>(i) - 1].empty()) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<size_t> pick(static_cast<size_t>(k), 0);
        while (true) {
            std::vector<std::vector<int>> sigmas(static_cast<size_t>(k));
            for (int i = 0; i < k; ++i) sigmas[static_cast<size_t>(i)] = choices[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]];
            SimplexNF x{c.d, std::move(sigmas), ell};
            if (!is_degenerate(x)) out.push_back(std::move(x));
            int t = k - 1;
            while (t >= 0 && ++pick[static_cast<size_t>(t)] == choices[static_cast<size_t>(t)].size())
                pick[static_cast<size_t>(t--)] = 0;
            if (t < 0) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::int64_t XiModel::index_of(const SimplexNF& x) const {
    if (x.ell < 0 || x.ell >= static_cast<int>(simplices.size())) return -1;
    const auto& level = simplices[static_cast<size_t>(x.ell)];
    auto it = std::lower_bound(level.begin(), level.end(), x);
    if (it != level.end() && *it == x) return it - level.begin();
    return -1;
}

XiModel build_model(int n, int k, int s, std::optional<int> max_dim, int threads) {
    XiModel model;
    model.n = n;
    model.k = k;
    model.s = s;
    model.cells = enumerate_cells(n, k, s, max_dim);
    int top = 0;
    for (const auto& c : model.cells) top = std::max(top, c.dim);
    if (max_dim) top = std::min(top, *max_dim);
    model.max_dim = top;

    model.simplices.resize(static_cast<size_t>(top) + 1);
    auto fill_level = [&](int ell) {
        model.simplices[static_cast<size_t>(ell)] = degree_simplices(model.cells, k, ell);
    };
    if (threads > 1) {
        std::vector<std::future<void>> futs;
        for (int ell = 0; ell <= top; ++ell)
            futs.push_back(std::async(std::launch::async, fill_level, ell));
        for (auto& f : futs) f.get();
    } else {
        for (int ell = 0; ell <= top; ++ell) fill_level(ell);
    }

    model.faces.resize(static_cast<size_t>(top) + 1);
    auto fill_faces = [&](int ell) {
        const auto& level = model.simplices[static_cast<size_t>(ell)];
        auto& out = model.faces[static_cast<size_t>(ell)];
        out.resize(level.size());
        for (size_t i = 0; i < level.size(); ++i) {
            out[i].resize(static_cast<size_t>(ell) + 1);
            for (int j = 0; j <= ell; ++j) {
                SimplexNF fc = face(level[i], j);
                if (is_degenerate(fc)) {
                    out[i][static_cast<size_t>(j)] = -1;
                } else {
                    std::int64_t idx = model.index_of(fc);
                    if (idx < 0) throw std::logic_error("build_model: face not found");
                    out[i][static_cast<size_t>(j)] = static_cast<std::int32_t>(idx);
                }
            }
        }
    };
    if (threads > 1) {
        std::vector<std::future<void>> futs;
        for (int ell = 1; ell <= top; ++ell)
            futs.push_back(std::async(std::launch::async, fill_faces, ell));
        for (auto& f : futs) f.get();
    } else {
        for (int ell = 1; ell <= top; ++ell) fill_faces(ell);
    }
    return model;
}

// ---------------------------------------------------------------------------
// Structure maps
// ---------------------------------------------------------------------------

Cell sigma_star(const Cell& x, const Perm& sigma) {
    Cell out{Diagram(relabel(x.d.f, sigma.inverse()), x.d.h, x.d.s), x.dim};
    return out;
}

SimplexNF sigma_star(const SimplexNF& x, const Perm& sigma) {
    SimplexNF out;
    out.d = Diagram(relabel(x.d.f, sigma.inverse()), x.d.h, x.d.s);
    out.ell = x.ell;
    out.sigmas.resize(x.sigmas.size());
    for (int i = 1; i <= x.d.f.k; ++i)
        out.sigmas[static_cast<size_t>(i) - 1] = x.sigmas[static_cast<size_t>(sigma(i)) - 1];
    return out;
}

Diagram compose_diagrams(const Diagram& outer, const std::vector<Diagram>& inners) {
    const int k = outer.f.k;
    if (static_cast<int>(inners.size()) != k)
        throw std::invalid_argument("compose_diagrams: one inner diagram per label");
    std::vector<std::vector<int>> fibers(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) {
        fibers[static_cast<size_t>(i) - 1] = outer.f.fiber(i);
        if (fibers[static_cast<size_t>(i) - 1].empty())
            throw std::invalid_argument("compose_diagrams: outer diagram must be surjective");
        if (inners[static_cast<size_t>(i) - 1].s !=
            static_cast<int>(fibers[static_cast<size_t>(i) - 1].size()) - 1)
            throw std::invalid_argument("compose_diagrams: inner target must match fiber size");
    }
    std::vector<int> offset(static_cast<size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i)
        offset[static_cast<size_t>(i)] =
            offset[static_cast<size_t>(i) - 1] + inners[static_cast<size_t>(i) - 1].f.k;

    // order the disjoint union by image in the outer domain; blocks map into
    // disjoint fibers, so ties happen only within one block
    std::vector<std::pair<int, int>> elems;  // (block i, position t)
    for (int i = 1; i <= k; ++i)
        for (int t = 0; t < inners[static_cast<size_t>(i) - 1].length(); ++t)
            elems.push_back({i, t});
    std::sort(elems.begin(), elems.end(), [&](const auto& a, const auto& b) {
        int ga = fibers[static_cast<size_t>(a.first) - 1][static_cast<size_t>(
            inners[static_cast<size_t>(a.first) - 1].h[static_cast<size_t>(a.second)])];
        int gb = fibers[static_cast<size_t>(b.first) - 1][static_cast<size_t>(
            inners[static_cast<size_t>(b.first) - 1].h[static_cast<size_t>(b.second)])];
        if (ga != gb) return ga < gb;
        return a.second < b.second;
    });

    std::vector<int> f, h;
    f.reserve(elems.size());
    h.reserve(elems.size());
    for (const auto& [i, t] : elems) {
        f.push_back(inners[static_cast<size_t>(i) - 1].f(t) + offset[static_cast<size_t>(i) - 1]);
        int g = fibers[static_cast<size_t>(i) - 1][static_cast<size_t>(
            inners[static_cast<size_t>(i) - 1].h[static_cast<size_t>(t)])];
        h.push_back(outer.h[static_cast<size_t>(g)]);
    }
    return Diagram(LabelMap(offset[static_cast<size_t>(k)], std::move(f)), std::move(h), outer.s);
}

SimplexNF gamma_compose(const Diagram& outer, const std::vector<SimplexNF>& inners) {
    const int k = outer.f.k;
    if (static_cast<int>(inners.size()) != k)
        throw std::invalid_argument("gamma_compose: one inner simplex per label");
    int ell = inners.empty() ? 0 : inners[0].ell;
    for (const auto& x : inners)
        if (x.ell != ell) throw std::invalid_argument("gamma_compose: inner degrees differ");

    std::vector<Diagram> inner_diagrams;
    inner_diagrams.reserve(inners.size());
    for (const auto& x : inners) inner_diagrams.push_back(x.d);
    // recompute the ordering of the disjoint union, mirroring compose_diagrams
    std::vector<std::vector<int>> fibers(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i) fibers[static_cast<size_t>(i) - 1] = outer.f.fiber(i);
    std::vector<std::pair<int, int>> elems;
    for (int i = 1; i <= k; ++i)
        for (int t = 0; t < inners[static_cast<size_t>(i) - 1].d.length(); ++t)
            elems.push_back({i, t});
    std::sort(elems.begin(), elems.end(), [&](const auto& a, const auto& b) {
        int ga = fibers[static_cast<size_t>(a.first) - 1][static_cast<size_t>(
            inners[static_cast<size_t>(a.first) - 1].d.h[static_cast<size_t>(a.second)])];
        int gb = fibers[static_cast<size_t>(b.first) - 1][static_cast<size_t>(
            inners[static_cast<size_t>(b.first) - 1].d.h[static_cast<size_t>(b.second)])];
        if (ga != gb) return ga < gb;
        return a.second < b.second;
    });
    std::vector<std::vector<int>> pos_of(static_cast<size_t>(k));
    for (int i = 1; i <= k; ++i)
        pos_of[static_cast<size_t>(i) - 1].resize(
            static_cast<size_t>(inners[static_cast<size_t>(i) - 1].d.length()));
    for (size_t p = 0; p < elems.size(); ++p)
        pos_of[static_cast<size_t>(elems[p].first) - 1][static_cast<size_t>(elems[p].second)] =
            static_cast<int>(p);

    Diagram composite = compose_diagrams(outer, inner_diagrams);

    std::vector<std::vector<int>> sigmas;
    sigmas.reserve(static_cast<size_t>(composite.f.k));
    for (int i = 1; i <= k; ++i) {
        const auto& x = inners[static_cast<size_t>(i) - 1];
        for (const auto& sg : x.sigmas) {
            std::vector<int> lifted(sg.size());
            for (size_t r = 0; r < sg.size(); ++r)
                lifted[r] = pos_of[static_cast<size_t>(i) - 1][static_cast<size_t>(sg[r])];
            sigmas.push_back(std::move(lifted));
        }
    }
    return reduce_simplex(composite, std::move(sigmas), ell);
}

Regrouped lambda_regroup(const SimplexNF& x, const std::vector<int>& grouping) {
    const int k = static_cast<int>(grouping.size());
    int total = 0;
    for (int j : grouping) {
        if (j < 1) throw std::invalid_argument("lambda_regroup: blocks must be nonempty");
        total += j;
    }
    if (total != x.d.f.k) throw std::invalid_argument("lambda_regroup: grouping size mismatch");

    std::vector<int> offset(static_cast<size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i)
        offset[static_cast<size_t>(i)] = offset[static_cast<size_t>(i) - 1] + grouping[static_cast<size_t>(i) - 1];
    auto block_of = [&](int label) {
        for (int i = 1; i <= k; ++i)
            if (label <= offset[static_cast<size_t>(i)]) return i;
        throw std::logic_error("lambda_regroup: label out of range");
    };

    // outer diagram: collapse labels blockwise, keep h
    std::vector<int> outer_f(static_cast<size_t>(x.d.length()));
    for (int pos = 0; pos < x.d.length(); ++pos) outer_f[static_cast<size_t>(pos)] = block_of(x.d.f(pos));
    Regrouped out;
    out.outer = Diagram(LabelMap(k, std::move(outer_f)), x.d.h, x.d.s);

    // inner i: the restriction to the i-th block's positions, h the identity
    for (int i = 1; i <= k; ++i) {
        std::vector<int> positions;
        for (int pos = 0; pos < x.d.length(); ++pos)
            if (out.outer.f(pos) == i) positions.push_back(pos);
        std::vector<int> remap(static_cast<size_t>(x.d.length()), -1);
        for (size_t t = 0; t < positions.size(); ++t) remap[static_cast<size_t>(positions[t])] = static_cast<int>(t);
        std::vector<int> f, h;
        for (int pos : positions) {
            f.push_back(x.d.f(pos) - offset[static_cast<size_t>(i) - 1]);
            h.push_back(remap[static_cast<size_t>(pos)]);
        }
        SimplexNF inner;
        const int m = static_cast<int>(positions.size());
        inner.d = Diagram(LabelMap(grouping[static_cast<size_t>(i) - 1], std::move(f)), std::move(h),
                          m - 1);
        inner.ell = x.ell;
        for (int p = offset[static_cast<size_t>(i) - 1] + 1; p <= offset[static_cast<size_t>(i)]; ++p) {
            std::vector<int> sg(x.sigmas[static_cast<size_t>(p) - 1].size());
            for (size_t r = 0; r < sg.size(); ++r)
                sg[r] = remap[static_cast<size_t>(x.sigmas[static_cast<size_t>(p) - 1][r])];
            inner.sigmas.push_back(std::move(sg));
        }
        out.inners.push_back(std::move(inner));
    }
    return out;
}

XiModel restrict_to_bT(const XiModel& model, const BergerElem& x) {
    if (x.k != model.k) throw std::invalid_argument("restrict_to_bT: arity mismatch");
    XiModel sub;
    sub.n = model.n;
    sub.k = model.k;
    sub.s = model.s;
    for (const auto& c : model.cells)
        if (q_membership(c.d.f, x)) sub.cells.push_back(c);
    int top = 0;
    for (const auto& c : sub.cells) top = std::max(top, c.dim);
    sub.max_dim = top;

    sub.simplices.resize(static_cast<size_t>(top) + 1);
    sub.faces.resize(static_cast<size_t>(top) + 1);
    std::vector<std::vector<std::int32_t>> newid(static_cast<size_t>(top) + 1);
    for (int ell = 0; ell <= top && ell < static_cast<int>(model.simplices.size()); ++ell) {
        const auto& level = model.simplices[static_cast<size_t>(ell)];
        newid[static_cast<size_t>(ell)].assign(level.size(), -1);
        for (size_t i = 0; i < level.size(); ++i) {
            if (q_membership(level[i].d.f, x)) {
                newid[static_cast<size_t>(ell)][i] =
                    static_cast<std::int32_t>(sub.simplices[static_cast<size_t>(ell)].size());
                sub.simplices[static_cast<size_t>(ell)].push_back(level[i]);
            }
        }
    }
    for (int ell = 1; ell <= top && ell < static_cast<int>(model.simplices.size()); ++ell) {
        const auto& level = model.simplices[static_cast<size_t>(ell)];
        for (size_t i = 0; i < level.size(); ++i) {
            if (newid[static_cast<size_t>(ell)][i] < 0) continue;
            std::vector<std::int32_t> fs(static_cast<size_t>(ell) + 1);
            for (int j = 0; j <= ell; ++j) {
                std::int32_t fi = model.faces[static_cast<size_t>(ell)][i][static_cast<size_t>(j)];
                if (fi < 0) {
                    fs[static_cast<size_t>(j)] = -1;
                } else {
                    std::int32_t ni = newid[static_cast<size_t>(ell) - 1][static_cast<size_t>(fi)];
                    if (ni < 0)
                        throw std::logic_error("restrict_to_bT: sub-model not closed under faces");
                    fs[static_cast<size_t>(j)] = ni;
                }
            }
            sub.faces[static_cast<size_t>(ell)].push_back(std::move(fs));
        }
    }
    return sub;
}

std::int64_t euler_characteristic(const XiModel& model) {
    std::int64_t chi = 0;
    for (int ell = 0; ell < static_cast<int>(model.simplices.size()); ++ell)
        chi += (ell % 2 == 0 ? 1 : -1) * model.simplex_count(ell);
    return chi;
}

ChainComplex boundary_matrices(const XiModel& model) {
    ChainComplex cc;
    const int top = static_cast<int>(model.simplices.size()) - 1;
    cc.generators.resize(static_cast<size_t>(top) + 1);
    for (int ell = 0; ell <= top; ++ell) cc.generators[static_cast<size_t>(ell)] = model.simplex_count(ell);
    cc.boundary.resize(static_cast<size_t>(top) + 1);
    cc.boundary[0] = SparseIntMatrix(0, cc.generators[0]);
    for (int ell = 1; ell <= top; ++ell) {
        SparseIntMatrix m(cc.generators[static_cast<size_t>(ell) - 1], cc.generators[static_cast<size_t>(ell)]);
        for (size_t i = 0; i < model.faces[static_cast<size_t>(ell)].size(); ++i)
            for (int j = 0; j <= ell; ++j) {
                std::int32_t fi = model.faces[static_cast<size_t>(ell)][i][static_cast<size_t>(j)];
                if (fi >= 0)
                    m.add_entry(fi, static_cast<std::int64_t>(i), Int(j % 2 == 0 ? 1 : -1));
            }
        m.normalize();
        cc.boundary[static_cast<size_t>(ell)] = std::move(m);
    }
    return cc;
}

}  // namespace encell
