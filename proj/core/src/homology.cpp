#include "encell/homology.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <set>

namespace encell {

void SparseIntMatrix::add_entry(std::int64_t r, std::int64_t c, Int v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("SparseIntMatrix::add_entry: index out of range");
    if (v == 0) return;
    triplets.push_back({r, c, std::move(v)});
}

void SparseIntMatrix::normalize() {
    std::sort(triplets.begin(), triplets.end());
    std::vector<Triplet> out;
    out.reserve(triplets.size());
    for (auto& t : triplets) {
        if (!out.empty() && out.back().row == t.row && out.back().col == t.col)
            out.back().value += t.value;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Triplet& t) { return t.value == 0; }),
              out.end());
    triplets = std::move(out);
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
    // group b by row
    std::vector<std::vector<const Triplet*>> brow(static_cast<size_t>(b.rows));
    for (const auto& t : b.triplets) brow[static_cast<size_t>(t.row)].push_back(&t);
    SparseIntMatrix out(a.rows, b.cols);
    std::map<std::pair<std::int64_t, std::int64_t>, Int> acc;
    for (const auto& t : a.triplets)
        for (const Triplet* u : brow[static_cast<size_t>(t.col)])
            acc[{t.row, u->col}] += t.value * u->value;
    for (auto& [rc, v] : acc)
        if (v != 0) out.triplets.push_back({rc.first, rc.second, std::move(v)});
    return out;
}

bool ChainComplex::boundaries_compose_to_zero() const {
    for (int d = 1; d + 1 <= top_degree(); ++d) {
        const auto prod = multiply(boundary[static_cast<size_t>(d)],
                                   boundary[static_cast<size_t>(d) + 1]);
        if (!prod.triplets.empty()) return false;
    }
    return true;
}

bool HomologyGroups::torsion_free() const {
    for (const auto& t : torsion)
        if (!t.empty()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

namespace {

// Row-major sparse workspace with a column index for pivot searching.
struct SnfWork {
    std::int64_t nrows, ncols;
    std::vector<std::map<std::int64_t, Int>> row;
    std::vector<std::set<std::int64_t>> col_rows;
    bool track;
    std::vector<std::map<std::int64_t, Int>> u_row;  // nrows x nrows
    std::vector<std::map<std::int64_t, Int>> v_row;  // ncols x ncols

    SnfWork(const SparseIntMatrix& m, bool track_transforms)
        : nrows(m.rows),
          ncols(m.cols),
          row(static_cast<size_t>(m.rows)),
          col_rows(static_cast<size_t>(m.cols)),
          track(track_transforms) {
        for (const auto& t : m.triplets) {
            row[static_cast<size_t>(t.row)][t.col] = t.value;
            col_rows[static_cast<size_t>(t.col)].insert(t.row);
        }
        if (track) {
            u_row.resize(static_cast<size_t>(nrows));
            for (std::int64_t i = 0; i < nrows; ++i) u_row[static_cast<size_t>(i)][i] = 1;
            v_row.resize(static_cast<size_t>(ncols));
            for (std::int64_t i = 0; i < ncols; ++i) v_row[static_cast<size_t>(i)][i] = 1;
        }
    }

    void set(std::int64_t r, std::int64_t c, Int v) {
        auto& rr = row[static_cast<size_t>(r)];
        if (v == 0) {
            if (rr.erase(c)) col_rows[static_cast<size_t>(c)].erase(r);
        } else {
            if (rr.find(c) == rr.end()) col_rows[static_cast<size_t>(c)].insert(r);
            rr[c] = std::move(v);
        }
    }

    Int get(std::int64_t r, std::int64_t c) const {
        auto it = row[static_cast<size_t>(r)].find(c);
        return it == row[static_cast<size_t>(r)].end() ? Int(0) : it->second;
    }

    // row r2 += q * row r1 (on M and U)
    void row_axpy(std::int64_t r2, std::int64_t r1, const Int& q) {
        for (const auto& [c, v] : row[static_cast<size_t>(r1)]) set(r2, c, get(r2, c) + q * v);
        if (track)
            for (const auto& [c, v] : u_row[static_cast<size_t>(r1)]) {
                Int nv = u_row[static_cast<size_t>(r2)][c] + q * v;
                if (nv == 0)
                    u_row[static_cast<size_t>(r2)].erase(c);
                else
                    u_row[static_cast<size_t>(r2)][c] = std::move(nv);
            }
    }

    // col c2 += q * col c1 (on M and V); V is stored row-major so this is
    // v_row[c1] contributing to column... we keep V as a plain matrix and do
    // the update by rows of V^T: store v as rows of V, update row-wise over
    // the transpose relation: (V * E) has column op semantics.
    void col_axpy(std::int64_t c2, std::int64_t c1, const Int& q) {
        std::vector<std::int64_t> rs(col_rows[static_cast<size_t>(c1)].begin(),
                                     col_rows[static_cast<size_t>(c1)].end());
        for (std::int64_t r : rs) set(r, c2, get(r, c2) + q * get(r, c1));
        if (track)
            for (auto& vr : v_row) {
                auto it = vr.find(c1);
                if (it == vr.end()) continue;
                Int nv = (vr.count(c2) ? vr[c2] : Int(0)) + q * it->second;
                if (nv == 0)
                    vr.erase(c2);
                else
                    vr[c2] = std::move(nv);
            }
    }

    void negate_row(std::int64_t r) {
        for (auto& [c, v] : row[static_cast<size_t>(r)]) v = -v;
        if (track)
            for (auto& [c, v] : u_row[static_cast<size_t>(r)]) v = -v;
    }
};

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

// nearest-integer quotient, minimising |a - q*b|
Int round_div(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    Int hb = abs_int(b);
    if (2 * abs_int(r) > hb) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

struct PivotEntry {
    std::int64_t r = -1, c = -1;
};

}  // namespace

static void snf_run(SnfWork& w, std::vector<std::int64_t>& pr, std::vector<std::int64_t>& pc,
                    std::vector<Int>& diag) {
    std::vector<char> row_done(static_cast<size_t>(w.nrows), 0);
    std::vector<char> col_done(static_cast<size_t>(w.ncols), 0);

    auto find_pivot = [&]() -> PivotEntry {
        PivotEntry best;
        Int best_abs;
        for (std::int64_t r = 0; r < w.nrows; ++r) {
            if (row_done[static_cast<size_t>(r)]) continue;
            for (const auto& [c, v] : w.row[static_cast<size_t>(r)]) {
                if (col_done[static_cast<size_t>(c)]) continue;
                Int a = abs_int(v);
                if (best.r < 0 || a < best_abs) {
                    best = {r, c};
                    best_abs = a;
                    if (best_abs == 1) return best;
                }
            }
        }
        return best;
    };

    while (true) {
        PivotEntry p = find_pivot();
        if (p.r < 0) break;
        // clear row p.r and column p.c; the pivot may move when a smaller
        // remainder shows up
        while (true) {
            Int v = w.get(p.r, p.c);
            bool clean = true;
            {
                std::vector<std::int64_t> rs(w.col_rows[static_cast<size_t>(p.c)].begin(),
                                             w.col_rows[static_cast<size_t>(p.c)].end());
                for (std::int64_t r : rs) {
                    if (r == p.r || row_done[static_cast<size_t>(r)]) continue;
                    Int q = round_div(w.get(r, p.c), v);
                    if (q != 0) w.row_axpy(r, p.r, -q);
                    if (w.get(r, p.c) != 0) clean = false;
                }
            }
            {
                std::vector<std::int64_t> cs;
                for (const auto& [c, val] : w.row[static_cast<size_t>(p.r)])
                    if (c != p.c && !col_done[static_cast<size_t>(c)]) cs.push_back(c);
                for (std::int64_t c : cs) {
                    Int q = round_div(w.get(p.r, c), v);
                    if (q != 0) w.col_axpy(c, p.c, -q);
                    if (w.get(p.r, c) != 0) clean = false;
                }
            }
            if (clean) break;
            // move pivot to the entry of smallest magnitude in the residue
            PivotEntry np = p;
            Int np_abs = abs_int(w.get(p.r, p.c));
            for (std::int64_t r : w.col_rows[static_cast<size_t>(p.c)]) {
                if (row_done[static_cast<size_t>(r)]) continue;
                Int a = abs_int(w.get(r, p.c));
                if (a != 0 && a < np_abs) {
                    np = {r, p.c};
                    np_abs = a;
                }
            }
            for (const auto& [c, val] : w.row[static_cast<size_t>(p.r)]) {
                if (col_done[static_cast<size_t>(c)]) continue;
                Int a = abs_int(val);
                if (a != 0 && a < np_abs) {
                    np = {p.r, c};
                    np_abs = a;
                }
            }
            p = np;
        }
        if (w.get(p.r, p.c) < 0) w.negate_row(p.r);
        row_done[static_cast<size_t>(p.r)] = 1;
        col_done[static_cast<size_t>(p.c)] = 1;
        pr.push_back(p.r);
        pc.push_back(p.c);
        diag.push_back(w.get(p.r, p.c));
    }

    // enforce d1 | d2 | ...
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i + 1] % diag[i] == 0) continue;
            changed = true;
            // fold pivot j into pivot i's column, then rediagonalise the
            // resulting 2x2 block [[d_i, 0], [d_j, d_j]] to (gcd, lcm)
            std::int64_t ri = pr[i], ci = pc[i], rj = pr[i + 1], cj = pc[i + 1];
            w.col_axpy(ci, cj, 1);
            while (w.get(rj, ci) != 0) {
                Int q = round_div(w.get(rj, ci), w.get(ri, ci));
                if (q != 0) w.row_axpy(rj, ri, -q);
                if (w.get(rj, ci) != 0) std::swap(ri, rj);
            }
            Int rem = w.get(ri, cj);
            if (rem != 0) {
                Int g = w.get(ri, ci);
                Int q = rem / g;  // g = gcd divides every entry of the block
                w.col_axpy(cj, ci, -q);
            }
            if (w.get(ri, ci) < 0) w.negate_row(ri);
            if (w.get(rj, cj) < 0) w.negate_row(rj);
            pr[i] = ri;
            pc[i] = ci;
            pr[i + 1] = rj;
            pc[i + 1] = cj;
            diag[i] = w.get(ri, ci);
            diag[i + 1] = w.get(rj, cj);
        }
    }
}

SmithDecomposition smith_normal_form(const SparseIntMatrix& m) {
    SnfWork w(m, true);
    std::vector<std::int64_t> pr, pc;
    std::vector<Int> diag;
    snf_run(w, pr, pc, diag);

    SmithDecomposition out;
    out.d = SparseIntMatrix(m.rows, m.cols);
    for (size_t i = 0; i < diag.size(); ++i)
        out.d.add_entry(static_cast<std::int64_t>(i), static_cast<std::int64_t>(i), diag[i]);
    out.d.normalize();

    // row permutation: pivot row pr[i] must become row i
    std::vector<std::int64_t> rperm(static_cast<size_t>(m.rows), -1);
    std::int64_t next = static_cast<std::int64_t>(diag.size());
    for (size_t i = 0; i < pr.size(); ++i) rperm[static_cast<size_t>(pr[i])] = static_cast<std::int64_t>(i);
    for (std::int64_t r = 0; r < m.rows; ++r)
        if (rperm[static_cast<size_t>(r)] < 0) rperm[static_cast<size_t>(r)] = next++;
    std::vector<std::int64_t> cperm(static_cast<size_t>(m.cols), -1);
    next = static_cast<std::int64_t>(diag.size());
    for (size_t i = 0; i < pc.size(); ++i) cperm[static_cast<size_t>(pc[i])] = static_cast<std::int64_t>(i);
    for (std::int64_t c = 0; c < m.cols; ++c)
        if (cperm[static_cast<size_t>(c)] < 0) cperm[static_cast<size_t>(c)] = next++;

    out.u = SparseIntMatrix(m.rows, m.rows);
    for (std::int64_t r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : w.u_row[static_cast<size_t>(r)])
            out.u.add_entry(rperm[static_cast<size_t>(r)], c, v);
    out.u.normalize();

    out.v = SparseIntMatrix(m.cols, m.cols);
    for (std::int64_t r = 0; r < m.cols; ++r)
        for (const auto& [c, v] : w.v_row[static_cast<size_t>(r)])
            out.v.add_entry(r, cperm[static_cast<size_t>(c)], v);
    out.v.normalize();
    return out;
}

std::vector<Int> invariant_factors(const SparseIntMatrix& m) {
    SnfWork w(m, false);
    std::vector<std::int64_t> pr, pc;
    std::vector<Int> diag;
    snf_run(w, pr, pc, diag);
    return diag;
}

// ---------------------------------------------------------------------------
// Chain-complex reduction by unit incidence pairs
// ---------------------------------------------------------------------------

namespace {

using Entry = std::pair<std::int32_t, std::int64_t>;  // (row, value)

struct ReduceWork {
    int top;
    // cols[d][c]: sorted boundary column of generator c in degree d (d >= 1)
    std::vector<std::vector<std::vector<Entry>>> cols;
    std::vector<std::vector<char>> alive;
    // row_deg[d][r]: number of degree-(d+1) columns containing r
    std::vector<std::vector<std::int32_t>> row_deg;
    // row_sets[d][r]: candidate columns (lazy, may contain stale ids)
    std::vector<std::vector<std::vector<std::int32_t>>> row_sets;
    std::vector<std::pair<int, std::int32_t>> qrow, qcol;
    bool overflow = false;

    static std::int64_t checked_fma(std::int64_t acc, std::int64_t a, std::int64_t b, bool& ovf) {
        __int128 r = static_cast<__int128>(acc) + static_cast<__int128>(a) * b;
        if (r > std::numeric_limits<std::int64_t>::max() / 2 ||
            r < std::numeric_limits<std::int64_t>::min() / 2)
            ovf = true;
        return static_cast<std::int64_t>(r);
    }

    Entry* find(int d, std::int32_t c, std::int32_t r) {
        auto& col = cols[static_cast<size_t>(d)][static_cast<size_t>(c)];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::int32_t key) { return e.first < key; });
        if (it != col.end() && it->first == r) return &*it;
        return nullptr;
    }

    void dec_row_deg(int d, std::int32_t r) {
        if (--row_deg[static_cast<size_t>(d)][static_cast<size_t>(r)] == 1)
            qrow.push_back({d, r});
    }

    // remove row r of degree d from a single degree-(d+1) column c
    void erase_row_entry(int d, std::int32_t r, std::int32_t c) {
        auto& col = cols[static_cast<size_t>(d) + 1][static_cast<size_t>(c)];
        auto it = std::lower_bound(col.begin(), col.end(), r,
                                   [](const Entry& e, std::int32_t key) { return e.first < key; });
        if (it == col.end() || it->first != r) return;
        col.erase(it);
        if (col.size() == 1) qcol.push_back({d + 1, c});
    }

    // eliminate the incidence pair (a in degree d-1, b in degree d); the
    // coefficient must be +-1
    void eliminate(int d, std::int32_t a, std::int32_t b) {
        auto& colb = cols[static_cast<size_t>(d)][static_cast<size_t>(b)];
        std::int64_t lambda = 0;
        for (const auto& e : colb)
            if (e.first == a) lambda = e.second;
        assert(lambda == 1 || lambda == -1);

        // columns other than b containing a
        std::vector<std::int32_t> touched;
        for (std::int32_t y : row_sets[static_cast<size_t>(d) - 1][static_cast<size_t>(a)]) {
            if (y == b || !alive[static_cast<size_t>(d)][static_cast<size_t>(y)]) continue;
            if (find(d, y, a)) touched.push_back(y);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

        for (std::int32_t y : touched) {
            auto& coly = cols[static_cast<size_t>(d)][static_cast<size_t>(y)];
            std::int64_t mu = 0;
            for (const auto& e : coly)
                if (e.first == a) mu = e.second;
            // coly -= mu/lambda * colb  (merge of two sorted vectors)
            const std::int64_t q = mu * lambda;  // mu / lambda with lambda = +-1
            std::vector<Entry> merged;
            merged.reserve(coly.size() + colb.size());
            size_t i = 0, j = 0;
            while (i < coly.size() || j < colb.size()) {
                if (j == colb.size() || (i < coly.size() && coly[i].first < colb[j].first)) {
                    merged.push_back(coly[i++]);
                } else if (i == coly.size() || colb[j].first < coly[i].first) {
                    std::int64_t nv = checked_fma(0, -q, colb[j].second, overflow);
                    std::int32_t r = colb[j].first;
                    ++j;
                    if (nv != 0) {
                        merged.push_back({r, nv});
                        row_deg[static_cast<size_t>(d) - 1][static_cast<size_t>(r)]++;
                        row_sets[static_cast<size_t>(d) - 1][static_cast<size_t>(r)].push_back(y);
                    }
                } else {
                    std::int64_t nv = checked_fma(coly[i].second, -q, colb[j].second, overflow);
                    std::int32_t r = coly[i].first;
                    ++i;
                    ++j;
                    if (nv != 0)
                        merged.push_back({r, nv});
                    else
                        dec_row_deg(d - 1, r);
                }
            }
            coly = std::move(merged);
            if (coly.size() == 1) qcol.push_back({d, y});
        }

        // retire a
        alive[static_cast<size_t>(d) - 1][static_cast<size_t>(a)] = 0;
        row_deg[static_cast<size_t>(d) - 1][static_cast<size_t>(a)] = 0;
        if (d - 1 >= 1) {
            for (const auto& e : cols[static_cast<size_t>(d) - 1][static_cast<size_t>(a)])
                dec_row_deg(d - 2, e.first);
            cols[static_cast<size_t>(d) - 1][static_cast<size_t>(a)].clear();
        }
        // retire b
        alive[static_cast<size_t>(d)][static_cast<size_t>(b)] = 0;
        for (const auto& e : colb)
            if (e.first != a) dec_row_deg(d - 1, e.first);
        colb.clear();
        if (d < top) {
            for (std::int32_t c : row_sets[static_cast<size_t>(d)][static_cast<size_t>(b)])
                if (alive[static_cast<size_t>(d) + 1][static_cast<size_t>(c)])
                    erase_row_entry(d, b, c);
            row_sets[static_cast<size_t>(d)][static_cast<size_t>(b)].clear();
        }
        row_deg[static_cast<size_t>(d)][static_cast<size_t>(b)] = 0;
    }

    void drain_queues() {
        while (!qrow.empty() || !qcol.empty()) {
            if (overflow) return;
            if (!qrow.empty()) {
                auto [d, r] = qrow.back();
                qrow.pop_back();
                if (!alive[static_cast<size_t>(d)][static_cast<size_t>(r)] ||
                    row_deg[static_cast<size_t>(d)][static_cast<size_t>(r)] != 1 || d >= top)
                    continue;
                // locate the unique live column containing r
                std::int32_t cfound = -1;
                std::int64_t lambda = 0;
                for (std::int32_t c : row_sets[static_cast<size_t>(d)][static_cast<size_t>(r)]) {
                    if (!alive[static_cast<size_t>(d) + 1][static_cast<size_t>(c)]) continue;
                    if (Entry* e = find(d + 1, c, r)) {
                        cfound = c;
                        lambda = e->second;
                        break;
                    }
                }
                if (cfound < 0) continue;
                if (lambda == 1 || lambda == -1) eliminate(d + 1, r, cfound);
            } else {
                auto [d, c] = qcol.back();
                qcol.pop_back();
                if (!alive[static_cast<size_t>(d)][static_cast<size_t>(c)]) continue;
                auto& col = cols[static_cast<size_t>(d)][static_cast<size_t>(c)];
                if (col.size() != 1) continue;
                auto [r, v] = col[0];
                if ((v == 1 || v == -1) && alive[static_cast<size_t>(d) - 1][static_cast<size_t>(r)])
                    eliminate(d, r, c);
            }
        }
    }
};

}  // namespace

ChainComplex reduce_complex(const ChainComplex& cc) {
    const int top = cc.top_degree();
    if (top < 0) return cc;
    ReduceWork w;
    w.top = top;
    w.cols.resize(static_cast<size_t>(top) + 1);
    w.alive.resize(static_cast<size_t>(top) + 1);
    w.row_deg.resize(static_cast<size_t>(top) + 1);
    w.row_sets.resize(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        w.alive[static_cast<size_t>(d)].assign(static_cast<size_t>(cc.generators[static_cast<size_t>(d)]), 1);
        w.row_deg[static_cast<size_t>(d)].assign(static_cast<size_t>(cc.generators[static_cast<size_t>(d)]), 0);
        w.row_sets[static_cast<size_t>(d)].resize(static_cast<size_t>(cc.generators[static_cast<size_t>(d)]));
        if (d >= 1) w.cols[static_cast<size_t>(d)].resize(static_cast<size_t>(cc.generators[static_cast<size_t>(d)]));
    }
    for (int d = 1; d <= top; ++d) {
        for (const auto& t : cc.boundary[static_cast<size_t>(d)].triplets) {
            if (t.value > std::numeric_limits<std::int32_t>::max() ||
                t.value < std::numeric_limits<std::int32_t>::min())
                return cc;  // unexpected huge input entry; skip reduction
            w.cols[static_cast<size_t>(d)][static_cast<size_t>(t.col)].push_back(
                {static_cast<std::int32_t>(t.row), static_cast<std::int64_t>(t.value)});
            w.row_deg[static_cast<size_t>(d) - 1][static_cast<size_t>(t.row)]++;
            w.row_sets[static_cast<size_t>(d) - 1][static_cast<size_t>(t.row)].push_back(
                static_cast<std::int32_t>(t.col));
        }
        for (auto& col : w.cols[static_cast<size_t>(d)]) std::sort(col.begin(), col.end());
    }

    // seed the free-pair queues
    for (int d = 0; d <= top; ++d)
        for (std::int32_t r = 0; r < static_cast<std::int32_t>(cc.generators[static_cast<size_t>(d)]); ++r)
            if (w.row_deg[static_cast<size_t>(d)][static_cast<size_t>(r)] == 1) w.qrow.push_back({d, r});
    for (int d = 1; d <= top; ++d)
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(cc.generators[static_cast<size_t>(d)]); ++c)
            if (w.cols[static_cast<size_t>(d)][static_cast<size_t>(c)].size() == 1) w.qcol.push_back({d, c});
    w.drain_queues();

    // general unit pivots on whatever remains
    while (!w.overflow) {
        int bd = -1;
        std::int32_t ba = -1, bb = -1;
        std::int64_t best_cost = -1;
        for (int d = 1; d <= top; ++d) {
            const auto& colset = w.cols[static_cast<size_t>(d)];
            for (std::int32_t c = 0; c < static_cast<std::int32_t>(colset.size()); ++c) {
                if (!w.alive[static_cast<size_t>(d)][static_cast<size_t>(c)]) continue;
                for (const auto& [r, v] : colset[static_cast<size_t>(c)]) {
                    if (v != 1 && v != -1) continue;
                    std::int64_t cost =
                        static_cast<std::int64_t>(w.row_deg[static_cast<size_t>(d) - 1][static_cast<size_t>(r)] - 1) *
                        static_cast<std::int64_t>(colset[static_cast<size_t>(c)].size() - 1);
                    if (best_cost < 0 || cost < best_cost) {
                        best_cost = cost;
                        bd = d;
                        ba = r;
                        bb = c;
                    }
                }
            }
        }
        if (bd < 0) break;
        w.eliminate(bd, ba, bb);
        w.drain_queues();
    }

    // extract the remaining complex
    ChainComplex out;
    out.generators.assign(static_cast<size_t>(top) + 1, 0);
    std::vector<std::vector<std::int64_t>> newid(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) {
        newid[static_cast<size_t>(d)].assign(static_cast<size_t>(cc.generators[static_cast<size_t>(d)]), -1);
        std::int64_t next = 0;
        for (size_t g = 0; g < w.alive[static_cast<size_t>(d)].size(); ++g)
            if (w.alive[static_cast<size_t>(d)][g]) newid[static_cast<size_t>(d)][g] = next++;
        out.generators[static_cast<size_t>(d)] = next;
    }
    out.boundary.resize(static_cast<size_t>(top) + 1);
    out.boundary[0] = SparseIntMatrix(0, out.generators[0]);
    for (int d = 1; d <= top; ++d) {
        SparseIntMatrix m(out.generators[static_cast<size_t>(d) - 1], out.generators[static_cast<size_t>(d)]);
        for (size_t c = 0; c < w.cols[static_cast<size_t>(d)].size(); ++c) {
            if (!w.alive[static_cast<size_t>(d)][c]) continue;
            for (const auto& [r, v] : w.cols[static_cast<size_t>(d)][c])
                m.add_entry(newid[static_cast<size_t>(d) - 1][static_cast<size_t>(r)],
                            newid[static_cast<size_t>(d)][c], v);
        }
        m.normalize();
        out.boundary[static_cast<size_t>(d)] = std::move(m);
    }
    // drop empty top degrees
    while (!out.generators.empty() && out.generators.back() == 0) {
        out.generators.pop_back();
        out.boundary.pop_back();
    }
    return out;
}

HomologyGroups homology(const ChainComplex& cc, const HomologyOptions& opts) {
    if (opts.validate && !cc.boundaries_compose_to_zero())
        throw std::invalid_argument("homology: boundary composite is nonzero");
    const ChainComplex reduced = opts.reduce_first ? reduce_complex(cc) : cc;
    const int top = cc.top_degree();
    const int rtop = reduced.top_degree();

    std::vector<std::vector<Int>> factors(static_cast<size_t>(rtop) + 2);
    auto compute = [&](int d) {
        return invariant_factors(reduced.boundary[static_cast<size_t>(d)]);
    };
    if (opts.threads > 1 && rtop >= 1) {
        std::vector<std::future<std::vector<Int>>> futs;
        for (int d = 1; d <= rtop; ++d)
            futs.push_back(std::async(std::launch::async, compute, d));
        for (int d = 1; d <= rtop; ++d) factors[static_cast<size_t>(d)] = futs[static_cast<size_t>(d) - 1].get();
    } else {
        for (int d = 1; d <= rtop; ++d) factors[static_cast<size_t>(d)] = compute(d);
    }

    HomologyGroups out;
    out.betti.assign(static_cast<size_t>(top) + 1, 0);
    out.torsion.assign(static_cast<size_t>(top) + 1, {});
    for (int d = 0; d <= top; ++d) {
        std::int64_t n = d <= rtop ? reduced.generators[static_cast<size_t>(d)] : 0;
        std::int64_t rk_d = d >= 1 && d <= rtop
                                ? static_cast<std::int64_t>(factors[static_cast<size_t>(d)].size())
                                : 0;
        std::int64_t rk_up = d + 1 <= rtop
                                 ? static_cast<std::int64_t>(factors[static_cast<size_t>(d) + 1].size())
                                 : 0;
        out.betti[static_cast<size_t>(d)] = n - rk_d - rk_up;
        if (d + 1 <= rtop)
            for (const auto& f : factors[static_cast<size_t>(d) + 1])
                if (f != 1 && f != -1) out.torsion[static_cast<size_t>(d)].push_back(f);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boundary matrices
// ---------------------------------------------------------------------------

namespace {

// binary search for a chain (as a key of length stride) in the flat sorted list
std::int64_t find_chain(const std::vector<std::int32_t>& flat, int stride,
                        const std::int32_t* key) {
    std::int64_t lo = 0, hi = static_cast<std::int64_t>(flat.size()) / stride;
    while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        const std::int32_t* p = flat.data() + mid * stride;
        int cmp = 0;
        for (int t = 0; t < stride; ++t) {
            if (p[t] != key[t]) {
                cmp = p[t] < key[t] ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) return mid;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return -1;
}

}  // namespace

ChainComplex boundary_matrices(const PosetComplex& pc) {
    ChainComplex cc;
    const int top = pc.dim();
    if (top < 0) {
        cc.generators = {0};
        cc.boundary = {SparseIntMatrix(0, 0)};
        return cc;
    }
    cc.generators.resize(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) cc.generators[static_cast<size_t>(d)] = pc.chain_count(d);
    cc.boundary.resize(static_cast<size_t>(top) + 1);
    cc.boundary[0] = SparseIntMatrix(0, cc.generators[0]);
    for (int d = 1; d <= top; ++d) {
        SparseIntMatrix m(cc.generators[static_cast<size_t>(d) - 1], cc.generators[static_cast<size_t>(d)]);
        const auto& flat = pc.chains[static_cast<size_t>(d)];
        const auto& below = pc.chains[static_cast<size_t>(d) - 1];
        const int stride = d + 1;
        std::vector<std::int32_t> face(static_cast<size_t>(d));
        const std::int64_t count = pc.chain_count(d);
        m.triplets.reserve(static_cast<size_t>(count) * static_cast<size_t>(stride));
        for (std::int64_t c = 0; c < count; ++c) {
            const std::int32_t* chain = flat.data() + c * stride;
            for (int i = 0; i <= d; ++i) {
                int pos = 0;
                for (int j = 0; j <= d; ++j)
                    if (j != i) face[static_cast<size_t>(pos++)] = chain[j];
                std::int64_t idx = find_chain(below, d, face.data());
                if (idx < 0) throw std::logic_error("boundary_matrices: face chain missing");
                m.triplets.push_back({idx, c, Int(i % 2 == 0 ? 1 : -1)});
            }
        }
        m.normalize();
        cc.boundary[static_cast<size_t>(d)] = std::move(m);
    }
    return cc;
}

std::int64_t euler_characteristic(const ChainComplex& cc) {
    std::int64_t chi = 0;
    for (int d = 0; d <= cc.top_degree(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * cc.generators[static_cast<size_t>(d)];
    return chi;
}

std::vector<std::int64_t> configuration_poincare(int n, int k) {
    std::vector<std::int64_t> poly{1};
    for (int i = 1; i < k; ++i) {
        std::vector<std::int64_t> next(poly.size() + static_cast<size_t>(n) - 1, 0);
        for (size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j];
            next[j + static_cast<size_t>(n) - 1] += i * poly[j];
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace encell
