#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "encell/combinat.hpp"

using namespace encell;

namespace {

LabelMap lm(int k, std::vector<int> v) { return LabelMap(k, std::move(v)); }

Diagram dg(int k, std::vector<int> f, std::vector<int> h, int s) {
    return Diagram(LabelMap(k, std::move(f)), std::move(h), s);
}

// every map [0..len) -> {1..k}, recursively
void for_each_map(int k, int len, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& fn) {
    if (len == 0) {
        fn(cur);
        return;
    }
    for (int v = 1; v <= k; ++v) {
        cur.push_back(v);
        for_each_map(k, len - 1, cur, fn);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("complexity on the defining cases") {
    CHECK(complexity(lm(1, {1})) == 0);
    CHECK(complexity(lm(0, {})) == 0);
    CHECK(complexity(lm(2, {1, 2, 1})) == 2);
    CHECK(complexity(lm(2, {1, 1, 2, 2})) == 1);
    CHECK(complexity(lm(3, {1, 2, 3, 1})) == 2);
    CHECK(complexity(lm(2, {})) == 0);
    CHECK(complexity(lm(2, {1, 1, 1})) == 0);
}

TEST_CASE("complexity is relabeling-invariant") {
    for (int k = 2; k <= 3; ++k) {
        const auto perms = all_perms(k);
        std::vector<int> cur;
        for (int len = 0; len <= 5; ++len) {
            for_each_map(k, len, cur, [&](const std::vector<int>& vals) {
                LabelMap f(k, vals);
                int c = complexity(f);
                for (const auto& p : perms) CHECK(complexity(relabel(f, p)) == c);
            });
        }
    }
}

TEST_CASE("complexity is monotone under deletion") {
    std::vector<int> cur;
    for (int k = 2; k <= 3; ++k) {
        for (int len = 1; len <= 5; ++len) {
            for_each_map(k, len, cur, [&](const std::vector<int>& vals) {
                LabelMap f(k, vals);
                Diagram d(f, std::vector<int>(vals.size(), 0), 0);
                int c = complexity(f);
                for (int j = 0; j < len; ++j)
                    CHECK(complexity(delete_position(d, j).f) <= c);
            });
        }
    }
}

TEST_CASE("berger invariant on the defining cases") {
    auto inv = berger_invariant(lm(2, {1, 2}));
    CHECK(inv.b_at(1, 2) == 0);
    CHECK(inv.order == std::vector<int>{1, 2});

    inv = berger_invariant(lm(2, {2, 1, 2}));
    CHECK(inv.b_at(1, 2) == 1);
    CHECK(inv.order == std::vector<int>{2, 1});

    inv = berger_invariant(lm(3, {1, 2, 1, 3}));
    CHECK(inv.b_at(1, 2) == 1);
    CHECK(inv.b_at(1, 3) == 0);
    CHECK(inv.b_at(2, 3) == 0);
    CHECK(inv.order == std::vector<int>{1, 2, 3});

    CHECK_THROWS_AS(berger_invariant(lm(2, {1, 1})), std::invalid_argument);
}

TEST_CASE("pairwise invariants recover the complexity") {
    std::vector<int> cur;
    for (int k = 2; k <= 3; ++k) {
        for (int len = k; len <= 5; ++len) {
            for_each_map(k, len, cur, [&](const std::vector<int>& vals) {
                LabelMap f(k, vals);
                if (!f.surjective()) return;
                auto inv = berger_invariant(f);
                int maxpair = 0;
                for (int v : inv.b) maxpair = std::max(maxpair, v + 1);
                CHECK(maxpair == complexity(f));
            });
        }
    }
}

TEST_CASE("nondegeneracy follows the adjacency rule") {
    CHECK(is_nondegenerate(dg(2, {1, 2}, {0, 0}, 0)));
    CHECK_FALSE(is_nondegenerate(dg(1, {1, 1}, {0, 0}, 0)));
    CHECK(is_nondegenerate(dg(1, {1, 1}, {0, 1}, 1)));
    CHECK_FALSE(is_nondegenerate(dg(2, {1, 1}, {0, 1}, 1)));  // not surjective
}

TEST_CASE("delete_position and merge_adjacent") {
    Diagram d = dg(2, {1, 2, 1}, {0, 0, 0}, 0);
    CHECK(delete_position(d, 1) == dg(2, {1, 1}, {0, 0}, 0));
    CHECK(delete_position(dg(2, {1, 2}, {0, 1}, 1), 0) == dg(2, {2}, {1}, 1));
    CHECK(delete_position(dg(1, {1}, {0}, 0), 0) == dg(1, {}, {}, 0));

    CHECK(merge_adjacent(dg(2, {1, 1, 2}, {0, 0, 0}, 0), 0) == dg(2, {1, 2}, {0, 0}, 0));
    CHECK(merge_adjacent(dg(2, {1, 2, 2}, {0, 1, 1}, 1), 1) == dg(2, {1, 2}, {0, 1}, 1));
    CHECK_THROWS_AS(merge_adjacent(dg(2, {1, 2}, {0, 0}, 0), 0), std::invalid_argument);
    CHECK_THROWS_AS(delete_position(dg(1, {1}, {0}, 0), 1), std::out_of_range);
}

TEST_CASE("diagram validation") {
    CHECK_THROWS_AS(dg(2, {1, 2}, {1, 0}, 1), std::invalid_argument);   // h not monotone
    CHECK_THROWS_AS(dg(2, {1, 2}, {0}, 0), std::invalid_argument);      // length mismatch
    CHECK_THROWS_AS(lm(2, {3}), std::invalid_argument);                 // value out of range
}
