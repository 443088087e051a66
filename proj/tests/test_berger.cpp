#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "encell/berger.hpp"

using namespace encell;

namespace {

BergerElem be(int k, std::vector<int> b, std::vector<int> t) {
    return BergerElem(k, std::move(b), std::move(t));
}

}  // namespace

TEST_CASE("leq strictness rule") {
    CHECK(leq(be(2, {0}, {1, 2}), be(2, {0}, {1, 2})));
    CHECK(leq(be(2, {0}, {1, 2}), be(2, {1}, {2, 1})));
    CHECK_FALSE(leq(be(2, {0}, {1, 2}), be(2, {0}, {2, 1})));
    CHECK_THROWS_AS(leq(be(2, {0}, {1, 2}), be(1, {}, {1})), std::invalid_argument);
}

TEST_CASE("enumeration counts and order") {
    CHECK(enumerate_poset(2, 2).size() == 4);
    CHECK(enumerate_poset(3, 1).size() == 1);
    CHECK(enumerate_poset(2, 3).size() == 48);
    CHECK(enumerate_poset(1, 0).size() == 1);

    auto k12 = enumerate_poset(1, 2);
    REQUIRE(k12.size() == 2);
    CHECK_FALSE(leq(k12[0], k12[1]));
    CHECK_FALSE(leq(k12[1], k12[0]));

    // deterministic: b lexicographic, then one-line order of t
    auto k22 = enumerate_poset(2, 2);
    CHECK(k22[0] == be(2, {0}, {1, 2}));
    CHECK(k22[1] == be(2, {0}, {2, 1}));
    CHECK(k22[2] == be(2, {1}, {1, 2}));
    CHECK(k22[3] == be(2, {1}, {2, 1}));
}

TEST_CASE("leq is a partial order") {
    for (int n = 1; n <= 2; ++n) {
        for (int k = 0; k <= 3; ++k) {
            auto elems = enumerate_poset(n, k);
            for (const auto& x : elems) CHECK(leq(x, x));
            // antisymmetry and transitivity, exhaustively
            for (const auto& x : elems)
                for (const auto& y : elems) {
                    if (leq(x, y) && leq(y, x)) CHECK(x == y);
                    for (const auto& z : elems)
                        if (leq(x, y) && leq(y, z)) CHECK(leq(x, z));
                }
        }
    }
}

TEST_CASE("sigma action") {
    auto x = be(2, {1}, {1, 2});
    CHECK(sigma_act(x, Perm::identity(2)) == x);
    CHECK(sigma_act(x, Perm({2, 1})) == be(2, {1}, {2, 1}));

    // right action law, exhaustively for k <= 3
    for (int k = 1; k <= 3; ++k) {
        auto elems = enumerate_poset(2, k);
        auto perms = all_perms(k);
        for (const auto& e : elems)
            for (const auto& rho : perms)
                for (const auto& tau : perms)
                    CHECK(sigma_act(sigma_act(e, rho), tau) == sigma_act(e, rho.compose(tau)));
    }
}

TEST_CASE("operad unit laws") {
    const BergerElem unit(1, {}, {1});
    for (int k = 0; k <= 3; ++k) {
        for (const auto& x : enumerate_poset(2, k)) {
            std::vector<BergerElem> units(static_cast<size_t>(k), unit);
            CHECK(operad_compose(x, units) == x);
            CHECK(operad_compose(unit, {x}) == x);
        }
    }
}

TEST_CASE("operad composition blocks") {
    auto x = be(2, {1}, {1, 2});
    CHECK(operad_compose(x, {be(1, {}, {1}), be(1, {}, {1})}) == x);

    // cross-block values come from x, within-block from the inner elements
    auto y = operad_compose(x, {be(2, {0}, {2, 1}), be(1, {}, {1})});
    CHECK(y.k == 3);
    CHECK(y.b_at(1, 2) == 0);  // within block 1
    CHECK(y.b_at(1, 3) == 1);
    CHECK(y.b_at(2, 3) == 1);
    CHECK(y.order == std::vector<int>{2, 1, 3});
}

TEST_CASE("partial-composition associativity, exhaustive arities <= 3") {
    for (int n = 1; n <= 2; ++n) {
        std::vector<std::vector<BergerElem>> pool;
        for (int k = 0; k <= 3; ++k) pool.push_back(enumerate_poset(n, k));
        for (int k = 1; k <= 3; ++k)
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b)
                    for (const auto& x : pool[static_cast<size_t>(k)])
                        for (const auto& y : pool[static_cast<size_t>(a)])
                            for (const auto& z : pool[static_cast<size_t>(b)]) {
                                // nested: (x o_i y) o_{i-1+j} z == x o_i (y o_j z)
                                for (int i = 1; i <= k; ++i)
                                    for (int j = 1; j <= a; ++j)
                                        CHECK(compose_at(compose_at(x, y, i), z, i - 1 + j) ==
                                              compose_at(x, compose_at(y, z, j), i));
                                // disjoint: (x o_i y) o_{j+a-1} z == (x o_j z) o_i y for i < j
                                for (int i = 1; i <= k; ++i)
                                    for (int j = i + 1; j <= k; ++j)
                                        CHECK(compose_at(compose_at(x, y, i), z, j + a - 1) ==
                                              compose_at(compose_at(x, z, j), y, i));
                            }
    }
}

TEST_CASE("composition is equivariant") {
    std::mt19937 rng(11);
    for (int n = 1; n <= 2; ++n) {
        auto outer = enumerate_poset(n, 2);
        auto inner1 = enumerate_poset(n, 2);
        auto inner2 = enumerate_poset(n, 1);
        for (const auto& x : outer)
            for (const auto& y1 : inner1)
                for (const auto& y2 : inner2)
                    for (const auto& sigma : all_perms(2)) {
                        // outer permutation: gamma(x sigma; y_{sigma(1)}, y_{sigma(2)})
                        // equals gamma(x; y_1, y_2) acted by the block permutation
                        std::vector<BergerElem> ys{y1, y2};
                        std::vector<BergerElem> ys_perm;
                        for (int i = 1; i <= 2; ++i)
                            ys_perm.push_back(ys[static_cast<size_t>(sigma(i)) - 1]);
                        auto lhs = operad_compose(sigma_act(x, sigma), ys_perm);
                        // block permutation of sizes (|y1|, |y2|) induced by sigma
                        std::vector<int> sizes{y1.k, y2.k};
                        std::vector<int> offs{0, sizes[0]};
                        std::vector<int> perm_sizes{sizes[static_cast<size_t>(sigma(1)) - 1],
                                                    sizes[static_cast<size_t>(sigma(2)) - 1]};
                        std::vector<int> perm_offs{0, perm_sizes[0]};
                        std::vector<int> imgs(static_cast<size_t>(sizes[0] + sizes[1]));
                        for (int i = 1; i <= 2; ++i) {
                            int block = sigma(i);
                            for (int t = 1; t <= sizes[static_cast<size_t>(block) - 1]; ++t)
                                imgs[static_cast<size_t>(perm_offs[static_cast<size_t>(i) - 1] + t) - 1] =
                                    offs[static_cast<size_t>(block) - 1] + t;
                        }
                        auto rhs = sigma_act(operad_compose(x, ys), Perm(imgs));
                        CHECK(lhs == rhs);
                    }
    }
}

TEST_CASE("composition and the action preserve the order") {
    for (int n = 1; n <= 2; ++n) {
        auto elems = enumerate_poset(n, 2);
        auto ones = enumerate_poset(n, 2);
        for (const auto& x : elems)
            for (const auto& y : elems) {
                if (!leq(x, y)) continue;
                for (const auto& sigma : all_perms(2))
                    CHECK(leq(sigma_act(x, sigma), sigma_act(y, sigma)));
                for (const auto& w : ones) {
                    CHECK(leq(operad_compose(x, {w, w}), operad_compose(y, {w, w})));
                    for (const auto& w2 : ones)
                        if (leq(w, w2))
                            CHECK(leq(operad_compose(x, {w, w}), operad_compose(y, {w2, w2})));
                }
            }
    }
}

TEST_CASE("order complex shapes") {
    auto k12 = order_complex(enumerate_poset(1, 2));
    CHECK(k12.chain_count(0) == 2);
    CHECK(k12.dim() == 0);

    auto k22 = order_complex(enumerate_poset(2, 2));
    CHECK(k22.chain_count(0) == 4);
    CHECK(k22.chain_count(1) == 4);
    CHECK(k22.dim() == 1);

    auto single = order_complex({BergerElem(1, {}, {1})});
    CHECK(single.chain_count(0) == 1);
    CHECK(single.dim() == 0);

    // chains closed under subchains: every face of a chain is a chain
    auto k23 = order_complex(enumerate_poset(2, 3));
    for (int d = 1; d <= k23.dim(); ++d) {
        const auto& flat = k23.chains[static_cast<size_t>(d)];
        const int stride = d + 1;
        for (size_t c = 0; c + static_cast<size_t>(stride) <= flat.size(); c += static_cast<size_t>(stride))
            for (int i = 0; i + 1 < stride; ++i)
                CHECK(leq(k23.vertices[static_cast<size_t>(flat[c + static_cast<size_t>(i)])],
                          k23.vertices[static_cast<size_t>(flat[c + static_cast<size_t>(i) + 1])]));
    }
}

TEST_CASE("q_membership") {
    CHECK(q_membership(LabelMap(2, {1, 2}), be(2, {0}, {1, 2})));
    CHECK_FALSE(q_membership(LabelMap(2, {2, 1}), be(2, {0}, {1, 2})));
    CHECK(q_membership(LabelMap(2, {2, 1}), be(2, {1}, {1, 2})));
}
