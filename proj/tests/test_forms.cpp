#include <doctest.h>

#include "dform/forms.hpp"
#include "test_util.hpp"

using namespace dform;
using testutil::Rng;

namespace {
FieldRef top(const TowerPtr& t) { return FieldRef{t, t->top_level()}; }

std::vector<Value> ints(const FieldRef& K, std::initializer_list<long> ns) {
    std::vector<Value> v;
    for (long n : ns) v.push_back(v_int(K, n));
    return v;
}
} // namespace

TEST_CASE("make_form validation") {
    auto f7 = TowerField::make_fq(FqField::make(7));
    FieldRef K = top(f7);
    CHECK_NOTHROW(make_form(3, K, ints(K, {1, 2, 4})));
    CHECK_THROWS_AS(make_form(3, K, ints(K, {1, 0})), DegenerateForm);
    CHECK_THROWS_AS(make_form(3, K, {}), DegenerateForm);
    CHECK_THROWS_AS(make_form(1, K, ints(K, {1})), UnsupportedDegree);

    auto f2 = TowerField::make_fq(FqField::make(2));
    FieldRef K2 = top(f2);
    CHECK_THROWS_AS(make_form(3, K2, ints(K2, {1})), UnsupportedCharacteristic);
}

TEST_CASE("evaluate") {
    auto f7 = TowerField::make_fq(FqField::make(7));
    FieldRef K = top(f7);
    auto phi = make_form(3, K, ints(K, {1, 2, 4}));
    CHECK(evaluate(phi, ints(K, {1, 1, 1})) == v_zero(K));
    CHECK(evaluate(phi, ints(K, {0, 0, 0})) == v_zero(K));
    auto psi = make_form(3, K, ints(K, {1, 6}));
    CHECK(evaluate(psi, ints(K, {1, 1})) == v_zero(K));
    CHECK(evaluate(psi, ints(K, {1, 2})) == v_int(K, 1 + 6 * 8));
    CHECK_THROWS_AS(evaluate(phi, ints(K, {1, 1})), DimensionMismatch);
}

TEST_CASE("orthogonal sum") {
    auto q7 = TowerField::make_padic(7);
    FieldRef K = top(q7);
    auto a = make_form(3, K, ints(K, {1, 2}));
    auto b = make_form(3, K, ints(K, {7, 14}));
    auto s = orthogonal_sum(a, b);
    CHECK(s.dim() == 4);
    CHECK(s.coeffs == ints(K, {1, 2, 7, 14}));

    auto f7 = TowerField::make_fq(FqField::make(7));
    auto c = make_form(3, top(f7), ints(top(f7), {1}));
    CHECK_THROWS_AS(orthogonal_sum(a, c), FieldMismatch);
    auto d4 = make_form(4, K, ints(K, {1}));
    CHECK_THROWS_AS(orthogonal_sum(a, d4), DegreeMismatch);
}

TEST_CASE("springer decomposition of <7,14,3,98> over Q_7") {
    auto q7 = TowerField::make_padic(7);
    FieldRef K = top(q7);
    auto phi = make_form(3, K, ints(K, {7, 14, 3, 98}));
    auto sd = springer_decompose(phi);
    REQUIRE(sd.blocks.size() == 3);
    CHECK(sd.blocks[0].j == 0);
    CHECK(sd.blocks[0].original_slots == std::vector<std::size_t>({2}));
    CHECK(sd.blocks[0].unit_form.coeffs == ints(K, {3}));
    CHECK(sd.blocks[1].j == 1);
    CHECK(sd.blocks[1].original_slots == std::vector<std::size_t>({0, 1}));
    CHECK(sd.blocks[1].unit_form.coeffs == ints(K, {1, 2}));
    CHECK(sd.blocks[2].j == 2);
    CHECK(sd.blocks[2].original_slots == std::vector<std::size_t>({3}));
    CHECK(sd.blocks[2].unit_form.coeffs == ints(K, {2}));
    CHECK(sd.slots[3].k == 0);
    for (std::size_t i = 0; i < phi.dim(); ++i) CHECK(sd.reassemble_slot(i) == phi.coeffs[i]);
}

TEST_CASE("springer: unit form stays one block; stripped d-th powers recorded") {
    auto q7 = TowerField::make_padic(7);
    FieldRef K = top(q7);
    auto unit = make_form(3, K, ints(K, {1, 2}));
    auto sd1 = springer_decompose(unit);
    CHECK(sd1.blocks.size() == 1);
    CHECK(sd1.blocks[0].j == 0);
    CHECK(sd1.blocks[0].unit_form.coeffs == unit.coeffs);

    auto f5t = TowerField::make_fq(FqField::make(5), {"t"});
    FieldRef L = top(f5t);
    auto phi = make_form(3, L, {v_pow(v_uniformizer(L), 3)});
    auto sd2 = springer_decompose(phi);
    REQUIRE(sd2.blocks.size() == 1);
    CHECK(sd2.blocks[0].j == 0);
    CHECK(sd2.slots[0].k == 1);
    CHECK(sd2.blocks[0].unit_form.coeffs[0] == v_one(L));
}

TEST_CASE("springer round-trip on random forms") {
    Rng rng(31337);
    auto f7t = TowerField::make_fq(FqField::make(7), {"t"});
    auto q7 = TowerField::make_padic(7);
    for (const auto& t : {f7t, q7}) {
        FieldRef K = top(t);
        for (int rep = 0; rep < 200; ++rep) {
            const int n = static_cast<int>(testutil::rnd_range(rng, 1, 5));
            std::vector<Value> coeffs;
            for (int i = 0; i < n; ++i) coeffs.push_back(testutil::random_exact_nonzero(rng, K));
            auto phi = make_form(3, K, coeffs);
            auto sd = springer_decompose(phi);
            CHECK(sd.blocks.size() <= 3);
            std::size_t total = 0;
            for (const auto& b : sd.blocks) {
                total += b.original_slots.size();
                for (const auto& u : b.unit_form.coeffs) {
                    CHECK(v_val_exact(u) == std::optional<long>(0));
                    CHECK(v_known_nonzero(residue(u)));
                }
            }
            CHECK(total == phi.dim());
            for (std::size_t i = 0; i < phi.dim(); ++i)
                CHECK(sd.reassemble_slot(i) == phi.coeffs[i]);
            // evaluate the reassembled block sum against the original on a random vector
            std::vector<Value> x;
            for (std::size_t i = 0; i < phi.dim(); ++i)
                x.push_back(testutil::random_exact_nonzero(rng, K));
            Value direct = evaluate(phi, x);
            Value viaBlocks = v_zero(K);
            for (const auto& b : sd.blocks) {
                std::vector<Value> xs;
                for (std::size_t oi : b.original_slots)
                    xs.push_back(v_shift(x[oi], sd.slots[oi].k));
                viaBlocks =
                    v_add(viaBlocks, v_shift(evaluate(b.unit_form, xs), b.j));
            }
            CHECK(direct == viaBlocks);
        }
    }
}

TEST_CASE("isomorphism examples over F_7, d = 3") {
    auto f7 = TowerField::make_fq(FqField::make(7));
    FieldRef K = top(f7);
    auto a = make_form(3, K, ints(K, {1, 2}));
    auto b = make_form(3, K, ints(K, {2, 1}));
    auto perm = is_isomorphic(a, b);
    REQUIRE(perm.has_value());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(dth_power_class(b.coeffs[i], 3) == dth_power_class(a.coeffs[(*perm)[i]], 3));
    }
    CHECK(is_isomorphic(make_form(3, K, ints(K, {1})), make_form(3, K, ints(K, {6}))).has_value());
    CHECK_FALSE(
        is_isomorphic(make_form(3, K, ints(K, {1})), make_form(3, K, ints(K, {2}))).has_value());
    CHECK_THROWS_AS(
        is_isomorphic(make_form(2, K, ints(K, {1})), make_form(2, K, ints(K, {1}))),
        UnsupportedDegree);
}

TEST_CASE("isomorphism is an equivalence and d-th-power-twist invariant") {
    Rng rng(515151);
    auto q7 = TowerField::make_padic(7);
    FieldRef K = top(q7);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = static_cast<int>(testutil::rnd_range(rng, 1, 4));
        std::vector<Value> c1, c2;
        for (int i = 0; i < n; ++i) {
            c1.push_back(testutil::random_exact_nonzero(rng, K));
            c2.push_back(testutil::random_exact_nonzero(rng, K));
        }
        auto f1 = make_form(3, K, c1);
        auto f2 = make_form(3, K, c2);
        CHECK(is_isomorphic(f1, f1).has_value()); // reflexive
        const bool ab = is_isomorphic(f1, f2).has_value();
        const bool ba = is_isomorphic(f2, f1).has_value();
        CHECK(ab == ba); // symmetric
        // twist every slot by a random cube: stays isomorphic
        std::vector<Value> twisted;
        for (const auto& c : c1)
            twisted.push_back(v_mul(c, v_pow(testutil::random_exact_nonzero(rng, K), 3)));
        CHECK(is_isomorphic(f1, make_form(3, K, twisted)).has_value());
    }
}
