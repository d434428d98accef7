#include <catch2/catch.hpp>

#include <numeric>
#include <random>

#include "confmodels/catalog.hpp"
#include "confmodels/linalg.hpp"
#include "confmodels/tensor.hpp"
#include "oracles.hpp"

using namespace confmodels;

namespace {

TensorKey random_key(std::mt19937_64& rng, const AlgebraPtr& a, int n)
{
    std::uniform_int_distribution<int> pick(0, a->dim() - 1);
    TensorKey k;
    for (int i = 0; i < n; ++i)
        k.push_back(pick(rng));
    return k;
}

TensorElement random_element(std::mt19937_64& rng, const AlgebraPtr& a, int n)
{
    std::uniform_int_distribution<int> c(-2, 2), terms(1, 3);
    TensorElement e = TensorElement::zero(a, n);
    for (int t = terms(rng); t > 0; --t)
        e.add(random_key(rng, a, n), Scalar(c(rng)));
    return e;
}

std::vector<int> degrees_of(const AlgebraPtr& a, const TensorKey& k)
{
    std::vector<int> d;
    for (int x : k)
        d.push_back(a->degree(x));
    return d;
}

}  // namespace

TEST_CASE("Koszul product sign matches the reordering oracle")
{
    std::mt19937_64 rng(3);
    for (const char* key : {"torus", "genus(2)", "product(sphere(1),torus)"}) {
        auto h = catalog_get(key);
        const AlgebraPtr& a = h->algebra_ptr();
        for (int trial = 0; trial < 300; ++trial) {
            const int n = 1 + trial % 4;
            TensorKey u = random_key(rng, a, n), v = random_key(rng, a, n);
            std::vector<int> degs = degrees_of(a, u);
            auto dv = degrees_of(a, v);
            degs.insert(degs.end(), dv.begin(), dv.end());
            std::vector<int> order;
            for (int i = 0; i < n; ++i) {
                order.push_back(i);
                order.push_back(n + i);
            }
            std::vector<AlgebraPtr> slots(static_cast<std::size_t>(n), a);
            CHECK(product_sign(slots, u, v) == oracle::reorder_sign(degs, order));
        }
    }
}

TEST_CASE("insertion sign matches the reordering oracle")
{
    std::mt19937_64 rng(5);
    auto h = genus(2);
    const AlgebraPtr& a = h->algebra_ptr();
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 1 + trial % 4, n = k + trial % 3;
        std::vector<int> slots(static_cast<std::size_t>(n));
        std::iota(slots.begin(), slots.end(), 1);
        std::shuffle(slots.begin(), slots.end(), rng);
        slots.resize(static_cast<std::size_t>(k));
        SlotInjection phi(slots, n);
        TensorKey key = random_key(rng, a, k);
        std::vector<int> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return phi(x + 1) < phi(y + 1); });
        std::vector<AlgebraPtr> src(static_cast<std::size_t>(k), a);
        CHECK(insertion_sign(src, key, phi) == oracle::reorder_sign(degrees_of(a, key), order));
    }
}

TEST_CASE("slot injections")
{
    CHECK_THROWS(SlotInjection({1, 1}, 3));
    CHECK_THROWS(SlotInjection({4}, 3));
    SlotInjection phi({2, 3}, 3), psi({1, 3, 4}, 4);
    SlotInjection c = phi.compose_after(psi);
    CHECK(c.targets() == std::vector<int>{3, 4});
}

TEST_CASE("tensor algebra is associative and graded commutative")
{
    std::mt19937_64 rng(9);
    auto h = catalog_get("product(sphere(1),torus)");
    const AlgebraPtr& a = h->algebra_ptr();
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + trial % 3;
        TensorElement x = random_element(rng, a, n), y = random_element(rng, a, n), z = random_element(rng, a, n);
        CHECK((x * y) * z == x * (y * z));
    }
    std::vector<AlgebraPtr> slots(2, a);
    for (int trial = 0; trial < 100; ++trial) {
        TensorKey u = random_key(rng, a, 2), v = random_key(rng, a, 2);
        TensorElement x(slots), y(slots);
        x.add(u, 1);
        y.add(v, 1);
        const int sign = (tensor_degree(slots, u) * tensor_degree(slots, v)) % 2 ? -1 : 1;
        CHECK(x * y == (y * x).scaled(sign));
    }
}

TEST_CASE("diagonal class")
{
    auto s2 = sphere(1);
    TensorElement d = diagonal_class(*s2);
    TensorElement expected = TensorElement::zero(s2->algebra_ptr(), 2);
    expected.add({0, 1}, 1);
    expected.add({1, 0}, 1);
    CHECK(d == expected);

    for (const auto& key : catalog_test_set()) {
        INFO(key);
        auto h = catalog_get(key);
        TensorElement delta = diagonal_class(*h);
        CHECK(diagonal_axiom_failures(delta).empty());
        // The multiplication map sends the diagonal to e(H) omega.
        Scalar on_omega = 0;
        for (const auto& [k, c] : delta.terms())
            for (const auto& [b, z] : h->algebra().product(k[0], k[1])) {
                CHECK(b == h->orientation());
                on_omega += c * z;
            }
        CHECK(on_omega == euler_characteristic(*h));
    }
}

TEST_CASE("punctured algebra and diagonal")
{
    auto h = complex_projective(2);
    Punctured p = puncture(h);
    CHECK(p.algebra.algebra->dim() == 2);
    CHECK(p.algebra.projection == std::vector<int>{0, 1, -1});
    TensorElement expected = TensorElement::zero(p.algebra.algebra, 2);
    expected.add({1, 1}, 1);
    CHECK(p.diagonal == expected);
    // x * x = 0 after puncturing.
    CHECK(p.algebra.algebra->product(1, 1).empty());
}

TEST_CASE("fat diagonal quotient against brute force")
{
    for (const char* key : {"sphere(1)", "cp(2)", "torus", "cp2_sum(2)", "genus(2)"}) {
        auto h = catalog_get(key);
        const AlgebraPtr& a = h->algebra_ptr();
        const int d = h->dim();
        TensorElement delta = diagonal_class(*h);
        for (int l = 1; l <= 3; ++l) {
            INFO(key << " l=" << l);
            FatDiagonalQuotient q(h, l);
            std::vector<AlgebraPtr> slots(static_cast<std::size_t>(l), a);
            std::vector<TensorElement> deltas;
            for (int s = 2; s <= l; ++s)
                deltas.push_back(insert(delta, SlotInjection({1, s}, l)));
            long total = 0;
            for (int deg = 0; deg <= q.max_degree(); ++deg) {
                auto tensors = q.tensors_of_degree(deg);
                std::map<TensorKey, int> column;
                for (const auto& t : tensors)
                    column.emplace(t, static_cast<int>(column.size()));
                std::vector<SparseVec> gens;
                for (const auto& ds : deltas)
                    for (const auto& t : q.tensors_of_degree(deg - h->formal_dimension())) {
                        TensorElement tt(slots);
                        tt.add(t, 1);
                        std::vector<std::pair<int, Scalar>> e;
                        const TensorElement prod = ds * tt;
                        for (const auto& [k, c] : prod.terms())
                            e.emplace_back(column.at(k), c);
                        gens.push_back(make_sparse(std::move(e)));
                    }
                const int r = oracle::rank(oracle::densify(gens, static_cast<int>(tensors.size())));
                CHECK(q.ideal_rank(deg) == r);
                CHECK(q.quotient_dim(deg) == static_cast<int>(tensors.size()) - r);
                CHECK(static_cast<int>(q.section_basis(deg).size()) == q.quotient_dim(deg));
                total += q.quotient_dim(deg);

                // project(v) - v lies in the ideal; section tensors are fixed.
                EchelonBasis ideal;
                for (const auto& g : gens)
                    ideal.insert(g);
                for (const auto& t : tensors) {
                    auto img = q.project({{t, Scalar(1)}});
                    SparseVec diff{{column.at(t), Scalar(-1)}};
                    for (const auto& [k, c] : img) {
                        CHECK(q.in_section(k));
                        axpy(diff, c, {{column.at(k), Scalar(1)}});
                    }
                    CHECK(ideal.contains(diff));
                    if (q.in_section(t))
                        CHECK(img == std::map<TensorKey, Scalar>{{t, Scalar(1)}});
                }
            }
            long expected = d;
            for (int k = 1; k < l; ++k)
                expected *= d - 1;
            CHECK(total == expected);
        }
    }
}
