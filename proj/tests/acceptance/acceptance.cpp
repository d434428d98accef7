// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "confmodels/catalog.hpp"
#include "confmodels/cohomology.hpp"
#include "confmodels/structure_maps.hpp"

using namespace confmodels;

namespace {

using Ctx = std::shared_ptr<const ModelContext>;

Ctx ctx_of(const std::string& key) { return ModelContext::make(catalog_get(key)); }

// Collects the first few mismatches of one criterion.
struct Check {
    std::ostringstream notes;
    int failures = 0;

    void expect(bool ok, const std::string& what)
    {
        if (ok)
            return;
        if (failures < 3)
            notes << (failures ? "; " : "") << what;
        ++failures;
    }
};

BigradedPolynomial s_times(int q, const Polynomial& f)
{
    BigradedPolynomial out;
    for (int p = 0; p <= f.degree(); ++p)
        out.add(q, p, f.coefficient(p));
    return out;
}

BigradedPolynomial braid_product(int from, int to)
{
    BigradedPolynomial out = BigradedPolynomial::one();
    for (int k = from; k <= to; ++k)
        out = out * BigradedPolynomial::binomial(k, 1, 1);
    return out;
}

BigradedPolynomial poincare(const Ctx& ctx, ModelKind kind, int n) { return betti(*ctx->model(kind, n)).poincare(); }

std::string label(const std::string& algebra, ModelKind kind, int n) { return algebra + " " + to_string(kind) + " n=" + std::to_string(n); }

void criterion1(Check& c)
{
    auto ctx = ctx_of("sphere(1)");
    for (int n = 3; n <= 6; ++n) {
        const auto got = poincare(ctx, ModelKind::J, n);
        c.expect(got == BigradedPolynomial::binomial(1, 1, 3) * braid_product(2, n - 2), "n=" + std::to_string(n) + " got " + got.to_string());
    }
}

void criterion2(Check& c)
{
    auto ctx = ctx_of("cp(1)");
    for (int n = 2; n <= 6; ++n) {
        ModelPtr m = ctx->model(ModelKind::Punctured, n);
        for (const auto& col : m->differential())
            c.expect(col.empty(), "nonzero differential at n=" + std::to_string(n));
        const auto got = poincare(ctx, ModelKind::Punctured, n);
        c.expect(got == braid_product(1, n - 1), "n=" + std::to_string(n) + " got " + got.to_string());
    }
}

void criterion3(Check& c)
{
    BigradedPolynomial expected;
    for (auto [q, p, k] : std::vector<std::tuple<int, int, int>>{{0, 0, 1}, {0, 1, 6}, {0, 2, 12}, {1, 2, 2}, {0, 3, 10}, {1, 3, 4}, {0, 4, 3}, {1, 4, 2}})
        expected.add(q, p, k);
    const auto got = poincare(ctx_of("torus"), ModelKind::J, 3);
    c.expect(got == expected, "got " + got.to_string());
    c.expect(got.at_s_equals_one() == Polynomial({1, 6, 14, 14, 5}), "s=1 gives " + got.at_s_equals_one().to_string());
}

void criterion4(Check& c)
{
    for (std::int64_t g : {2, 3}) {
        BigradedPolynomial expected;
        expected.add(0, 0, 1);
        expected.add(0, 1, 6 * g);
        expected.add(0, 2, 12 * g * g);
        expected.add(0, 3, 8 * g * g * g);
        expected.add(1, 3, 2 * g * g + g + 1);
        expected.add(0, 4, 2 * g * g + g);
        expected.add(1, 4, 2 * g);
        const auto got = poincare(ctx_of("genus(" + std::to_string(g) + ")"), ModelKind::J, 3);
        c.expect(got == expected, "g=" + std::to_string(g) + " got " + got.to_string());
    }
}

void criterion5(Check& c)
{
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        ModelPtr j2 = ctx->model(ModelKind::J, 2);
        for (const auto& col : j2->differential())
            c.expect(col.empty(), key + ": nonzero differential");
        const Polynomial px = algebra_poincare_poly(ctx->algebra().algebra());
        const Polynomial expected = px * (px - Polynomial::monomial(1, ctx->algebra().formal_dimension()));
        const Polynomial got = betti(*j2).poincare().at_s_equals_one();
        c.expect(got == expected, key + ": got " + got.to_string());
    }
}

void criterion6(Check& c)
{
    for (std::int64_t r : {1, 2, 3}) {
        BigradedPolynomial expected;
        if (r == 1) {
            expected = s_times(0, Polynomial({1, 0, 3})) + s_times(1, Polynomial({0, 0, 0, 0, 0, 5, 0, 1})) + s_times(2, Polynomial::monomial(2, 8));
        } else {
            expected = s_times(0, Polynomial({1, 0, r}) * Polynomial({1, 0, 2 * r, 0, r * r - 3})) +
                       s_times(1, Polynomial::monomial(1, 5) * Polynomial({3 * r, 0, 3 * r * r - 2})) + s_times(2, Polynomial::monomial(2 * r, 8));
        }
        const auto got = poincare(ctx_of("cp2_sum(" + std::to_string(r) + ")"), ModelKind::Punctured, 3);
        c.expect(got == expected, "r=" + std::to_string(r) + " got " + got.to_string());
    }
    auto kun = ModelContext::make(kunneth(*catalog_get("sphere(1)"), *catalog_get("sphere(1)")));
    c.expect(betti(*kun->model(ModelKind::Punctured, 3)) == betti(*ctx_of("cp2_sum(2)")->model(ModelKind::Punctured, 3)), "kunneth(S2,S2) differs from cp2_sum(2)");
}

// Naive rank over the rationals, independent of the library's elimination.
std::size_t dense_rank(std::vector<std::vector<Scalar>> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (i != r && m[i][col] != 0) {
                const Scalar f = m[i][col] / m[r][col];
                for (std::size_t k = col; k < cols; ++k)
                    m[i][k] -= f * m[r][k];
            }
        ++r;
    }
    return r;
}

void criterion7(Check& c)
{
    for (const char* key : {"cp(2)", "product(sphere(1),sphere(1))", "product(sphere(1),torus)"}) {
        auto ctx = ctx_of(key);
        const GradedAlgebra& a = *ctx->punctured().algebra.algebra;
        const std::vector<AlgebraPtr> slots{ctx->punctured().algebra.algebra, ctx->punctured().algebra.algebra};
        const int g = ctx->algebra().formal_dimension() - 1;
        std::map<std::pair<int, int>, long> expected;

        std::map<int, std::vector<TensorKey>> by_degree;
        for (int x = 0; x < a.dim(); ++x)
            for (int y = 0; y < a.dim(); ++y)
                by_degree[a.degree(x) + a.degree(y)].push_back({x, y});
        for (const auto& [deg, keys] : by_degree) {
            std::vector<std::vector<Scalar>> ideal;
            for (int x = 0; x < a.dim(); ++x)
                for (int y = 0; y < a.dim(); ++y) {
                    TensorElement b(slots);
                    b.add({x, y}, 1);
                    const TensorElement prod = ctx->punctured().diagonal * b;
                    if (prod.is_zero() || tensor_degree(slots, prod.terms().begin()->first) != deg)
                        continue;
                    std::vector<Scalar> row;
                    for (const auto& k : keys)
                        row.push_back(prod.coefficient(k));
                    ideal.push_back(row);
                }
            if (long dim = static_cast<long>(keys.size() - dense_rank(ideal)))
                expected[{deg, 0}] = dim;
        }
        std::map<int, std::vector<int>> basis_by_degree;
        for (int x = 0; x < a.dim(); ++x)
            basis_by_degree[a.degree(x)].push_back(x);
        for (const auto& [deg, xs] : basis_by_degree) {
            std::vector<std::vector<Scalar>> mat;
            for (int x : xs) {
                std::vector<Scalar> row(static_cast<std::size_t>(a.dim() * a.dim()));
                for (int h = 0; h < a.dim(); ++h)
                    if (a.degree(h) > 0)
                        for (const auto& [k, v] : a.product(x, h))
                            row[static_cast<std::size_t>(h * a.dim() + k)] = v;
                mat.push_back(row);
            }
            if (long ann = static_cast<long>(xs.size() - dense_rank(mat)))
                expected[{deg + g, 1}] = ann;
        }
        c.expect(betti(*ctx->model(ModelKind::Punctured, 2)).entries == expected, std::string(key) + ": dimensions differ");
    }
}

void criterion8(Check& c)
{
    const Polynomial p = poincare(ctx_of("cp(2)"), ModelKind::Punctured, 3).at_s_equals_one();
    c.expect(p == Polynomial({1, 0, 3, 0, 0, 5, 0, 1, 2}), "P(t) = " + p.to_string());
    const auto [quot, rem] = p.divmod(Polynomial({1, 0, 1}));
    c.expect(!rem.is_zero(), "1+t^2 divides " + p.to_string());
}

void criterion9(Check& c)
{
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        const int d = ctx->algebra().dim();
        const int n_max = d <= 6 ? 4 : 3;
        for (int n = 2; n <= n_max; ++n) {
            InducedMap h = induced_map(psi(ctx, n));
            c.expect(h.iso(), label(key, ModelKind::Kriz, n) + ": not an isomorphism");
        }
    }
}

void criterion10(Check& c)
{
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        for (int n = 2; n <= 4; ++n) {
            ReductionReport r = reduce_over_H(ctx, n, 60);
            c.expect(r.ok(), key + " n=" + std::to_string(n) + (r.findings.empty() ? "" : ": " + r.findings.front()));
        }
    }
}

void criterion11(Check& c)
{
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        const int d = ctx->algebra().dim();
        for (int n = 0; n <= 5; ++n)
            for (ModelKind kind : {ModelKind::Kriz, ModelKind::Punctured}) {
                ModelPtr m = build_model(kind, ctx, n);
                c.expect(m->size() == predicted_dimension(kind, d, n), label(key, kind, n) + ": size " + std::to_string(m->size()));
                auto by_q = predicted_dimension_by_q(kind, d, n);
                std::vector<std::uint64_t> got(by_q.size(), 0);
                for (const auto& [bd, idx] : m->blocks())
                    got[static_cast<std::size_t>(bd.second)] += idx.size();
                c.expect(got == by_q, label(key, kind, n) + ": per-q counts");
            }
        for (int l = 1; l <= 4; ++l) {
            auto q = ctx->quotient(l);
            long total = 0;
            for (int deg = 0; deg <= q->max_degree(); ++deg)
                total += q->quotient_dim(deg);
            long expected = d;
            for (int k = 1; k < l; ++k)
                expected *= d - 1;
            c.expect(total == expected, key + " l=" + std::to_string(l) + ": quotient dim " + std::to_string(total));
        }
    }
}

void criterion12(Check& c)
{
    std::mt19937_64 rng(12);
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        const int d = ctx->algebra().dim();
        const int n_max = d <= 6 ? 4 : 3;
        int confluence = 0;
        for (ModelKind kind : {ModelKind::Kriz, ModelKind::Punctured, ModelKind::J})
            for (int n = 1; n <= n_max; ++n) {
                ModelPtr m = ctx->model(kind, n);
                const std::string where = label(key, kind, n);
                const auto& dm = m->differential();
                for (std::size_t b = 0; b < m->size(); ++b) {
                    const auto& src = m->element(static_cast<int>(b));
                    for (const auto& [i, x] : dm[b]) {
                        const auto& dst = m->element(i);
                        c.expect(dst.p == src.p + 1 && dst.q == src.q - 1, where + ": bidegree at " + m->describe(static_cast<int>(b)));
                    }
                    c.expect(m->apply_differential(dm[b]).empty(), where + ": d^2 at " + m->describe(static_cast<int>(b)));
                }
                c.expect(chain_euler_by_antidiagonal(*m) == betti_euler_by_antidiagonal(betti(*m)), where + ": Euler characteristic");

                // Random words over basis coefficients, rewritten in random orders.
                const Engine& e = m->engine();
                std::vector<std::pair<int, int>> gens;
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j)
                        if (e.generator_allowed(i, j))
                            gens.emplace_back(i, j);
                for (int trial = 0; trial < 15; ++trial) {
                    Expr x;
                    for (int t = 0; t < 2; ++t) {
                        Term term;
                        for (int s = 0; s < n; ++s)
                            term.coeff.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(e.structure().slots[static_cast<std::size_t>(s)]->dim())));
                        for (int k = gens.empty() ? 0 : static_cast<int>(rng() % 4); k > 0; --k)
                            term.word.push_back(gens[rng() % gens.size()]);
                        add_to(x, term, Scalar(static_cast<long>(rng() % 5) - 2));
                    }
                    const Expr canonical = e.normalize(x);
                    c.expect(e.normalize_random(x, rng) == canonical && e.normalize_random(x, rng) == canonical, where + ": rewriting is not confluent");
                    ++confluence;
                }
            }
        c.expect(confluence >= 100, key + ": only " + std::to_string(confluence) + " confluence cases");

        SuiteReport rep;
        rep.merge(sigma_suite(ctx, 3));
        rep.merge(simplicial_suite(ctx, 4));
        rep.merge(coaction_suite(ctx, 3));
        rep.merge(closed_face_controls(ctx, 3));
        for (const auto& r : rep.results)
            c.expect(r.status != "fail", key + ": " + r.check + " " + r.instance + " " + r.witness);
        // The closed last face fails at G_{n+1,n} for every algebra.
        int xfail = 0;
        for (const auto& r : rep.results)
            if (r.status == "expected-failure" && r.witness.find("G") != std::string::npos)
                ++xfail;
        c.expect(xfail >= 2, key + ": closed face controls did not fail");
    }
    for (auto [h, k] : std::vector<std::pair<const char*, const char*>>{{"cp(2)", "cp(2)"}, {"torus", "genus(2)"}, {"sphere(1)", "cp(1)"}}) {
        SuiteReport rep = connected_sum_suite(ctx_of(h), ctx_of(k), 3);
        for (const auto& r : rep.results)
            c.expect(r.status != "fail", std::string(h) + "#" + k + ": " + r.check + " " + r.instance);
    }
}

void criterion13(Check& c)
{
    for (const auto& key : catalog_test_set()) {
        auto ctx = ctx_of(key);
        if (ctx->algebra().dim() > 6)
            continue;
        for (int n = 2; n <= 4; ++n) {
            ColumnReport r = column_acyclicity(ctx, n);
            c.expect(r.ok(), key + " n=" + std::to_string(n) + (r.splitting ? "" : ": d does not split") +
                                 (r.positive_q_cohomology.empty() ? "" : ": column cohomology in positive q"));
        }
    }
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"J-model of S^2, n=3..6", criterion1},
        {"punctured CP^1, n=2..6", criterion2},
        {"J-model of the torus, n=3", criterion3},
        {"J-model of genus 2 and 3 surfaces, n=3", criterion4},
        {"two points, every catalog algebra", criterion5},
        {"punctured cp2_sum(r), n=3", criterion6},
        {"two punctured points: quotient plus annihilator", criterion7},
        {"1+t^2 does not divide P(F(CP^2 minus a point, 3))", criterion8},
        {"Psi induces isomorphisms", criterion9},
        {"reduction over H", criterion10},
        {"dimension identities", criterion11},
        {"property suite", criterion12},
        {"column acyclicity", criterion13},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s (%.2fs)", c.failures ? "FAIL" : "PASS", i + 1, criteria[i].first.c_str(), secs);
        if (c.failures)
            std::printf(" [%d mismatches: %s]", c.failures, c.notes.str().c_str());
        std::printf("\n");
        std::fflush(stdout);
        failed += c.failures ? 1 : 0;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed;
}
