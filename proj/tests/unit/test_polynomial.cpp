#include <catch2/catch.hpp>

#include "confmodels/polynomial.hpp"

using namespace confmodels;

namespace {

BigradedPolynomial product_of_binomials(int n)
{
    BigradedPolynomial p = BigradedPolynomial::one();
    for (int k = 1; k < n; ++k)
        p = p * BigradedPolynomial::binomial(k, 1, 1);
    return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic and division")
{
    Polynomial a({1, 0, 3, 0, 0, 5, 0, 1, 2});
    Polynomial d({1, 0, 1});
    auto [q, r] = a.divmod(d);
    CHECK(q * d + r == a);
    CHECK(r.degree() < d.degree());
    CHECK_FALSE(r.is_zero());
    auto [q2, r2] = (a * d).divmod(d);
    CHECK(q2 == a);
    CHECK(r2.is_zero());
    CHECK(Polynomial({1, 6, 14, 14, 5}).to_string() == "1+6t+14t^2+14t^3+5t^4");
    CHECK(Polynomial().to_string() == "0");
    CHECK(Polynomial({0, -1}).to_string() == "-t");
}

TEST_CASE("bigraded rendering")
{
    BigradedPolynomial p;
    p.add(0, 0, 1);
    p.add(0, 1, 6);
    p.add(0, 2, 12);
    p.add(1, 2, 2);
    CHECK(p.to_string() == "1+6t+(12+2s)t^2");
    CHECK(p.at_s_equals_one() == Polynomial({1, 6, 14}));

    BigradedPolynomial q;
    q.add(0, 0, 1);
    q.add(0, 2, 3);
    q.add(1, 5, 5);
    q.add(1, 7, 1);
    q.add(2, 8, 2);
    CHECK(q.to_string_by_s() == "(1+3t^2)+st^5(5+t^2)+2s^2t^8");
    CHECK(BigradedPolynomial().to_string() == "0");
}

TEST_CASE("latex factors products of binomials")
{
    CHECK(product_of_binomials(4).to_latex() == "(1+st)(1+2st)(1+3st)");
    BigradedPolynomial quotient;
    CHECK(product_of_binomials(5).divide_exact(BigradedPolynomial::binomial(4, 1, 1), quotient));
    CHECK(quotient == product_of_binomials(4));
    CHECK_FALSE(product_of_binomials(3).divide_exact(BigradedPolynomial::binomial(1, 0, 2), quotient));
}
