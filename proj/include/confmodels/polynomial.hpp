#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace confmodels {

/// Integer polynomial in one variable; coefficient k is the coefficient of t^k.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<std::int64_t> coefficients);

    static Polynomial monomial(std::int64_t c, int power);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t coefficient(int k) const;
    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
    std::int64_t evaluate(std::int64_t t) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    /// Euclidean division by a polynomial with leading coefficient +-1.
    /// Returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    /// "1+2t+t^2" style; "0" for the zero polynomial.
    std::string to_string(char var = 't') const;

private:
    void trim();
    std::vector<std::int64_t> coeffs_;
};

/// Integer polynomial in (s, t): sum of c * s^q * t^p, stored as (q, p) -> c.
class BigradedPolynomial {
public:
    BigradedPolynomial() = default;

    void add(int q, int p, std::int64_t c);
    std::int64_t coefficient(int q, int p) const;
    const std::map<std::pair<int, int>, std::int64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Specialization s = 1.
    Polynomial at_s_equals_one() const;

    BigradedPolynomial operator+(const BigradedPolynomial& o) const;
    BigradedPolynomial operator*(const BigradedPolynomial& o) const;
    bool operator==(const BigradedPolynomial& o) const { return terms_ == o.terms_; }

    /// Exact division; returns false (leaving `quotient` unspecified) if `divisor` does not
    /// divide. The divisor must have constant term +-1 in the lowest total degree.
    bool divide_exact(const BigradedPolynomial& divisor, BigradedPolynomial& quotient) const;

    /// Grouped by powers of t: "1+6t+(12+2s)t^2+...".
    std::string to_string() const;
    /// Grouped by powers of s: "(1+3t^2)+st^5(5+t^2)+2s^2t^8".
    std::string to_string_by_s() const;
    /// LaTeX rendering. Binomial factors 1 + c s^a t^k are pulled out greedily when they divide
    /// exactly; the cofactor is written expanded.
    std::string to_latex() const;

    /// Polynomial from a product of binomials (1 + c_k s^{a_k} t^{b_k}).
    static BigradedPolynomial one();
    static BigradedPolynomial binomial(std::int64_t c, int q, int p);

private:
    std::map<std::pair<int, int>, std::int64_t> terms_;
};

}  // namespace confmodels
