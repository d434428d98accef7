#include "confmodels/polynomial.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace confmodels {

Polynomial::Polynomial(std::vector<std::int64_t> coefficients) : coeffs_(std::move(coefficients))
{
    trim();
}

Polynomial Polynomial::monomial(std::int64_t c, int power)
{
    std::vector<std::int64_t> v(static_cast<std::size_t>(power) + 1, 0);
    v.back() = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

std::int64_t Polynomial::coefficient(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

std::int64_t Polynomial::evaluate(std::int64_t t) const
{
    std::int64_t acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    std::vector<std::int64_t> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = coefficient(static_cast<int>(i)) + o.coefficient(static_cast<int>(i));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const
{
    std::vector<std::int64_t> v(std::max(coeffs_.size(), o.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = coefficient(static_cast<int>(i)) - o.coefficient(static_cast<int>(i));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    if (is_zero() || o.is_zero())
        return {};
    std::vector<std::int64_t> v(coeffs_.size() + o.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const
{
    if (divisor.is_zero())
        throw std::invalid_argument("division by zero polynomial");
    std::int64_t lead = divisor.coeffs_.back();
    if (lead != 1 && lead != -1)
        throw std::invalid_argument("divisor must have leading coefficient +-1");
    std::vector<std::int64_t> rem = coeffs_;
    std::vector<std::int64_t> quot(rem.size() >= divisor.coeffs_.size() ? rem.size() - divisor.coeffs_.size() + 1 : 0, 0);
    for (int k = static_cast<int>(rem.size()) - 1; k >= divisor.degree(); --k) {
        std::int64_t c = rem[static_cast<std::size_t>(k)] * lead;
        if (c == 0)
            continue;
        int shift = k - divisor.degree();
        quot[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= divisor.degree(); ++i)
            rem[static_cast<std::size_t>(shift + i)] -= c * divisor.coeffs_[static_cast<std::size_t>(i)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

namespace {

std::string monomial_text(std::int64_t c, const std::vector<std::pair<char, int>>& vars, bool latex)
{
    std::string vs;
    for (auto [v, e] : vars) {
        if (e == 0)
            continue;
        vs += v;
        if (e > 1) {
            if (latex)
                vs += "^{" + std::to_string(e) + "}";
            else
                vs += "^" + std::to_string(e);
        }
    }
    std::string out;
    if (vs.empty())
        return std::to_string(c);
    if (c == -1)
        out = "-";
    else if (c != 1)
        out = std::to_string(c);
    return out + vs;
}

// Joins signed pieces: "a" "+b" "-c".
void append_term(std::string& acc, const std::string& piece)
{
    if (!acc.empty() && piece[0] != '-')
        acc += "+";
    acc += piece;
}

}  // namespace

std::string Polynomial::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (coeffs_[k] != 0)
            append_term(out, monomial_text(coeffs_[k], {{var, static_cast<int>(k)}}, false));
    return out;
}

void BigradedPolynomial::add(int q, int p, std::int64_t c)
{
    if (c == 0)
        return;
    auto key = std::make_pair(q, p);
    auto& slot = terms_[key];
    slot += c;
    if (slot == 0)
        terms_.erase(key);
}

std::int64_t BigradedPolynomial::coefficient(int q, int p) const
{
    auto it = terms_.find({q, p});
    return it == terms_.end() ? 0 : it->second;
}

Polynomial BigradedPolynomial::at_s_equals_one() const
{
    int deg = 0;
    for (const auto& [k, c] : terms_)
        deg = std::max(deg, k.second);
    std::vector<std::int64_t> v(static_cast<std::size_t>(deg) + 1, 0);
    for (const auto& [k, c] : terms_)
        v[static_cast<std::size_t>(k.second)] += c;
    return Polynomial(std::move(v));
}

BigradedPolynomial BigradedPolynomial::operator+(const BigradedPolynomial& o) const
{
    BigradedPolynomial out = *this;
    for (const auto& [k, c] : o.terms_)
        out.add(k.first, k.second, c);
    return out;
}

BigradedPolynomial BigradedPolynomial::operator*(const BigradedPolynomial& o) const
{
    BigradedPolynomial out;
    for (const auto& [a, x] : terms_)
        for (const auto& [b, y] : o.terms_)
            out.add(a.first + b.first, a.second + b.second, x * y);
    return out;
}

BigradedPolynomial BigradedPolynomial::one()
{
    BigradedPolynomial p;
    p.add(0, 0, 1);
    return p;
}

BigradedPolynomial BigradedPolynomial::binomial(std::int64_t c, int q, int p)
{
    BigradedPolynomial out = one();
    out.add(q, p, c);
    return out;
}

bool BigradedPolynomial::divide_exact(const BigradedPolynomial& divisor, BigradedPolynomial& quotient) const
{
    // Lowest-term division in the order (t-degree, s-degree).
    auto order = [](const std::pair<int, int>& qp) { return std::make_pair(qp.second, qp.first); };
    if (divisor.is_zero())
        return false;
    auto lowest = [&](const BigradedPolynomial& f) {
        auto best = f.terms_.begin();
        for (auto it = f.terms_.begin(); it != f.terms_.end(); ++it)
            if (order(it->first) < order(best->first))
                best = it;
        return best;
    };
    auto dl = lowest(divisor);
    if (dl->first != std::make_pair(0, 0) || (dl->second != 1 && dl->second != -1))
        return false;
    int max_q = 0, max_p = 0;
    for (const auto& [k, c] : terms_) {
        max_q = std::max(max_q, k.first);
        max_p = std::max(max_p, k.second);
    }
    BigradedPolynomial rem = *this;
    quotient = BigradedPolynomial();
    while (!rem.is_zero()) {
        auto lt = lowest(rem);
        auto [q, p] = lt->first;
        if (q > max_q || p > max_p)
            return false;
        std::int64_t c = lt->second * dl->second;
        quotient.add(q, p, c);
        for (const auto& [k, d] : divisor.terms_)
            rem.add(q + k.first, p + k.second, -c * d);
    }
    return true;
}

std::string BigradedPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::map<int, std::map<int, std::int64_t>> by_t;
    for (const auto& [k, c] : terms_)
        by_t[k.second][k.first] = c;
    std::string out;
    for (const auto& [p, inner] : by_t) {
        if (inner.size() == 1) {
            auto [q, c] = *inner.begin();
            append_term(out, monomial_text(c, {{'s', q}, {'t', p}}, false));
            continue;
        }
        std::string sp;
        for (const auto& [q, c] : inner)
            append_term(sp, monomial_text(c, {{'s', q}}, false));
        append_term(out, "(" + sp + ")" + (p == 0 ? std::string() : monomial_text(1, {{'t', p}}, false)));
    }
    return out;
}

std::string BigradedPolynomial::to_string_by_s() const
{
    if (is_zero())
        return "0";
    std::map<int, std::map<int, std::int64_t>> by_s;
    for (const auto& [k, c] : terms_)
        by_s[k.first][k.second] = c;
    std::string out;
    for (const auto& [q, inner] : by_s) {
        int pmin = inner.begin()->first;
        if (inner.size() == 1) {
            append_term(out, monomial_text(inner.begin()->second, {{'s', q}, {'t', pmin}}, false));
            continue;
        }
        std::string tp;
        for (const auto& [p, c] : inner)
            append_term(tp, monomial_text(c, {{'t', p - pmin}}, false));
        std::string prefix = (q == 0 && pmin == 0) ? std::string() : monomial_text(1, {{'s', q}, {'t', pmin}}, false);
        append_term(out, prefix + "(" + tp + ")");
    }
    return out;
}

std::string BigradedPolynomial::to_latex() const
{
    if (is_zero())
        return "0";
    auto expanded = [](const BigradedPolynomial& f) {
        std::string out;
        for (const auto& [k, c] : f.terms_)
            append_term(out, monomial_text(c, {{'s', k.first}, {'t', k.second}}, true));
        return out;
    };
    std::int64_t cmax = 1;
    int max_p = 0;
    for (const auto& [k, c] : terms_) {
        cmax = std::max<std::int64_t>(cmax, std::llabs(c));
        max_p = std::max(max_p, k.second);
    }
    std::map<std::string, int> factors;
    std::vector<std::string> order;
    BigradedPolynomial rest = *this;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int k = 1; k <= max_p && !progress; ++k)
            for (int a = 1; a >= 0 && !progress; --a)
                for (std::int64_t c = 1; c <= cmax && !progress; ++c)
                    for (std::int64_t sign : {1, -1}) {
                        BigradedPolynomial b = binomial(sign * c, a, k);
                        BigradedPolynomial quot;
                        if (rest.terms_.size() > 1 && rest.divide_exact(b, quot)) {
                            std::string text = "(" + expanded(b) + ")";
                            if (factors[text]++ == 0)
                                order.push_back(text);
                            rest = quot;
                            progress = true;
                            break;
                        }
                    }
    }
    std::string out;
    for (const auto& f : order) {
        out += f;
        if (factors[f] > 1)
            out += "^{" + std::to_string(factors[f]) + "}";
    }
    if (rest == one())
        return out.empty() ? "1" : out;
    std::string tail = expanded(rest);
    if (out.empty())
        return tail;
    if (rest.terms_.size() == 1 && tail != "-1")
        return tail + out;
    return out + "(" + tail + ")";
}

}  // namespace confmodels
