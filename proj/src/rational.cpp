#include "confmodels/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace confmodels {

namespace {

bool valid_integer(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    return std::all_of(s.begin() + start, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_class parse_integer(std::string_view s)
{
    if (s[0] == '+')
        s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    mpz_class d = parse_integer(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Scalar q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

std::string format_scalar(const Scalar& raw)
{
    Scalar value = raw;
    value.canonicalize();
    if (value.get_den() == 1)
        return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

void axpy(SparseVec& acc, const Scalar& factor, const SparseVec& v)
{
    if (factor == 0 || v.empty())
        return;
    SparseVec out;
    out.reserve(acc.size() + v.size());
    auto a = acc.begin();
    auto b = v.begin();
    while (a != acc.end() || b != v.end()) {
        if (b == v.end() || (a != acc.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        }
        else if (a == acc.end() || b->first < a->first) {
            out.emplace_back(b->first, factor * b->second);
            ++b;
        }
        else {
            Scalar s = a->second + factor * b->second;
            if (s != 0)
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    acc = std::move(out);
}

SparseVec scaled(const SparseVec& v, const Scalar& factor)
{
    if (factor == 0)
        return {};
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, x] : v)
        out.emplace_back(i, x * factor);
    return out;
}

SparseVec make_sparse(std::vector<std::pair<int, Scalar>> entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    for (auto& [i, x] : entries) {
        if (!out.empty() && out.back().first == i)
            out.back().second += x;
        else
            out.emplace_back(i, std::move(x));
        if (out.back().second == 0)
            out.pop_back();
    }
    return out;
}

}  // namespace confmodels
