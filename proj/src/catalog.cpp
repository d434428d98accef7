#include "confmodels/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace confmodels {

namespace {

int parse_int_param(const CatalogSpec& spec, std::size_t i)
{
    if (spec.params.size() <= i)
        throw CatalogError(CatalogError::Kind::BadParams, spec.key + ": missing parameter " + std::to_string(i + 1));
    const std::string& s = spec.params[i];
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw CatalogError(CatalogError::Kind::BadParams, spec.key + ": expected a non-negative integer, got '" + s + "'");
    return std::stoi(s);
}

void expect_params(const CatalogSpec& spec, std::size_t count)
{
    if (spec.params.size() != count)
        throw CatalogError(CatalogError::Kind::BadParams, spec.key + " takes " + std::to_string(count) + " parameter(s), got " + std::to_string(spec.params.size()));
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos)
        return {};
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

PDAlgebraPtr make(RawAlgebra raw) { return std::make_shared<const PDAlgebra>(validate_algebra(raw)); }

// Same table with new labels and name.
PDAlgebraPtr relabel(const PDAlgebra& h, std::string name, const std::vector<std::string>& labels)
{
    const GradedAlgebra& a = h.algebra();
    std::vector<BasisLabel> basis = a.basis();
    for (std::size_t i = 0; i < basis.size(); ++i)
        basis[i].label = labels[i];
    std::vector<SparseVec> table;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            table.push_back(a.product(i, j));
    auto alg = std::make_shared<const GradedAlgebra>(std::move(name), std::move(basis), std::move(table));
    return std::make_shared<const PDAlgebra>(make_pd_algebra(alg, h.formal_dimension(), h.orientation()));
}

}  // namespace

CatalogSpec parse_catalog_spec(const std::string& text)
{
    std::string s = trim(text);
    CatalogSpec spec;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')')
            throw CatalogError(CatalogError::Kind::BadParams, "unbalanced parentheses in '" + s + "'");
        spec.key = trim(s.substr(0, open));
        std::string inner = s.substr(open + 1, s.size() - open - 2);
        int depth = 0;
        std::string cur;
        for (char c : inner) {
            if (c == '(')
                ++depth;
            if (c == ')')
                --depth;
            if (c == ',' && depth == 0) {
                spec.params.push_back(trim(cur));
                cur.clear();
                continue;
            }
            cur += c;
        }
        if (depth != 0)
            throw CatalogError(CatalogError::Kind::BadParams, "unbalanced parentheses in '" + s + "'");
        if (!trim(cur).empty() || !spec.params.empty())
            spec.params.push_back(trim(cur));
        return spec;
    }
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find_first_of(" \t", pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!tok.empty()) {
            if (spec.key.empty())
                spec.key = tok;
            else
                spec.params.push_back(tok);
        }
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return spec;
}

PDAlgebraPtr sphere(int m)
{
    if (m < 1)
        throw CatalogError(CatalogError::Kind::BadParams, "sphere: m >= 1 required");
    RawAlgebra raw;
    raw.name = "sphere(" + std::to_string(m) + ")";
    raw.formal_dimension = 2 * m;
    raw.basis = {{"1", 0}, {"w", 2 * m}};
    raw.orientation = "w";
    return make(raw);
}

PDAlgebraPtr complex_projective(int m)
{
    if (m < 1 || m > 3)
        throw CatalogError(CatalogError::Kind::BadParams, "cp: 1 <= m <= 3 required");
    RawAlgebra raw;
    raw.name = "cp(" + std::to_string(m) + ")";
    raw.formal_dimension = 2 * m;
    auto label = [](int k) { return k == 0 ? std::string("1") : k == 1 ? std::string("x") : "x" + std::to_string(k); };
    for (int k = 0; k <= m; ++k)
        raw.basis.push_back({label(k), 2 * k});
    raw.orientation = label(m);
    for (int a = 1; a <= m; ++a)
        for (int b = a; a + b <= m; ++b)
            raw.products.push_back({label(a), label(b), {{label(a + b), Scalar(1)}}});
    return make(raw);
}

PDAlgebraPtr genus(int g)
{
    if (g < 1)
        throw CatalogError(CatalogError::Kind::BadParams, "genus: g >= 1 required");
    RawAlgebra raw;
    raw.name = g == 1 ? "torus" : "genus(" + std::to_string(g) + ")";
    raw.formal_dimension = 2;
    raw.basis.push_back({"1", 0});
    for (int i = 1; i <= g; ++i)
        raw.basis.push_back({"a" + std::to_string(i), 1});
    for (int i = 1; i <= g; ++i)
        raw.basis.push_back({"b" + std::to_string(i), 1});
    raw.basis.push_back({"w", 2});
    raw.orientation = "w";
    for (int i = 1; i <= g; ++i)
        raw.products.push_back({"a" + std::to_string(i), "b" + std::to_string(i), {{"w", Scalar(1)}}});
    return make(raw);
}

PDAlgebraPtr torus() { return genus(1); }

PDAlgebraPtr cp2_sum(int r)
{
    if (r < 1)
        throw CatalogError(CatalogError::Kind::BadParams, "cp2_sum: r >= 1 required");
    PDAlgebraPtr cp2 = complex_projective(2);
    PDAlgebra acc = *cp2;
    for (int i = 2; i <= r; ++i)
        acc = connected_sum(acc, *cp2).sum;
    std::vector<std::string> labels{"1"};
    for (int i = 1; i <= r; ++i)
        labels.push_back("x" + std::to_string(i));
    labels.push_back("w");
    return relabel(acc, "cp2_sum(" + std::to_string(r) + ")", labels);
}

PDAlgebraPtr kunneth(const PDAlgebra& h, const PDAlgebra& k)
{
    const GradedAlgebra& a = h.algebra();
    const GradedAlgebra& b = k.algebra();
    const int nb = b.dim();
    auto idx = [nb](int i, int j) { return i * nb + j; };
    std::vector<BasisLabel> basis;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < nb; ++j) {
            std::string label = i == a.unit() && j == b.unit() ? std::string("1") : a.label(i) + "." + b.label(j);
            basis.push_back({label, a.degree(i) + b.degree(j)});
        }
    const int n = static_cast<int>(basis.size());
    std::vector<SparseVec> table(static_cast<std::size_t>(n * n));
    for (int i1 = 0; i1 < a.dim(); ++i1)
        for (int j1 = 0; j1 < nb; ++j1)
            for (int i2 = 0; i2 < a.dim(); ++i2)
                for (int j2 = 0; j2 < nb; ++j2) {
                    int sign = (b.degree(j1) * a.degree(i2)) % 2 == 0 ? 1 : -1;
                    std::vector<std::pair<int, Scalar>> e;
                    for (const auto& [x, c] : a.product(i1, i2))
                        for (const auto& [y, d] : b.product(j1, j2))
                            e.emplace_back(idx(x, y), c * d * sign);
                    table[static_cast<std::size_t>(idx(i1, j1) * n + idx(i2, j2))] = make_sparse(std::move(e));
                }
    auto alg = std::make_shared<const GradedAlgebra>("product(" + h.name() + "," + k.name() + ")", std::move(basis), std::move(table));
    return std::make_shared<const PDAlgebra>(make_pd_algebra(alg, h.formal_dimension() + k.formal_dimension(), idx(h.orientation(), k.orientation())));
}

PDAlgebraPtr catalog_get(const CatalogSpec& spec)
{
    if (spec.key == "sphere") {
        expect_params(spec, 1);
        return sphere(parse_int_param(spec, 0));
    }
    if (spec.key == "cp") {
        expect_params(spec, 1);
        return complex_projective(parse_int_param(spec, 0));
    }
    if (spec.key == "torus") {
        expect_params(spec, 0);
        return torus();
    }
    if (spec.key == "genus") {
        expect_params(spec, 1);
        return genus(parse_int_param(spec, 0));
    }
    if (spec.key == "cp2_sum") {
        expect_params(spec, 1);
        return cp2_sum(parse_int_param(spec, 0));
    }
    if (spec.key == "product") {
        expect_params(spec, 2);
        return kunneth(*catalog_get(parse_catalog_spec(spec.params[0])), *catalog_get(parse_catalog_spec(spec.params[1])));
    }
    throw CatalogError(CatalogError::Kind::UnknownKey, "unknown catalog key '" + spec.key + "'");
}

PDAlgebraPtr catalog_get(const std::string& text) { return catalog_get(parse_catalog_spec(text)); }

const std::vector<CatalogEntry>& catalog_entries()
{
    static const std::vector<CatalogEntry> entries{
        {"sphere", "m >= 1", "sphere(1)", "S^{2m}; J-model braid formula for S^2"},
        {"cp", "1 <= m <= 3", "cp(1)", "CP^m; punctured CP^1 is the pure braid space"},
        {"torus", "", "torus", "two-torus; J-model Poincare polynomial for n=3"},
        {"genus", "g >= 1", "genus(2)", "surface of genus g in the symplectic basis"},
        {"cp2_sum", "r >= 1", "cp2_sum(2)", "r-fold CP^2 connected sum, punctured diagonal sum x_i (x) x_i"},
        {"product", "key, key", "product(sphere(1),sphere(1))", "Kunneth product; S^2 x S^2 cross-checks cp2_sum(2)"},
    };
    return entries;
}

std::vector<std::string> catalog_test_set()
{
    return {"sphere(1)", "sphere(2)", "cp(1)", "cp(2)", "cp(3)", "torus", "genus(2)", "genus(3)",
            "cp2_sum(1)", "cp2_sum(2)", "cp2_sum(3)", "product(sphere(1),sphere(1))", "product(sphere(1),torus)"};
}

}  // namespace confmodels
