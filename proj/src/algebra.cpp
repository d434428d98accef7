#include "confmodels/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace confmodels {

GradedAlgebra::GradedAlgebra(std::string name, std::vector<BasisLabel> basis, std::vector<SparseVec> table)
    : name_(std::move(name)), basis_(std::move(basis)), table_(std::move(table))
{
    if (table_.size() != basis_.size() * basis_.size())
        throw std::invalid_argument("structure-constant table has wrong size");
    int zeros = 0;
    for (int i = 0; i < dim(); ++i)
        if (degree(i) == 0) {
            ++zeros;
            unit_ = i;
        }
    if (zeros != 1)
        unit_ = -1;
}

int GradedAlgebra::max_degree() const
{
    int d = 0;
    for (const auto& b : basis_)
        d = std::max(d, b.degree);
    return d;
}

std::optional<int> GradedAlgebra::find(std::string_view label) const
{
    for (int i = 0; i < dim(); ++i)
        if (basis_[static_cast<std::size_t>(i)].label == label)
            return i;
    return std::nullopt;
}

SparseVec GradedAlgebra::multiply(const SparseVec& a, const SparseVec& b) const
{
    SparseVec out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            axpy(out, x * y, product(i, j));
    return out;
}

std::vector<int> GradedAlgebra::dims_by_degree() const
{
    std::vector<int> dims(static_cast<std::size_t>(max_degree()) + 1, 0);
    for (const auto& b : basis_)
        ++dims[static_cast<std::size_t>(b.degree)];
    return dims;
}

std::string to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::NonUnital: return "NonUnital";
    case ViolationKind::NotGradedCommutative: return "NotGradedCommutative";
    case ViolationKind::NotAssociative: return "NotAssociative";
    case ViolationKind::DegeneratePairing: return "DegeneratePairing";
    case ViolationKind::TopDegreeNotOneDimensional: return "TopDegreeNotOneDimensional";
    case ViolationKind::OddFormalDimension: return "OddFormalDimension";
    case ViolationKind::DegreeMismatch: return "DegreeMismatch";
    case ViolationKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

std::string Violation::to_string() const
{
    return confmodels::to_string(kind) + "(" + detail + ")";
}

namespace {

std::string join_messages(const std::vector<Violation>& vs)
{
    std::string msg = "algebra validation failed:";
    for (const auto& v : vs)
        msg += " " + v.to_string() + ";";
    return msg;
}

int sign_of(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

/// Rank of a dense rational matrix (Gauss elimination on a copy).
int dense_rank(std::vector<std::vector<Scalar>> m)
{
    int rows = static_cast<int>(m.size());
    int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[r], m[piv]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0)
                continue;
            Scalar f = m[i][c] / m[r][c];
            for (int k = c; k < cols; ++k)
                m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

/// Inverse of a square invertible dense rational matrix.
std::vector<std::vector<Scalar>> dense_inverse(std::vector<std::vector<Scalar>> m)
{
    int n = static_cast<int>(m.size());
    std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        while (m[piv][c] == 0)
            ++piv;
        std::swap(m[c], m[piv]);
        std::swap(inv[c], inv[piv]);
        Scalar p = m[c][c];
        for (int k = 0; k < n; ++k) {
            m[c][k] /= p;
            inv[c][k] /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0)
                continue;
            Scalar f = m[i][c];
            for (int k = 0; k < n; ++k) {
                m[i][k] -= f * m[c][k];
                inv[i][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

Scalar coefficient_of(const SparseVec& v, int index)
{
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, int c) { return e.first < c; });
    if (it != v.end() && it->first == index)
        return it->second;
    return 0;
}

std::vector<std::vector<int>> indices_by_degree(const GradedAlgebra& a, int top)
{
    std::vector<std::vector<int>> out(static_cast<std::size_t>(std::max(top, a.max_degree())) + 1);
    for (int i = 0; i < a.dim(); ++i)
        out[static_cast<std::size_t>(a.degree(i))].push_back(i);
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations))
{
}

std::vector<Violation> check_graded_algebra(const GradedAlgebra& a)
{
    std::vector<Violation> out;
    const int n = a.dim();
    const int u = a.unit();
    if (u < 0) {
        out.push_back({ViolationKind::NonUnital, "expected exactly one basis element of degree 0"});
    }
    else {
        for (int i = 0; i < n; ++i) {
            SparseVec e{{i, Scalar(1)}};
            if (a.product(u, i) != e || a.product(i, u) != e) {
                out.push_back({ViolationKind::NonUnital, a.label(u) + " does not act as identity on " + a.label(i)});
                break;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, c] : a.product(i, j))
                if (a.degree(k) != a.degree(i) + a.degree(j))
                    out.push_back({ViolationKind::DegreeMismatch, a.label(i) + "*" + a.label(j) + " has a component " + a.label(k) + " of the wrong degree"});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.product(i, j) != scaled(a.product(j, i), Scalar(sign_of(a.degree(i), a.degree(j)))))
                out.push_back({ViolationKind::NotGradedCommutative, a.label(i) + "," + a.label(j)});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                SparseVec left = a.multiply(a.product(i, j), SparseVec{{k, Scalar(1)}});
                SparseVec right = a.multiply(SparseVec{{i, Scalar(1)}}, a.product(j, k));
                if (left != right)
                    out.push_back({ViolationKind::NotAssociative, a.label(i) + "," + a.label(j) + "," + a.label(k)});
            }
    return out;
}

std::vector<Violation> check_pd_algebra(const GradedAlgebra& a, int formal_dimension, int orientation)
{
    std::vector<Violation> out = check_graded_algebra(a);
    if (formal_dimension <= 0 || formal_dimension % 2 != 0) {
        out.push_back({ViolationKind::OddFormalDimension, "formal dimension " + std::to_string(formal_dimension) + " is not a positive even integer"});
        return out;
    }
    const int top = formal_dimension;
    auto by_deg = indices_by_degree(a, top);
    bool top_ok = true;
    if (a.max_degree() > top) {
        out.push_back({ViolationKind::TopDegreeNotOneDimensional, "basis elements above the formal dimension"});
        top_ok = false;
    }
    if (by_deg[static_cast<std::size_t>(top)].size() != 1) {
        out.push_back({ViolationKind::TopDegreeNotOneDimensional, "degree " + std::to_string(top) + " has dimension " + std::to_string(by_deg[static_cast<std::size_t>(top)].size())});
        top_ok = false;
    }
    if (orientation < 0 || orientation >= a.dim() || a.degree(orientation) != top) {
        out.push_back({ViolationKind::TopDegreeNotOneDimensional, "orientation class must be a basis element of degree " + std::to_string(top)});
        top_ok = false;
    }
    if (!top_ok)
        return out;
    for (int d = 0; d <= top / 2; ++d) {
        const auto& left = by_deg[static_cast<std::size_t>(d)];
        const auto& right = by_deg[static_cast<std::size_t>(top - d)];
        std::vector<std::vector<Scalar>> m(left.size(), std::vector<Scalar>(right.size()));
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                m[i][j] = coefficient_of(a.product(left[i], right[j]), orientation);
        if (left.size() != right.size() || dense_rank(m) != static_cast<int>(left.size()))
            out.push_back({ViolationKind::DegeneratePairing, std::to_string(d)});
    }
    return out;
}

PDAlgebra make_pd_algebra(AlgebraPtr algebra, int formal_dimension, int orientation)
{
    auto violations = check_pd_algebra(*algebra, formal_dimension, orientation);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
    PDAlgebra h;
    h.algebra_ = std::move(algebra);
    h.formal_dimension_ = formal_dimension;
    h.orientation_ = orientation;
    const GradedAlgebra& a = *h.algebra_;
    auto by_deg = indices_by_degree(a, formal_dimension);
    h.duals_.assign(static_cast<std::size_t>(a.dim()), {});
    for (int d = 0; d <= formal_dimension; ++d) {
        const auto& left = by_deg[static_cast<std::size_t>(d)];
        const auto& right = by_deg[static_cast<std::size_t>(formal_dimension - d)];
        if (left.empty())
            continue;
        std::vector<std::vector<Scalar>> m(left.size(), std::vector<Scalar>(right.size()));
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
                m[i][j] = coefficient_of(a.product(left[i], right[j]), orientation);
        auto inv = dense_inverse(m);
        // h_a* = sum_b inv[b][a] h_b, so that <h_a', h_a*> = (M inv)[a'][a] = delta.
        for (std::size_t i = 0; i < left.size(); ++i) {
            std::vector<std::pair<int, Scalar>> entries;
            for (std::size_t j = 0; j < right.size(); ++j)
                if (inv[j][i] != 0)
                    entries.emplace_back(right[j], inv[j][i]);
            h.duals_[static_cast<std::size_t>(left[i])] = make_sparse(std::move(entries));
        }
    }
    return h;
}

Scalar PDAlgebra::pairing(const SparseVec& a, const SparseVec& b) const
{
    return coefficient_of(algebra_->multiply(a, b), orientation_);
}

PDAlgebra validate_algebra(const RawAlgebra& raw)
{
    std::vector<Violation> violations;
    const int n = static_cast<int>(raw.basis.size());
    std::map<std::string, int> index;
    for (int i = 0; i < n; ++i) {
        const auto& b = raw.basis[static_cast<std::size_t>(i)];
        if (b.degree < 0)
            violations.push_back({ViolationKind::MalformedInput, "negative degree for " + b.label});
        if (!index.emplace(b.label, i).second)
            violations.push_back({ViolationKind::MalformedInput, "duplicate label " + b.label});
    }
    if (n == 0)
        violations.push_back({ViolationKind::MalformedInput, "empty basis"});
    int unit = -1;
    int zeros = 0;
    for (int i = 0; i < n; ++i)
        if (raw.basis[static_cast<std::size_t>(i)].degree == 0) {
            unit = i;
            ++zeros;
        }
    if (zeros != 1) {
        violations.push_back({ViolationKind::NonUnital, "expected exactly one basis element of degree 0, found " + std::to_string(zeros)});
        unit = -1;
    }
    auto deg = [&](int i) { return raw.basis[static_cast<std::size_t>(i)].degree; };

    std::vector<SparseVec> table(static_cast<std::size_t>(n * n));
    std::vector<bool> given(static_cast<std::size_t>(n * n), false);
    for (const auto& p : raw.products) {
        auto l = index.find(p.left);
        auto r = index.find(p.right);
        if (l == index.end() || r == index.end()) {
            violations.push_back({ViolationKind::MalformedInput, "unknown label in product " + p.left + "*" + p.right});
            continue;
        }
        std::vector<std::pair<int, Scalar>> entries;
        bool ok = true;
        for (const auto& [lab, c] : p.value) {
            auto k = index.find(lab);
            if (k == index.end()) {
                violations.push_back({ViolationKind::MalformedInput, "unknown label " + lab + " in value of " + p.left + "*" + p.right});
                ok = false;
                continue;
            }
            entries.emplace_back(k->second, c);
        }
        if (!ok)
            continue;
        SparseVec value = make_sparse(std::move(entries));
        int i = l->second, j = r->second;
        if (i == unit || j == unit) {
            int other = i == unit ? j : i;
            if (value != SparseVec{{other, Scalar(1)}})
                violations.push_back({ViolationKind::NonUnital, "listed product " + p.left + "*" + p.right + " contradicts the unit law"});
            continue;
        }
        std::size_t ij = static_cast<std::size_t>(i * n + j);
        std::size_t ji = static_cast<std::size_t>(j * n + i);
        if (given[ij] && table[ij] != value) {
            violations.push_back({ViolationKind::MalformedInput, "product " + p.left + "*" + p.right + " listed twice with different values"});
            continue;
        }
        SparseVec reflected = scaled(value, Scalar(sign_of(deg(i), deg(j))));
        if (given[ji] && table[ji] != reflected) {
            violations.push_back({ViolationKind::NotGradedCommutative, p.left + "," + p.right});
            continue;
        }
        table[ij] = value;
        given[ij] = true;
        if (!given[ji])
            table[ji] = reflected;
    }
    if (unit >= 0)
        for (int i = 0; i < n; ++i) {
            table[static_cast<std::size_t>(unit * n + i)] = SparseVec{{i, Scalar(1)}};
            table[static_cast<std::size_t>(i * n + unit)] = SparseVec{{i, Scalar(1)}};
        }
    if (!index.count(raw.orientation))
        violations.push_back({ViolationKind::MalformedInput, "orientation label '" + raw.orientation + "' is not a basis label"});
    if (!violations.empty())
        throw ValidationError(std::move(violations));

    auto algebra = std::make_shared<const GradedAlgebra>(raw.name, raw.basis, std::move(table));
    return make_pd_algebra(std::move(algebra), raw.formal_dimension, index.at(raw.orientation));
}

RawAlgebra to_raw(const PDAlgebra& h)
{
    const GradedAlgebra& a = h.algebra();
    RawAlgebra raw;
    raw.name = a.name();
    raw.formal_dimension = h.formal_dimension();
    raw.basis = a.basis();
    raw.orientation = a.label(h.orientation());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j) {
            if (a.degree(i) == 0 || a.degree(j) == 0 || a.product(i, j).empty())
                continue;
            RawProduct p{a.label(i), a.label(j), {}};
            for (const auto& [k, c] : a.product(i, j))
                p.value.emplace_back(a.label(k), c);
            raw.products.push_back(std::move(p));
        }
    return raw;
}

SparseVec AlgebraMap::apply(const SparseVec& v) const
{
    SparseVec out;
    for (const auto& [i, x] : v)
        axpy(out, x, images[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<std::pair<int, int>> AlgebraMap::multiplicativity_failures() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < source->dim(); ++i)
        for (int j = 0; j < source->dim(); ++j) {
            SparseVec lhs = apply(source->product(i, j));
            SparseVec rhs = target->multiply(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
            if (lhs != rhs)
                out.emplace_back(i, j);
        }
    return out;
}

ConnectedSum connected_sum(const PDAlgebra& h, const PDAlgebra& k)
{
    if (h.formal_dimension() != k.formal_dimension())
        throw std::invalid_argument("DimensionMismatch: connected sum needs equal formal dimensions (" + std::to_string(h.formal_dimension()) + " vs " + std::to_string(k.formal_dimension()) + ")");
    const GradedAlgebra& ha = h.algebra();
    const GradedAlgebra& ka = k.algebra();
    const int top = h.formal_dimension();

    std::vector<int> h_mid, k_mid;
    for (int i = 0; i < ha.dim(); ++i)
        if (ha.degree(i) > 0 && ha.degree(i) < top)
            h_mid.push_back(i);
    for (int i = 0; i < ka.dim(); ++i)
        if (ka.degree(i) > 0 && ka.degree(i) < top)
            k_mid.push_back(i);
    std::set<std::string> h_labels, k_labels;
    for (int i : h_mid)
        h_labels.insert(ha.label(i));
    bool clash = false;
    for (int i : k_mid)
        clash = clash || h_labels.count(ka.label(i)) > 0;

    // Sum basis: 1, H°+, K°+, omega.
    std::vector<BasisLabel> basis;
    basis.push_back({ha.label(ha.unit()), 0});
    std::vector<int> h_to_sum(static_cast<std::size_t>(ha.dim()), -1), k_to_sum(static_cast<std::size_t>(ka.dim()), -1);
    h_to_sum[static_cast<std::size_t>(ha.unit())] = 0;
    k_to_sum[static_cast<std::size_t>(ka.unit())] = 0;
    for (int i : h_mid) {
        h_to_sum[static_cast<std::size_t>(i)] = static_cast<int>(basis.size());
        basis.push_back({clash ? ha.label(i) + "_1" : ha.label(i), ha.degree(i)});
    }
    for (int i : k_mid) {
        k_to_sum[static_cast<std::size_t>(i)] = static_cast<int>(basis.size());
        basis.push_back({clash ? ka.label(i) + "_2" : ka.label(i), ka.degree(i)});
    }
    const int omega = static_cast<int>(basis.size());
    basis.push_back({ha.label(h.orientation()), top});
    h_to_sum[static_cast<std::size_t>(h.orientation())] = omega;
    k_to_sum[static_cast<std::size_t>(k.orientation())] = omega;

    const int n = static_cast<int>(basis.size());
    std::vector<SparseVec> table(static_cast<std::size_t>(n * n));
    auto embed = [](const SparseVec& v, const std::vector<int>& map) {
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [i, c] : v)
            e.emplace_back(map[static_cast<std::size_t>(i)], c);
        return make_sparse(std::move(e));
    };
    for (int i = 0; i < n; ++i) {
        table[static_cast<std::size_t>(i)] = SparseVec{{i, Scalar(1)}};
        table[static_cast<std::size_t>(i * n)] = SparseVec{{i, Scalar(1)}};
    }
    for (int i : h_mid)
        for (int j : h_mid)
            table[static_cast<std::size_t>(h_to_sum[i] * n + h_to_sum[j])] = embed(ha.product(i, j), h_to_sum);
    for (int i : k_mid)
        for (int j : k_mid)
            table[static_cast<std::size_t>(k_to_sum[i] * n + k_to_sum[j])] = embed(ka.product(i, j), k_to_sum);

    auto sum_alg = std::make_shared<const GradedAlgebra>(ha.name() + "#" + ka.name(), std::move(basis), std::move(table));
    PDAlgebra sum = make_pd_algebra(sum_alg, top, omega);

    auto project_to = [&](const GradedAlgebra& factor, const PDAlgebra& pd, const std::vector<int>& mid, const std::vector<int>& to_sum) {
        // Punctured factor basis: every basis element except omega, in original order.
        std::vector<BasisLabel> pb;
        std::vector<int> fac_to_p(static_cast<std::size_t>(factor.dim()), -1);
        for (int i = 0; i < factor.dim(); ++i)
            if (i != pd.orientation()) {
                fac_to_p[static_cast<std::size_t>(i)] = static_cast<int>(pb.size());
                pb.push_back(factor.basis()[static_cast<std::size_t>(i)]);
            }
        const int pn = static_cast<int>(pb.size());
        std::vector<SparseVec> pt(static_cast<std::size_t>(pn * pn));
        for (int i = 0; i < factor.dim(); ++i)
            for (int j = 0; j < factor.dim(); ++j) {
                if (fac_to_p[i] < 0 || fac_to_p[j] < 0)
                    continue;
                std::vector<std::pair<int, Scalar>> e;
                for (const auto& [c, x] : factor.product(i, j))
                    if (fac_to_p[c] >= 0)
                        e.emplace_back(fac_to_p[c], x);
                pt[static_cast<std::size_t>(fac_to_p[i] * pn + fac_to_p[j])] = make_sparse(std::move(e));
            }
        auto target = std::make_shared<const GradedAlgebra>(factor.name() + "°", std::move(pb), std::move(pt));
        AlgebraMap f{sum.algebra_ptr(), target, std::vector<SparseVec>(static_cast<std::size_t>(n))};
        f.images[0] = SparseVec{{fac_to_p[factor.unit()], Scalar(1)}};
        for (int i : mid)
            f.images[static_cast<std::size_t>(to_sum[i])] = SparseVec{{fac_to_p[i], Scalar(1)}};
        return f;
    };
    AlgebraMap to_h = project_to(ha, h, h_mid, h_to_sum);
    AlgebraMap to_k = project_to(ka, k, k_mid, k_to_sum);
    return ConnectedSum{std::move(sum), std::move(to_h), std::move(to_k)};
}

int euler_characteristic(const PDAlgebra& h)
{
    int e = 0;
    for (const auto& b : h.algebra().basis())
        e += b.degree % 2 == 0 ? 1 : -1;
    return e;
}

Polynomial algebra_poincare_poly(const GradedAlgebra& a)
{
    auto dims = a.dims_by_degree();
    return Polynomial(std::vector<std::int64_t>(dims.begin(), dims.end()));
}

}  // namespace confmodels
