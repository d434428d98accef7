#include "confmodels/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace confmodels {

void EchelonBasis::reduce_tracked(SparseVec& v, SparseVec* tag) const
{
    int last = -1;
    while (!v.empty()) {
        auto it = std::upper_bound(v.begin(), v.end(), last, [](int c, const auto& e) { return c < e.first; });
        const Row* row = nullptr;
        for (; it != v.end(); ++it) {
            auto r = rows_.find(it->first);
            if (r != rows_.end()) {
                row = &r->second;
                break;
            }
        }
        if (row == nullptr)
            break;
        last = it->first;
        Scalar f = -it->second;
        if (tag != nullptr)
            axpy(*tag, f, row->tag);
        axpy(v, f, row->vec);
    }
}

SparseVec EchelonBasis::reduce(SparseVec v) const
{
    reduce_tracked(v, nullptr);
    return v;
}

std::optional<SparseVec> EchelonBasis::insert(SparseVec v, SparseVec tag)
{
    reduce_tracked(v, &tag);
    if (v.empty())
        return tag;
    Scalar inv = 1 / v.front().second;
    Row row{scaled(v, inv), scaled(tag, inv)};
    int pivot = row.vec.front().first;
    // Keep existing rows reduced in the new pivot column.
    for (auto& [p, r] : rows_) {
        auto it = std::lower_bound(r.vec.begin(), r.vec.end(), pivot, [](const auto& e, int c) { return e.first < c; });
        if (it != r.vec.end() && it->first == pivot) {
            Scalar f = -it->second;
            axpy(r.tag, f, row.tag);
            axpy(r.vec, f, row.vec);
        }
    }
    rows_.emplace(pivot, std::move(row));
    return std::nullopt;
}

std::optional<SparseVec> EchelonBasis::solve(const SparseVec& v) const
{
    SparseVec rem = v;
    SparseVec tag;
    reduce_tracked(rem, &tag);
    if (!rem.empty())
        return std::nullopt;
    // rem = v + tag-combination  =>  v = -tag-combination
    return scaled(tag, Scalar(-1));
}

std::vector<int> EchelonBasis::pivots() const
{
    std::vector<int> out;
    out.reserve(rows_.size());
    for (const auto& [p, r] : rows_)
        out.push_back(p);
    return out;
}

namespace {

using IntVec = std::vector<std::pair<int, mpz_class>>;

IntVec to_primitive(const SparseVec& v)
{
    mpz_class l = 1;
    for (const auto& [i, x] : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVec out;
    out.reserve(v.size());
    mpz_class g = 0;
    for (const auto& [i, x] : v) {
        mpz_class n = x.get_num() * (l / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        out.emplace_back(i, std::move(n));
    }
    if (g > 1)
        for (auto& [i, n] : out)
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    return out;
}

// v <- a*v - b*row, where a = row[pivot]/g and b = v[pivot]/g; then remove content.
void eliminate(IntVec& v, const IntVec& row, const mpz_class& vp, const mpz_class& rp)
{
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), vp.get_mpz_t(), rp.get_mpz_t());
    mpz_class a = rp / g;
    mpz_class b = vp / g;
    IntVec out;
    out.reserve(v.size() + row.size());
    auto x = v.begin();
    auto y = row.begin();
    mpz_class content = 0;
    while (x != v.end() || y != row.end()) {
        mpz_class val;
        int idx;
        if (y == row.end() || (x != v.end() && x->first < y->first)) {
            idx = x->first;
            val = a * x->second;
            ++x;
        }
        else if (x == v.end() || y->first < x->first) {
            idx = y->first;
            val = -b * y->second;
            ++y;
        }
        else {
            idx = x->first;
            val = a * x->second - b * y->second;
            ++x;
            ++y;
        }
        if (val != 0) {
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), val.get_mpz_t());
            out.emplace_back(idx, std::move(val));
        }
    }
    if (content > 1)
        for (auto& [i, n] : out)
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), content.get_mpz_t());
    v = std::move(out);
}

}  // namespace

std::size_t rank(const std::vector<SparseVec>& vectors)
{
    std::vector<IntVec> work;
    work.reserve(vectors.size());
    for (const auto& v : vectors)
        if (!v.empty())
            work.push_back(to_primitive(v));
    std::stable_sort(work.begin(), work.end(), [](const IntVec& a, const IntVec& b) { return a.size() < b.size(); });
    std::map<int, IntVec> rows;
    for (auto& v : work) {
        while (!v.empty()) {
            auto r = rows.find(v.front().first);
            if (r == rows.end())
                break;
            mpz_class vp = v.front().second;
            eliminate(v, r->second, vp, r->second.front().second);
        }
        if (!v.empty())
            rows.emplace(v.front().first, std::move(v));
    }
    return rows.size();
}

std::vector<SparseVec> kernel(const std::vector<SparseVec>& columns)
{
    EchelonBasis basis;
    std::vector<SparseVec> out;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto rel = basis.insert(columns[j], SparseVec{{static_cast<int>(j), Scalar(1)}});
        if (rel)
            out.push_back(std::move(*rel));
    }
    return out;
}

SparseVec apply(const std::vector<SparseVec>& images, const SparseVec& v)
{
    SparseVec out;
    for (const auto& [i, x] : v)
        axpy(out, x, images.at(static_cast<std::size_t>(i)));
    return out;
}

}  // namespace confmodels
