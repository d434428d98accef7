#include "confmodels/cohomology.hpp"

#include <set>

#include <nlohmann/json.hpp>

namespace confmodels {

long BettiTable::at(int p, int q) const
{
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second;
}

BigradedPolynomial BettiTable::poincare() const
{
    BigradedPolynomial out;
    for (const auto& [pq, d] : entries)
        out.add(pq.second, pq.first, d);
    return out;
}

namespace {

std::vector<SparseVec> block_images(const Model& model, const std::vector<int>& block)
{
    const auto& d = model.differential();
    std::vector<SparseVec> out;
    out.reserve(block.size());
    for (int b : block)
        out.push_back(d[static_cast<std::size_t>(b)]);
    return out;
}

const std::vector<int>& block_or_empty(const Model& model, int p, int q)
{
    static const std::vector<int> empty;
    auto it = model.blocks().find({p, q});
    return it == model.blocks().end() ? empty : it->second;
}

}  // namespace

BettiTable betti(const Model& model)
{
    std::map<std::pair<int, int>, long> out_rank;
    for (const auto& [pq, idx] : model.blocks())
        out_rank[pq] = pq.second == 0 ? 0 : static_cast<long>(rank(block_images(model, idx)));
    BettiTable t;
    for (const auto& [pq, idx] : model.blocks()) {
        long dim = static_cast<long>(idx.size()) - out_rank[pq];
        auto in = out_rank.find({pq.first - 1, pq.second + 1});
        if (in != out_rank.end())
            dim -= in->second;
        if (dim != 0)
            t.entries[pq] = dim;
    }
    return t;
}

namespace {

std::map<int, long> drop_zeros(std::map<int, long> m)
{
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
}

}  // namespace

std::map<int, long> chain_euler_by_antidiagonal(const Model& model)
{
    std::map<int, long> out;
    for (const auto& [pq, idx] : model.blocks())
        out[pq.first + pq.second] += (pq.first % 2 == 0 ? 1 : -1) * static_cast<long>(idx.size());
    return drop_zeros(std::move(out));
}

std::map<int, long> betti_euler_by_antidiagonal(const BettiTable& b)
{
    std::map<int, long> out;
    for (const auto& [pq, d] : b.entries)
        out[pq.first + pq.second] += (pq.first % 2 == 0 ? 1 : -1) * d;
    return drop_zeros(std::move(out));
}

SparseVec CohomologyBlock::classify(const SparseVec& cycle) const
{
    auto c = reducer.solve(cycle);
    if (!c)
        throw std::logic_error("vector is not a cycle of this block");
    return *c;
}

CohomologyBlock cohomology_block(const Model& model, int p, int q)
{
    CohomologyBlock out;
    for (const auto& v : block_images(model, block_or_empty(model, p - 1, q + 1)))
        out.reducer.insert(v);
    const auto& idx = block_or_empty(model, p, q);
    for (const auto& rel : kernel(block_images(model, idx))) {
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [local, c] : rel)
            e.emplace_back(idx[static_cast<std::size_t>(local)], c);
        SparseVec z = make_sparse(std::move(e));
        int r = static_cast<int>(out.representatives.size());
        if (!out.reducer.insert(z, SparseVec{{r, Scalar(1)}}))
            out.representatives.push_back(std::move(z));
    }
    return out;
}

InducedMap induced_map(const ChainMap& f)
{
    auto bad = f.chain_failures();
    if (!bad.empty())
        throw NotChainMap(f.name() + " does not commute with d at " + f.source().describe(bad.front()));
    InducedMap out;
    std::set<std::pair<int, int>> keys;
    for (const auto& [pq, idx] : f.source().blocks())
        keys.insert(pq);
    for (const auto& [pq, idx] : f.target().blocks())
        keys.insert(pq);
    for (const auto& pq : keys) {
        CohomologyBlock src = cohomology_block(f.source(), pq.first, pq.second);
        CohomologyBlock tgt = cohomology_block(f.target(), pq.first, pq.second);
        auto& m = out.matrices[pq];
        for (const auto& z : src.representatives)
            m.push_back(tgt.classify(f.apply(z)));
        long ds = static_cast<long>(src.representatives.size());
        long dt = static_cast<long>(tgt.representatives.size());
        out.dims[pq] = {ds, dt};
        if (ds != dt || static_cast<long>(rank(m)) != ds)
            out.non_iso.push_back(pq);
    }
    return out;
}

bool ColumnReport::ok() const
{
    if (!splitting || !positive_q_cohomology.empty())
        return false;
    for (const auto& [k, v] : h0)
        if (v.first != v.second)
            return false;
    return true;
}

ColumnReport column_acyclicity(const std::shared_ptr<const ModelContext>& ctx, int n)
{
    ModelPtr model = build_model(ModelKind::Kriz, ctx, n);
    const auto& d = model->differential();
    const int g = ctx->algebra().formal_dimension() - 1;
    const std::size_t size = model->size();
    std::vector<int> col(size), row(size);
    for (std::size_t b = 0; b < size; ++b) {
        int ones = 0;
        for (const auto& [i, j] : model->element(static_cast<int>(b)).term.word)
            ones += j == 1 ? 1 : 0;
        row[b] = ones;
        col[b] = static_cast<int>(model->element(static_cast<int>(b)).term.word.size()) - ones;
    }
    ColumnReport rep;
    // (column, q, degree) -> basis indices; d1 keeps the column.
    std::map<std::tuple<int, int, int>, std::vector<int>> cells;
    std::vector<SparseVec> d1(size);
    for (std::size_t b = 0; b < size; ++b) {
        cells[{col[b], row[b], model->element(static_cast<int>(b)).p}].push_back(static_cast<int>(b));
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [c, x] : d[b]) {
            auto cs = static_cast<std::size_t>(c);
            if (col[cs] == col[b] && row[cs] == row[b] - 1)
                e.emplace_back(c, x);
            else if (!(col[cs] == col[b] - 1 && row[cs] == row[b]))
                rep.splitting = false;
        }
        d1[b] = make_sparse(std::move(e));
    }
    std::map<std::tuple<int, int, int>, long> out_rank;
    for (const auto& [key, idx] : cells) {
        std::vector<SparseVec> imgs;
        for (int b : idx)
            imgs.push_back(d1[static_cast<std::size_t>(b)]);
        out_rank[key] = static_cast<long>(rank(imgs));
    }
    Polynomial ph = algebra_poincare_poly(ctx->algebra().algebra());
    Polynomial php = algebra_poincare_poly(*ctx->punctured().algebra.algebra);
    for (const auto& [key, idx] : cells) {
        auto [p, q, deg] = key;
        long h = static_cast<long>(idx.size()) - out_rank[key];
        auto in = out_rank.find({p, q + 1, deg - 1});
        if (in != out_rank.end())
            h -= in->second;
        if (q > 0 && h != 0)
            rep.positive_q_cohomology.emplace_back(p, q, deg);
        if (q == 0)
            rep.h0[{p, deg}].first = h;
    }
    for (int p = 0; p <= std::max(0, n - 2); ++p) {
        Polynomial coeff = ph;
        for (int k = 0; k < n - p - 1; ++k)
            coeff = coeff * php;
        const auto count = static_cast<long>(elementary_symmetric(p, n - 2));
        for (int e = 0; e <= coeff.degree(); ++e)
            if (coeff.coefficient(e) != 0)
                rep.h0[{p, e + p * g}].second = count * coeff.coefficient(e);
    }
    return rep;
}

std::string betti_json(const BettiTable& b, const std::string& model, const std::string& algebra, int n)
{
    nlohmann::ordered_json j;
    j["model"] = model;
    j["algebra"] = algebra;
    j["n"] = n;
    j["betti"] = nlohmann::ordered_json::array();
    for (const auto& [pq, d] : b.entries)
        j["betti"].push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
    BigradedPolynomial poly = b.poincare();
    j["poincare_st"] = poly.to_string();
    j["poincare_st_by_s"] = poly.to_string_by_s();
    j["poincare_t"] = poly.at_s_equals_one().to_string();
    return j.dump(2);
}

}  // namespace confmodels
