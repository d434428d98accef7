#include "confmodels/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include "confmodels/linalg.hpp"

namespace confmodels {

TensorElement TensorElement::unit(std::vector<AlgebraPtr> slots)
{
    TensorElement e(std::move(slots));
    TensorKey key;
    for (const auto& a : e.slots_)
        key.push_back(a->unit());
    e.add(key, 1);
    return e;
}

void TensorElement::add(const TensorKey& key, const Scalar& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = terms_.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Scalar TensorElement::coefficient(const TensorKey& key) const
{
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
}

TensorElement TensorElement::operator+(const TensorElement& o) const
{
    TensorElement out = *this;
    for (const auto& [k, c] : o.terms_)
        out.add(k, c);
    return out;
}

TensorElement TensorElement::operator-(const TensorElement& o) const
{
    TensorElement out = *this;
    for (const auto& [k, c] : o.terms_)
        out.add(k, -c);
    return out;
}

TensorElement TensorElement::scaled(const Scalar& c) const
{
    TensorElement out(slots_);
    for (const auto& [k, x] : terms_)
        out.add(k, x * c);
    return out;
}

int tensor_degree(const std::vector<AlgebraPtr>& slots, const TensorKey& key)
{
    int d = 0;
    for (std::size_t i = 0; i < key.size(); ++i)
        d += slots[i]->degree(key[i]);
    return d;
}

int product_sign(const std::vector<AlgebraPtr>& slots, const TensorKey& u, const TensorKey& v)
{
    // Moving v_j to the left past u_i for every i > j.
    int odd = 0;
    int odd_u_right = 0;
    for (int i = static_cast<int>(u.size()) - 1; i >= 0; --i) {
        std::size_t s = static_cast<std::size_t>(i);
        if (slots[s]->degree(v[s]) % 2 != 0)
            odd += odd_u_right;
        if (slots[s]->degree(u[s]) % 2 != 0)
            ++odd_u_right;
    }
    return odd % 2 == 0 ? 1 : -1;
}

std::vector<std::pair<TensorKey, Scalar>> multiply_keys(const std::vector<AlgebraPtr>& slots, const TensorKey& u, const TensorKey& v)
{
    std::vector<std::pair<TensorKey, Scalar>> partial{{TensorKey(), Scalar(product_sign(slots, u, v))}};
    partial.front().first.reserve(u.size());
    for (std::size_t s = 0; s < slots.size() && !partial.empty(); ++s) {
        const SparseVec& p = slots[s]->product(u[s], v[s]);
        if (p.size() == 1) {
            for (auto& [key, coeff] : partial) {
                key.push_back(p.front().first);
                coeff *= p.front().second;
            }
            continue;
        }
        std::vector<std::pair<TensorKey, Scalar>> next;
        for (const auto& [key, coeff] : partial)
            for (const auto& [b, z] : p) {
                TensorKey k2 = key;
                k2.push_back(b);
                next.emplace_back(std::move(k2), coeff * z);
            }
        partial = std::move(next);
    }
    return partial;
}

TensorElement TensorElement::operator*(const TensorElement& o) const
{
    if (slots_.size() != o.slots_.size())
        throw std::invalid_argument("ArityMismatch: multiplying tensors of arity " + std::to_string(slots_.size()) + " and " + std::to_string(o.slots_.size()));
    TensorElement out(slots_);
    for (const auto& [u, x] : terms_)
        for (const auto& [v, y] : o.terms_)
            for (const auto& [key, c] : multiply_keys(slots_, u, v))
                out.add(key, x * y * c);
    return out;
}

std::string TensorElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
        std::string coeff = format_scalar(c);
        if (!out.empty() && coeff[0] != '-')
            out += " + ";
        else if (!out.empty())
            out += " ";
        out += coeff + "*";
        for (std::size_t s = 0; s < key.size(); ++s)
            out += (s ? "⊗" : "") + slots_[s]->label(key[s]);
    }
    return out;
}

SlotInjection::SlotInjection(std::vector<int> targets, int n) : targets_(std::move(targets)), n_(n)
{
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int t : targets_) {
        if (t < 1 || t > n)
            throw std::invalid_argument("ArityMismatch: slot " + std::to_string(t) + " outside 1.." + std::to_string(n));
        if (seen[static_cast<std::size_t>(t)])
            throw std::invalid_argument("NonInjective: slot " + std::to_string(t) + " hit twice");
        seen[static_cast<std::size_t>(t)] = true;
    }
}

SlotInjection SlotInjection::compose_after(const SlotInjection& psi) const
{
    if (psi.source_arity() != n_)
        throw std::invalid_argument("ArityMismatch: cannot compose injections");
    std::vector<int> t;
    for (int s : targets_)
        t.push_back(psi(s));
    return SlotInjection(std::move(t), psi.target_arity());
}

int insertion_sign(const std::vector<AlgebraPtr>& source_slots, const TensorKey& key, const SlotInjection& phi)
{
    int odd = 0;
    const int k = phi.source_arity();
    for (int s = 1; s <= k; ++s) {
        if (source_slots[static_cast<std::size_t>(s - 1)]->degree(key[static_cast<std::size_t>(s - 1)]) % 2 == 0)
            continue;
        for (int t = s + 1; t <= k; ++t)
            if (phi(s) > phi(t) && source_slots[static_cast<std::size_t>(t - 1)]->degree(key[static_cast<std::size_t>(t - 1)]) % 2 != 0)
                ++odd;
    }
    return odd % 2 == 0 ? 1 : -1;
}

TensorElement insert(const TensorElement& x, const SlotInjection& phi, std::vector<AlgebraPtr> target_slots)
{
    if (phi.source_arity() != x.arity() || static_cast<int>(target_slots.size()) != phi.target_arity())
        throw std::invalid_argument("ArityMismatch: injection does not fit the tensor");
    for (int s = 1; s <= x.arity(); ++s)
        if (target_slots[static_cast<std::size_t>(phi(s) - 1)] != x.slots()[static_cast<std::size_t>(s - 1)])
            throw std::invalid_argument("ArityMismatch: slot algebras differ");
    TensorElement out(target_slots);
    TensorKey base;
    for (const auto& a : target_slots)
        base.push_back(a->unit());
    for (const auto& [key, c] : x.terms()) {
        TensorKey k2 = base;
        for (int s = 1; s <= x.arity(); ++s)
            k2[static_cast<std::size_t>(phi(s) - 1)] = key[static_cast<std::size_t>(s - 1)];
        out.add(k2, c * insertion_sign(x.slots(), key, phi));
    }
    return out;
}

TensorElement insert(const TensorElement& x, const SlotInjection& phi)
{
    if (x.arity() == 0)
        throw std::invalid_argument("ArityMismatch: cannot infer slot algebras of an empty tensor");
    return insert(x, phi, std::vector<AlgebraPtr>(static_cast<std::size_t>(phi.target_arity()), x.slots().front()));
}

std::vector<std::string> diagonal_axiom_failures(const TensorElement& d)
{
    std::vector<std::string> out;
    if (insert(d, SlotInjection({2, 1}, 2)) != d)
        out.push_back("symmetry");
    const AlgebraPtr& a = d.slots().front();
    for (int i = 0; i < a->dim(); ++i) {
        TensorElement left(d.slots()), right(d.slots());
        left.add({i, a->unit()}, 1);
        right.add({a->unit(), i}, 1);
        if (left * d != right * d)
            out.push_back(a->label(i));
    }
    return out;
}

TensorElement diagonal_class(const PDAlgebra& h)
{
    TensorElement d = TensorElement::zero(h.algebra_ptr(), 2);
    for (int alpha = 0; alpha < h.dim(); ++alpha) {
        int sign = h.algebra().degree(alpha) % 2 == 0 ? 1 : -1;
        for (const auto& [beta, c] : h.dual(alpha))
            d.add({alpha, beta}, c * sign);
    }
    auto failures = diagonal_axiom_failures(d);
    if (!failures.empty())
        throw std::logic_error("diagonal class of " + h.name() + " fails its axioms at " + failures.front());
    return d;
}

Punctured puncture(const std::shared_ptr<const PDAlgebra>& h)
{
    const GradedAlgebra& a = h->algebra();
    const int omega = h->orientation();
    std::vector<int> projection(static_cast<std::size_t>(a.dim()), -1);
    std::vector<BasisLabel> basis;
    for (int i = 0; i < a.dim(); ++i)
        if (i != omega) {
            projection[static_cast<std::size_t>(i)] = static_cast<int>(basis.size());
            basis.push_back(a.basis()[static_cast<std::size_t>(i)]);
        }
    const int n = static_cast<int>(basis.size());
    std::vector<SparseVec> table(static_cast<std::size_t>(n * n));
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            int pi = projection[static_cast<std::size_t>(i)], pj = projection[static_cast<std::size_t>(j)];
            if (pi < 0 || pj < 0)
                continue;
            std::vector<std::pair<int, Scalar>> e;
            for (const auto& [k, c] : a.product(i, j))
                if (projection[static_cast<std::size_t>(k)] >= 0)
                    e.emplace_back(projection[static_cast<std::size_t>(k)], c);
            table[static_cast<std::size_t>(pi * n + pj)] = make_sparse(std::move(e));
        }
    auto hp = std::make_shared<const GradedAlgebra>(a.name() + "°", std::move(basis), std::move(table));
    if (!check_graded_algebra(*hp).empty())
        throw std::logic_error("punctured algebra of " + a.name() + " is not a graded algebra");

    TensorElement full = diagonal_class(*h);
    TensorElement dp = TensorElement::zero(hp, 2);
    for (const auto& [key, c] : full.terms()) {
        int x = projection[static_cast<std::size_t>(key[0])], y = projection[static_cast<std::size_t>(key[1])];
        if (x >= 0 && y >= 0)
            dp.add({x, y}, c);
    }
    auto failures = diagonal_axiom_failures(dp);
    if (!failures.empty())
        throw std::logic_error("punctured diagonal of " + a.name() + " fails its axioms at " + failures.front());
    return Punctured{PuncturedAlgebra{hp, h, std::move(projection)}, std::move(dp)};
}

AlgebraPtr ground_field_algebra()
{
    static const AlgebraPtr k = std::make_shared<const GradedAlgebra>("K", std::vector<BasisLabel>{{"1", 0}}, std::vector<SparseVec>{SparseVec{{0, Scalar(1)}}});
    return k;
}

FatDiagonalQuotient::FatDiagonalQuotient(std::shared_ptr<const PDAlgebra> h, int l)
    : h_(std::move(h)), l_(l), diagonal_(diagonal_class(*h_))
{
    if (l < 1)
        throw std::invalid_argument("fat diagonal quotient needs l >= 1");
}

bool FatDiagonalQuotient::in_section(const TensorKey& key) const
{
    for (std::size_t s = 1; s < key.size(); ++s)
        if (key[s] == h_->orientation())
            return false;
    return true;
}

std::vector<TensorKey> FatDiagonalQuotient::tensors_of_degree(int degree) const
{
    const GradedAlgebra& a = h_->algebra();
    std::vector<TensorKey> out;
    TensorKey key(static_cast<std::size_t>(l_), 0);
    // Depth-first enumeration in lexicographic order with degree pruning.
    const int top = a.max_degree();
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == l_) {
            if (remaining == 0)
                out.push_back(key);
            return;
        }
        if (remaining < 0 || remaining > top * (l_ - slot))
            return;
        for (int b = 0; b < a.dim(); ++b) {
            key[static_cast<std::size_t>(slot)] = b;
            self(self, slot + 1, remaining - a.degree(b));
        }
    };
    rec(rec, 0, degree);
    return out;
}

std::vector<TensorElement> FatDiagonalQuotient::ideal_generators(int degree) const
{
    std::vector<TensorElement> out;
    std::vector<AlgebraPtr> slots(static_cast<std::size_t>(l_), h_->algebra_ptr());
    const int shift = h_->formal_dimension();
    if (degree < shift)
        return out;
    auto ts = tensors_of_degree(degree - shift);
    for (int s = 2; s <= l_; ++s) {
        TensorElement ds = insert(diagonal_, SlotInjection({1, s}, l_), slots);
        for (const auto& t : ts) {
            TensorElement te(slots);
            te.add(t, 1);
            TensorElement g = ds * te;
            if (!g.is_zero())
                out.push_back(std::move(g));
        }
    }
    return out;
}

const FatDiagonalQuotient::Level& FatDiagonalQuotient::level(int degree) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = levels_.find(degree);
    if (it != levels_.end())
        return *it->second;

    auto lv = std::make_unique<Level>();
    std::vector<TensorKey> all = tensors_of_degree(degree);
    std::vector<TensorKey> cs;
    for (const auto& k : all)
        (in_section(k) ? lv->section : cs).push_back(k);
    // Column order: non-section tensors first so that pivots land there.
    std::map<TensorKey, int> column;
    for (const auto& k : cs)
        column.emplace(k, static_cast<int>(column.size()));
    for (const auto& k : lv->section)
        column.emplace(k, static_cast<int>(column.size()));

    EchelonBasis ideal;
    for (const auto& g : ideal_generators(degree)) {
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [k, c] : g.terms())
            e.emplace_back(column.at(k), c);
        ideal.insert(make_sparse(std::move(e)));
    }
    lv->ideal_rank = static_cast<int>(ideal.rank());
    const int ncs = static_cast<int>(cs.size());
    auto pivots = ideal.pivots();
    if (lv->ideal_rank != ncs || (!pivots.empty() && pivots.back() >= ncs))
        throw SectionNotBasis("section tensors are not a basis of the fat-diagonal quotient in degree " + std::to_string(degree) + " (l=" + std::to_string(l_) + ")");
    for (int c = 0; c < ncs; ++c) {
        SparseVec r = ideal.reduce(SparseVec{{c, Scalar(1)}});
        std::vector<std::pair<TensorKey, Scalar>> combo;
        for (const auto& [col, x] : r)
            combo.emplace_back(lv->section[static_cast<std::size_t>(col - ncs)], x);
        lv->rewrite.emplace(cs[static_cast<std::size_t>(c)], std::move(combo));
    }
    auto& slot = levels_[degree];
    slot = std::move(lv);
    return *slot;
}

std::map<TensorKey, Scalar> FatDiagonalQuotient::project(const std::map<TensorKey, Scalar>& v) const
{
    std::map<TensorKey, Scalar> out;
    auto add = [&](const TensorKey& k, const Scalar& c) {
        auto [it, fresh] = out.emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                out.erase(it);
        }
    };
    std::vector<AlgebraPtr> slots(static_cast<std::size_t>(l_), h_->algebra_ptr());
    for (const auto& [k, c] : v) {
        if (in_section(k)) {
            add(k, c);
            continue;
        }
        const Level& lv = level(tensor_degree(slots, k));
        for (const auto& [s, x] : lv.rewrite.at(k))
            add(s, c * x);
    }
    return out;
}

std::vector<TensorKey> FatDiagonalQuotient::section_basis(int degree) const { return level(degree).section; }

int FatDiagonalQuotient::ideal_rank(int degree) const { return level(degree).ideal_rank; }

int FatDiagonalQuotient::quotient_dim(int degree) const { return static_cast<int>(level(degree).section.size()); }

}  // namespace confmodels
