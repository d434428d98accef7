#include "confmodels/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "confmodels/linalg.hpp"

namespace confmodels {

void add_to(Expr& e, const Term& t, const Scalar& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = e.emplace(t, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            e.erase(it);
    }
}

void add_to(Expr& e, const Expr& other, const Scalar& c)
{
    for (const auto& [t, x] : other)
        add_to(e, t, x * c);
}

// ---------------------------------------------------------------------------------------
// Engine

Engine::Engine(BlockStructure bs, Quotients quotients) : bs_(std::move(bs)), quotients_(std::move(quotients))
{
    const int n = arity();
    if (static_cast<int>(bs_.block.size()) != n)
        throw std::invalid_argument("block structure: one block id per slot required");
    if (bs_.generator_degree % 2 == 0)
        throw std::invalid_argument("block structure: generators must have odd degree");
    block_min_.assign(static_cast<std::size_t>(n), 0);
    for (int i = n; i >= 1; --i)
        for (int j = 1; j <= i; ++j)
            if (bs_.block[static_cast<std::size_t>(j - 1)] == bs_.block[static_cast<std::size_t>(i - 1)]) {
                block_min_[static_cast<std::size_t>(i - 1)] = j;
                if (bs_.slots[static_cast<std::size_t>(j - 1)] != bs_.slots[static_cast<std::size_t>(i - 1)])
                    throw std::invalid_argument("block structure: slots of one block must share their algebra");
                break;
            }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
            if (!generator_allowed(i, j))
                continue;
            const TensorElement& base = bs_.nabla.at(static_cast<std::size_t>(bs_.block[static_cast<std::size_t>(i - 1)]));
            if (base.arity() == 0) {
                nabla_.emplace(std::make_pair(i, j), TensorElement(bs_.slots));
                continue;
            }
            nabla_.emplace(std::make_pair(i, j), insert(base, SlotInjection({j, i}, n), bs_.slots));
        }
}

bool Engine::generator_allowed(int i, int j) const
{
    const int n = arity();
    return i != j && i >= 1 && j >= 1 && i <= n && j <= n && bs_.block[static_cast<std::size_t>(i - 1)] == bs_.block[static_cast<std::size_t>(j - 1)];
}

int Engine::degree(const Term& t) const
{
    return tensor_degree(bs_.slots, t.coeff) + static_cast<int>(t.word.size()) * bs_.generator_degree;
}

TensorKey Engine::unit_key() const
{
    TensorKey k;
    for (const auto& a : bs_.slots)
        k.push_back(a->unit());
    return k;
}

const TensorElement& Engine::nabla(int i, int j) const
{
    if (i < j)
        std::swap(i, j);
    return nabla_.at({i, j});
}

void Engine::project_into(Expr& out, const Term& t, const Scalar& c) const
{
    if (quotients_.empty()) {
        add_to(out, t, c);
        return;
    }
    const int n = arity();
    std::vector<bool> occupied(static_cast<std::size_t>(n), false);
    for (const auto& [i, j] : t.word)
        occupied[static_cast<std::size_t>(i - 1)] = true;
    std::vector<int> complement;
    TensorKey sub;
    for (int s = 0; s < n; ++s)
        if (!occupied[static_cast<std::size_t>(s)]) {
            complement.push_back(s);
            sub.push_back(t.coeff[static_cast<std::size_t>(s)]);
        }
    const auto& q = quotients_.at(complement.size());
    if (q->in_section(sub)) {
        add_to(out, t, c);
        return;
    }
    for (const auto& [k, x] : q->project({{sub, Scalar(1)}})) {
        Term t2 = t;
        for (std::size_t a = 0; a < complement.size(); ++a)
            t2.coeff[static_cast<std::size_t>(complement[a])] = k[a];
        add_to(out, t2, c * x);
    }
}

namespace {

// Moves the content of slot i into slot j (j < i) of a basis tensor, following
// iota_i(x) G_ij = iota_j(x) G_ij. Appends the resulting terms to `out`.
void push_content(const std::vector<AlgebraPtr>& slots, const TensorKey& key, const Scalar& c, int i, int j, std::vector<std::pair<TensorKey, Scalar>>& out)
{
    const auto& ai = slots[static_cast<std::size_t>(i - 1)];
    const int x = key[static_cast<std::size_t>(i - 1)];
    if (x == ai->unit()) {
        out.emplace_back(key, c);
        return;
    }
    const int dx = ai->degree(x);
    int between = 0;
    for (int a = j + 1; a < i; ++a)
        between += slots[static_cast<std::size_t>(a - 1)]->degree(key[static_cast<std::size_t>(a - 1)]);
    Scalar sc = (dx * between) % 2 == 0 ? c : Scalar(-c);
    TensorKey k2 = key;
    k2[static_cast<std::size_t>(i - 1)] = ai->unit();
    const auto& aj = slots[static_cast<std::size_t>(j - 1)];
    for (const auto& [b, z] : aj->product(key[static_cast<std::size_t>(j - 1)], x)) {
        k2[static_cast<std::size_t>(j - 1)] = b;
        out.emplace_back(k2, sc * z);
    }
}

}  // namespace

void Engine::normalize_into(Expr& out, Term t0, Scalar c0) const
{
    std::vector<std::pair<Term, Scalar>> work;
    work.emplace_back(std::move(t0), std::move(c0));
    while (!work.empty()) {
        auto [t, c] = std::move(work.back());
        work.pop_back();
        if (c == 0)
            continue;
        for (auto& [i, j] : t.word) {
            if (!generator_allowed(i, j))
                throw std::invalid_argument("generator G_" + std::to_string(i) + "," + std::to_string(j) + " does not exist here");
            if (i < j)
                std::swap(i, j);
        }
        // Anticommute into sorted order.
        auto& w = t.word;
        for (std::size_t a = 1; a < w.size(); ++a)
            for (std::size_t b = a; b > 0 && w[b - 1] > w[b]; --b) {
                std::swap(w[b - 1], w[b]);
                c = -c;
            }
        bool zero = false;
        std::size_t arnold = w.size();
        for (std::size_t a = 0; a + 1 < w.size(); ++a) {
            if (w[a] == w[a + 1]) {
                zero = true;
                break;
            }
            if (arnold == w.size() && w[a].first == w[a + 1].first)
                arnold = a;
        }
        if (zero)
            continue;
        if (arnold < w.size()) {
            // G_ij G_ik = -G_kj G_ij + G_kj G_ik  (j < k < i)
            const int i = w[arnold].first, j = w[arnold].second, k = w[arnold + 1].second;
            Term t1 = t;
            t1.word[arnold] = {k, j};
            t1.word[arnold + 1] = {i, j};
            work.emplace_back(std::move(t1), -c);
            Term t2 = std::move(t);
            t2.word[arnold] = {k, j};
            t2.word[arnold + 1] = {i, k};
            work.emplace_back(std::move(t2), c);
            continue;
        }
        std::vector<std::pair<TensorKey, Scalar>> coeffs{{std::move(t.coeff), c}};
        for (std::size_t s = w.size(); s-- > 0;) {
            std::vector<std::pair<TensorKey, Scalar>> next;
            for (const auto& [key, x] : coeffs)
                push_content(bs_.slots, key, x, w[s].first, w[s].second, next);
            coeffs = std::move(next);
        }
        for (auto& [key, x] : coeffs)
            project_into(out, Term{std::move(key), w}, x);
    }
}

Expr Engine::normalize(const Expr& e) const
{
    Expr out;
    for (const auto& [t, c] : e)
        normalize_into(out, t, c);
    return out;
}

Expr Engine::normalize_random(const Expr& e, std::mt19937_64& rng) const
{
    Expr out;
    std::vector<std::pair<Term, Scalar>> work(e.begin(), e.end());
    while (!work.empty()) {
        std::uniform_int_distribution<std::size_t> pick_work(0, work.size() - 1);
        std::size_t wi = pick_work(rng);
        std::swap(work[wi], work.back());
        auto [t, c] = std::move(work.back());
        work.pop_back();
        for (auto& [i, j] : t.word) {
            if (!generator_allowed(i, j))
                throw std::invalid_argument("generator does not exist here");
            if (i < j)
                std::swap(i, j);
        }
        auto& w = t.word;
        // Moves: 0 = swap, 1 = square, 2 = Arnold at adjacent position; 3 = push at s.
        std::vector<std::pair<int, std::size_t>> moves;
        for (std::size_t a = 0; a + 1 < w.size(); ++a) {
            if (w[a] == w[a + 1])
                moves.emplace_back(1, a);
            else {
                if (w[a] > w[a + 1])
                    moves.emplace_back(0, a);
                if (w[a].first == w[a + 1].first)
                    moves.emplace_back(2, a);
            }
        }
        for (std::size_t s = 0; s < w.size(); ++s)
            if (t.coeff[static_cast<std::size_t>(w[s].first - 1)] != bs_.slots[static_cast<std::size_t>(w[s].first - 1)]->unit())
                moves.emplace_back(3, s);
        if (moves.empty()) {
            project_into(out, t, c);
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        auto [kind, a] = moves[pick(rng)];
        switch (kind) {
        case 0:
            std::swap(w[a], w[a + 1]);
            work.emplace_back(std::move(t), -c);
            break;
        case 1:
            break;
        case 2: {
            const int i = w[a].first, x = w[a].second, y = w[a + 1].second;
            // G_ix G_iy with x > y: G_xy G_iy - G_xy G_ix; with x < y use anticommutativity.
            const int hi = std::max(x, y), lo = std::min(x, y);
            Scalar sc = x > y ? c : Scalar(-c);
            Term t1 = t;
            t1.word[a] = {hi, lo};
            t1.word[a + 1] = {i, lo};
            work.emplace_back(std::move(t1), sc);
            Term t2 = std::move(t);
            t2.word[a] = {hi, lo};
            t2.word[a + 1] = {i, hi};
            work.emplace_back(std::move(t2), -sc);
            break;
        }
        case 3: {
            std::vector<std::pair<TensorKey, Scalar>> next;
            push_content(bs_.slots, t.coeff, c, w[a].first, w[a].second, next);
            for (auto& [key, x] : next)
                work.emplace_back(Term{std::move(key), w}, x);
            break;
        }
        }
    }
    return out;
}

Expr Engine::multiply(const Expr& a, const Expr& b) const
{
    Expr out;
    const int g = bs_.generator_degree;
    for (const auto& [ta, x] : a)
        for (const auto& [tb, y] : b) {
            int k = static_cast<int>(ta.word.size());
            int sign = (k * g * tensor_degree(bs_.slots, tb.coeff)) % 2 == 0 ? 1 : -1;
            GWord word = ta.word;
            word.insert(word.end(), tb.word.begin(), tb.word.end());
            for (auto& [key, z] : multiply_keys(bs_.slots, ta.coeff, tb.coeff))
                normalize_into(out, Term{std::move(key), word}, x * y * z * sign);
        }
    return out;
}

Expr Engine::differential(const Expr& e) const
{
    Expr out;
    const int g = bs_.generator_degree;
    for (const auto& [t, c] : e) {
        int base = tensor_degree(bs_.slots, t.coeff) % 2 == 0 ? 1 : -1;
        for (std::size_t s = 0; s < t.word.size(); ++s) {
            int sign = base * ((g * static_cast<int>(s)) % 2 == 0 ? 1 : -1);
            GWord rest = t.word;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(s));
            const TensorElement& nab = nabla(t.word[s].first, t.word[s].second);
            for (const auto& [nk, nc] : nab.terms())
                for (auto& [key, z] : multiply_keys(bs_.slots, t.coeff, nk))
                    normalize_into(out, Term{std::move(key), rest}, c * nc * z * sign);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------------------
// Kinds and contexts

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Kriz: return "kriz";
    case ModelKind::J: return "j";
    case ModelKind::Punctured: return "punctured";
    case ModelKind::Generic: return "generic";
    }
    return "generic";
}

std::optional<ModelKind> parse_model_kind(std::string_view text)
{
    if (text == "kriz")
        return ModelKind::Kriz;
    if (text == "j")
        return ModelKind::J;
    if (text == "punctured")
        return ModelKind::Punctured;
    return std::nullopt;
}

std::shared_ptr<const ModelContext> ModelContext::make(std::shared_ptr<const PDAlgebra> h)
{
    auto ctx = std::shared_ptr<ModelContext>(new ModelContext());
    ctx->h_ = h;
    ctx->diagonal_ = diagonal_class(*h);
    ctx->punctured_ = puncture(h);
    ctx->self_ = ctx;
    return ctx;
}

ModelPtr ModelContext::model(ModelKind kind, int n) const
{
    {
        std::lock_guard<std::mutex> lock(model_mutex_);
        auto it = models_.find({kind, n});
        if (it != models_.end())
            return it->second;
    }
    ModelPtr m = build_model(kind, self_.lock(), n);
    std::lock_guard<std::mutex> lock(model_mutex_);
    return models_.emplace(std::make_pair(kind, n), m).first->second;
}

std::shared_ptr<const FatDiagonalQuotient> ModelContext::quotient(int l) const
{
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = quotients_[l];
    if (!slot)
        slot = std::make_shared<const FatDiagonalQuotient>(h_, l);
    return slot;
}

// ---------------------------------------------------------------------------------------
// Model

Model::Model(ModelKind kind, std::string name, Engine engine) : kind_(kind), name_(std::move(name)), engine_(std::move(engine))
{
    const int n = engine_.arity();
    const auto& slots = engine_.structure().slots;
    const int g = engine_.structure().generator_degree;
    GWord word;
    auto emit_coefficients = [&]() {
        std::vector<bool> occupied(static_cast<std::size_t>(n), false);
        for (const auto& [i, j] : word)
            occupied[static_cast<std::size_t>(i - 1)] = true;
        std::vector<int> complement;
        for (int s = 0; s < n; ++s)
            if (!occupied[static_cast<std::size_t>(s)])
                complement.push_back(s);
        const FatDiagonalQuotient* q = engine_.has_quotient() ? engine_.quotients().at(complement.size()).get() : nullptr;
        TensorKey key = engine_.unit_key();
        auto rec = [&](auto&& self, std::size_t a) -> void {
            if (a == complement.size()) {
                if (q != nullptr) {
                    TensorKey sub;
                    for (int s : complement)
                        sub.push_back(key[static_cast<std::size_t>(s)]);
                    if (!q->in_section(sub))
                        return;
                }
                BasisElement b;
                b.term = Term{key, word};
                b.q = static_cast<int>(word.size());
                b.p = tensor_degree(slots, key) + b.q * g;
                basis_.push_back(std::move(b));
                return;
            }
            const auto& alg = slots[static_cast<std::size_t>(complement[a])];
            for (int x = 0; x < alg->dim(); ++x) {
                key[static_cast<std::size_t>(complement[a])] = x;
                self(self, a + 1);
            }
        };
        rec(rec, 0);
    };
    auto words = [&](auto&& self, int i) -> void {
        if (i > n) {
            emit_coefficients();
            return;
        }
        self(self, i + 1);
        for (int j = engine_.block_min(i); j < i; ++j) {
            if (!engine_.generator_allowed(i, j))
                continue;
            word.emplace_back(i, j);
            self(self, i + 1);
            word.pop_back();
        }
    };
    words(words, 1);
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
        index_.emplace(basis_[static_cast<std::size_t>(i)].term, i);
        blocks_[{basis_[static_cast<std::size_t>(i)].p, basis_[static_cast<std::size_t>(i)].q}].push_back(i);
    }
}

std::optional<int> Model::index_of(const Term& t) const
{
    auto it = index_.find(t);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

SparseVec Model::coordinates(const Expr& e) const
{
    std::vector<std::pair<int, Scalar>> entries;
    entries.reserve(e.size());
    for (const auto& [t, c] : e) {
        auto it = index_.find(t);
        if (it == index_.end())
            throw std::logic_error("term outside the normal-form basis of " + name_);
        entries.emplace_back(it->second, c);
    }
    return make_sparse(std::move(entries));
}

Expr Model::expression(const SparseVec& v) const
{
    Expr e;
    for (const auto& [i, c] : v)
        add_to(e, basis_[static_cast<std::size_t>(i)].term, c);
    return e;
}

const std::vector<SparseVec>& Model::differential() const
{
    std::call_once(d_once_, [this] {
        d_.resize(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].term.word.empty())
                continue;
            d_[i] = coordinates(engine_.differential(Expr{{basis_[i].term, Scalar(1)}}));
        }
    });
    return d_;
}

SparseVec Model::apply_differential(const SparseVec& v) const { return apply(differential(), v); }

SparseVec Model::multiply(const SparseVec& a, const SparseVec& b) const
{
    return coordinates(engine_.multiply(expression(a), expression(b)));
}

std::string Model::describe(int i) const
{
    const auto& t = basis_[static_cast<std::size_t>(i)].term;
    const auto& slots = engine_.structure().slots;
    std::string out;
    for (std::size_t s = 0; s < t.coeff.size(); ++s)
        out += (s ? "⊗" : "") + slots[s]->label(t.coeff[s]);
    if (out.empty())
        out = "1";
    for (const auto& [a, b] : t.word)
        out += "·G" + std::to_string(a) + "," + std::to_string(b);
    return out;
}

// ---------------------------------------------------------------------------------------
// Builders

ModelPtr build_model(ModelKind kind, const std::shared_ptr<const ModelContext>& ctx, int n)
{
    if (n < 0)
        throw std::invalid_argument("n must be non-negative");
    const PDAlgebra& h = ctx->algebra();
    BlockStructure bs;
    bs.generator_degree = h.formal_dimension() - 1;
    std::string name = to_string(kind) + "(" + h.name() + ",n=" + std::to_string(n) + ")";
    Engine::Quotients quotients;
    switch (kind) {
    case ModelKind::Kriz:
        bs.slots.assign(static_cast<std::size_t>(n), h.algebra_ptr());
        bs.block.assign(static_cast<std::size_t>(n), 0);
        bs.nabla = {ctx->diagonal()};
        break;
    case ModelKind::Punctured:
        bs.slots.assign(static_cast<std::size_t>(n), ctx->punctured().algebra.algebra);
        bs.block.assign(static_cast<std::size_t>(n), 0);
        bs.nabla = {ctx->punctured().diagonal};
        break;
    case ModelKind::J:
        bs.slots.assign(static_cast<std::size_t>(n), h.algebra_ptr());
        bs.block.assign(static_cast<std::size_t>(n), 1);
        if (n > 0)
            bs.block[0] = 0;
        bs.nabla = {TensorElement::zero(h.algebra_ptr(), 2), ctx->diagonal()};
        quotients.resize(static_cast<std::size_t>(n) + 1);
        for (int l = 1; l <= n; ++l)
            quotients[static_cast<std::size_t>(l)] = ctx->quotient(l);
        break;
    case ModelKind::Generic:
        throw std::invalid_argument("use build_block_model for generic models");
    }
    return std::make_shared<const Model>(kind, std::move(name), Engine(std::move(bs), std::move(quotients)));
}

ModelPtr build_model(ModelKind kind, const std::shared_ptr<const PDAlgebra>& h, int n)
{
    return build_model(kind, ModelContext::make(h), n);
}

ModelPtr build_block_model(std::string name, BlockStructure bs)
{
    return std::make_shared<const Model>(ModelKind::Generic, std::move(name), Engine(std::move(bs)));
}

std::uint64_t elementary_symmetric(int k, int r)
{
    // e_k(1..r) by the recurrence e_k(1..r) = e_k(1..r-1) + r e_{k-1}(1..r-1).
    if (k < 0)
        return 0;
    std::vector<std::uint64_t> e(static_cast<std::size_t>(k) + 1, 0);
    e[0] = 1;
    for (int x = 1; x <= r; ++x)
        for (int j = k; j >= 1; --j)
            e[static_cast<std::size_t>(j)] += static_cast<std::uint64_t>(x) * e[static_cast<std::size_t>(j - 1)];
    return e[static_cast<std::size_t>(k)];
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

}  // namespace

std::vector<std::uint64_t> predicted_dimension_by_q(ModelKind kind, int dim_h, int n)
{
    std::vector<std::uint64_t> out;
    const auto d = static_cast<std::uint64_t>(dim_h);
    switch (kind) {
    case ModelKind::Kriz:
    case ModelKind::Punctured: {
        const std::uint64_t a = kind == ModelKind::Kriz ? d : d - 1;
        for (int k = 0; k <= std::max(0, n - 1); ++k)
            out.push_back(elementary_symmetric(k, n - 1) * ipow(a, n - k));
        break;
    }
    case ModelKind::J:
        if (n <= 1) {
            out.push_back(n == 0 ? 1 : d);
            break;
        }
        for (int k = 0; k <= n - 2; ++k)
            out.push_back(elementary_symmetric(k, n - 2) * d * ipow(d - 1, n - k - 1));
        break;
    case ModelKind::Generic:
        break;
    }
    return out;
}

std::uint64_t predicted_dimension(ModelKind kind, int dim_h, int n)
{
    std::uint64_t total = 0;
    for (auto x : predicted_dimension_by_q(kind, dim_h, n))
        total += x;
    return total;
}

// ---------------------------------------------------------------------------------------
// Chain maps

ChainMap::ChainMap(ModelPtr source, ModelPtr target, std::vector<SparseVec> images, std::string name)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), name_(std::move(name))
{
    if (images_.size() != source_->size())
        throw std::invalid_argument("chain map needs one image per source basis element");
}

SparseVec ChainMap::apply(const SparseVec& v) const { return confmodels::apply(images_, v); }

ChainMap ChainMap::after(const ChainMap& first) const
{
    std::vector<SparseVec> imgs;
    imgs.reserve(first.images_.size());
    for (const auto& v : first.images_)
        imgs.push_back(apply(v));
    return ChainMap(first.source_, target_, std::move(imgs), name_ + "∘" + first.name_);
}

std::vector<int> ChainMap::chain_failures() const
{
    std::vector<int> out;
    const auto& ds = source_->differential();
    for (std::size_t b = 0; b < images_.size(); ++b)
        if (apply(ds[b]) != target_->apply_differential(images_[b]))
            out.push_back(static_cast<int>(b));
    return out;
}

std::vector<int> ChainMap::bidegree_failures() const
{
    std::vector<int> out;
    for (std::size_t b = 0; b < images_.size(); ++b) {
        const auto& e = source_->element(static_cast<int>(b));
        for (const auto& [i, c] : images_[b]) {
            const auto& f = target_->element(i);
            if (f.p != e.p || f.q != e.q) {
                out.push_back(static_cast<int>(b));
                break;
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> ChainMap::multiplicativity_failures(int samples, std::uint64_t seed) const
{
    std::vector<std::pair<int, int>> out;
    if (source_->size() == 0)
        return out;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(source_->size()) - 1);
    for (int s = 0; s < samples; ++s) {
        int a = pick(rng), b = pick(rng);
        SparseVec ea{{a, Scalar(1)}}, eb{{b, Scalar(1)}};
        SparseVec lhs = apply(source_->multiply(ea, eb));
        SparseVec rhs = target_->multiply(images_[static_cast<std::size_t>(a)], images_[static_cast<std::size_t>(b)]);
        if (lhs != rhs)
            out.emplace_back(a, b);
    }
    return out;
}

ChainMap map_from_generators(const ModelPtr& source, const ModelPtr& target, const GeneratorMap& g, std::string name)
{
    std::vector<SparseVec> images;
    images.reserve(source->size());
    for (std::size_t b = 0; b < source->size(); ++b) {
        const Term& t = source->element(static_cast<int>(b)).term;
        GWord word;
        bool vanishes = false;
        for (const auto& [i, j] : t.word) {
            auto img = g.generator(i, j);
            if (!img) {
                vanishes = true;
                break;
            }
            word.push_back(*img);
        }
        if (vanishes) {
            images.emplace_back();
            continue;
        }
        Expr raw;
        for (auto& [key, c] : g.coefficient(t.coeff))
            add_to(raw, Term{key, word}, c);
        images.push_back(target->coordinates(target->engine().normalize(raw)));
    }
    return ChainMap(source, target, std::move(images), std::move(name));
}

ChainMap psi(const std::shared_ptr<const ModelContext>& ctx, int n)
{
    ModelPtr kriz = build_model(ModelKind::Kriz, ctx, n);
    ModelPtr j = build_model(ModelKind::J, ctx, n);
    GeneratorMap g;
    g.coefficient = [](const TensorKey& k) { return std::vector<std::pair<TensorKey, Scalar>>{{k, Scalar(1)}}; };
    g.generator = [](int a, int b) -> std::optional<std::pair<int, int>> {
        if (std::min(a, b) == 1)
            return std::nullopt;
        return std::make_pair(a, b);
    };
    ChainMap f = map_from_generators(kriz, j, g, "Psi");
    auto bad = f.chain_failures();
    if (!bad.empty())
        throw ChainMapViolation("Psi is not a chain map at " + kriz->describe(bad.front()));
    return f;
}

ReductionReport reduce_over_H(const std::shared_ptr<const ModelContext>& ctx, int n, int multiplicative_samples)
{
    if (n < 2)
        throw std::invalid_argument("reduce_over_H needs n >= 2");
    ReductionReport rep;
    ModelPtr j = build_model(ModelKind::J, ctx, n);
    ModelPtr target = build_model(ModelKind::Punctured, ctx, n - 1);
    const PDAlgebra& h = ctx->algebra();
    const int unit = h.algebra().unit();
    rep.j_dim = j->size();
    rep.target_dim = target->size();

    // Columns with a non-unit first slot come first so that the ideal's pivots can land there.
    std::vector<int> column(j->size());
    std::vector<int> quotient_basis;
    int front = 0;
    for (std::size_t b = 0; b < j->size(); ++b)
        if (j->element(static_cast<int>(b)).term.coeff[0] != unit)
            column[b] = front++;
    int back = front;
    for (std::size_t b = 0; b < j->size(); ++b)
        if (j->element(static_cast<int>(b)).term.coeff[0] == unit) {
            column[b] = back++;
            quotient_basis.push_back(static_cast<int>(b));
        }
    auto permute = [&](const SparseVec& v) {
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [i, c] : v)
            e.emplace_back(column[static_cast<std::size_t>(i)], c);
        return make_sparse(std::move(e));
    };

    // j_1(x) . b for x in H+ and b with unit first slot spans the ideal.
    EchelonBasis ideal;
    for (int x = 0; x < h.dim(); ++x) {
        if (h.algebra().degree(x) == 0)
            continue;
        TensorKey key = j->engine().unit_key();
        key[0] = x;
        Expr jx{{Term{key, {}}, Scalar(1)}};
        for (int b : quotient_basis) {
            Expr prod = j->engine().multiply(jx, Expr{{j->element(b).term, Scalar(1)}});
            ideal.insert(permute(j->coordinates(prod)));
        }
    }
    rep.ideal_rank = ideal.rank();
    rep.quotient_dim = j->size() - ideal.rank();
    auto piv = ideal.pivots();
    rep.pivots_ok = static_cast<int>(ideal.rank()) == front && (piv.empty() || piv.back() < front);
    if (!rep.pivots_ok) {
        rep.findings.push_back("ideal j_1(H+) does not complement the unit-first-slot basis");
        return rep;
    }

    // Relabel the quotient basis onto E_{n-1}(H°).
    const auto& proj = ctx->punctured().algebra.projection;
    std::vector<int> rel(j->size(), -1);
    std::set<int> hit;
    rep.bijection = quotient_basis.size() == target->size();
    rep.bidegree = true;
    for (int b : quotient_basis) {
        const Term& t = j->element(b).term;
        Term u;
        bool ok = true;
        for (int s = 1; s < n; ++s) {
            int y = proj[static_cast<std::size_t>(t.coeff[static_cast<std::size_t>(s)])];
            ok = ok && y >= 0;
            u.coeff.push_back(y);
        }
        for (const auto& [a, c] : t.word)
            u.word.emplace_back(a - 1, c - 1);
        auto idx = ok ? target->index_of(u) : std::nullopt;
        if (!idx || !hit.insert(*idx).second) {
            rep.bijection = false;
            rep.findings.push_back("no matching target basis element for " + j->describe(b));
            continue;
        }
        rel[static_cast<std::size_t>(b)] = *idx;
        const auto& eb = j->element(b);
        const auto& et = target->element(*idx);
        if (eb.p != et.p || eb.q != et.q) {
            rep.bidegree = false;
            rep.findings.push_back("bidegree changes at " + j->describe(b));
        }
    }
    if (!rep.bijection)
        return rep;

    std::vector<int> by_column(j->size(), -1);
    for (std::size_t b = 0; b < j->size(); ++b)
        by_column[static_cast<std::size_t>(column[b])] = static_cast<int>(b);
    auto to_target = [&](const SparseVec& v) {
        SparseVec r = ideal.reduce(permute(v));
        std::vector<std::pair<int, Scalar>> e;
        for (const auto& [col, c] : r)
            e.emplace_back(rel[static_cast<std::size_t>(by_column[static_cast<std::size_t>(col)])], c);
        return make_sparse(std::move(e));
    };

    rep.chain = true;
    const auto& dj = j->differential();
    const auto& dt = target->differential();
    for (int b : quotient_basis)
        if (to_target(dj[static_cast<std::size_t>(b)]) != dt[static_cast<std::size_t>(rel[static_cast<std::size_t>(b)])]) {
            rep.chain = false;
            rep.findings.push_back("differential differs at " + j->describe(b));
        }

    rep.multiplicative = true;
    std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<std::size_t> pick(0, quotient_basis.size() - 1);
    for (int s = 0; s < multiplicative_samples; ++s) {
        int a = quotient_basis[pick(rng)], b = quotient_basis[pick(rng)];
        SparseVec lhs = to_target(j->multiply({{a, Scalar(1)}}, {{b, Scalar(1)}}));
        SparseVec rhs = target->multiply({{rel[static_cast<std::size_t>(a)], Scalar(1)}}, {{rel[static_cast<std::size_t>(b)], Scalar(1)}});
        if (lhs != rhs) {
            rep.multiplicative = false;
            rep.findings.push_back("product differs at " + j->describe(a) + " * " + j->describe(b));
            break;
        }
    }
    return rep;
}

}  // namespace confmodels
