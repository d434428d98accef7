#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "confmodels/tensor.hpp"

namespace confmodels {

/// Word in the exterior generators G_ij, 1-based indices.
using GWord = std::vector<std::pair<int, int>>;

/// Coefficient tensor (one basis index per slot) times a word in the generators.
struct Term {
    TensorKey coeff;
    GWord word;
    auto operator<=>(const Term&) const = default;
};

using Expr = std::map<Term, Scalar>;

void add_to(Expr& e, const Term& t, const Scalar& c);
void add_to(Expr& e, const Expr& other, const Scalar& c = 1);

/// Slot layout of an E_n(A, nabla)-type algebra. Slots are grouped into blocks; G_ij exists
/// for i != j in the same block and dG_ij is nabla of that block placed in slots (j, i).
/// A single block is the ordinary construction; several blocks give the tensor product of
/// the per-block algebras.
struct BlockStructure {
    std::vector<AlgebraPtr> slots;
    std::vector<int> block;
    /// Indexed by block id; each element lives in A (x) A for that block's algebra.
    std::vector<TensorElement> nabla;
    /// Degree 2m-1 of every G_ij (odd).
    int generator_degree = 1;
};

/// Rewriting and arithmetic on terms for one BlockStructure.
///
/// Normal form: the word is sorted with strictly increasing first indices i_s, each
/// i_s > j_s in a common block, and the coefficient has units in the slots i_s. When a
/// coefficient quotient is attached (J-models), coefficients are further reduced to the
/// fat-diagonal section on the complement slots.
class Engine {
public:
    using Quotients = std::vector<std::shared_ptr<const FatDiagonalQuotient>>;

    explicit Engine(BlockStructure bs, Quotients quotients = {});

    int arity() const { return static_cast<int>(bs_.slots.size()); }
    const BlockStructure& structure() const { return bs_; }
    bool has_quotient() const { return !quotients_.empty(); }
    const Quotients& quotients() const { return quotients_; }

    bool generator_allowed(int i, int j) const;
    /// Lowest slot of the block containing slot i.
    int block_min(int i) const { return block_min_[static_cast<std::size_t>(i - 1)]; }

    int degree(const Term& t) const;
    TensorKey unit_key() const;

    Expr normalize(const Expr& e) const;
    /// Same result as normalize(), reached by applying rewriting steps in random order.
    Expr normalize_random(const Expr& e, std::mt19937_64& rng) const;

    Expr multiply(const Expr& a, const Expr& b) const;
    /// Differential of a normal-form expression.
    Expr differential(const Expr& e) const;

    /// nabla_ij placed in slots (j, i) of the full tensor power.
    const TensorElement& nabla(int i, int j) const;

    /// Reduces the coefficient of a normal term to the section (identity without quotient).
    void project_into(Expr& out, const Term& t, const Scalar& c) const;

private:
    void normalize_into(Expr& out, Term t, Scalar c) const;

    BlockStructure bs_;
    Quotients quotients_;
    std::vector<int> block_min_;
    std::map<std::pair<int, int>, TensorElement> nabla_;
};

enum class ModelKind { Kriz, J, Punctured, Generic };

std::string to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

/// Shared per-algebra data: the diagonal, the punctured algebra, fat-diagonal quotients.
class ModelContext {
public:
    static std::shared_ptr<const ModelContext> make(std::shared_ptr<const PDAlgebra> h);

    const PDAlgebra& algebra() const { return *h_; }
    const std::shared_ptr<const PDAlgebra>& algebra_ptr() const { return h_; }
    const TensorElement& diagonal() const { return diagonal_; }
    const Punctured& punctured() const { return punctured_; }
    std::shared_ptr<const FatDiagonalQuotient> quotient(int l) const;
    /// Memoized build_model(kind, this, n).
    std::shared_ptr<const class Model> model(ModelKind kind, int n) const;

private:
    std::shared_ptr<const PDAlgebra> h_;
    TensorElement diagonal_;
    Punctured punctured_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::shared_ptr<const FatDiagonalQuotient>> quotients_;
    mutable std::mutex model_mutex_;
    mutable std::map<std::pair<ModelKind, int>, std::shared_ptr<const class Model>> models_;
    std::weak_ptr<const ModelContext> self_;
};

struct BasisElement {
    Term term;
    int p = 0;  // cohomological degree
    int q = 0;  // number of generators
};

/// A finite bigraded differential algebra with an explicit normal-form basis.
class Model {
public:
    Model(ModelKind kind, std::string name, Engine engine);

    ModelKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    int n() const { return engine_.arity(); }
    const Engine& engine() const { return engine_; }

    std::size_t size() const { return basis_.size(); }
    const BasisElement& element(int i) const { return basis_[static_cast<std::size_t>(i)]; }
    std::optional<int> index_of(const Term& t) const;
    /// Basis indices grouped by bidegree (p, q).
    const std::map<std::pair<int, int>, std::vector<int>>& blocks() const { return blocks_; }

    /// Coordinates of a normal-form expression. Throws std::logic_error on a non-basis term.
    SparseVec coordinates(const Expr& e) const;
    Expr expression(const SparseVec& v) const;

    /// d of every basis element, in coordinates. Computed once, on first use.
    const std::vector<SparseVec>& differential() const;
    SparseVec apply_differential(const SparseVec& v) const;

    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

    std::string describe(int i) const;

private:
    ModelKind kind_;
    std::string name_;
    Engine engine_;
    std::vector<BasisElement> basis_;
    std::map<Term, int> index_;
    std::map<std::pair<int, int>, std::vector<int>> blocks_;
    mutable std::once_flag d_once_;
    mutable std::vector<SparseVec> d_;
};

using ModelPtr = std::shared_ptr<const Model>;

/// E_n(H, D) (Kriz), J_n(H), or E_n(H°). n >= 0 (n = 0 gives the ground field).
ModelPtr build_model(ModelKind kind, const std::shared_ptr<const ModelContext>& ctx, int n);
ModelPtr build_model(ModelKind kind, const std::shared_ptr<const PDAlgebra>& h, int n);
/// Generic block model (used for tensor products of punctured and Arnold factors).
ModelPtr build_block_model(std::string name, BlockStructure bs);

/// e_k(1, ..., r)
std::uint64_t elementary_symmetric(int k, int r);
/// Basis size predicted by the closed-form counts, without building anything.
std::uint64_t predicted_dimension(ModelKind kind, int dim_h, int n);
/// Per generator count k: number of admissible index sets times coefficient dimension.
std::vector<std::uint64_t> predicted_dimension_by_q(ModelKind kind, int dim_h, int n);

/// A linear map between models given on basis elements.
class ChainMap {
public:
    ChainMap(ModelPtr source, ModelPtr target, std::vector<SparseVec> images, std::string name = {});

    const Model& source() const { return *source_; }
    const Model& target() const { return *target_; }
    const ModelPtr& source_ptr() const { return source_; }
    const ModelPtr& target_ptr() const { return target_; }
    const std::string& name() const { return name_; }
    const std::vector<SparseVec>& images() const { return images_; }

    SparseVec apply(const SparseVec& v) const;
    /// this o first
    ChainMap after(const ChainMap& first) const;

    /// Source basis indices b with d f(b) != f(d b).
    std::vector<int> chain_failures() const;
    /// Source basis indices whose image leaves the source bidegree.
    std::vector<int> bidegree_failures() const;
    /// Random pairs (a, b) of source basis indices with f(ab) != f(a) f(b).
    std::vector<std::pair<int, int>> multiplicativity_failures(int samples, std::uint64_t seed) const;
    bool equals(const ChainMap& o) const { return images_ == o.images_; }

private:
    ModelPtr source_;
    ModelPtr target_;
    std::vector<SparseVec> images_;
    std::string name_;
};

class ChainMapViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Description of a multiplicative map on generators: an image for each coefficient tensor
/// (full source key -> combination of full target keys) and for each generator (nullopt = 0).
struct GeneratorMap {
    std::function<std::vector<std::pair<TensorKey, Scalar>>(const TensorKey&)> coefficient;
    std::function<std::optional<std::pair<int, int>>(int, int)> generator;
};

/// Extends a generator map multiplicatively and normalizes images in the target.
ChainMap map_from_generators(const ModelPtr& source, const ModelPtr& target, const GeneratorMap& g, std::string name);

/// Psi: E_n(H) -> J_n(H), coefficients projected and G_j1 -> 0. Throws ChainMapViolation if it
/// fails to commute with the differentials.
ChainMap psi(const std::shared_ptr<const ModelContext>& ctx, int n);

struct ReductionReport {
    std::size_t j_dim = 0;
    std::size_t ideal_rank = 0;
    std::size_t quotient_dim = 0;
    std::size_t target_dim = 0;
    bool pivots_ok = false;
    bool bijection = false;
    bool bidegree = false;
    bool chain = false;
    bool multiplicative = false;
    std::vector<std::string> findings;
    bool ok() const { return pivots_ok && bijection && bidegree && chain && multiplicative; }
};

/// K (x)_H J_n(H) computed as J_n(H) modulo j_1(H+) . J_n(H), compared with E_{n-1}(H°) via
/// slot i -> i-1, G_ij -> G_{i-1,j-1}.
ReductionReport reduce_over_H(const std::shared_ptr<const ModelContext>& ctx, int n, int multiplicative_samples = 200);

}  // namespace confmodels
