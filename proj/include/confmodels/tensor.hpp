#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "confmodels/algebra.hpp"

namespace confmodels {

/// A basis tensor: one basis index per slot.
using TensorKey = std::vector<int>;

/// Linear combination of basis tensors in A_1 (x) ... (x) A_n.
class TensorElement {
public:
    TensorElement() = default;
    explicit TensorElement(std::vector<AlgebraPtr> slots) : slots_(std::move(slots)) {}

    /// n copies of one algebra.
    static TensorElement zero(const AlgebraPtr& a, int n) { return TensorElement(std::vector<AlgebraPtr>(static_cast<std::size_t>(n), a)); }
    static TensorElement unit(std::vector<AlgebraPtr> slots);

    int arity() const { return static_cast<int>(slots_.size()); }
    const std::vector<AlgebraPtr>& slots() const { return slots_; }
    const std::map<TensorKey, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const TensorKey& key, const Scalar& c);
    Scalar coefficient(const TensorKey& key) const;

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator*(const TensorElement& o) const;
    TensorElement scaled(const Scalar& c) const;
    bool operator==(const TensorElement& o) const { return terms_ == o.terms_; }

    std::string to_string() const;

private:
    std::vector<AlgebraPtr> slots_;
    std::map<TensorKey, Scalar> terms_;
};

/// Total degree of a basis tensor.
int tensor_degree(const std::vector<AlgebraPtr>& slots, const TensorKey& key);

/// Koszul sign of the product of basis tensors u * v: (-1)^{sum_{i>j} |u_i||v_j|}.
int product_sign(const std::vector<AlgebraPtr>& slots, const TensorKey& u, const TensorKey& v);

/// Expansion of u * v (Koszul sign included) in basis tensors.
std::vector<std::pair<TensorKey, Scalar>> multiply_keys(const std::vector<AlgebraPtr>& slots, const TensorKey& u, const TensorKey& v);

/// Injective map {1..k} -> {1..n}, stored 1-based.
class SlotInjection {
public:
    SlotInjection(std::vector<int> targets, int n);
    int source_arity() const { return static_cast<int>(targets_.size()); }
    int target_arity() const { return n_; }
    int operator()(int s) const { return targets_[static_cast<std::size_t>(s - 1)]; }
    const std::vector<int>& targets() const { return targets_; }
    /// psi o phi
    SlotInjection compose_after(const SlotInjection& psi) const;

private:
    std::vector<int> targets_;
    int n_;
};

/// Places factor s in slot phi(s), units elsewhere; the sign counts transpositions of odd
/// factors needed to bring them into slot order. `target_slots` gives the slot algebras of
/// the result; slot phi(s) must carry the algebra of factor s.
TensorElement insert(const TensorElement& x, const SlotInjection& phi, std::vector<AlgebraPtr> target_slots);

/// Same as insert() with every target slot equal to the (common) source slot algebra.
TensorElement insert(const TensorElement& x, const SlotInjection& phi);

/// Sign and placement of a single basis tensor under phi (the building block of insert()).
int insertion_sign(const std::vector<AlgebraPtr>& source_slots, const TensorKey& key, const SlotInjection& phi);

/// The class of the diagonal, sum_alpha (-1)^{deg h_alpha} h_alpha (x) h_alpha*.
/// Checks symmetry and the diagonal property before returning; throws std::logic_error if
/// either fails.
TensorElement diagonal_class(const PDAlgebra& h);

/// Violations of T(D) = D and (a (x) 1) D = (1 (x) a) D for a tensor D in A (x) A.
/// Returns labels of basis elements a that fail (and "symmetry" if T(D) != D).
std::vector<std::string> diagonal_axiom_failures(const TensorElement& d);

struct Punctured {
    PuncturedAlgebra algebra;
    TensorElement diagonal;
};

/// H° = H / K.omega and the image of the diagonal.
Punctured puncture(const std::shared_ptr<const PDAlgebra>& h);

/// The one-dimensional algebra K (used as the slot algebra of Arnold factors and E_0).
AlgebraPtr ground_field_algebra();

/// Quotient H^{(x) l} / (D_21, ..., D_l1) with the section spanned by basis tensors whose
/// slots 2..l avoid omega. Projectors are built lazily per degree and memoized.
class FatDiagonalQuotient {
public:
    FatDiagonalQuotient(std::shared_ptr<const PDAlgebra> h, int l);

    int arity() const { return l_; }
    const PDAlgebra& algebra() const { return *h_; }

    /// True iff the basis tensor lies in the section basis.
    bool in_section(const TensorKey& key) const;

    /// Reduces an element of H^{(x) l} to the section basis modulo the ideal.
    std::map<TensorKey, Scalar> project(const std::map<TensorKey, Scalar>& v) const;

    /// Section basis tensors of degree d.
    std::vector<TensorKey> section_basis(int degree) const;
    /// Rank of the ideal in degree d.
    int ideal_rank(int degree) const;
    /// Dimension of the quotient in degree d.
    int quotient_dim(int degree) const;
    /// All basis tensors of H^{(x) l} in degree d.
    std::vector<TensorKey> tensors_of_degree(int degree) const;
    /// The ideal generators D_s1 . t in degree d.
    std::vector<TensorElement> ideal_generators(int degree) const;

    int max_degree() const { return l_ * h_->formal_dimension(); }

private:
    struct Level {
        int ideal_rank = 0;
        std::vector<TensorKey> section;
        // For each non-section tensor c: the section combination it is congruent to.
        std::map<TensorKey, std::vector<std::pair<TensorKey, Scalar>>> rewrite;
    };
    const Level& level(int degree) const;

    std::shared_ptr<const PDAlgebra> h_;
    int l_;
    TensorElement diagonal_;
    mutable std::mutex mutex_;
    mutable std::map<int, std::unique_ptr<Level>> levels_;
};

/// Raised when the section tensors are not a basis of the quotient.
class SectionNotBasis : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace confmodels
