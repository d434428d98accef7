#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confmodels/polynomial.hpp"
#include "confmodels/rational.hpp"

namespace confmodels {

struct BasisLabel {
    std::string label;
    int degree = 0;
};

/// Finite-dimensional graded algebra given by a homogeneous basis and structure constants.
///
/// The table is dense over ordered pairs: product(i, j) is the expansion of b_i * b_j in the
/// basis. Construction only checks shapes; the algebra axioms are checked by
/// check_graded_algebra() and validate_algebra().
class GradedAlgebra {
public:
    GradedAlgebra(std::string name, std::vector<BasisLabel> basis, std::vector<SparseVec> table);

    const std::string& name() const { return name_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    int degree(int i) const { return basis_[static_cast<std::size_t>(i)].degree; }
    const std::string& label(int i) const { return basis_[static_cast<std::size_t>(i)].label; }
    const std::vector<BasisLabel>& basis() const { return basis_; }

    /// Index of the degree-0 basis element, or -1 if there is not exactly one.
    int unit() const { return unit_; }
    int max_degree() const;
    std::optional<int> find(std::string_view label) const;

    const SparseVec& product(int i, int j) const { return table_[static_cast<std::size_t>(i * dim() + j)]; }
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

    /// dims[d] = dim of the degree-d part.
    std::vector<int> dims_by_degree() const;

private:
    std::string name_;
    std::vector<BasisLabel> basis_;
    std::vector<SparseVec> table_;
    int unit_ = -1;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

enum class ViolationKind {
    NonUnital,
    NotGradedCommutative,
    NotAssociative,
    DegeneratePairing,
    TopDegreeNotOneDimensional,
    OddFormalDimension,
    DegreeMismatch,
    MalformedInput,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string detail;
    std::string to_string() const;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Algebra description as supplied by a user (or the JSON format).
struct RawProduct {
    std::string left;
    std::string right;
    std::vector<std::pair<std::string, Scalar>> value;
};

struct RawAlgebra {
    std::string name;
    int formal_dimension = 0;
    std::vector<BasisLabel> basis;
    std::string orientation;
    std::vector<RawProduct> products;
};

/// Oriented Poincare duality algebra of formal dimension 2m, with its dual basis.
class PDAlgebra {
public:
    const GradedAlgebra& algebra() const { return *algebra_; }
    const AlgebraPtr& algebra_ptr() const { return algebra_; }
    const std::string& name() const { return algebra_->name(); }
    int dim() const { return algebra_->dim(); }
    int formal_dimension() const { return formal_dimension_; }
    int half_dimension() const { return formal_dimension_ / 2; }
    int orientation() const { return orientation_; }

    /// Poincare dual h_alpha* of basis element alpha: <h_alpha, h_beta*> = delta.
    const SparseVec& dual(int alpha) const { return duals_[static_cast<std::size_t>(alpha)]; }

    /// Coefficient of the orientation class in a * b.
    Scalar pairing(const SparseVec& a, const SparseVec& b) const;

private:
    friend PDAlgebra make_pd_algebra(AlgebraPtr, int, int);
    AlgebraPtr algebra_;
    int formal_dimension_ = 0;
    int orientation_ = -1;
    std::vector<SparseVec> duals_;
};

/// Axiom report for a graded algebra table (unit, commutativity, associativity, degrees).
std::vector<Violation> check_graded_algebra(const GradedAlgebra& a);

/// Every Poincare-duality violation of (a, formal_dimension, orientation), including
/// check_graded_algebra's.
std::vector<Violation> check_pd_algebra(const GradedAlgebra& a, int formal_dimension, int orientation);

/// Builds the dense table from a raw description (unit law and graded commutativity fill the
/// rest), then validates. Throws ValidationError listing every violation.
PDAlgebra validate_algebra(const RawAlgebra& raw);

/// Validates an already tabulated algebra. Throws ValidationError.
PDAlgebra make_pd_algebra(AlgebraPtr algebra, int formal_dimension, int orientation);

/// Converts to the raw form (positive-degree products with i <= j only).
RawAlgebra to_raw(const PDAlgebra& h);

/// A linear map between graded algebras given on basis elements.
struct AlgebraMap {
    AlgebraPtr source;
    AlgebraPtr target;
    std::vector<SparseVec> images;

    SparseVec apply(const SparseVec& v) const;
    /// Basis pairs (i, j) where f(b_i b_j) != f(b_i) f(b_j); empty for an algebra map.
    std::vector<std::pair<int, int>> multiplicativity_failures() const;
};

/// H° = H / K*omega together with the projection H -> H°.
struct PuncturedAlgebra {
    AlgebraPtr algebra;
    std::shared_ptr<const PDAlgebra> origin;
    /// projection[i] = index in H° of basis element i of H, or -1 for omega.
    std::vector<int> projection;
};

struct ConnectedSum {
    PDAlgebra sum;
    AlgebraMap to_first;   // H#K -> H°
    AlgebraMap to_second;  // H#K -> K°
};

ConnectedSum connected_sum(const PDAlgebra& h, const PDAlgebra& k);

int euler_characteristic(const PDAlgebra& h);

/// Sum_d dim A^d t^d.
Polynomial algebra_poincare_poly(const GradedAlgebra& a);

}  // namespace confmodels
