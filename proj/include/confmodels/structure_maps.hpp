#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "confmodels/model.hpp"

namespace confmodels {

enum class StructureErrorKind { IndexOutOfRange, InvalidPartition, InvalidPermutation, DimensionMismatch };

class StructureMapError : public std::invalid_argument {
public:
    StructureMapError(StructureErrorKind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    StructureErrorKind kind() const { return kind_; }

private:
    StructureErrorKind kind_;
};

/// T_0, T_1, ..., T_r covering {1..n}. T_0 may be empty, the others may not.
/// Each block is kept sorted, which fixes the order-preserving bijections.
class OrderedPartition {
public:
    OrderedPartition(std::vector<std::vector<int>> blocks, int n);

    int n() const { return n_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    /// (block, 1-based position inside the block) of point i.
    std::pair<int, int> locate(int i) const { return where_[static_cast<std::size_t>(i - 1)]; }
    std::string to_string() const;

private:
    std::vector<std::vector<int>> blocks_;
    std::vector<std::pair<int, int>> where_;
    int n_;
};

/// Every ordered partition of {1..n} (T_0 possibly empty).
std::vector<OrderedPartition> all_ordered_partitions(int n);

/// sigma given by its images sigma(1), ..., sigma(n). h_k moves to slot sigma(k) with the
/// Koszul sign, G_ij -> G_{sigma i, sigma j}. On J-models sigma must fix 1.
ChainMap sigma_action(const std::vector<int>& sigma, const ModelPtr& model);

/// E_n(H) -> E_n(H°), coefficientwise projection.
ChainMap projection_to_punctured(const std::shared_ptr<const ModelContext>& ctx, int n);

/// S_k : E_n -> E_{n+1}, 0 <= k <= n. `kind` is Punctured or Kriz.
ChainMap degeneracy(const std::shared_ptr<const ModelContext>& ctx, int k, int n, ModelKind kind = ModelKind::Punctured);
/// D_k : E_{n+1} -> E_n, 0 <= k <= n+1. `kind` is Punctured or Kriz.
ChainMap face(const std::shared_ptr<const ModelContext>& ctx, int k, int n, ModelKind kind = ModelKind::Punctured);

/// E_n(H°) -> E_{n_0}(H°) (x) Arnold(n_1) (x) ... (x) Arnold(n_r), realized as one block model
/// with the T_0 slots first.
ChainMap coaction(const std::shared_ptr<const ModelContext>& ctx, const OrderedPartition& t);

/// The Arnold algebra H*F(R^{2m}, k): k slots over the ground field, zero differential.
ModelPtr arnold_model(int k, int generator_degree);

/// chi : E_{r+s}(H#K) -> E_r(H°) (x) E_s(K°).
ChainMap connected_sum_map(const std::shared_ptr<const ModelContext>& h, const std::shared_ptr<const ModelContext>& k, int r, int s);

struct CheckResult {
    std::string check;
    std::string instance;
    std::string status;  // "pass", "fail", or "expected-failure"
    std::string witness;
};

struct SuiteReport {
    std::vector<CheckResult> results;

    void add(std::string check, std::string instance, bool ok, std::string witness = {});
    void merge(const SuiteReport& o);
    std::size_t failures() const;
    bool ok() const { return failures() == 0; }
    /// [{"check", "instance", "status", "witness"}, ...]
    std::string to_json() const;
};

/// Chain map, bidegree and random-product checks for f, appended to `report`.
void check_dbga_map(SuiteReport& report, const ChainMap& f, const std::string& instance, int samples = 40, std::uint64_t seed = 1);

/// Sigma action on Kriz, punctured and J models up to n_max: DBGA-map checks, group law and
/// equivariance of the projection to the punctured model.
SuiteReport sigma_suite(const std::shared_ptr<const ModelContext>& ctx, int n_max);

/// Faces and degeneracies of the punctured models of arity <= n_max: DBGA-map checks and
/// every simplicial identity.
SuiteReport simplicial_suite(const std::shared_ptr<const ModelContext>& ctx, int n_max);

/// Closed models: the two face commutators on G_{n+1,n}, the expected non-chain-map faces and
/// the degeneracies (which stay chain maps). Arity <= n_max.
SuiteReport closed_face_controls(const std::shared_ptr<const ModelContext>& ctx, int n_max);

/// Coaction for every ordered partition with n <= 3 (and those with at most one Arnold
/// block for n = 4), plus the comparison with the last face.
SuiteReport coaction_suite(const std::shared_ptr<const ModelContext>& ctx, int n_max);

/// chi for every r, s >= 0 with 1 <= r + s <= total_max.
SuiteReport connected_sum_suite(const std::shared_ptr<const ModelContext>& h, const std::shared_ptr<const ModelContext>& k, int total_max);

}  // namespace confmodels
