#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "confmodels/linalg.hpp"
#include "confmodels/model.hpp"
#include "confmodels/polynomial.hpp"

namespace confmodels {

/// dim H^{p,q} for every bidegree with a nonzero entry.
struct BettiTable {
    std::map<std::pair<int, int>, long> entries;

    long at(int p, int q) const;
    BigradedPolynomial poincare() const;
    bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

BettiTable betti(const Model& model);

/// Euler characteristic of each anti-diagonal w = p + q: sum_p (-1)^p dim C^{p, w-p}.
/// Zero entries are omitted.
std::map<int, long> chain_euler_by_antidiagonal(const Model& model);
std::map<int, long> betti_euler_by_antidiagonal(const BettiTable& b);

/// Cohomology classes of one bidegree: representatives and the data to express any cycle in
/// terms of them.
struct CohomologyBlock {
    std::vector<SparseVec> representatives;
    /// Boundaries (tag-free rows) followed by the representatives tagged e_r.
    EchelonBasis reducer;
    /// Coordinates of a cycle in the representative basis.
    SparseVec classify(const SparseVec& cycle) const;
};

CohomologyBlock cohomology_block(const Model& model, int p, int q);

struct InducedMap {
    /// Per bidegree: images of the source representatives in target-representative coordinates.
    std::map<std::pair<int, int>, std::vector<SparseVec>> matrices;
    std::map<std::pair<int, int>, std::pair<long, long>> dims;  // (source, target)
    std::vector<std::pair<int, int>> non_iso;
    bool iso() const { return non_iso.empty(); }
};

class NotChainMap : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// H(f) on every bidegree. Throws NotChainMap if f does not commute with the differentials.
InducedMap induced_map(const ChainMap& f);

struct ColumnReport {
    /// Every term of d stays in column p (G_{.1} removed) or moves to column p-1.
    bool splitting = true;
    /// (p, q, degree) triples where the column complex has cohomology with q > 0.
    std::vector<std::tuple<int, int, int>> positive_q_cohomology;
    /// (p, degree) -> (computed H_0 dimension, predicted dimension).
    std::map<std::pair<int, int>, std::pair<long, long>> h0;
    bool ok() const;
};

/// Splits the Kriz differential by the number of G_{.1} factors and checks that each column
/// is acyclic in positive q, with H_0 of the predicted size.
ColumnReport column_acyclicity(const std::shared_ptr<const ModelContext>& ctx, int n);

/// {"model", "algebra", "n", "betti": [...], "poincare_st", "poincare_t", ...} as JSON text.
std::string betti_json(const BettiTable& b, const std::string& model, const std::string& algebra, int n);

}  // namespace confmodels
