#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "confmodels/rational.hpp"

namespace confmodels {

/// Incrementally built row-echelon basis of a subspace of Q^N.
///
/// Each stored row has its pivot at its smallest column, normalized to 1. A row may carry a
/// tag: the combination of inserted vectors it equals, which lets the basis solve for
/// coordinates and report linear relations.
class EchelonBasis {
public:
    /// Reduces `v` against the stored rows in every pivot column. The remainder is zero iff
    /// `v` lies in the span.
    SparseVec reduce(SparseVec v) const;

    /// Inserts `v` with the given tag. Returns std::nullopt if `v` was independent; otherwise
    /// returns the relation: a tag combination whose vector sum is zero (`tag` minus the
    /// combination of earlier tags that reproduces `v`).
    std::optional<SparseVec> insert(SparseVec v, SparseVec tag = {});

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }

    /// Coordinates of `v` in terms of inserted tags, or nullopt if `v` is not in the span.
    std::optional<SparseVec> solve(const SparseVec& v) const;

    std::size_t rank() const { return rows_.size(); }

    std::vector<int> pivots() const;

private:
    struct Row {
        SparseVec vec;
        SparseVec tag;
    };
    void reduce_tracked(SparseVec& v, SparseVec* tag) const;

    std::map<int, Row> rows_;
};

/// Rank of a set of rational vectors, by fraction-free elimination over the integers.
/// Rows are primitive integer vectors; eliminations use gcd-scaled cross multiplication and
/// pivots are chosen sparsest-first.
std::size_t rank(const std::vector<SparseVec>& vectors);

/// Basis of the relations among `columns`: vectors c with sum_j c_j * columns[j] = 0.
std::vector<SparseVec> kernel(const std::vector<SparseVec>& columns);

/// Applies a linear map given by the images of basis vectors.
SparseVec apply(const std::vector<SparseVec>& images, const SparseVec& v);

}  // namespace confmodels
