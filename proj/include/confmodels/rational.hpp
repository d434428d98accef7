#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confmodels {

/// Exact rational scalar. Always kept canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument on malformed input
/// or a zero denominator.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string format_scalar(const Scalar& value);

/// Sparse vector over the rationals: strictly increasing indices, no stored zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

/// Accumulates `factor * v` into `acc`, keeping the result canonical.
void axpy(SparseVec& acc, const Scalar& factor, const SparseVec& v);

SparseVec scaled(const SparseVec& v, const Scalar& factor);

inline bool is_zero(const SparseVec& v) { return v.empty(); }

/// Builds a canonical SparseVec from unsorted (index, value) pairs, merging duplicates.
SparseVec make_sparse(std::vector<std::pair<int, Scalar>> entries);

}  // namespace confmodels
