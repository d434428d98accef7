#pragma once

#include <stdexcept>
#include <string>

#include "confmodels/algebra.hpp"

namespace confmodels {

/// Malformed algebra JSON; `path` locates the offending field, e.g. "$.products[2].value".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message) : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

RawAlgebra parse_algebra_json(const std::string& text);
RawAlgebra read_algebra_file(const std::string& path);

/// JSON text of the algebra with sorted keys, canonical rationals, products ordered by basis
/// position and restricted to pairs i <= j of positive degree. Semantically equal inputs give
/// identical text.
std::string canonical_algebra_json(const PDAlgebra& h);

std::string algebra_json(const RawAlgebra& raw);

}  // namespace confmodels
