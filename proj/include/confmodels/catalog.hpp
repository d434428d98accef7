#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "confmodels/algebra.hpp"

namespace confmodels {

class CatalogError : public std::invalid_argument {
public:
    enum class Kind { UnknownKey, BadParams };
    CatalogError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// A catalog request: key plus parameters, which are integers or nested requests (product).
struct CatalogSpec {
    std::string key;
    std::vector<std::string> params;
};

/// Parses "sphere(1)", "cp2_sum(3)", "product(sphere(1),torus)" or the space-separated form
/// "cp2_sum 3".
CatalogSpec parse_catalog_spec(const std::string& text);

using PDAlgebraPtr = std::shared_ptr<const PDAlgebra>;

PDAlgebraPtr catalog_get(const CatalogSpec& spec);
PDAlgebraPtr catalog_get(const std::string& text);

PDAlgebraPtr sphere(int m);
/// Truncated polynomial algebra Q[x]/(x^{m+1}), deg x = 2, for 1 <= m <= 3.
PDAlgebraPtr complex_projective(int m);
PDAlgebraPtr torus();
/// Closed orientable surface of genus g in the symplectic basis a_i b_i = w.
PDAlgebraPtr genus(int g);
/// r-fold connected sum of CP^2: classes x1..xr with x_i^2 = w, x_i x_j = 0.
PDAlgebraPtr cp2_sum(int r);
/// Tensor product algebra with Koszul-signed products and orientation w_H (x) w_K.
PDAlgebraPtr kunneth(const PDAlgebra& h, const PDAlgebra& k);

struct CatalogEntry {
    std::string key;
    std::string params;
    std::string example;
    std::string notes;
};

const std::vector<CatalogEntry>& catalog_entries();

/// The algebras exercised by the test suites.
std::vector<std::string> catalog_test_set();

}  // namespace confmodels
