#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cliffbie/whitney.hpp"

namespace cliffbie {

/// Builds a test density from its registry name:
///   const[:c]            constant c (default 1)
///   x<i>, x1sq           coordinate polynomials
///   harmonic:<p>         p in {x1, x2, x3, x1x2, x1sq-x2sq, x1x2x3}
///   monogenic:z          x2 e1 + x1 e2
///   E1pole[:c1,..,cm]    Laplace kernel centred at c (default (0,...,0,0.3))
///   E0pole[:c1,..,cm]    Cauchy kernel centred at c
///   poly:<seed>          random quadratic multivector-valued polynomial
/// Throws UsageError for unknown names or incompatible dimensions.
ReferenceFunction make_density(std::string_view name, int m);

/// Names used by experiments that sweep "all registry densities".
std::vector<std::string> registry_densities();

}  // namespace cliffbie
