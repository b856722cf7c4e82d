#pragma once

#include <optional>
#include <vector>

#include "iwa/padic.hpp"

namespace iwa {

using PadicMatrix = std::vector<std::vector<PadicScalar>>;

/// Rank at working precision, by Gaussian elimination with min-valuation
/// pivoting. Entries indistinguishable from zero never serve as pivots.
long padic_rank(PadicMatrix m);

/// Inverse of a square matrix; throws domain_error when no unit-enough pivot
/// can be found at working precision.
PadicMatrix padic_inv(PadicMatrix m);

/// One solution of m x = b when the system is consistent at working
/// precision, std::nullopt otherwise.
std::optional<std::vector<PadicScalar>> padic_solve(PadicMatrix m, std::vector<PadicScalar> b);

}  // namespace iwa
