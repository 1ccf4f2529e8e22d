#ifndef CREDAL_LINALG_HPP
#define CREDAL_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "credal/rational.hpp"

namespace credal {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(RatMat& m);

// Basis of {x : a x = 0}.
RatMat nullspace(RatMat a);

// Solves the square system a x = b exactly; nullopt when singular.
std::optional<RatVec> solve_square(RatMat a, RatVec b);

// Solves a x = b for a tall matrix of full column rank; nullopt when the
// system is inconsistent or the columns are dependent.
std::optional<RatVec> solve_full_column_rank(const RatMat& a, const RatVec& b);

}  // namespace credal

#endif
