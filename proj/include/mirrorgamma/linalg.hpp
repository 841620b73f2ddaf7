#pragma once

#include <optional>
#include <vector>

#include "mirrorgamma/exactnum.hpp"

namespace mirrorgamma {

using IntVec = std::vector<BigInt>;
using IntMatrix = std::vector<IntVec>;  // row-major
using RatVec = std::vector<BigRat>;
using RatMatrix = std::vector<RatVec>;

IntVec to_int_vec(const std::vector<long>& v);
RatMatrix to_rat(const IntMatrix& m);
IntMatrix transpose(const IntMatrix& m);

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
BigInt determinant(const IntMatrix& m);

std::size_t rank(const RatMatrix& m);
inline std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

/// Z-basis of {x in Z^n : A x = 0} for an m x n matrix A, returned as rows
/// in canonical form (see hermite_from_right).
IntMatrix integer_kernel(const IntMatrix& a, std::size_t ncols);

/// Canonical basis of the row lattice: Hermite normal form with pivots
/// searched from the last column leftwards. Pivots are positive, other entries
/// in a pivot column are reduced into [0, pivot), and rows are ordered by
/// pivot position.
IntMatrix hermite_from_right(const IntMatrix& rows);

/// Coordinates c with sum_i c_i * basis[i] = v, if v lies in the rational span
/// of the (linearly independent) rows of `basis`.
std::optional<RatVec> coordinates_in_span(const RatMatrix& basis, const RatVec& v);

/// Inverse of a square rational matrix, if invertible.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// gcd of all entries made 1 by dividing out; zero vector returned unchanged.
IntVec primitive(IntVec v);

}  // namespace mirrorgamma
