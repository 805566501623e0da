#pragma once

#include <optional>

#include "deephole/numeric.hpp"

namespace dh {

Rat determinant(const QMatrix& m);
Int determinant(const ZMatrix& m);
std::size_t rank(const QMatrix& m);
QMatrix inverse(const QMatrix& m);  // throws MalformedLattice on singular input

// Row-style Hermite normal form: U * A = H with U unimodular. Nonzero rows of H come first,
// pivots strictly increase, entries above a positive pivot are reduced to [0, pivot).
struct Hnf {
    ZMatrix H;
    ZMatrix U;
    std::size_t rank = 0;
};
Hnf hermite(const ZMatrix& a, bool withTransform = true);

// Z-basis (as rows) of the lattice spanned by the rows of a.
ZMatrix rowLatticeBasis(const ZMatrix& a);
// Same for rational rows; the result is in canonical (HNF) form.
QMatrix rowLatticeBasis(const QMatrix& a);

// Basis of {x in Z^rows : x * a = 0}; it is saturated.
ZMatrix integerKernel(const ZMatrix& a);

// Smith normal form: U * A * V = D (diagonal, d_i | d_{i+1}, nonnegative).
struct Snf {
    ZVec diag;
    ZMatrix U;
    ZMatrix V;
};
Snf smith(const ZMatrix& a);

// Solves x * b = v for a row vector x; b must have full row rank. Returns nullopt when
// v is outside the row space.
std::optional<QVec> solveRow(const QMatrix& b, const QVec& v);
// Solves X * b = v row by row.
std::optional<QMatrix> solveRows(const QMatrix& b, const QMatrix& v);

// Characteristic polynomial det(xI - m), coefficients from degree 0 upwards.
ZVec charpoly(const ZMatrix& m);

ZMatrix power(const ZMatrix& m, long e);

}  // namespace dh
