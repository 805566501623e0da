#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "deephole/lattice.hpp"

namespace dh {

using Codeword = std::vector<long>;

struct GlueCode {
    std::vector<long> moduli;          // k_1, ..., k_t; component i is A_{k_i - 1}
    std::vector<Codeword> generators;  // entries reduced into [0, k_i)
};

// "13|1|1", "(11111111)", "1^8,0^16", "1,5": bars only group, digits are single entries unless
// commas are used. Entries are reduced modulo the moduli; the length must match.
Codeword parseCodeword(const std::string& text, const std::vector<long>& moduli);
// Same grammar without moduli (entries kept as written).
Codeword parseCodewordRaw(const std::string& text);
std::string codewordString(const Codeword& c);  // "(1,3,1,1)"

// "MODULI k1 k2 ..." then "GEN x1 x2 ..." lines.
GlueCode readGlueCode(std::istream& in);
void writeGlueCode(std::ostream& out, const GlueCode& c);

std::vector<long> parseModuli(const std::string& text);  // "8,8,4,2" or "8 8 4 2" or "2^8"

// R = A_{k_1-1} + ... + A_{k_t-1} in simple-root coordinates (ambient Gram = block Cartan).
RationalLattice rootLatticeA(const std::vector<long>& moduli);
// Fundamental-weight glue vector lambda_x in simple-root coordinates of R.
QVec glueVector(const std::vector<long>& moduli, const Codeword& x);
// (rho_1/k_1, ..., rho_t/k_t) in simple-root coordinates of R.
QVec chiDelta(const std::vector<long>& moduli);

RationalLattice constructionA(const GlueCode& c);
RationalLattice constructionB(const GlueCode& c);

// Matrix of g_{Delta,e} on R in simple-root coordinates (column j = image of alpha_j).
ZMatrix coxeterMatrix(const std::vector<long>& moduli, const Codeword& e);
// The same map in the basis of l (a lattice whose ambient space is R (x) Q); throws
// NotAnIsometry when l is not preserved.
Isometry coxeterIsometry(const RationalLattice& l, const std::vector<long>& moduli, const Codeword& e);

struct CoinvariantModel {
    std::string label;
    GlueCode code;  // single generator c
    RationalLattice lattice;  // L_B(<c>)
    Isometry tau;             // g_{Delta,c}
    std::string discriminant;  // expected invariant factors, e.g. "2^4 5^2"
};
const std::vector<std::string>& coinvariantLabels();  // 2A 2C 3B 4C 5B 6E 6G 7B 8E 10F
// Builds and validates the model for a class; throws DataError on validation failure.
CoinvariantModel coinvariantModel(const std::string& label);

}  // namespace dh
