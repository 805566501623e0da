#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deephole/linalg.hpp"

namespace dh {

// Positive definite lattice given by an exact Gram matrix. Vectors are written as integer
// (or rational, for points of L (x) Q) coordinate rows with respect to the basis.
class RationalLattice {
public:
    RationalLattice() = default;
    explicit RationalLattice(QMatrix gram);
    // basis: rank x dim rows in an ambient space with Gram matrix ambientGram.
    RationalLattice(QMatrix basis, QMatrix ambientGram);

    static RationalLattice zero(std::size_t ambientDim = 0);

    std::size_t rank() const { return gram_.rows(); }
    const QMatrix& gram() const { return gram_; }
    bool hasAmbient() const { return basis_.has_value(); }
    const QMatrix& ambientBasis() const;
    const QMatrix& ambientGram() const;

    Rat det() const;
    bool isIntegral() const;
    bool isEven() const;
    Rat norm(const QVec& x) const { return bilinear(x, gram_, x); }
    Rat inner(const QVec& x, const QVec& y) const { return bilinear(x, gram_, y); }
    // Coordinates of lattice-basis combination x in the ambient space.
    QVec toAmbient(const QVec& x) const;
    // Coordinates (w.r.t. this basis) of an ambient vector in the rational span; nullopt
    // when outside the span.
    std::optional<QVec> fromAmbient(const QVec& v) const;

private:
    QMatrix gram_;
    std::optional<QMatrix> basis_;
    std::optional<QMatrix> ambientGram_;
};

// Sublattice spanned by the given coordinate rows (need not be a basis; rank may drop).
RationalLattice sublattice(const RationalLattice& l, const ZMatrix& rows);
// Lattice spanned by rational coordinate rows relative to l's basis (e.g. an overlattice).
RationalLattice spannedBy(const RationalLattice& l, const QMatrix& rows);
RationalLattice directSum(const std::vector<RationalLattice>& parts);
// Same vector set, i.e. same ambient Gram and same row lattice of ambient basis vectors.
bool sameLattice(const RationalLattice& a, const RationalLattice& b);

RationalLattice dualLattice(const RationalLattice& l);
RationalLattice rescale(const RationalLattice& l, const Rat& m);

struct DiscriminantGroup {
    ZVec invariantFactors;     // d_1 | d_2 | ..., all > 1
    std::vector<QVec> generators;  // coordinates in the lattice basis, generating L*/L
    std::vector<Rat> qValues;  // q(g) = <g,g> mod 2
    Int order() const;
    Int exponent() const;
    std::string str() const;         // invariant factors, "2^2 10^2"
    std::string primaryStr() const;  // elementary divisors, "2^4 5^2"
};
DiscriminantGroup discriminantGroup(const RationalLattice& l);

struct LatticeVector {
    IVec coords;
    Rat norm;
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

// All v != 0 with norm <= maxNorm, one of each pair +-v (first nonzero coordinate positive),
// sorted lexicographically by coordinates.
std::vector<LatticeVector> shortVectors(const RationalLattice& l, const Rat& maxNorm);
// Like shortVectors but with both signs; stops with an error beyond maxCount vectors.
std::vector<LatticeVector> shortVectorsBothSigns(const RationalLattice& l, const Rat& maxNorm);
Rat minimumNorm(const RationalLattice& l);

struct CloseVector {
    IVec coords;
    Rat distSq;
    friend bool operator==(const CloseVector&, const CloseVector&) = default;
};
// All lattice points within squared distance radiusSq of center (coordinates w.r.t. the basis).
std::vector<CloseVector> closeVectors(const RationalLattice& l, const QVec& center, const Rat& radiusSq);

// LLL-reduced basis, returned as the unimodular transform T (new basis = T * old basis).
ZMatrix lllTransform(const RationalLattice& l);
RationalLattice lllReduce(const RationalLattice& l);

// Frame shape prod n^{a_n}.
struct FrameShape {
    std::map<long, long> exponents;  // a_n, zero entries omitted
    long degree() const;             // sum n a_n
    long fixedDimension() const;     // sum a_n
    std::string str() const;         // "1^8 2^8", "2^16/1^8"
    static FrameShape parse(const std::string& text);
    friend bool operator==(const FrameShape&, const FrameShape&) = default;
    // Frame shape of the m-th power of an isometry with this frame shape.
    FrameShape power(long m) const;
    FrameShape negated() const;  // frame shape of -tau
    long order() const;          // lcm of the n with a_n != 0
};

// An isometry acting on basis coordinates: column j holds the image of basis vector j.
struct Isometry {
    ZMatrix matrix;
    long order = 1;
    FrameShape frameShape;
};

long matrixOrder(const ZMatrix& m, long maxOrder = 100000);
bool preservesGram(const RationalLattice& l, const ZMatrix& m);
// Validates and fills order and frame shape; throws NotAnIsometry.
Isometry makeIsometry(const RationalLattice& l, const ZMatrix& m);
// Isometry of l induced by a map of its ambient space (column j = image of ambient vector j);
// throws NotAnIsometry when l is not mapped onto itself isometrically.
Isometry ambientIsometry(const RationalLattice& l, const QMatrix& m);
FrameShape frameShape(const ZMatrix& m);
FrameShape frameShape(const Isometry& t);

RationalLattice fixedSublattice(const RationalLattice& l, const ZMatrix& tau);
RationalLattice coinvariantSublattice(const RationalLattice& l, const ZMatrix& tau);
inline RationalLattice fixedSublattice(const RationalLattice& l, const Isometry& t) { return fixedSublattice(l, t.matrix); }
inline RationalLattice coinvariantSublattice(const RationalLattice& l, const Isometry& t) {
    return coinvariantSublattice(l, t.matrix);
}

struct IsometryOptions {
    long nodeBudget = 10'000'000;
    bool prefilters = true;
};
// Returns U with U^T gram(a) U = gram(b): column j of U gives b's j-th basis vector in
// a-coordinates. nullopt means a definite "not isometric"; SearchBudgetExceeded is thrown when
// the node budget runs out.
std::optional<ZMatrix> isIsometric(const RationalLattice& a, const RationalLattice& b,
                                   const IsometryOptions& opts = {});

std::vector<RationalLattice> evenUnimodularOverlattices(const RationalLattice& m);
Int quotientIndex(const RationalLattice& sub, const RationalLattice& sup);

// Text formats.
RationalLattice readLattice(std::istream& in);
RationalLattice readLatticeFile(const std::string& path);
void writeLattice(std::ostream& out, const RationalLattice& l);
ZMatrix readIsometry(std::istream& in);
ZMatrix readIsometryFile(const std::string& path);
void writeIsometry(std::ostream& out, const ZMatrix& m);

}  // namespace dh
