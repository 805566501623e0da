#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "deephole/lattice.hpp"

namespace dh {

struct CoxeterData {
    char type = 'A';
    int rank = 0;
    long h = 0;
    long hDual = 0;
    long lace = 1;
    long dim = 0;
    std::vector<long> marks;  // highest root coefficients, Bourbaki order
};
// Throws RecognitionError for an invalid (type, rank).
CoxeterData coxeterData(char type, int rank);

// Gram matrix of a Bourbaki-ordered base of the scaled root system ^scale X_rank.
// Conventions: ADE roots have norm 2*scale; B_n short roots norm scale, long 2*scale;
// C_n, F_4, G_2 short roots norm 2*scale.
QMatrix baseGram(char type, int rank, const Rat& scale = 1);

struct RootComponent {
    char type = 'A';
    int rank = 0;
    Rat scale = 1;
    std::vector<QVec> roots;   // one of each +-pair, coordinates in the ambient lattice basis
    std::vector<QVec> simple;  // Bourbaki order
    std::string name() const;  // "A_5", "√2A_8", "2A_1", "C_4"
};

struct RootDatum {
    std::vector<RootComponent> components;
    int totalRank() const;
    std::size_t rootCount() const;  // both signs
    // Compact name such as "D_4^2C_2^4" (components grouped, deterministic order).
    std::string str() const;
};

// ADE decomposition of norm-2 vectors (one of each pair, or both) with respect to gram.
RootDatum decomposeNorm2Roots(const std::vector<QVec>& vectors, const QMatrix& gram);
// All primitive v with 2<v,K>/<v,v> in Z, grouped into scaled irreducible components.
RootDatum rootSystemOfEvenLattice(const RationalLattice& k);
// Base of the component determined by lexicographic positivity of coordinates, in Bourbaki order.
std::vector<QVec> simpleRootBasis(const RootComponent& c, const QMatrix& gram);
// rho with <rho, alpha_i^vee> = 1 for all simple roots.
QVec weylVector(const std::vector<QVec>& simple, const QMatrix& gram);
QVec weylVector(const RootDatum& r, const QMatrix& gram);

struct AffineDiagram {
    char type = 'A';
    int rank = 0;
    std::vector<QVec> nodes;  // node 0 is minus the highest root
    std::vector<long> marks;  // marks[0] = 1
    QMatrix gram;             // inner products of the nodes
};
AffineDiagram affineDiagram(const RootComponent& c, const QMatrix& gram);

struct FoldResult {
    std::string quotientType;      // "B_3", "" for the empty diagram
    std::vector<std::pair<char, int>> quotient;
    std::string fixedSimpleRootType;  // subdiagram of fixed non-affine nodes
    std::string coinvariantRootType;  // roots of the component orthogonal to the fixed space
    FrameShape frameShape;            // of the induced isometry on the component's root lattice
};
// perm[i] is the image of node i under a diagram automorphism (simply-laced diagrams only).
FoldResult foldAffineDiagram(const AffineDiagram& d, const std::vector<int>& perm);

long coxeterNumberOfNiemeier(const RootDatum& r);

// Type recognition from the Gram matrix of a base; components in order of first node.
std::vector<std::pair<char, int>> recognizeBase(const QMatrix& gram);
// Permutation order[k] = index of the node playing Bourbaki node k of ^scale type_rank;
// throws RecognitionError when gram is not that Cartan matrix up to relabelling.
std::vector<std::size_t> bourbakiOrder(const QMatrix& gram, char type, int rank, const Rat& scale = 1);
std::string typeString(const std::vector<std::pair<char, int>>& parts);  // "A_1^2B_3"

void writeRootDatum(std::ostream& out, const RootDatum& r, const RationalLattice& l);

}  // namespace dh
