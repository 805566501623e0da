#pragma once

#include <string>
#include <utility>
#include <vector>

#include "deephole/lattice.hpp"
#include "deephole/rootsys.hpp"

namespace dh {

// Data directory: $DEEPHOLE_DATA when set, else the directory configured at build time.
std::string dataDirectory();

struct BinaryCode {
    std::size_t length = 0;
    std::vector<std::vector<int>> generators;  // rows of 0/1 entries
    std::vector<std::vector<int>> codewords() const;
    std::vector<long> weightDistribution() const;  // index = weight
};
// Loaded from golay.gen and checked to be a [24,12,8] self-dual code.
const BinaryCode& golayCode();
BinaryCode readBinaryCode(const std::string& path);

// Z^24 with Gram I/8 and basis spanned by 2c (c in the Golay code), (-3, 1^23), 4(e_i + e_j).
// Checked even, unimodular and rootless.
const RationalLattice& leechLattice();

struct NiemeierSpec {
    std::string name;                             // "A5^4D4"
    std::vector<std::pair<char, int>> components;  // in glue-code order
    std::vector<std::vector<int>> glue;           // glue classes per component
    long h = 0;
};
const std::vector<std::string>& niemeierNames();  // the 23 lattices with roots
NiemeierSpec niemeierSpec(const std::string& name);
// Parses "A5^4D4", "A1^24", "D10E7^2" into components.
std::vector<std::pair<char, int>> parseRootType(const std::string& name);
// Fundamental weight used for glue class k of an ADE component, in simple-root coordinates.
QVec glueWeight(char type, int rank, int cls);

// N spanned by R and the glue vectors. The ambient space is R (x) Q in simple-root coordinates
// of the components (ambient Gram = block Cartan matrix), so component i occupies a block of
// coordinates starting at componentOffset(spec, i).
const RationalLattice& niemeierLattice(const std::string& name);
std::size_t componentOffset(const NiemeierSpec& spec, std::size_t i);

struct DeepHole {
    RationalLattice leech;   // rootless even unimodular neighbor of N, same ambient as N
    RationalLattice kernel;  // M = {x in N : <rho, x> = 0 mod h} = leech_beta
    QVec rho;                // Weyl vector, N coordinates
    QVec betaN;              // hole root in N coordinates
    QVec beta;               // the same vector in leech coordinates (rational)
    Rat norm;                // <beta, beta>
    long h = 0;
    std::string holeType;    // R(N) name
};
// Neighbor construction at the Weyl vector. beta defaults to the first simple root of the
// first component; a norm-2 root of N (N coordinates) may be supplied instead. rho (N coordinates)
// selects the Weyl chamber; by default it comes from the lexicographic base of R(N).
DeepHole holeFromNiemeier(const RationalLattice& n, const QVec* beta = nullptr, const QVec* rho = nullptr);

// Affine components of {lambda - beta : lambda in l, |lambda - beta|^2 = 2}; node coordinates are
// taken relative to l's basis. Node 0 of each component is a special node.
std::vector<AffineDiagram> holeDiagram(const RationalLattice& l, const QVec& beta);
std::string holeDiagramType(const std::vector<AffineDiagram>& d);  // "A_1^24", like RootDatum::str

struct DeepHoleCertificate {
    bool deep = false;
    Rat minDistance;                          // min |lambda - beta|^2
    std::vector<AffineDiagram> components;    // the hole diagram
    std::vector<long> multipliers;            // per component: sum marks * lambda = m * beta
    std::string reason;                       // failing check, empty when deep
};
DeepHoleCertificate verifyDeepHole(const RationalLattice& l, const QVec& beta);

// phi = 1 - (1/24) sum a_n / n
Rat twistedConformalWeight(const FrameShape& fs);
// |tau| or 2|tau| (the latter when the frame shape of tau^{|tau|/2} is 2^12)
long standardLiftOrder(const FrameShape& fs);
long standardLiftOrder(const RationalLattice& l, const Isometry& tau);
// sqrt |L_tau / (1 - tau) L|
Int twistedModuleDim(const RationalLattice& l, const Isometry& tau);

struct LeechClass {
    std::string label;  // "2A", "-4C"
    FrameShape frameShape;
    long fixedRank = 0;  // dim H_0
    Rat phi;
    bool inP0 = false;
};
// Conjugacy classes of Co_0 with fixed rank at least 4 that are relevant here.
const std::vector<LeechClass>& leechClasses();
const LeechClass& leechClass(const std::string& label);
// File stem for a class label ("-4C" -> "minus4C").
std::string isometryFileStem(const std::string& label);
// Stored representative on leechLattice(), validated on load (throws DataError).
Isometry isometryRepresentative(const std::string& label);
bool hasIsometryRepresentative(const std::string& label);

}  // namespace dh
