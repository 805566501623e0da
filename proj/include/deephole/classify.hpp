#pragma once

#include <map>
#include <string>
#include <vector>

#include "deephole/consab.hpp"
#include "deephole/lattice.hpp"
#include "deephole/niemeier.hpp"
#include "deephole/rootsys.hpp"

namespace dh {

struct LieComponent {
    char type = 'A';
    int rank = 0;
    long level = 0;
};

struct LieAlgebraSpec {
    std::vector<LieComponent> components;
    long totalDim = 0;
    int totalRank = 0;
    std::string str() const;  // "D_{4,2}^2C_{2,1}^4"
};

// One irreducible component of R(N) and the diagram automorphism tau induces on it.
struct ComponentAction {
    char type = 'A';
    int rank = 0;
    long glueClass = 0;
    std::vector<int> perm;  // node permutation of the affine diagram, node 0 = -theta
    FoldResult fold;
};

struct PairContext {
    std::string niemeierName;
    std::string classLabel;
    Codeword codeword;  // in the component order of niemeierSpec(niemeierName)
    RationalLattice n;
    QMatrix tauAmbient;  // block matrix on simple-root coordinates
    Isometry tau;        // on N
    Isometry tauLeech;   // on hole.leech, when preservesLeech
    long ell = 0;
    long h = 0;
    RationalLattice fixedPart;
    RationalLattice coinvariantPart;
    QVec holeRoot;  // tau-fixed simple root, N coordinates
    std::vector<ComponentAction> actions;
    RootDatum scaledRoots;   // R(N^tau) as tabulated: fixedRootData
    RootDatum latticeRoots;  // every root of the glued lattice N^tau
    LieAlgebraSpec v1;
    DeepHole hole;  // neighbor at the Weyl vector of the chamber tau permutes
    bool glueOk = false;       // lambda_c in N
    bool preservesLeech = false;
    bool frameShapeOk = false;
    std::string embedding() const;  // "(A_1^3)^2+A_1^2 ↪ A_5^2+D_4"
};

struct BuildOptions {
    // When false, glue and class failures are recorded in the context instead of thrown.
    bool strict = true;
};

// Codeword entries follow the printed component order of `name` (e.g. "E7^2D10", "A_{11}D_7E_6").
PairContext buildPair(const std::string& name, const std::string& codeword, const std::string& classLabel,
                      const BuildOptions& opts = {});

struct ConditionCheck {
    bool pass = false;
    std::string witness;
};
struct ConditionReport {
    ConditionCheck c1, c2, c3;
    bool all() const { return c1.pass && c2.pass && c3.pass; }
};
ConditionReport checkConditions(const PairContext& ctx);

// Sum over the components of R(N) of the scaled quotient-diagram root systems, spanned by the
// orbit sums of tau on the non-affine orbits of affine nodes (roots in N^tau coordinates).
// This is a subsystem of rootSystemOfEvenLattice(N^tau), and a proper one when the glue of
// N^tau adds roots: every 2C pair has the lattice root system B_12.
RootDatum fixedRootData(const PairContext& ctx);
LieAlgebraSpec lieAlgebraV1(const PairContext& ctx);

// Canonical form of a type string in either the printed table notation ("A_3^4(\sqrt2A_1)^4",
// "B^2_{6,2}", "A_72A_1 A_1^2") or this library's ("√2A_1^4"). Components are sorted; B_2 is
// written C_2 and C_1 is written A_1; scale prefixes are kept for simply-laced types only.
std::string normalizeTypeString(const std::string& s);
// Normalized "lhs ↪ rhs": coinvariant roots in total, and the multiset of moved components.
std::string normalizeEmbedding(const std::string& s);

struct TableRow {
    std::string classLabel;
    std::string type;             // as printed, e.g. "E_7^2D_{10}"
    std::string printedCodeword;  // as printed
    std::string codeword;         // the same glue class pattern in our glue coordinates, e.g. "11|2"
    std::string embedding;   // expected
    std::string fixedRoots;  // expected R(N^tau)
    std::string v1;          // expected V_1
};
const std::vector<TableRow>& tableRows();  // the 46 stored rows

struct ComputedRow {
    TableRow expected;
    std::string embedding;
    std::string fixedRoots;
    std::string v1;
    bool conditions = false;
    bool invariants = false;
    std::string failure;  // empty when the row matches
    bool ok() const { return failure.empty(); }
};
// Rebuilds every row (threads = 0 uses the hardware concurrency). Rows come back in table order.
std::vector<ComputedRow> computeTables(unsigned threads = 0);
// As computeTables, throwing TableRegression on the first failing row.
std::vector<ComputedRow> reproduceTables(unsigned threads = 0);

struct PairFingerprint {
    std::string niemeierName;
    std::string frameShape;
    std::string coinvariantDiscriminant;
    std::string fixedRoots;
    std::string v1;
    bool operator==(const PairFingerprint&) const = default;
};
PairFingerprint pairInvariants(const PairContext& ctx);
// Equal fingerprints and isometric coinvariant lattices.
bool equivalentCandidates(const PairContext& a, const PairContext& b);

}  // namespace dh
