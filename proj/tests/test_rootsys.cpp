#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deephole/rootsys.hpp"

using namespace dh;

namespace {

RationalLattice rootLattice(char t, int n, Rat scale = 1) { return RationalLattice(baseGram(t, n, scale)); }

std::vector<QVec> allNorm2(const RationalLattice& l) {
    std::vector<QVec> out;
    for (const auto& v : shortVectors(l, 2)) out.push_back(toQ(v.coords));
    return out;
}

AffineDiagram diagramOf(char t, int n) {
    RationalLattice l = rootLattice(t, n);
    RootDatum r = decomposeNorm2Roots(allNorm2(l), l.gram());
    REQUIRE(r.components.size() == 1);
    return affineDiagram(r.components[0], l.gram());
}

}  // namespace

TEST_CASE("Coxeter data") {
    CHECK(coxeterData('A', 5).h == 6);
    CHECK(coxeterData('B', 4).hDual == 7);
    CHECK(coxeterData('C', 4).hDual == 5);
    CHECK(coxeterData('D', 24).h == 46);
    CHECK(coxeterData('E', 8).h == 30);
    CHECK(coxeterData('F', 4).hDual == 9);
    CHECK(coxeterData('G', 2).lace == 3);
    CHECK(coxeterData('C', 3).dim == 21);
    CHECK_THROWS_AS(coxeterData('E', 5), RecognitionError);
    // h = 1 + sum of marks for every type
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 7}, {'B', 5}, {'C', 5}, {'D', 6}, {'E', 6}, {'E', 7}, {'E', 8}, {'F', 4}, {'G', 2}}) {
        auto c = coxeterData(t, n);
        long s = 1;
        for (long m : c.marks) s += m;
        CHECK(s == c.h);
    }
}

TEST_CASE("decompose norm-2 roots") {
    RationalLattice e8 = rootLattice('E', 8);
    RootDatum r = decomposeNorm2Roots(allNorm2(e8), e8.gram());
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].type == 'E');
    CHECK(r.rootCount() == 240);
    CHECK(decomposeNorm2Roots({}, e8.gram()).components.empty());
    RationalLattice a1x3 = directSum({rootLattice('A', 1), rootLattice('A', 1), rootLattice('A', 1)});
    RootDatum a = decomposeNorm2Roots(allNorm2(a1x3), a1x3.gram());
    CHECK(a.str() == "A_1^3");
    RationalLattice mix = directSum({rootLattice('D', 5), rootLattice('A', 3), rootLattice('E', 6)});
    CHECK(decomposeNorm2Roots(allNorm2(mix), mix.gram()).str() == "A_3D_5E_6");
}

TEST_CASE("simple roots match the Cartan matrix") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'D', 4}, {'D', 7}, {'E', 6}, {'E', 7}, {'E', 8}}) {
        RationalLattice l = rootLattice(t, n);
        RootDatum r = decomposeNorm2Roots(allNorm2(l), l.gram());
        const auto& s = r.components[0].simple;
        QMatrix g(s.size(), s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < s.size(); ++j) g(i, j) = l.inner(s[i], s[j]);
        CHECK(g == baseGram(t, n));
        CHECK(simpleRootBasis(r.components[0], l.gram()) == s);
    }
}

TEST_CASE("scaled root systems") {
    RationalLattice e8 = rootLattice('E', 8);
    CHECK(rootSystemOfEvenLattice(e8).str() == "E_8");
    // 2 * Z^n has type B_n with short roots of norm 2
    QMatrix z(4, 4);
    for (std::size_t i = 0; i < 4; ++i) z(i, i) = 2;
    RootDatum b = rootSystemOfEvenLattice(RationalLattice(z));
    REQUIRE(b.components.size() == 1);
    CHECK(b.components[0].type == 'B');
    CHECK(b.components[0].rank == 4);
    CHECK(b.components[0].scale == 2);
    RootDatum a = rootSystemOfEvenLattice(rescale(rootLattice('A', 8), 2));
    CHECK(a.str() == "√2A_8");
    CHECK(rootSystemOfEvenLattice(rescale(rootLattice('A', 1), 4)).str() == "2A_1");
    // a scaled A_2 lattice also contains the long roots of G_2
    CHECK(rootSystemOfEvenLattice(rescale(rootLattice('A', 2), 4)).str() == "G_2");
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'F', 4}, {'G', 2}, {'C', 3}, {'B', 3}}) {
        // even lattices spanned by the scaled bases
        RootDatum r = rootSystemOfEvenLattice(RationalLattice(baseGram(t, n, 2)));
        REQUIRE(r.components.size() == 1);
        CHECK(r.components[0].type == t);
    }
}

TEST_CASE("Weyl vector") {
    RationalLattice a1 = rootLattice('A', 1);
    auto r1 = decomposeNorm2Roots(allNorm2(a1), a1.gram());
    CHECK(weylVector(r1, a1.gram()) == QVec{Rat(1, 2)});
    RationalLattice a2 = rootLattice('A', 2);
    auto r2 = decomposeNorm2Roots(allNorm2(a2), a2.gram());
    QVec rho = weylVector(r2, a2.gram());
    CHECK(a2.norm(rho) == 2);
    // <rho, alpha> >= 1 on positive roots with equality exactly on simple roots
    RationalLattice e6 = rootLattice('E', 6);
    auto r6 = decomposeNorm2Roots(allNorm2(e6), e6.gram());
    QVec rho6 = weylVector(r6, e6.gram());
    int ones = 0;
    for (const auto& v : r6.components[0].roots) {
        Rat x = e6.inner(rho6, v);
        Rat ax = x < 0 ? Rat(-x) : x;
        CHECK(ax >= 1);
        if (ax == 1) ++ones;
    }
    CHECK(ones == 6);
}

TEST_CASE("affine diagrams") {
    auto a1 = diagramOf('A', 1);
    CHECK(a1.nodes.size() == 2);
    CHECK(a1.marks == std::vector<long>{1, 1});
    auto e8 = diagramOf('E', 8);
    long s = 0;
    for (long m : e8.marks) s += m;
    CHECK(s == 30);
    auto d4 = diagramOf('D', 4);
    CHECK(d4.marks == std::vector<long>{1, 1, 2, 1, 1});
    // affine relation
    QVec sum(d4.nodes[0].size());
    for (std::size_t i = 0; i < d4.nodes.size(); ++i)
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += Rat(d4.marks[i]) * d4.nodes[i][k];
    for (const auto& x : sum) CHECK(x == 0);
}

TEST_CASE("folding affine diagrams") {
    // rotation of affine A_5 with two orbits of size 3
    auto a5 = diagramOf('A', 5);
    FoldResult r = foldAffineDiagram(a5, {2, 3, 4, 5, 0, 1});
    CHECK(r.quotientType == "A_1");
    CHECK(r.frameShape == FrameShape::parse("1^-1 3^2"));
    // affine E_6, order 3 rotation
    auto e6 = diagramOf('E', 6);
    FoldResult e = foldAffineDiagram(e6, {1, 6, 3, 5, 4, 2, 0});
    CHECK(e.quotientType == "G_2");
    CHECK(e.frameShape == FrameShape::parse("3^2"));
    CHECK(e.fixedSimpleRootType == "A_1");
    // affine D_8: 0<->8, 1<->7, i<->8-i
    auto d8 = diagramOf('D', 8);
    FoldResult d = foldAffineDiagram(d8, {8, 7, 6, 5, 4, 3, 2, 1, 0});
    CHECK(d.quotientType == "B_4");
    CHECK(d.frameShape == FrameShape::parse("2^4"));
    CHECK_THROWS_AS(foldAffineDiagram(d8, {0, 2, 1, 3, 4, 5, 6, 7, 8}), UnsupportedFolding);
}

TEST_CASE("Coxeter number of a Niemeier root system") {
    RationalLattice a = directSum({rootLattice('A', 9), rootLattice('A', 9), rootLattice('D', 6)});
    CHECK(coxeterNumberOfNiemeier(decomposeNorm2Roots(allNorm2(a), a.gram())) == 10);
    RationalLattice b = directSum({rootLattice('A', 9), rootLattice('D', 5)});
    CHECK_THROWS_AS(coxeterNumberOfNiemeier(decomposeNorm2Roots(allNorm2(b), b.gram())), MixedCoxeter);
}
