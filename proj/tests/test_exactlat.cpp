#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "deephole/lattice.hpp"

using namespace dh;

namespace {

QMatrix cartanD(std::size_t n) {
    QMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
    for (std::size_t i = 0; i + 2 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
    g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
    return g;
}

QMatrix cartanE8() {
    QMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
    auto e = [&](std::size_t a, std::size_t b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
    e(1, 3);
    e(3, 4);
    e(2, 4);
    e(4, 5);
    e(5, 6);
    e(6, 7);
    e(7, 8);
    return g;
}

QMatrix diagonal(std::vector<long> d) {
    QMatrix g(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
    return g;
}

// Naive box enumeration used as an independent oracle.
std::vector<LatticeVector> boxShort(const RationalLattice& l, const Rat& bound, long box) {
    const std::size_t n = l.rank();
    std::vector<LatticeVector> out;
    IVec x(n, -box);
    while (true) {
        bool zero = true, positive = false;
        for (auto c : x)
            if (c != 0) {
                zero = false;
                positive = c > 0;
                break;
            }
        if (!zero && positive) {
            Rat nv = l.norm(toQ(x));
            if (nv <= bound) out.push_back({x, nv});
        }
        std::size_t k = n;
        while (k > 0 && x[k - 1] == box) x[--k] = -box;
        if (k == 0) break;
        ++x[k - 1];
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.coords < b.coords; });
    return out;
}

}  // namespace

TEST_CASE("dual lattice") {
    RationalLattice e8(cartanE8());
    CHECK(e8.det() == 1);
    CHECK(e8.isEven());
    RationalLattice d = dualLattice(e8);
    CHECK(d.det() * e8.det() == 1);
    CHECK(d.isIntegral());
    RationalLattice a1(QMatrix{{Rat(2)}});
    CHECK(dualLattice(a1).gram() == QMatrix{{Rat(1, 2)}});
    CHECK_THROWS_AS(RationalLattice(QMatrix{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}), MalformedLattice);
}

TEST_CASE("rescale") {
    RationalLattice a1(QMatrix{{Rat(2)}});
    CHECK(rescale(a1, 2).gram() == QMatrix{{Rat(4)}});
    CHECK(rescale(a1, 1).gram() == a1.gram());
}

TEST_CASE("discriminant group") {
    RationalLattice a1(QMatrix{{Rat(2)}});
    auto dg = discriminantGroup(a1);
    REQUIRE(dg.invariantFactors == ZVec{2});
    CHECK(dg.qValues[0] == Rat(1, 2));
    RationalLattice d4(cartanD(4));
    auto d = discriminantGroup(d4);
    CHECK(d.str() == "2^2");
    for (const auto& q : d.qValues) CHECK(q == 1);
    RationalLattice d5(cartanD(5));
    CHECK(discriminantGroup(d5).str() == "4");
    CHECK(discriminantGroup(d5).qValues[0] == Rat(5, 4));
    CHECK_THROWS_AS(discriminantGroup(RationalLattice(QMatrix{{Rat(1, 2)}})), MalformedLattice);
}

TEST_CASE("short vectors of E8 and D4") {
    RationalLattice e8(cartanE8());
    CHECK(shortVectors(e8, 2).size() == 120);
    CHECK(shortVectors(e8, 4).size() == 120 + 1080);
    CHECK(minimumNorm(e8) == 2);
    RationalLattice d4(cartanD(4));
    CHECK(shortVectors(d4, 2).size() == 12);
    CHECK(shortVectors(RationalLattice(QMatrix{{Rat(2)}}), 2).size() == 1);
    CHECK(shortVectors(d4, 0).empty());
}

TEST_CASE("short vectors agree with box enumeration") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + rng() % 5;
        ZMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = static_cast<long>(rng() % 5) - 2;
        for (std::size_t i = 0; i < n; ++i) b(i, i) += 3;
        QMatrix g = toQ(b * b.transpose());
        if (determinant(g) == 0) continue;
        RationalLattice l(g);
        Rat bound = 8;
        // box large enough: |x_i| <= sqrt(bound * (G^-1)_ii)
        QMatrix gi = inverse(g);
        long box = 0;
        for (std::size_t i = 0; i < n; ++i) box = std::max(box, static_cast<long>(std::sqrt(Rat(bound * gi(i, i)).get_d())) + 1);
        if (std::pow(2 * box + 1, n) > 3e6) continue;
        CHECK(shortVectors(l, bound) == boxShort(l, bound, box));
    }
}

TEST_CASE("close vectors") {
    RationalLattice e8(cartanE8());
    auto at0 = closeVectors(e8, QVec(8), 0);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].distSq == 0);
    auto c = closeVectors(e8, QVec(8), 2);
    CHECK(c.size() == 241);
    RationalLattice z2(diagonal({1, 1}));
    auto h = closeVectors(z2, QVec{Rat(1, 2), Rat(1, 2)}, Rat(1, 2));
    CHECK(h.size() == 4);
    for (const auto& v : h) CHECK(v.distSq == Rat(1, 2));
}

TEST_CASE("frame shapes") {
    ZMatrix id = ZMatrix::identity(24);
    CHECK(frameShape(id).str() == "1^24");
    ZMatrix neg = Int(-1) * id;
    FrameShape fs = frameShape(neg);
    CHECK(fs.exponents.at(1) == -24);
    CHECK(fs.exponents.at(2) == 24);
    CHECK(fs.str() == "2^24/1^24");
    CHECK(FrameShape::parse("2^24/1^24") == fs);
    CHECK(FrameShape::parse("1^{8}2^{8}").str() == "1^8 2^8");
    CHECK(FrameShape::parse("1^8 2^8").negated() == FrameShape::parse("1^-8 2^16"));
    CHECK(FrameShape::parse("2^3 6^3").power(3) == FrameShape::parse("2^12"));
    CHECK(FrameShape::parse("1^4 2^2 4^4").power(2) == FrameShape::parse("1^8 2^8"));
    // a 3-cycle on coordinates
    ZMatrix p(3, 3);
    p(1, 0) = p(2, 1) = p(0, 2) = 1;
    CHECK(frameShape(p).str() == "3^1");
    CHECK(matrixOrder(p) == 3);
}

TEST_CASE("fixed and coinvariant sublattices") {
    RationalLattice e8(cartanE8());
    ZMatrix id = ZMatrix::identity(8);
    CHECK(fixedSublattice(e8, id).rank() == 8);
    CHECK(coinvariantSublattice(e8, id).rank() == 0);
    ZMatrix neg = Int(-1) * id;
    CHECK(fixedSublattice(e8, neg).rank() == 0);
    CHECK(coinvariantSublattice(e8, neg).det() == 1);
    // reflection in the first simple root of E8
    QMatrix g = e8.gram();
    ZMatrix s = id;
    for (std::size_t j = 0; j < 8; ++j) s(0, j) -= toZ(QMatrix{{g(0, j)}})(0, 0);
    REQUIRE(preservesGram(e8, s));
    auto f = fixedSublattice(e8, s);
    auto c = coinvariantSublattice(e8, s);
    CHECK(f.rank() + c.rank() == 8);
    CHECK(c.gram() == QMatrix{{Rat(2)}});
    CHECK(f.det() == 2);
}

TEST_CASE("isometry testing") {
    RationalLattice e8(cartanE8());
    auto u = isIsometric(e8, e8);
    REQUIRE(u);
    RationalLattice a2(QMatrix{{Rat(2), Rat(-1)}, {Rat(-1), Rat(2)}});
    CHECK_FALSE(isIsometric(a2, RationalLattice(diagonal({2, 2}))));
    // random change of basis
    std::mt19937 rng(3);
    ZMatrix t = ZMatrix::identity(8);
    for (int k = 0; k < 20; ++k) {
        std::size_t i = rng() % 8, j = rng() % 8;
        if (i == j) continue;
        for (std::size_t c = 0; c < 8; ++c) t(i, c) += t(j, c);
    }
    RationalLattice e8b = sublattice(e8, t);
    auto v = isIsometric(e8, e8b);
    REQUIRE(v);
    CHECK(toQ(*v).transpose() * e8.gram() * toQ(*v) == e8b.gram());
    RationalLattice d8(cartanD(8));
    CHECK_FALSE(isIsometric(e8, d8));
    RationalLattice d4(cartanD(4));
    CHECK(isIsometric(rescale(dualLattice(d4), 2), d4));
}

TEST_CASE("overlattices") {
    RationalLattice e8(cartanE8());
    auto o = evenUnimodularOverlattices(e8);
    REQUIRE(o.size() == 1);
    RationalLattice d8(cartanD(8));
    auto p = evenUnimodularOverlattices(d8);
    // D8 has two even unimodular overlattices (both isometric to E8)
    CHECK(p.size() == 2);
    for (const auto& l : p) CHECK(shortVectors(l, 2).size() == 120);
    CHECK(quotientIndex(d8, p[0]) == 2);
    CHECK(evenUnimodularOverlattices(RationalLattice(cartanD(5))).empty());
    CHECK_THROWS_AS(evenUnimodularOverlattices(RationalLattice(QMatrix{{Rat(2), Rat(-1)}, {Rat(-1), Rat(2)}})), NoOverlattice);
}

TEST_CASE("lattice text format") {
    RationalLattice l(QMatrix{{Rat(1), Rat(0)}, {Rat(0), Rat(2)}}, QMatrix{{Rat(2), Rat(0)}, {Rat(0), Rat(1, 2)}});
    std::stringstream ss;
    writeLattice(ss, l);
    RationalLattice r = readLattice(ss);
    CHECK(sameLattice(l, r));
    std::stringstream bad("2\n2 1\n");
    CHECK_THROWS_AS(readLattice(bad), ParseError);
    std::stringstream iso;
    writeIsometry(iso, ZMatrix::identity(3));
    CHECK(readIsometry(iso) == ZMatrix::identity(3));
}
