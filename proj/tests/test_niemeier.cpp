#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>

#include "deephole/niemeier.hpp"

using namespace dh;

TEST_CASE("Golay code") {
    const BinaryCode& g = golayCode();
    // independent count on bit masks
    std::vector<std::uint32_t> rows;
    for (const auto& r : g.generators) {
        std::uint32_t m = 0;
        for (int i = 0; i < 24; ++i)
            if (r[static_cast<std::size_t>(i)]) m |= 1u << i;
        rows.push_back(m);
    }
    long octads = 0;
    int minWeight = 24;
    bool allOnes = false;
    for (std::uint32_t s = 1; s < 4096; ++s) {
        std::uint32_t w = 0;
        for (int i = 0; i < 12; ++i)
            if (s >> i & 1) w ^= rows[static_cast<std::size_t>(i)];
        int wt = std::popcount(w);
        minWeight = std::min(minWeight, wt);
        if (wt == 8) ++octads;
        if (w == 0xFFFFFFu) allOnes = true;
    }
    CHECK(minWeight == 8);
    CHECK(octads == 759);
    CHECK(allOnes);
    CHECK(g.weightDistribution()[8] == 759);
}

TEST_CASE("Leech lattice") {
    const RationalLattice& l = leechLattice();
    CHECK(l.det() == 1);
    CHECK(l.isEven());
    CHECK(minimumNorm(l) == 4);
    // classify minimal vectors by coordinate shape: 2^8 0^16, 3 1^23, 4^2 0^22
    auto v = shortVectors(l, 4);
    long shape8 = 0, shape3 = 0, shape4 = 0;
    for (const auto& x : v) {
        QVec a = l.toAmbient(toQ(x.coords));
        int twos = 0, threes = 0, fours = 0;
        for (const auto& c : a) {
            Rat ac = c < 0 ? Rat(-c) : c;
            if (ac == 2) ++twos;
            if (ac == 3) ++threes;
            if (ac == 4) ++fours;
        }
        if (twos == 8) ++shape8;
        else if (threes == 1) ++shape3;
        else if (fours == 2) ++shape4;
    }
    CHECK(2 * shape8 == 759 * 128);
    CHECK(2 * shape3 == 24 * 4096);
    CHECK(2 * shape4 == 276 * 4);
    CHECK(2 * v.size() == 196560);
}

TEST_CASE("root type names") {
    CHECK(parseRootType("A5^4D4").size() == 5);
    CHECK(parseRootType("D10E7^2") == std::vector<std::pair<char, int>>{{'D', 10}, {'E', 7}, {'E', 7}});
    CHECK(parseRootType("A_{17}E_7").size() == 2);
    CHECK_THROWS_AS(parseRootType("X3"), UnknownName);
    CHECK_THROWS_AS(niemeierSpec("A3^9"), UnknownName);
    CHECK(glueWeight('D', 8, 2) == QVec{1, 1, 1, 1, 1, 1, Rat(1, 2), Rat(1, 2)});
}

TEST_CASE("Niemeier lattices") {
    CHECK(niemeierNames().size() == 23);
    for (const auto& name : niemeierNames()) {
        const RationalLattice& n = niemeierLattice(name);
        NiemeierSpec s = niemeierSpec(name);
        CHECK(n.det() == 1);
        CHECK(n.isEven());
        CHECK(static_cast<long>(2 * shortVectors(n, 2).size()) == 24 * s.h);
    }
    CHECK(2 * shortVectors(niemeierLattice("A1^24"), 2).size() == 48);
    CHECK(2 * shortVectors(niemeierLattice("D24"), 2).size() == 1104);
    CHECK(2 * shortVectors(niemeierLattice("E8^3"), 2).size() == 720);
    CHECK(niemeierSpec("E8^3").glue.empty());
}

TEST_CASE("deep holes from Niemeier lattices") {
    for (const std::string name : {"A1^24", "D24", "E8^3", "A5^4D4"}) {
        const RationalLattice& n = niemeierLattice(name);
        DeepHole d = holeFromNiemeier(n);
        CHECK(d.norm == 2);
        CHECK(shortVectors(d.leech, 2).empty());
        CHECK(d.leech.det() == 1);
        CHECK(!sameLattice(d.leech, n));
        CHECK(quotientIndex(d.kernel, n) == d.h);
        // the neighbor is isometric to the reference Leech lattice
        auto cert = verifyDeepHole(d.leech, d.beta);
        CHECK(cert.deep);
        CHECK(holeDiagramType(cert.components) == d.holeType);
        std::size_t nodes = 0;
        for (const auto& c : cert.components) nodes += c.nodes.size();
        CHECK(nodes == 24 + cert.components.size());
    }
    DeepHole a = holeFromNiemeier(niemeierLattice("A1^24"));
    CHECK(verifyDeepHole(a.leech, a.beta).components.size() == 24);
    DeepHole e = holeFromNiemeier(niemeierLattice("E8^3"));
    auto ce = verifyDeepHole(e.leech, e.beta);
    std::size_t nodes = 0;
    for (const auto& c : ce.components) nodes += c.nodes.size();
    CHECK(nodes == 27);
    CHECK(ce.multipliers == std::vector<long>{30, 30, 30});
}

TEST_CASE("shallow points are not deep holes") {
    const RationalLattice& l = leechLattice();
    QVec zero(24);
    auto c0 = verifyDeepHole(l, zero);
    CHECK(!c0.deep);
    CHECK(c0.minDistance == 0);
    CHECK(holeDiagram(l, zero).empty());
    auto v = shortVectors(l, 4);
    QVec half = toQ(v[0].coords);
    for (auto& x : half) x /= 2;
    auto c1 = verifyDeepHole(l, half);
    CHECK(!c1.deep);
    CHECK(c1.minDistance == 1);
}

TEST_CASE("conformal weights and lifts") {
    CHECK(twistedConformalWeight(FrameShape::parse("1^24")) == 0);
    CHECK(twistedConformalWeight(FrameShape::parse("1^8 2^8")) == Rat(1, 2));
    CHECK(twistedConformalWeight(FrameShape::parse("2^3 6^3")) == Rat(11, 12));
    CHECK(standardLiftOrder(FrameShape::parse("1^8 2^8")) == 2);
    CHECK(standardLiftOrder(FrameShape::parse("2^12")) == 4);
    CHECK(standardLiftOrder(FrameShape::parse("2^2 10^2")) == 20);
    CHECK(standardLiftOrder(FrameShape::parse("1^6 3^6")) == 3);
}

TEST_CASE("Leech isometry representatives") {
    const RationalLattice& l = leechLattice();
    int found = 0;
    for (const auto& c : leechClasses()) {
        if (!hasIsometryRepresentative(c.label)) {
            CHECK(!c.inP0);
            CHECK_THROWS_AS(isometryRepresentative(c.label), DataError);
            continue;
        }
        ++found;
        Isometry t = isometryRepresentative(c.label);
        CHECK(t.frameShape == c.frameShape);
        CHECK(static_cast<long>(fixedSublattice(l, t).rank()) == c.fixedRank);
        CHECK(standardLiftOrder(l, t) == standardLiftOrder(c.frameShape));
    }
    CHECK(found >= 10);
    CHECK_THROWS_AS(isometryRepresentative("99Z"), UnknownName);

    Isometry id = makeIsometry(l, ZMatrix::identity(24));
    CHECK(twistedModuleDim(l, id) == 1);
    for (const std::string label : {"2A", "2C"}) {
        Isometry t = isometryRepresentative(label);
        // oracle: product of the nonzero elementary divisors of 1 - tau
        Snf s = smith(ZMatrix::identity(24) - t.matrix);
        Int prod = 1;
        for (const auto& d : s.diag)
            if (d != 0) prod *= abs(d);
        // (1 - tau) maps the Leech lattice onto its coinvariant lattice for both classes
        CHECK(prod == 1);
        CHECK(twistedModuleDim(l, t) == 1);
        // on the coinvariant lattice by itself tau is -1, giving 2^(rank/2)
        RationalLattice co = coinvariantSublattice(l, t);
        ZMatrix minus = ZMatrix::identity(co.rank());
        for (std::size_t i = 0; i < co.rank(); ++i) minus(i, i) = -1;
        CHECK(twistedModuleDim(co, makeIsometry(co, minus)) == (label == "2A" ? 16 : 64));
    }
}

TEST_CASE("fixed lattices of the coinvariant classes") {
    const RationalLattice& l = leechLattice();
    for (const std::string label : {"2A", "3B", "5B", "7B"}) {
        Isometry t = isometryRepresentative(label);
        RationalLattice fixed = fixedSublattice(l, t);
        long ell = standardLiftOrder(l, t);
        Int want;
        mpz_pow_ui(want.get_mpz_t(), Int(ell).get_mpz_t(), fixed.rank() / 2);
        CHECK(fixed.det() == Rat(want));
        CHECK(isIsometric(rescale(dualLattice(fixed), ell), fixed).has_value());
    }
}
