#include <algorithm>
#include <functional>
#include <set>

#include "deephole/lattice.hpp"

namespace dh {

std::vector<RationalLattice> evenUnimodularOverlattices(const RationalLattice& m) {
    if (!m.isEven()) throw NoOverlattice("lattice is not even");
    const std::size_t n = m.rank();
    Int det = m.det().get_num();
    Int root;
    if (m.det().get_den() != 1 || !isSquare(det, &root)) throw NoOverlattice("determinant is not a perfect square");
    if (det == 1) return {m};
    if (!root.fits_slong_p() || det > 1'000'000) throw NoOverlattice("discriminant group too large to enumerate");

    DiscriminantGroup dg = discriminantGroup(m);
    const std::size_t t = dg.invariantFactors.size();
    std::vector<long> radix(t);
    for (std::size_t i = 0; i < t; ++i) radix[i] = dg.invariantFactors[i].get_si();
    const std::size_t size = det.get_ui();
    const std::size_t target = root.get_ui();

    auto digits = [&](std::size_t idx) {
        std::vector<long> a(t);
        for (std::size_t i = 0; i < t; ++i) {
            a[i] = static_cast<long>(idx % static_cast<std::size_t>(radix[i]));
            idx /= static_cast<std::size_t>(radix[i]);
        }
        return a;
    };
    auto index = [&](const std::vector<long>& a) {
        std::size_t idx = 0;
        for (std::size_t i = t; i-- > 0;) idx = idx * static_cast<std::size_t>(radix[i]) + static_cast<std::size_t>(a[i]);
        return idx;
    };
    auto add = [&](std::size_t x, std::size_t y) {
        auto a = digits(x), b = digits(y);
        for (std::size_t i = 0; i < t; ++i) a[i] = (a[i] + b[i]) % radix[i];
        return index(a);
    };
    auto vectorOf = [&](std::size_t x) {
        auto a = digits(x);
        QVec v(n);
        for (std::size_t i = 0; i < t; ++i)
            if (a[i] != 0)
                for (std::size_t k = 0; k < n; ++k) v[k] += Rat(a[i]) * dg.generators[i][k];
        return v;
    };

    std::vector<char> isotropic(size, 0);
    for (std::size_t x = 0; x < size; ++x) isotropic[x] = modTwo(m.norm(vectorOf(x))) == 0;

    // Depth-first growth of totally isotropic subgroups.
    std::set<std::vector<char>> seen;
    std::vector<std::vector<char>> found;
    std::vector<std::vector<std::size_t>> generatorsOf;
    std::function<void(const std::vector<char>&, std::size_t, std::vector<std::size_t>&)> grow =
        [&](const std::vector<char>& h, std::size_t order, std::vector<std::size_t>& gens) {
            if (order == target) {
                found.push_back(h);
                generatorsOf.push_back(gens);
                return;
            }
            for (std::size_t x = 1; x < size; ++x) {
                if (h[x] || !isotropic[x]) continue;
                // subgroup generated by h and x
                std::vector<char> g = h;
                std::vector<std::size_t> elems;
                for (std::size_t y = 0; y < size; ++y)
                    if (h[y]) elems.push_back(y);
                bool ok = true;
                std::size_t k = x;
                while (!g[k] && ok) {
                    std::vector<std::size_t> coset;
                    for (std::size_t y : elems) {
                        std::size_t z = add(y, k);
                        if (!isotropic[z]) {
                            ok = false;
                            break;
                        }
                        coset.push_back(z);
                    }
                    if (!ok) break;
                    for (std::size_t z : coset) g[z] = 1;
                    k = add(k, x);
                }
                if (!ok) continue;
                std::size_t ord = static_cast<std::size_t>(std::count(g.begin(), g.end(), 1));
                if (target % ord != 0) continue;
                if (!seen.insert(g).second) continue;
                gens.push_back(x);
                grow(g, ord, gens);
                gens.pop_back();
            }
        };
    std::vector<char> trivial(size, 0);
    trivial[0] = 1;
    std::vector<std::size_t> gens;
    grow(trivial, 1, gens);

    std::vector<RationalLattice> out;
    for (const auto& gs : generatorsOf) {
        QMatrix rows(n + gs.size(), n);
        for (std::size_t i = 0; i < n; ++i) rows(i, i) = 1;
        for (std::size_t j = 0; j < gs.size(); ++j) rows.setRow(n + j, vectorOf(gs[j]));
        RationalLattice l = spannedBy(m, rows);
        if (l.det() != 1 || !l.isEven()) throw Error("overlattice lift failed");
        bool dup = false;
        for (const auto& o : out)
            if (sameLattice(o, l)) dup = true;
        if (!dup) out.push_back(std::move(l));
    }
    return out;
}

Int quotientIndex(const RationalLattice& sub, const RationalLattice& sup) {
    if (sub.rank() != sup.rank()) throw NotContained("sublattice and lattice have different ranks");
    if (sub.hasAmbient() && sup.hasAmbient()) {
        if (sub.ambientGram() != sup.ambientGram()) throw NotContained("different ambient spaces");
        for (std::size_t i = 0; i < sub.rank(); ++i) {
            auto c = sup.fromAmbient(sub.ambientBasis().row(i));
            if (!c) throw NotContained("basis vector outside the span");
            for (const auto& x : *c)
                if (!isInteger(x)) throw NotContained("basis vector not in the lattice");
        }
    }
    Rat r = sub.det() / sup.det();
    Int root;
    if (r.get_den() != 1 || !isSquare(r.get_num(), &root)) throw NotContained("determinant ratio is not a square");
    return root;
}

}  // namespace dh
