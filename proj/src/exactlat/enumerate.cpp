// LLL reduction and Fincke-Pohst enumeration. Floating point only prunes the search tree;
// every reported vector is checked with exact integer arithmetic.
#include <algorithm>
#include <cmath>
#include <functional>

#include "deephole/lattice.hpp"

namespace dh {

namespace {

using Real = long double;

ZMatrix scaledGram(const RationalLattice& l, Int* factor) { return clearDenominators(l.gram(), factor); }

Real toReal(const Int& x) { return static_cast<Real>(x.get_d()); }

struct Reduced {
    ZMatrix T;  // new basis = T * old basis
    ZMatrix G;  // T * Gold * T^T (integral, scaled)
};

Reduced lllInt(ZMatrix G, Real delta = 0.99L) {
    const std::size_t n = G.rows();
    Reduced out{ZMatrix::identity(n), ZMatrix()};
    if (n <= 1) {
        out.G = G;
        return out;
    }
    ZMatrix& T = out.T;
    std::vector<std::vector<Real>> mu(n, std::vector<Real>(n, 0)), r(n, std::vector<Real>(n, 0));
    std::vector<Real> B(n, 0);
    auto gsRow = [&](std::size_t i) {
        for (std::size_t j = 0; j < i; ++j) {
            Real s = toReal(G(i, j));
            for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * r[i][k];
            r[i][j] = s;
            mu[i][j] = s / B[j];
        }
        Real s = toReal(G(i, i));
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * r[i][k];
        B[i] = s;
    };
    auto subtract = [&](std::size_t k, std::size_t j, const Int& q) {
        for (std::size_t l = 0; l < n; ++l) G(k, l) -= q * G(j, l);
        for (std::size_t l = 0; l < n; ++l) G(l, k) -= q * G(l, j);
        for (std::size_t l = 0; l < n; ++l) T(k, l) -= q * T(j, l);
    };
    auto swapBasis = [&](std::size_t a, std::size_t b) {
        G.swapRows(a, b);
        G.swapCols(a, b);
        T.swapRows(a, b);
    };
    gsRow(0);
    std::size_t k = 1;
    long guard = 0;
    while (k < n) {
        if (++guard > 1'000'000) throw Error("LLL did not terminate");
        for (std::size_t i = 0; i <= k; ++i) gsRow(i);
        for (std::size_t jj = k; jj-- > 0;) {
            Real m = mu[k][jj];
            if (std::fabs(m) <= 0.5L) continue;
            Real qr = std::nearbyint(m);
            Int q(static_cast<double>(qr));
            subtract(k, jj, q);
            mu[k][jj] -= qr;
            for (std::size_t i = 0; i < jj; ++i) mu[k][i] -= qr * mu[jj][i];
        }
        gsRow(k);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            swapBasis(k, k - 1);
            k = std::max<std::size_t>(k - 1, 1);
        } else {
            ++k;
        }
    }
    out.G = G;
    return out;
}

struct Cholesky {
    std::size_t n;
    std::vector<std::vector<Real>> q;
};

Cholesky fpForm(const ZMatrix& G) {
    const std::size_t n = G.rows();
    Cholesky c{n, std::vector<std::vector<Real>>(n, std::vector<Real>(n, 0))};
    auto& q = c.q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = toReal(G(i, j));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    return c;
}

// Visits every x with sum_i q_ii (x_i - c_i + sum_{j>i} q_ij (x_j - c_j))^2 <= bound.
// halfSpace keeps one of each pair +-x (first nonzero coordinate from the top positive).
void fpEnumerate(const Cholesky& ch, Real bound, const std::vector<Real>& center, bool halfSpace,
                 const std::function<void(const std::vector<long long>&)>& visit) {
    const std::size_t n = ch.n;
    const auto& q = ch.q;
    std::vector<long long> x(n, 0);
    std::function<void(std::size_t, Real, bool)> rec = [&](std::size_t i1, Real rem, bool allZero) {
        const std::size_t i = i1 - 1;
        Real c = center[i];
        for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * (static_cast<Real>(x[j]) - center[j]);
        Real w = rem / q[i][i];
        if (w < 0) w = 0;
        Real s = std::sqrt(w);
        long long lo = static_cast<long long>(std::ceil(c - s - 1e-12L));
        long long hi = static_cast<long long>(std::floor(c + s + 1e-12L));
        if (halfSpace && allZero && lo < 0) lo = 0;
        for (long long v = lo; v <= hi; ++v) {
            Real d = static_cast<Real>(v) - c;
            Real used = q[i][i] * d * d;
            if (used > rem) continue;
            x[i] = v;
            if (i == 0) {
                visit(x);
            } else {
                rec(i, rem - used, allZero && v == 0);
            }
        }
        x[i] = 0;
    };
    if (n == 0) {
        visit(x);
        return;
    }
    rec(n, bound, true);
}

Int exactNorm(const ZMatrix& G, const std::vector<long long>& x) {
    const std::size_t n = x.size();
    Int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        Int row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) row += G(i, j) * static_cast<long>(x[j]);
        s += row * static_cast<long>(x[i]);
    }
    return s;
}

IVec mapBack(const std::vector<long long>& x, const ZMatrix& T) {
    const std::size_t n = x.size();
    IVec y(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        Int s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i] != 0) s += T(i, j) * static_cast<long>(x[i]);
        if (!s.fits_slong_p()) throw Error("coordinate overflow in enumeration");
        y[j] = s.get_si();
    }
    return y;
}

void normalizeSign(IVec& v) {
    for (auto c : v) {
        if (c == 0) continue;
        if (c < 0)
            for (auto& d : v) d = -d;
        return;
    }
}

// Fast exact norm when entries are small.
struct NormEval {
    const ZMatrix& G;
    std::vector<long long> g;
    bool small = true;
    std::size_t n;
    explicit NormEval(const ZMatrix& G0) : G(G0), n(G0.rows()) {
        g.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!G(i, j).fits_slong_p() || abs(G(i, j)) > Int(1) << 40) small = false;
                else g[i * n + j] = G(i, j).get_si();
            }
    }
    Int operator()(const std::vector<long long>& x) const {
        if (small) {
            bool ok = true;
            for (auto v : x)
                if (v > (1LL << 20) || v < -(1LL << 20)) ok = false;
            if (ok) {
                __int128 s = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (x[i] == 0) continue;
                    __int128 row = 0;
                    for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(g[i * n + j]) * x[j];
                    s += row * x[i];
                }
                if (s >= 0 && s < (static_cast<__int128>(1) << 62)) return Int(static_cast<long>(s));
            }
        }
        return exactNorm(G, x);
    }
};

}  // namespace

ZMatrix lllTransform(const RationalLattice& l) {
    Int f;
    return lllInt(scaledGram(l, &f)).T;
}

RationalLattice lllReduce(const RationalLattice& l) {
    if (l.rank() == 0) return l;
    return sublattice(l, lllTransform(l));
}

std::vector<LatticeVector> shortVectors(const RationalLattice& l, const Rat& maxNorm) {
    std::vector<LatticeVector> out;
    const std::size_t n = l.rank();
    if (n == 0 || maxNorm <= 0) return out;
    Int f;
    ZMatrix G0 = scaledGram(l, &f);
    Reduced red = lllInt(G0);
    Rat scaled = maxNorm * Rat(f);
    Int bound;
    mpz_fdiv_q(bound.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Cholesky ch = fpForm(red.G);
    NormEval eval(red.G);
    std::vector<Real> center(n, 0);
    fpEnumerate(ch, toReal(bound) + 0.5L, center, true, [&](const std::vector<long long>& x) {
        bool zero = std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; });
        if (zero) return;
        Int nv = eval(x);
        if (nv > bound) return;
        IVec y = mapBack(x, red.T);
        normalizeSign(y);
        out.push_back({std::move(y), frac(nv, f)});
    });
    std::sort(out.begin(), out.end(), [](const LatticeVector& a, const LatticeVector& b) { return a.coords < b.coords; });
    return out;
}

std::vector<LatticeVector> shortVectorsBothSigns(const RationalLattice& l, const Rat& maxNorm) {
    auto half = shortVectors(l, maxNorm);
    std::vector<LatticeVector> out;
    out.reserve(2 * half.size());
    for (auto& v : half) {
        LatticeVector m = v;
        for (auto& c : m.coords) c = -c;
        out.push_back(std::move(v));
        out.push_back(std::move(m));
    }
    return out;
}

Rat minimumNorm(const RationalLattice& l) {
    if (l.rank() == 0) return 0;
    Rat best = l.gram()(0, 0);
    for (std::size_t i = 1; i < l.rank(); ++i) best = std::min(best, l.gram()(i, i));
    auto vs = shortVectors(l, best);
    for (const auto& v : vs) best = std::min(best, v.norm);
    return best;
}

std::vector<CloseVector> closeVectors(const RationalLattice& l, const QVec& center, const Rat& radiusSq) {
    std::vector<CloseVector> out;
    const std::size_t n = l.rank();
    if (center.size() != n) throw Error("closeVectors: center has wrong dimension");
    if (radiusSq < 0) return out;
    if (n == 0) {
        out.push_back({IVec{}, Rat(0)});
        return out;
    }
    Int f;
    ZMatrix G0 = scaledGram(l, &f);
    Reduced red = lllInt(G0);
    QMatrix Tinv = inverse(toQ(red.T));
    QVec c = rowTimes(center, Tinv);
    std::vector<Real> cr(n);
    for (std::size_t i = 0; i < n; ++i) cr[i] = static_cast<Real>(c[i].get_d());
    Cholesky ch = fpForm(red.G);
    Rat scaled = radiusSq * Rat(f);
    Real b = static_cast<Real>(scaled.get_d());
    QMatrix Gq = toQ(red.G);
    fpEnumerate(ch, b * (1 + 1e-9L) + 1e-6L, cr, false, [&](const std::vector<long long>& x) {
        QVec d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = Rat(static_cast<long>(x[i])) - c[i];
        Rat dist = bilinear(d, Gq, d);
        if (dist > scaled) return;
        out.push_back({mapBack(x, red.T), dist / Rat(f)});
    });
    std::sort(out.begin(), out.end(), [](const CloseVector& a, const CloseVector& b) { return a.coords < b.coords; });
    return out;
}

}  // namespace dh
