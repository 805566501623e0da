#include "deephole/linalg.hpp"

#include <utility>

namespace dh {

namespace {

void addRowMultiple(ZMatrix& m, std::size_t target, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(target, j) += q * m(src, j);
}

void addColMultiple(ZMatrix& m, std::size_t target, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, target) += q * m(i, src);
}

void negateRow(ZMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

// rows (r, i) <- [[s, t], [-b/g, a/g]] * rows (r, i)
void gcdCombine(ZMatrix& m, std::size_t r, std::size_t i, const Int& s, const Int& t, const Int& u,
                const Int& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Int x = m(r, j), y = m(i, j);
        if (x == 0 && y == 0) continue;
        m(r, j) = s * x + t * y;
        m(i, j) = u * x + v * y;
    }
}

}  // namespace

Rat determinant(const QMatrix& m0) {
    if (m0.rows() != m0.cols()) throw Error("determinant of non-square matrix");
    QMatrix m = m0;
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swapRows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

Int determinant(const ZMatrix& m0) {
    if (m0.rows() != m0.cols()) throw Error("determinant of non-square matrix");
    const std::size_t n = m0.rows();
    if (n == 0) return 1;
    ZMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swapRows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const QMatrix& m0) {
    QMatrix m = m0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swapRows(p, r);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

QMatrix inverse(const QMatrix& m0) {
    if (m0.rows() != m0.cols()) throw MalformedLattice("inverse of non-square matrix");
    const std::size_t n = m0.rows();
    QMatrix m = m0;
    QMatrix inv = QMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw MalformedLattice("singular matrix");
        m.swapRows(p, c);
        inv.swapRows(p, c);
        Rat piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Hnf hermite(const ZMatrix& a, bool withTransform) {
    Hnf out;
    out.H = a;
    const std::size_t m = a.rows(), n = a.cols();
    if (withTransform) out.U = ZMatrix::identity(m);
    ZMatrix& H = out.H;
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (H(i, j) == 0) continue;
            if (H(r, j) == 0) {
                H.swapRows(r, i);
                if (withTransform) out.U.swapRows(r, i);
                continue;
            }
            if (mpz_divisible_p(H(i, j).get_mpz_t(), H(r, j).get_mpz_t())) {
                Int q = -(H(i, j) / H(r, j));
                addRowMultiple(H, i, r, q);
                if (withTransform) addRowMultiple(out.U, i, r, q);
                continue;
            }
            Int g, s, t;
            Int x = H(r, j), y = H(i, j);
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Int u = -(y / g), v = x / g;
            gcdCombine(H, r, i, s, t, u, v);
            if (withTransform) gcdCombine(out.U, r, i, s, t, u, v);
        }
        if (H(r, j) == 0) continue;
        if (H(r, j) < 0) {
            negateRow(H, r);
            if (withTransform) negateRow(out.U, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (H(i, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(r, j).get_mpz_t());
            q = -q;
            addRowMultiple(H, i, r, q);
            if (withTransform) addRowMultiple(out.U, i, r, q);
        }
        ++r;
    }
    out.rank = r;
    return out;
}

ZMatrix rowLatticeBasis(const ZMatrix& a) {
    Hnf h = hermite(a, false);
    return h.H.rowsSubset(0, h.rank);
}

QMatrix rowLatticeBasis(const QMatrix& a) {
    Int l;
    ZMatrix z = clearDenominators(a, &l);
    ZMatrix b = rowLatticeBasis(z);
    QMatrix q = toQ(b);
    Rat inv = Rat(1) / Rat(l);
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) *= inv;
    return q;
}

ZMatrix integerKernel(const ZMatrix& a) {
    Hnf h = hermite(a, true);
    ZMatrix k = h.U.rowsSubset(h.rank, a.rows());
    if (k.rows() == 0) return k;
    // canonical small representatives
    return rowLatticeBasis(k);
}

Snf smith(const ZMatrix& a) {
    Snf out;
    ZMatrix D = a;
    const std::size_t m = a.rows(), n = a.cols();
    out.U = ZMatrix::identity(m);
    out.V = ZMatrix::identity(n);
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
        while (true) {
            std::size_t pi = m, pj = n;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) == 0) continue;
                    Int v = abs(D(i, j));
                    if (pi == m || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) break;
            D.swapRows(t, pi);
            out.U.swapRows(t, pi);
            D.swapCols(t, pj);
            out.V.swapCols(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                addRowMultiple(D, i, t, -q);
                addRowMultiple(out.U, i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                addColMultiple(D, j, t, -q);
                addColMultiple(out.V, j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        addRowMultiple(D, t, i, Int(1));
                        addRowMultiple(out.U, t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            negateRow(D, t);
            negateRow(out.U, t);
        }
    }
    out.diag.resize(lim);
    for (std::size_t t = 0; t < lim; ++t) out.diag[t] = D(t, t);
    return out;
}

std::optional<QVec> solveRow(const QMatrix& b, const QVec& v) {
    // x * b = v  <=>  b^T x^T = v^T
    const std::size_t k = b.rows(), n = b.cols();
    if (v.size() != n) throw Error("solveRow dimension mismatch");
    QMatrix aug(n, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug(i, j) = b(j, i);
        aug(i, k) = v[i];
    }
    std::vector<std::size_t> pivotCol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < n; ++c) {
        std::size_t p = r;
        while (p < n && aug(p, c) == 0) ++p;
        if (p == n) continue;
        aug.swapRows(p, r);
        Rat piv = aug(r, c);
        for (std::size_t j = c; j <= k; ++j) aug(r, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r || aug(i, c) == 0) continue;
            Rat f = aug(i, c);
            for (std::size_t j = c; j <= k; ++j) aug(i, j) -= f * aug(r, j);
        }
        pivotCol.push_back(c);
        ++r;
    }
    if (r < k) throw Error("solveRow: rows are linearly dependent");
    for (std::size_t i = r; i < n; ++i)
        if (aug(i, k) != 0) return std::nullopt;
    QVec x(k);
    for (std::size_t i = 0; i < r; ++i) x[pivotCol[i]] = aug(i, k);
    return x;
}

std::optional<QMatrix> solveRows(const QMatrix& b, const QMatrix& v) {
    QMatrix x(v.rows(), b.rows());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        auto s = solveRow(b, v.row(i));
        if (!s) return std::nullopt;
        x.setRow(i, *s);
    }
    return x;
}

ZVec charpoly(const ZMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error("charpoly of non-square matrix");
    ZVec c(n + 1);
    c[n] = 1;
    ZMatrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        ZMatrix am = a * m;
        for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
        m = am;
        ZMatrix t = a * m;
        Int tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += t(i, i);
        Int q;
        mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
        c[n - k] = -q;
    }
    return c;
}

ZMatrix power(const ZMatrix& m, long e) {
    if (e < 0) throw Error("negative matrix power");
    ZMatrix result = ZMatrix::identity(m.rows());
    ZMatrix base = m;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

}  // namespace dh
