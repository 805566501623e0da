#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <regex>
#include <sstream>

#include "deephole/lattice.hpp"

namespace dh {

// ---- frame shapes ----

long FrameShape::degree() const {
    long d = 0;
    for (const auto& [n, a] : exponents) d += n * a;
    return d;
}

long FrameShape::fixedDimension() const {
    long d = 0;
    for (const auto& [n, a] : exponents) d += a;
    return d;
}

std::string FrameShape::str() const {
    std::ostringstream num, den;
    bool anyNum = false, anyDen = false;
    for (const auto& [n, a] : exponents) {
        if (a > 0) {
            num << (anyNum ? " " : "") << n << '^' << a;
            anyNum = true;
        } else if (a < 0) {
            den << (anyDen ? " " : "") << n << '^' << -a;
            anyDen = true;
        }
    }
    std::string s = anyNum ? num.str() : "1";
    if (anyDen) s += "/" + den.str();
    return s;
}

FrameShape FrameShape::parse(const std::string& text) {
    FrameShape fs;
    std::string t;
    for (char c : text) {
        if (c == '}') t.push_back(' ');
        else if (c != '{') t.push_back(c);
    }
    auto slash = t.find('/');
    static const std::regex term(R"(\s*(\d+)(\^(-?\d+))?)");
    auto parsePart = [&](const std::string& part, long sign) {
        std::size_t pos = 0;
        auto skipSpace = [&] {
            while (pos < part.size() && std::isspace(static_cast<unsigned char>(part[pos]))) ++pos;
        };
        skipSpace();
        while (pos < part.size()) {
            std::smatch m;
            std::string rest = part.substr(pos);
            if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous))
                throw ParseError("bad frame shape '" + text + "'");
            long n = std::stol(m[1]);
            long a = m[3].matched ? std::stol(m[3]) : 1;
            if (n <= 0) throw ParseError("bad frame shape '" + text + "'");
            fs.exponents[n] += sign * a;
            pos += static_cast<std::size_t>(m.length(0));
            skipSpace();
        }
    };
    parsePart(t.substr(0, slash), 1);
    if (slash != std::string::npos) parsePart(t.substr(slash + 1), -1);
    std::erase_if(fs.exponents, [](const auto& kv) { return kv.second == 0; });
    if (fs.exponents.empty()) throw ParseError("empty frame shape '" + text + "'");
    return fs;
}

FrameShape FrameShape::power(long m) const {
    FrameShape out;
    for (const auto& [n, a] : exponents) {
        long g = std::gcd(n, m);
        out.exponents[n / g] += g * a;
    }
    std::erase_if(out.exponents, [](const auto& kv) { return kv.second == 0; });
    return out;
}

FrameShape FrameShape::negated() const {
    FrameShape out;
    for (const auto& [n, a] : exponents) {
        if (n % 2 == 0) {
            out.exponents[n] += a;
        } else {
            out.exponents[2 * n] += a;
            out.exponents[n] -= a;
        }
    }
    std::erase_if(out.exponents, [](const auto& kv) { return kv.second == 0; });
    return out;
}

long FrameShape::order() const {
    long l = 1;
    for (const auto& [n, a] : exponents)
        if (a != 0) l = std::lcm(l, n);
    return l;
}

// ---- isometries ----

long matrixOrder(const ZMatrix& m, long maxOrder) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw NotAnIsometry("matrix is not square");
    ZMatrix id = ZMatrix::identity(n);
    ZMatrix p = m;
    for (long k = 1; k <= maxOrder; ++k) {
        if (p == id) return k;
        p = p * m;
    }
    throw NotAnIsometry("matrix order exceeds " + std::to_string(maxOrder));
}

bool preservesGram(const RationalLattice& l, const ZMatrix& m) {
    if (m.rows() != l.rank() || m.cols() != l.rank()) return false;
    QMatrix q = toQ(m);
    return q.transpose() * l.gram() * q == l.gram();
}

namespace {

using Poly = ZVec;  // low degree first

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division; returns nullopt if d does not divide p.
std::optional<Poly> divide(const Poly& p, const Poly& d) {
    Poly r = p;
    trim(r);
    if (r.size() < d.size()) return r.empty() ? std::optional<Poly>(Poly{}) : std::nullopt;
    Poly q(r.size() - d.size() + 1);
    const Int& lead = d.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const Int& top = r[k + d.size() - 1];
        if (top == 0) continue;
        if (top % lead != 0) return std::nullopt;
        Int c = top / lead;
        q[k] = c;
        for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= c * d[j];
    }
    trim(r);
    if (!r.empty()) return std::nullopt;
    return q;
}

std::vector<long> divisors(long n) {
    std::vector<long> d;
    for (long k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

Poly cyclotomic(long n) {
    Poly p(static_cast<std::size_t>(n) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (long d : divisors(n)) {
        if (d == n) continue;
        p = *divide(p, cyclotomic(d));
    }
    return p;
}

}  // namespace

FrameShape frameShape(const ZMatrix& m) {
    long ord = matrixOrder(m);
    Poly cp = charpoly(m);
    auto divs = divisors(ord);
    std::map<long, long> mult;
    for (long d : divs) {
        Poly phi = cyclotomic(d);
        long k = 0;
        while (true) {
            auto q = divide(cp, phi);
            if (!q) break;
            cp = *q;
            ++k;
        }
        mult[d] = k;
    }
    trim(cp);
    if (cp.size() != 1 || cp[0] != 1) throw NotAnIsometry("characteristic polynomial is not a product of cyclotomics");
    FrameShape fs;
    for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
        long n = *it;
        long a = mult[n];
        for (const auto& [k, ak] : fs.exponents)
            if (k % n == 0) a -= ak;
        if (a != 0) fs.exponents[n] = a;
    }
    return fs;
}

FrameShape frameShape(const Isometry& t) { return t.frameShape; }

Isometry makeIsometry(const RationalLattice& l, const ZMatrix& m) {
    if (!preservesGram(l, m)) throw NotAnIsometry("matrix does not preserve the Gram matrix");
    Isometry t;
    t.matrix = m;
    t.order = matrixOrder(m);
    t.frameShape = frameShape(m);
    return t;
}

Isometry ambientIsometry(const RationalLattice& l, const QMatrix& m) {
    const QMatrix& b = l.ambientBasis();
    if (m.rows() != b.cols() || m.cols() != b.cols()) throw Error("ambient map has the wrong size");
    if (l.rank() == 0) return makeIsometry(l, ZMatrix(0, 0));
    // basis vector i maps to row i of B M^T; its coordinates form column i of the result
    auto coords = solveRows(b, b * m.transpose());
    if (!coords) throw NotAnIsometry("map does not preserve the span");
    for (std::size_t i = 0; i < coords->rows(); ++i)
        for (std::size_t j = 0; j < coords->cols(); ++j)
            if (!isInteger((*coords)(i, j))) throw NotAnIsometry("map does not preserve the lattice");
    return makeIsometry(l, toZ(coords->transpose()));
}

RationalLattice fixedSublattice(const RationalLattice& l, const ZMatrix& tau) {
    const std::size_t n = l.rank();
    ZMatrix d = tau - ZMatrix::identity(n);
    return sublattice(l, integerKernel(d.transpose()));
}

RationalLattice coinvariantSublattice(const RationalLattice& l, const ZMatrix& tau) {
    const std::size_t n = l.rank();
    ZMatrix f = integerKernel((tau - ZMatrix::identity(n)).transpose());
    if (f.rows() == 0) return sublattice(l, ZMatrix::identity(n));
    ZMatrix cond = clearDenominators(l.gram() * toQ(f).transpose());
    return sublattice(l, integerKernel(cond));
}

// ---- isometry testing ----

namespace {

struct Pool {
    std::vector<std::vector<long long>> vec;  // coordinates
    std::vector<std::vector<long long>> gv;   // scaled Gram times vector
    std::vector<long long> norm;
};

long long toLL(const Int& x) {
    if (!x.fits_slong_p()) throw Error("isometry search: value out of 64-bit range");
    return x.get_si();
}

std::map<Rat, long> normCounts(const std::vector<LatticeVector>& vs) {
    std::map<Rat, long> c;
    for (const auto& v : vs) ++c[v.norm];
    return c;
}

// Improves an LLL basis by swapping in shorter vectors that enter with coefficient +-1.
ZMatrix shortBasis(const RationalLattice& l, const std::vector<LatticeVector>& shorts) {
    const std::size_t n = l.rank();
    ZMatrix T = lllTransform(l);
    QMatrix G = l.gram();
    auto normOf = [&](const QVec& x) { return bilinear(x, G, x); };
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ < 4 * static_cast<int>(n)) {
        changed = false;
        QMatrix Tq = toQ(T);
        QMatrix Tinv = inverse(Tq);
        std::vector<Rat> bn(n);
        for (std::size_t j = 0; j < n; ++j) bn[j] = normOf(Tq.row(j));
        for (const auto& s : shorts) {
            QVec c = rowTimes(toQ(s.coords), Tinv);
            std::size_t best = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (abs(c[j]) != 1 || s.norm >= bn[j]) continue;
                if (best == n || bn[j] > bn[best]) best = j;
            }
            if (best == n) continue;
            for (std::size_t k = 0; k < n; ++k) T(best, k) = Int(static_cast<long>(s.coords[k]));
            changed = true;
            break;
        }
    }
    return T;
}

}  // namespace

std::optional<ZMatrix> isIsometric(const RationalLattice& a, const RationalLattice& b, const IsometryOptions& opts) {
    const std::size_t n = a.rank();
    if (b.rank() != n) return std::nullopt;
    if (n == 0) return ZMatrix(0, 0);
    if (a.det() != b.det()) return std::nullopt;

    // common integral scaling
    Int fa, fb;
    clearDenominators(a.gram(), &fa);
    clearDenominators(b.gram(), &fb);
    Int f;
    mpz_lcm(f.get_mpz_t(), fa.get_mpz_t(), fb.get_mpz_t());
    ZMatrix Ga = toZ(Rat(f) * a.gram());
    ZMatrix Gb = toZ(Rat(f) * b.gram());
    if (opts.prefilters) {
        Snf sa = smith(Ga), sb = smith(Gb);
        if (sa.diag != sb.diag) return std::nullopt;
    }

    // short basis of b
    Rat lllMax = 0;
    {
        ZMatrix T = lllTransform(b);
        QMatrix Gr = toQ(T) * b.gram() * toQ(T).transpose();
        for (std::size_t i = 0; i < n; ++i) lllMax = std::max(lllMax, Gr(i, i));
    }
    auto shortB = shortVectors(b, lllMax);
    std::sort(shortB.begin(), shortB.end(), [](const LatticeVector& x, const LatticeVector& y) {
        return x.norm != y.norm ? x.norm < y.norm : x.coords < y.coords;
    });
    ZMatrix Tb = shortBasis(b, shortB);
    QMatrix Gbr = toQ(Tb) * b.gram() * toQ(Tb).transpose();
    Rat maxDiag = 0;
    for (std::size_t i = 0; i < n; ++i) maxDiag = std::max(maxDiag, Gbr(i, i));

    auto shortA = shortVectors(a, maxDiag);
    if (opts.prefilters) {
        std::vector<LatticeVector> shortBCut;
        for (const auto& v : shortB)
            if (v.norm <= maxDiag) shortBCut.push_back(v);
        if (normCounts(shortA) != normCounts(shortBCut)) return std::nullopt;
    }
    if (shortA.size() > 5'000'000) throw SearchBudgetExceeded("isometry search: candidate pool too large");

    std::vector<long long> target(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat x = Rat(f) * Gbr(i, j);
            target[i * n + j] = toLL(x.get_num());
        }

    std::vector<std::vector<long long>> gA(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gA[i][j] = toLL(Ga(i, j));

    Pool pool;
    for (const auto& v : shortA) {
        for (int sgn : {1, -1}) {
            std::vector<long long> x(n);
            for (std::size_t k = 0; k < n; ++k) x[k] = sgn * v.coords[k];
            std::vector<long long> g(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k) g[i] += gA[i][k] * x[k];
            long long nn = 0;
            for (std::size_t k = 0; k < n; ++k) nn += x[k] * g[k];
            pool.vec.push_back(std::move(x));
            pool.gv.push_back(std::move(g));
            pool.norm.push_back(nn);
        }
    }
    auto ip = [&](std::size_t s, std::size_t t) {
        long long r = 0;
        const auto& x = pool.vec[s];
        const auto& g = pool.gv[t];
        for (std::size_t k = 0; k < n; ++k) r += x[k] * g[k];
        return r;
    };

    std::vector<std::vector<std::size_t>> initial(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < pool.vec.size(); ++s)
            if (pool.norm[s] == target[i * n + i]) initial[i].push_back(s);
    for (const auto& c : initial)
        if (c.empty()) return std::nullopt;

    long nodes = 0;
    std::vector<long> assigned(n, -1);
    std::function<bool(std::vector<std::vector<std::size_t>>&)> dfs = [&](std::vector<std::vector<std::size_t>>& cand) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i] >= 0) continue;
            if (pick == n || cand[i].size() < cand[pick].size()) pick = i;
        }
        if (pick == n) return true;
        for (std::size_t s : cand[pick]) {
            if (++nodes > opts.nodeBudget) throw SearchBudgetExceeded("isometry search exceeded node budget");
            assigned[pick] = static_cast<long>(s);
            std::vector<std::vector<std::size_t>> next(n);
            bool dead = false;
            for (std::size_t i = 0; i < n && !dead; ++i) {
                if (assigned[i] >= 0) continue;
                const long long want = target[pick * n + i];
                for (std::size_t t : cand[i])
                    if (t != s && ip(t, s) == want) next[i].push_back(t);
                if (next[i].empty()) dead = true;
            }
            if (!dead && dfs(next)) return true;
            assigned[pick] = -1;
        }
        return false;
    };
    if (!dfs(initial)) return std::nullopt;

    // columns: images of the reduced b basis in a coordinates
    ZMatrix Up(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) Up(k, j) = Int(static_cast<long>(pool.vec[static_cast<std::size_t>(assigned[j])][k]));
    ZMatrix TbInvT = toZ(inverse(toQ(Tb))).transpose();
    ZMatrix U = Up * TbInvT;
    QMatrix Uq = toQ(U);
    if (Uq.transpose() * a.gram() * Uq != b.gram()) throw Error("isometry search produced an invalid map");
    return U;
}

}  // namespace dh
