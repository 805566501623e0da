#include "deephole/numeric.hpp"

#include <cctype>

namespace dh {

Rat parseRational(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty rational");
    if (s.front() == '+') s.erase(s.begin());
    auto slash = s.find('/');
    auto digits = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num) || !digits(den) || den[0] == '-') throw ParseError("bad rational '" + s + "'");
    Rat r{Int(num), Int(den)};
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Rat frac(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string str(const Rat& x) { return x.get_str(); }
std::string str(const Int& x) { return x.get_str(); }

Int lcmDenominators(const QVec& v) {
    Int l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

Int gcdOf(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

bool isSquare(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r != n) return false;
    if (root) *root = r;
    return true;
}

static Rat modN(const Rat& x, long n) {
    Int num = x.get_num();
    Int den = x.get_den() * n;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat r = x - Rat(q * n);
    r.canonicalize();
    return r;
}

Rat modTwo(const Rat& x) { return modN(x, 2); }
Rat modOne(const Rat& x) { return modN(x, 1); }
bool isInteger(const Rat& x) { return x.get_den() == 1; }

QMatrix toQ(const ZMatrix& m) {
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

ZMatrix toZ(const QMatrix& m) {
    ZMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw Error("non-integral entry " + str(m(i, j)));
            z(i, j) = m(i, j).get_num();
        }
    return z;
}

ZMatrix clearDenominators(const QMatrix& m, Int* factor) {
    Int l = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    ZMatrix z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    if (factor) *factor = l;
    return z;
}

QVec rowTimes(const QVec& x, const QMatrix& m) {
    if (x.size() != m.rows()) throw Error("rowTimes dimension mismatch");
    QVec out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
    }
    return out;
}

QVec matTimes(const QMatrix& m, const QVec& x) {
    if (x.size() != m.cols()) throw Error("matTimes dimension mismatch");
    QVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (x[j] != 0) out[i] += m(i, j) * x[j];
    return out;
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat bilinear(const QVec& a, const QMatrix& g, const QVec& b) { return dot(rowTimes(a, g), b); }

QVec toQ(const IVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(static_cast<long>(v[i]));
    return q;
}

QVec toQ(const ZVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

}  // namespace dh
