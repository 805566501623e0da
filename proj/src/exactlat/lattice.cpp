#include <sstream>

#include "deephole/lattice.hpp"

namespace dh {

namespace {

void checkGram(const QMatrix& g) {
    if (g.rows() != g.cols()) throw MalformedLattice("Gram matrix is not square");
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (g(i, j) != g(j, i)) throw MalformedLattice("Gram matrix is not symmetric");
    QMatrix m = g;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(c, c) <= 0) throw MalformedLattice("Gram matrix is not positive definite");
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
}

}  // namespace

RationalLattice::RationalLattice(QMatrix gram) : gram_(std::move(gram)) { checkGram(gram_); }

RationalLattice::RationalLattice(QMatrix basis, QMatrix ambientGram) {
    if (basis.cols() != ambientGram.rows() || ambientGram.rows() != ambientGram.cols())
        throw MalformedLattice("ambient basis and Gram dimensions disagree");
    gram_ = basis * ambientGram * basis.transpose();
    checkGram(gram_);
    basis_ = std::move(basis);
    ambientGram_ = std::move(ambientGram);
}

RationalLattice RationalLattice::zero(std::size_t ambientDim) {
    if (ambientDim == 0) return RationalLattice(QMatrix(0, 0));
    return RationalLattice(QMatrix(0, ambientDim), QMatrix::identity(ambientDim));
}

const QMatrix& RationalLattice::ambientBasis() const {
    if (!basis_) throw Error("lattice has no ambient embedding");
    return *basis_;
}

const QMatrix& RationalLattice::ambientGram() const {
    if (!ambientGram_) throw Error("lattice has no ambient embedding");
    return *ambientGram_;
}

Rat RationalLattice::det() const { return determinant(gram_); }

bool RationalLattice::isIntegral() const {
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j)
            if (!isInteger(gram_(i, j))) return false;
    return true;
}

bool RationalLattice::isEven() const {
    if (!isIntegral()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
        if (!mpz_even_p(gram_(i, i).get_num_mpz_t())) return false;
    return true;
}

QVec RationalLattice::toAmbient(const QVec& x) const { return rowTimes(x, ambientBasis()); }

std::optional<QVec> RationalLattice::fromAmbient(const QVec& v) const {
    if (rank() == 0) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return QVec{};
    }
    return solveRow(ambientBasis(), v);
}

RationalLattice spannedBy(const RationalLattice& l, const QMatrix& rows) {
    QMatrix b = rowLatticeBasis(rows);
    if (l.hasAmbient()) {
        QMatrix amb = b.rows() ? b * l.ambientBasis() : QMatrix(0, l.ambientBasis().cols());
        return RationalLattice(amb, l.ambientGram());
    }
    if (b.rows() == 0) return RationalLattice(QMatrix(0, l.rank()), l.gram());
    return RationalLattice(b, l.gram());
}

RationalLattice sublattice(const RationalLattice& l, const ZMatrix& rows) { return spannedBy(l, toQ(rows)); }

RationalLattice directSum(const std::vector<RationalLattice>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.rank();
    QMatrix g(n, n);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        off += p.rank();
    }
    return RationalLattice(g);
}

bool sameLattice(const RationalLattice& a, const RationalLattice& b) {
    if (a.rank() != b.rank()) return false;
    if (a.hasAmbient() != b.hasAmbient()) return false;
    if (!a.hasAmbient()) return a.gram() == b.gram();
    if (a.ambientGram() != b.ambientGram()) return false;
    if (a.rank() == 0) return true;
    return rowLatticeBasis(a.ambientBasis()) == rowLatticeBasis(b.ambientBasis());
}

RationalLattice dualLattice(const RationalLattice& l) {
    QMatrix gi = inverse(l.gram());
    if (l.hasAmbient()) return RationalLattice(gi * l.ambientBasis(), l.ambientGram());
    return RationalLattice(gi);
}

RationalLattice rescale(const RationalLattice& l, const Rat& m) {
    if (m <= 0) throw MalformedLattice("rescale factor must be positive");
    if (l.hasAmbient()) return RationalLattice(l.ambientBasis(), m * l.ambientGram());
    return RationalLattice(m * l.gram());
}

Int DiscriminantGroup::order() const {
    Int o = 1;
    for (const auto& d : invariantFactors) o *= d;
    return o;
}

Int DiscriminantGroup::exponent() const { return invariantFactors.empty() ? Int(1) : invariantFactors.back(); }

std::string DiscriminantGroup::str() const {
    if (invariantFactors.empty()) return "1";
    std::ostringstream os;
    std::map<Int, int> count;
    for (const auto& d : invariantFactors) ++count[d];
    bool first = true;
    for (const auto& [d, c] : count) {
        if (!first) os << ' ';
        first = false;
        os << d;
        if (c > 1) os << '^' << c;
    }
    return os.str();
}

std::string DiscriminantGroup::primaryStr() const {
    if (invariantFactors.empty()) return "1";
    std::map<std::pair<Int, Int>, int> count;  // (p, p^e)
    for (Int d : invariantFactors) {
        for (Int p = 2; d > 1; ++p) {
            if (p * p > d) p = d;
            if (d % p != 0) continue;
            Int q = 1;
            while (d % p == 0) {
                d /= p;
                q *= p;
            }
            ++count[{p, q}];
        }
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [pq, c] : count) {
        if (!first) os << ' ';
        first = false;
        os << pq.second;
        if (c > 1) os << '^' << c;
    }
    return os.str();
}

DiscriminantGroup discriminantGroup(const RationalLattice& l) {
    if (!l.isIntegral()) throw MalformedLattice("discriminant group needs an integral Gram matrix");
    DiscriminantGroup dg;
    const std::size_t n = l.rank();
    if (n == 0) return dg;
    Snf s = smith(toZ(l.gram()));
    for (std::size_t i = 0; i < n; ++i) {
        const Int& d = s.diag[i];
        if (d == 0) throw MalformedLattice("singular Gram matrix");
        if (d == 1) continue;
        QVec g(n);
        for (std::size_t k = 0; k < n; ++k) g[k] = frac(s.V(k, i), d);
        dg.invariantFactors.push_back(d);
        dg.qValues.push_back(modTwo(l.norm(g)));
        dg.generators.push_back(std::move(g));
    }
    return dg;
}

}  // namespace dh
