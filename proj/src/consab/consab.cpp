#include "deephole/consab.hpp"

#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dh {

namespace {

std::string strip(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '{' && c != '}') out.push_back(c);
    return out;
}

long toLong(const std::string& s, const std::string& ctx) {
    if (s.empty()) throw ParseError("empty entry in '" + ctx + "'");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-') throw ParseError("bad entry '" + s + "' in '" + ctx + "'");
    return std::stol(s);
}

std::vector<std::size_t> offsets(const std::vector<long>& moduli) {
    std::vector<std::size_t> off{0};
    for (long k : moduli) {
        if (k < 1) throw Error("moduli must be positive");
        off.push_back(off.back() + static_cast<std::size_t>(k - 1));
    }
    return off;
}

QMatrix cartanA(std::size_t r) {
    QMatrix g(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        g(i, i) = 2;
        if (i + 1 < r) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
}

// (C^{-1})_{ij} for A_{k-1}, 1-based.
Rat inverseCartanA(long k, long i, long j) { return frac(Int(std::min(i, j) * (k - std::max(i, j))), Int(k)); }

}  // namespace

Codeword parseCodewordRaw(const std::string& text) {
    std::string s = strip(text);
    Codeword out;
    bool commas = s.find(',') != std::string::npos || s.find('^') != std::string::npos;
    if (commas) {
        for (char& c : s)
            if (c == '|') c = ',';
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            auto caret = tok.find('^');
            if (caret == std::string::npos) {
                out.push_back(toLong(tok, text));
            } else {
                long v = toLong(tok.substr(0, caret), text);
                long r = toLong(tok.substr(caret + 1), text);
                if (r < 0) throw ParseError("negative repeat in '" + text + "'");
                out.insert(out.end(), static_cast<std::size_t>(r), v);
            }
        }
    } else {
        for (char c : s) {
            if (c == '|') continue;
            if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad codeword '" + text + "'");
            out.push_back(c - '0');
        }
    }
    return out;
}

Codeword parseCodeword(const std::string& text, const std::vector<long>& moduli) {
    Codeword c = parseCodewordRaw(text);
    if (c.size() != moduli.size())
        throw ParseError("codeword '" + text + "' has " + std::to_string(c.size()) + " entries, expected " + std::to_string(moduli.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ((c[i] % moduli[i]) + moduli[i]) % moduli[i];
    return c;
}

std::string codewordString(const Codeword& c) {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

std::vector<long> parseModuli(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == ' ') c = ',';
    return parseCodewordRaw(s.find(',') == std::string::npos && s.find('^') == std::string::npos ? s + "," : s);
}

GlueCode readGlueCode(std::istream& in) {
    GlueCode c;
    bool haveModuli = false;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        std::vector<long> vals;
        long v;
        while (ss >> v) vals.push_back(v);
        if (!ss.eof()) throw ParseError("bad number in '" + line + "'");
        if (key == "MODULI") {
            c.moduli = vals;
            haveModuli = true;
        } else if (key == "GEN") {
            if (!haveModuli) throw ParseError("GEN before MODULI");
            if (vals.size() != c.moduli.size()) throw ParseError("generator length mismatch");
            for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = ((vals[i] % c.moduli[i]) + c.moduli[i]) % c.moduli[i];
            c.generators.push_back(vals);
        } else {
            throw ParseError("unknown keyword '" + key + "'");
        }
    }
    if (!haveModuli) throw ParseError("missing MODULI line");
    return c;
}

void writeGlueCode(std::ostream& out, const GlueCode& c) {
    out << "MODULI";
    for (long k : c.moduli) out << ' ' << k;
    out << '\n';
    for (const auto& g : c.generators) {
        out << "GEN";
        for (long x : g) out << ' ' << x;
        out << '\n';
    }
}

RationalLattice rootLatticeA(const std::vector<long>& moduli) {
    auto off = offsets(moduli);
    const std::size_t n = off.back();
    QMatrix g(n, n);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        QMatrix c = cartanA(static_cast<std::size_t>(moduli[i] - 1));
        for (std::size_t a = 0; a < c.rows(); ++a)
            for (std::size_t b = 0; b < c.rows(); ++b) g(off[i] + a, off[i] + b) = c(a, b);
    }
    if (n == 0) return RationalLattice::zero(0);
    return RationalLattice(QMatrix::identity(n), g);
}

QVec glueVector(const std::vector<long>& moduli, const Codeword& x) {
    if (x.size() != moduli.size()) throw Error("codeword length mismatch");
    auto off = offsets(moduli);
    QVec v(off.back());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        long k = moduli[i];
        long xi = ((x[i] % k) + k) % k;
        if (xi == 0) continue;
        for (long a = 1; a < k; ++a) v[off[i] + static_cast<std::size_t>(a - 1)] = inverseCartanA(k, xi, a);
    }
    return v;
}

QVec chiDelta(const std::vector<long>& moduli) {
    auto off = offsets(moduli);
    QVec v(off.back());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        long k = moduli[i];
        for (long a = 1; a < k; ++a) {
            Rat s = 0;
            for (long j = 1; j < k; ++j) s += inverseCartanA(k, j, a);
            v[off[i] + static_cast<std::size_t>(a - 1)] = s / k;
        }
    }
    return v;
}

RationalLattice constructionA(const GlueCode& c) {
    RationalLattice r = rootLatticeA(c.moduli);
    const std::size_t n = r.rank();
    if (n == 0) return r;
    QMatrix rows(n + c.generators.size(), n);
    for (std::size_t i = 0; i < n; ++i) rows(i, i) = 1;
    for (std::size_t j = 0; j < c.generators.size(); ++j) rows.setRow(n + j, glueVector(c.moduli, c.generators[j]));
    return spannedBy(r, rows);
}

RationalLattice constructionB(const GlueCode& c) {
    RationalLattice a = constructionA(c);
    const std::size_t n = a.rank();
    if (n == 0) return a;
    QVec chi = chiDelta(c.moduli);
    QVec vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = bilinear(a.ambientBasis().row(i), a.ambientGram(), chi);
    Int d = lcmDenominators(vals);
    // x * (d vals) + y * d = 0
    ZMatrix m(n + 1, 1);
    for (std::size_t i = 0; i < n; ++i) m(i, 0) = Rat(vals[i] * d).get_num();
    m(n, 0) = d;
    ZMatrix k = integerKernel(m);
    ZMatrix rows(k.rows(), n);
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) rows(i, j) = k(i, j);
    return sublattice(a, rows);
}

ZMatrix coxeterMatrix(const std::vector<long>& moduli, const Codeword& e) {
    if (e.size() != moduli.size()) throw Error("codeword length mismatch");
    auto off = offsets(moduli);
    const std::size_t n = off.back();
    ZMatrix m = ZMatrix::identity(n);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        const std::size_t r = static_cast<std::size_t>(moduli[i] - 1);
        if (r == 0) continue;
        ZMatrix g(r, r);
        for (std::size_t j = 0; j + 1 < r; ++j) g(j + 1, j) = 1;  // alpha_j -> alpha_{j+1}
        for (std::size_t a = 0; a < r; ++a) g(a, r - 1) = -1;     // alpha_{k-1} -> alpha_0
        long ei = ((e[i] % moduli[i]) + moduli[i]) % moduli[i];
        ZMatrix p = power(g, ei);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) m(off[i] + a, off[i] + b) = p(a, b);
    }
    return m;
}

Isometry coxeterIsometry(const RationalLattice& l, const std::vector<long>& moduli, const Codeword& e) {
    return ambientIsometry(l, toQ(coxeterMatrix(moduli, e)));
}

const std::vector<std::string>& coinvariantLabels() {
    static const std::vector<std::string> labels{"2A", "2C", "3B", "4C", "5B", "6E", "6G", "7B", "8E", "10F"};
    return labels;
}

CoinvariantModel coinvariantModel(const std::string& label) {
    struct Row {
        const char* label;
        const char* moduli;
        const char* c;
        const char* disc;
    };
    static const Row rows[] = {
        {"2A", "2^8", "11111111", "2^8"},
        {"2C", "2^12", "1^12", "2^12"},
        {"3B", "3^6", "111111", "3^6"},
        {"5B", "5^4", "1234", "5^4"},
        {"7B", "7^3", "124", "7^3"},
        {"4C", "4^4,2^2", "1111|11", "2^2 4^4"},
        {"6E", "6^2,3^2,2^2", "11|11|11", "2^4 3^4"},
        {"6G", "6^3,2^3", "111|111", "2^6 3^3"},
        {"8E", "8^2,4,2", "13|1|1", "2 4 8^2"},
        {"10F", "10^2,2^2", "13|11", "2^4 5^2"},
    };
    for (const auto& r : rows) {
        if (label != r.label) continue;
        CoinvariantModel m;
        m.label = label;
        m.code.moduli = parseModuli(r.moduli);
        m.code.generators = {parseCodeword(r.c, m.code.moduli)};
        m.discriminant = r.disc;
        m.lattice = constructionB(m.code);
        m.tau = coxeterIsometry(m.lattice, m.code.moduli, m.code.generators[0]);
        std::string disc = discriminantGroup(m.lattice).primaryStr();
        if (disc != m.discriminant) throw DataError(label + ": discriminant group " + disc + ", expected " + m.discriminant);
        if (fixedSublattice(m.lattice, m.tau).rank() != 0) throw DataError(label + ": isometry has fixed points");
        long n = 1;
        for (long k : m.code.moduli) n = std::lcm(n, k);
        if (m.tau.order != n) throw DataError(label + ": isometry order differs from lcm of moduli");
        // (1 - tau) L* = L
        RationalLattice dual = dualLattice(m.lattice);
        QMatrix img = dual.ambientBasis() * (QMatrix::identity(dual.ambientBasis().cols()) -
                                             toQ(coxeterMatrix(m.code.moduli, m.code.generators[0])).transpose());
        if (!sameLattice(RationalLattice(img, m.lattice.ambientGram()), m.lattice))
            throw DataError(label + ": (1 - tau) of the dual lattice is not the lattice");
        return m;
    }
    throw UnknownName("unknown class '" + label + "'");
}

}  // namespace dh
