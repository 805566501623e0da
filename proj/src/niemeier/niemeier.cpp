#include "deephole/niemeier.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>

#ifndef DEEPHOLE_DATA_DIR
#define DEEPHOLE_DATA_DIR "data"
#endif

namespace dh {

std::string dataDirectory() {
    if (const char* env = std::getenv("DEEPHOLE_DATA"); env && *env) return env;
    return DEEPHOLE_DATA_DIR;
}

// ---- binary codes ----

std::vector<std::vector<int>> BinaryCode::codewords() const {
    const std::size_t k = generators.size();
    if (k > 24) throw Error("code too large to enumerate");
    std::vector<std::vector<int>> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
        std::vector<int> w(length, 0);
        for (std::size_t i = 0; i < k; ++i)
            if (m >> i & 1)
                for (std::size_t j = 0; j < length; ++j) w[j] ^= generators[i][j];
        out.push_back(std::move(w));
    }
    return out;
}

std::vector<long> BinaryCode::weightDistribution() const {
    std::vector<long> d(length + 1, 0);
    for (const auto& w : codewords()) ++d[static_cast<std::size_t>(std::count(w.begin(), w.end(), 1))];
    return d;
}

BinaryCode readBinaryCode(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    BinaryCode c;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::vector<int> row;
        for (char ch : line) {
            if (ch == '0' || ch == '1') row.push_back(ch - '0');
            else if (!std::isspace(static_cast<unsigned char>(ch))) throw ParseError("bad character in " + path);
        }
        if (row.empty()) continue;
        if (c.length == 0) c.length = row.size();
        if (row.size() != c.length) throw ParseError("ragged generator matrix in " + path);
        c.generators.push_back(std::move(row));
    }
    return c;
}

const BinaryCode& golayCode() {
    static const BinaryCode code = [] {
        BinaryCode c = readBinaryCode(dataDirectory() + "/golay.gen");
        if (c.length != 24 || c.generators.size() != 12) throw DataError("golay.gen must have 12 rows of length 24");
        std::vector<long> want(25, 0);
        want[0] = want[24] = 1;
        want[8] = want[16] = 759;
        want[12] = 2576;
        if (c.weightDistribution() != want) throw DataError("golay.gen does not generate the Golay code");
        return c;
    }();
    return code;
}

// ---- Leech lattice ----

const RationalLattice& leechLattice() {
    static const RationalLattice leech = [] {
        const BinaryCode& g = golayCode();
        ZMatrix rows(12 + 1 + 23 + 1, 24);
        std::size_t r = 0;
        for (const auto& c : g.generators) {
            for (std::size_t j = 0; j < 24; ++j) rows(r, j) = 2 * c[j];
            ++r;
        }
        rows(r, 0) = -3;
        for (std::size_t j = 1; j < 24; ++j) rows(r, j) = 1;
        ++r;
        for (std::size_t j = 1; j < 24; ++j, ++r) rows(r, 0) = rows(r, j) = 4;
        rows(r, 0) = 8;
        ZMatrix basis = rowLatticeBasis(rows);
        QMatrix gram(24, 24);
        for (std::size_t i = 0; i < 24; ++i) gram(i, i) = Rat(1, 8);
        RationalLattice l(toQ(basis), gram);
        if (l.rank() != 24 || l.det() != 1 || !l.isEven()) throw DataError("Leech construction is not even unimodular");
        if (!shortVectors(l, 2).empty()) throw DataError("Leech construction has roots");
        return l;
    }();
    return leech;
}

// ---- Niemeier lattices ----

const std::vector<std::string>& niemeierNames() {
    static const std::vector<std::string> names{
        "D24",   "D16E8",   "E8^3", "A24",     "D12^2", "A17E7", "D10E7^2", "A15D9",
        "D8^3",  "A12^2",   "A11D7E6", "E6^4", "A9^2D6", "D6^4", "A8^3",   "A7^2D5^2",
        "A6^4",  "A5^4D4",  "D4^6", "A4^6",    "A3^8",  "A2^12", "A1^24"};
    return names;
}

std::vector<std::pair<char, int>> parseRootType(const std::string& name) {
    static const std::regex part(R"(([ADE])_?\{?(\d+)\}?(\^\{?(\d+)\}?)?)");
    std::vector<std::pair<char, int>> out;
    std::smatch m;
    std::size_t consumed = 0;
    auto begin = name.cbegin();
    while (std::regex_search(begin, name.cend(), m, part, std::regex_constants::match_continuous)) {
        int rank = std::stoi(m[2].str());
        int count = m[4].matched ? std::stoi(m[4].str()) : 1;
        for (int i = 0; i < count; ++i) out.emplace_back(m[1].str()[0], rank);
        consumed += static_cast<std::size_t>(m.length(0));
        begin = m[0].second;
    }
    if (consumed != name.size() || out.empty()) throw UnknownName("cannot parse root type '" + name + "'");
    return out;
}

QVec glueWeight(char type, int rank, int cls) {
    QVec zero(static_cast<std::size_t>(rank));
    if (cls == 0) return zero;
    int node = -1;  // 1-based Bourbaki index of the fundamental weight
    switch (type) {
    case 'A':
        if (cls >= 1 && cls <= rank) node = cls;
        break;
    case 'D':
        if (cls == 1) node = rank;
        if (cls == 2) node = 1;
        if (cls == 3) node = rank - 1;
        break;
    case 'E':
        if (rank == 6 && cls == 1) node = 1;
        if (rank == 6 && cls == 2) node = 6;
        if (rank == 7 && cls == 1) node = 7;
        break;
    default:
        break;
    }
    if (node < 0) throw DataError("no glue class " + std::to_string(cls) + " for " + type + std::to_string(rank));
    QMatrix inv = inverse(baseGram(type, rank));
    return inv.row(static_cast<std::size_t>(node - 1));
}

NiemeierSpec niemeierSpec(const std::string& name) {
    const auto& names = niemeierNames();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UnknownName("unknown Niemeier lattice '" + name + "'");
    std::string path = dataDirectory() + "/niemeier/" + name + ".glue";
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    NiemeierSpec s;
    s.name = name;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (key == "COMPONENTS") {
            std::string t;
            while (ss >> t) {
                auto p = parseRootType(t);
                if (p.size() != 1) throw ParseError("bad component '" + t + "' in " + path);
                s.components.push_back(p[0]);
            }
        } else if (key == "GEN") {
            std::vector<int> g;
            int x;
            while (ss >> x) g.push_back(x);
            if (!ss.eof() || g.size() != s.components.size()) throw ParseError("bad GEN line in " + path);
            s.glue.push_back(std::move(g));
        } else {
            throw ParseError("unknown keyword '" + key + "' in " + path);
        }
    }
    auto want = parseRootType(name);
    auto have = s.components;
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) throw DataError(path + " does not match the name " + name);
    for (const auto& [t, r] : s.components) {
        long h = coxeterData(t, r).h;
        if (s.h != 0 && s.h != h) throw DataError(path + ": components have different Coxeter numbers");
        s.h = h;
    }
    return s;
}

std::size_t componentOffset(const NiemeierSpec& spec, std::size_t i) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) off += static_cast<std::size_t>(spec.components[k].second);
    return off;
}

namespace {

RationalLattice buildNiemeier(const std::string& name) {
    NiemeierSpec s = niemeierSpec(name);
    std::size_t dim = componentOffset(s, s.components.size());
    QMatrix gram(dim, dim);
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        QMatrix c = baseGram(s.components[i].first, s.components[i].second);
        std::size_t off = componentOffset(s, i);
        for (std::size_t a = 0; a < c.rows(); ++a)
            for (std::size_t b = 0; b < c.rows(); ++b) gram(off + a, off + b) = c(a, b);
    }
    RationalLattice r(QMatrix::identity(dim), gram);
    QMatrix rows(dim + s.glue.size(), dim);
    for (std::size_t i = 0; i < dim; ++i) rows(i, i) = 1;
    for (std::size_t g = 0; g < s.glue.size(); ++g)
        for (std::size_t i = 0; i < s.components.size(); ++i) {
            QVec w = glueWeight(s.components[i].first, s.components[i].second, s.glue[g][i]);
            std::size_t off = componentOffset(s, i);
            for (std::size_t a = 0; a < w.size(); ++a) rows(dim + g, off + a) = w[a];
        }
    RationalLattice n = spannedBy(r, rows);
    if (n.rank() != 24 || n.det() != 1 || !n.isEven()) throw DataError(name + ": glue does not give an even unimodular lattice");
    std::size_t roots = 2 * shortVectors(n, 2).size();
    if (static_cast<long>(roots) != 24 * s.h) throw DataError(name + ": glue creates extra roots");
    return n;
}

}  // namespace

const RationalLattice& niemeierLattice(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<RationalLattice>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(name);
        if (it != cache.end()) return *it->second;
    }
    auto built = std::make_unique<RationalLattice>(buildNiemeier(name));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(name, std::move(built));
    return *it->second;
}

// ---- deep holes ----

DeepHole holeFromNiemeier(const RationalLattice& n, const QVec* beta, const QVec* rho) {
    if (n.rank() != 24 || n.det() != 1 || !n.isEven()) throw ConstructionError("not a Niemeier lattice");
    std::vector<QVec> roots;
    for (const auto& v : shortVectors(n, 2)) roots.push_back(toQ(v.coords));
    RootDatum datum = decomposeNorm2Roots(roots, n.gram());
    if (datum.components.empty()) throw ConstructionError("lattice has no roots");
    if (datum.totalRank() != 24) throw ConstructionError("root system does not have full rank");
    DeepHole d;
    d.h = coxeterNumberOfNiemeier(datum);
    d.holeType = datum.str();
    d.rho = weylVector(datum, n.gram());
    if (rho) {
        if (rho->size() != 24 || n.norm(*rho) != n.norm(d.rho)) throw ConstructionError("not a Weyl vector");
        d.rho = *rho;
    }
    for (const auto& x : d.rho)
        if (!isInteger(x)) throw ConstructionError("Weyl vector is not in the lattice");

    QVec prod = rowTimes(d.rho, n.gram());
    ZMatrix cond(25, 1);
    for (std::size_t i = 0; i < 24; ++i) cond(i, 0) = prod[i].get_num();
    cond(24, 0) = d.h;
    ZMatrix k = integerKernel(cond);
    ZMatrix rows(k.rows(), 24);
    for (std::size_t i = 0; i < k.rows(); ++i)
        for (std::size_t j = 0; j < 24; ++j) rows(i, j) = k(i, j);
    d.kernel = sublattice(n, rows);

    // N is one overlattice of M; for composite h there are intermediate ones with roots, and the
    // rootless one is unique
    auto overs = evenUnimodularOverlattices(d.kernel);
    bool haveN = false;
    std::vector<RationalLattice> rootless;
    for (auto& o : overs) {
        if (sameLattice(o, n)) haveN = true;
        else if (shortVectors(o, 2).empty()) rootless.push_back(std::move(o));
    }
    if (!haveN) throw ConstructionError("the lattice itself is not among the overlattices");
    if (rootless.size() != 1)
        throw ConstructionError("expected one rootless overlattice, found " + std::to_string(rootless.size()));
    d.leech = std::move(rootless[0]);

    if (beta) {
        if (beta->size() != 24 || n.norm(*beta) != 2) throw ConstructionError("hole root must be a norm 2 vector");
        d.betaN = *beta;
    } else {
        d.betaN = datum.components[0].simple[0];
    }
    d.norm = n.norm(d.betaN);
    auto b = d.leech.fromAmbient(n.toAmbient(d.betaN));
    if (!b) throw ConstructionError("hole root is outside the neighbor's span");
    d.beta = *b;
    return d;
}

namespace {

std::size_t rootCountOf(char t, int r) { return static_cast<std::size_t>(coxeterData(t, r).dim - r); }

}  // namespace

std::vector<AffineDiagram> holeDiagram(const RationalLattice& l, const QVec& beta) {
    std::vector<QVec> nodes;
    for (const auto& c : closeVectors(l, beta, 2)) {
        if (c.distSq != 2) continue;
        QVec v = toQ(c.coords);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= beta[i];
        nodes.push_back(std::move(v));
    }
    const std::size_t m = nodes.size();
    QMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = l.inner(nodes[i], nodes[j]);
    // connected components
    std::vector<int> comp(m, -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < m; ++s) {
        if (comp[s] >= 0) continue;
        comps.emplace_back();
        std::vector<std::size_t> stack{s};
        comp[s] = static_cast<int>(comps.size() - 1);
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (std::size_t w = 0; w < m; ++w)
                if (w != v && g(v, w) != 0 && comp[w] < 0) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }

    std::vector<AffineDiagram> out;
    for (const auto& c : comps) {
        const std::size_t k = c.size();
        QMatrix cg(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) cg(a, b) = g(c[a], c[b]);
        AffineDiagram d;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (a != b && cg(a, b) != 0 && cg(a, b) != -1 && cg(a, b) != -2)
                    throw RecognitionError("hole vectors do not form a Coxeter diagram");
        if (determinant(cg) != 0) {
            // finite component: reported without marks
            auto parts = recognizeBase(cg);
            d.type = parts.at(0).first;
            d.rank = parts.at(0).second;
            for (auto i : c) d.nodes.push_back(nodes[i]);
            d.gram = cg;
            out.push_back(std::move(d));
            continue;
        }
        // special node: its deletion leaves the irreducible system with the most roots
        std::size_t best = k;
        std::pair<char, int> bestType{'A', 0};
        std::size_t bestRoots = 0;
        for (std::size_t del = 0; del < k; ++del) {
            std::vector<std::size_t> keep;
            for (std::size_t a = 0; a < k; ++a)
                if (a != del) keep.push_back(a);
            QMatrix sub(keep.size(), keep.size());
            for (std::size_t a = 0; a < keep.size(); ++a)
                for (std::size_t b = 0; b < keep.size(); ++b) sub(a, b) = cg(keep[a], keep[b]);
            if (keep.empty()) continue;
            std::vector<std::pair<char, int>> parts;
            try {
                parts = recognizeBase(sub);
            } catch (const RecognitionError&) {
                continue;
            }
            if (parts.size() != 1 || parts[0].second != static_cast<int>(k - 1)) continue;
            std::size_t rc = rootCountOf(parts[0].first, parts[0].second);
            if (rc > bestRoots) {
                bestRoots = rc;
                best = del;
                bestType = parts[0];
            }
        }
        if (best == k) throw RecognitionError("hole component is not an affine diagram");
        std::vector<std::size_t> keep;
        for (std::size_t a = 0; a < k; ++a)
            if (a != best) keep.push_back(a);
        QMatrix sub(keep.size(), keep.size());
        for (std::size_t a = 0; a < keep.size(); ++a)
            for (std::size_t b = 0; b < keep.size(); ++b) sub(a, b) = cg(keep[a], keep[b]);
        auto order = bourbakiOrder(sub, bestType.first, bestType.second);
        std::vector<std::size_t> idx{c[best]};
        for (auto o : order) idx.push_back(c[keep[o]]);
        d.type = bestType.first;
        d.rank = bestType.second;
        for (auto i : idx) d.nodes.push_back(nodes[i]);
        d.marks.push_back(1);
        for (long mk : coxeterData(d.type, d.rank).marks) d.marks.push_back(mk);
        d.gram = QMatrix(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) d.gram(a, b) = g(idx[a], idx[b]);
        QVec rel(beta.size());
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t j = 0; j < rel.size(); ++j) rel[j] += Rat(d.marks[a]) * d.nodes[a][j];
        for (const auto& x : rel)
            if (x != 0) throw RecognitionError("affine relation fails on a hole component");
        out.push_back(std::move(d));
    }
    return out;
}

std::string holeDiagramType(const std::vector<AffineDiagram>& d) {
    std::vector<std::pair<char, int>> parts;
    for (const auto& c : d) parts.emplace_back(c.type, c.rank);
    return typeString(parts);
}

DeepHoleCertificate verifyDeepHole(const RationalLattice& l, const QVec& beta) {
    DeepHoleCertificate cert;
    // the nearest lattice point must be at squared distance exactly 2
    auto close = closeVectors(l, beta, 2);
    cert.minDistance = 2;
    for (const auto& c : close) cert.minDistance = std::min(cert.minDistance, c.distSq);
    if (close.empty()) {
        cert.reason = "no lattice point within squared distance 2";
        return cert;
    }
    if (cert.minDistance < 2) {
        cert.reason = "a lattice point is closer than squared distance 2";
        return cert;
    }
    cert.components = holeDiagram(l, beta);
    int rank = 0;
    for (const auto& c : cert.components) {
        if (c.marks.empty()) {
            cert.reason = "hole diagram has a finite component";
            return cert;
        }
        rank += c.rank;
        long s = 0;
        for (long mk : c.marks) s += mk;
        cert.multipliers.push_back(s);
    }
    if (rank != static_cast<int>(l.rank())) {
        cert.reason = "hole diagram has rank " + std::to_string(rank);
        return cert;
    }
    cert.deep = true;
    return cert;
}

// ---- conformal weights and lifts ----

Rat twistedConformalWeight(const FrameShape& fs) {
    Rat s = 0;
    for (const auto& [n, a] : fs.exponents) s += frac(Int(a), Int(n));
    return Rat(1) - s / 24;
}

long standardLiftOrder(const FrameShape& fs) {
    long n = fs.order();
    if (n % 2 != 0) return n;
    return fs.power(n / 2) == FrameShape::parse("2^12") ? 2 * n : n;
}

long standardLiftOrder(const RationalLattice& l, const Isometry& tau) {
    (void)l;
    long n = tau.order;
    if (n % 2 != 0) return n;
    return frameShape(power(tau.matrix, n / 2)) == FrameShape::parse("2^12") ? 2 * n : n;
}

Int twistedModuleDim(const RationalLattice& l, const Isometry& tau) {
    RationalLattice co = coinvariantSublattice(l, tau);
    if (co.rank() == 0) return 1;
    ZMatrix img = (ZMatrix::identity(l.rank()) - tau.matrix).transpose();
    RationalLattice sub = sublattice(l, img);
    Int idx = quotientIndex(sub, co);
    Int r;
    if (!isSquare(idx, &r)) throw Error("index of (1 - tau)L in the coinvariant lattice is not a square");
    return r;
}

// ---- conjugacy classes ----

const std::vector<LeechClass>& leechClasses() {
    static const std::vector<LeechClass> table = [] {
        struct Row {
            const char* label;
            const char* frame;
            long dim;
            const char* phiDefect;  // phi = 1 - defect
            bool p0;
        };
        static const Row rows[] = {
            {"2A", "1^8 2^8", 16, "1/2", true},
            {"-2A", "2^16/1^8", 8, "0", false},
            {"2C", "2^12", 12, "1/4", true},
            {"3B", "1^6 3^6", 12, "1/3", true},
            {"3C", "3^9/1^3", 6, "0", false},
            {"3D", "3^8", 8, "1/9", false},
            {"-4A", "1^8 4^8/2^8", 8, "1/4", false},
            {"4C", "1^4 2^2 4^4", 10, "1/4", true},
            {"-4C", "2^6 4^4/1^4", 6, "0", false},
            {"4D", "2^4 4^4", 8, "1/8", false},
            {"4F", "4^6", 6, "1/16", false},
            {"5B", "1^4 5^4", 8, "1/5", true},
            {"5C", "5^5/1^1", 4, "0", false},
            {"6C", "1^4 2^1 6^5/3^4", 6, "1/6", false},
            {"-6C", "2^5 3^4 6^1/1^4", 6, "0", false},
            {"-6D", "1^5 3^1 6^4/2^4", 6, "1/6", false},
            {"6E", "1^2 2^2 3^2 6^2", 8, "1/6", true},
            {"-6E", "2^4 6^4/1^2 3^2", 4, "0", false},
            {"6F", "3^3 6^3/1^1 2^1", 4, "0", false},
            {"6G", "2^3 6^3", 6, "1/12", true},
            {"6I", "6^4", 4, "1/36", false},
            {"7B", "1^3 7^3", 6, "1/7", true},
            {"8E", "1^2 2^1 4^1 8^2", 6, "1/8", true},
            {"10D", "1^2 2^1 10^3/5^2", 4, "1/10", false},
            {"-10D", "2^3 5^2 10^1/1^2", 4, "0", false},
            {"-10E", "1^3 5^1 10^2/2^2", 4, "1/10", false},
            {"10F", "2^2 10^2", 4, "1/20", true},
            {"-12E", "1^2 3^2 4^2 12^2/2^2 6^2", 4, "1/12", false},
            {"-12H", "1^1 2^2 3^1 12^2/4^2", 4, "1/12", false},
            {"12I", "1^2 4^1 6^2 12^1/3^2", 4, "1/12", false},
            {"-12I", "2^2 3^2 4^1 12^1/1^2", 4, "0", false},
            {"12J", "2^1 4^1 6^1 12^1", 4, "1/24", false},
            {"14B", "1^1 2^1 7^1 14^1", 4, "1/14", false},
            {"15D", "1^1 3^1 5^1 15^1", 4, "1/15", false},
        };
        std::vector<LeechClass> out;
        for (const auto& r : rows)
            out.push_back({r.label, FrameShape::parse(r.frame), r.dim, Rat(1) - parseRational(r.phiDefect), r.p0});
        return out;
    }();
    return table;
}

const LeechClass& leechClass(const std::string& label) {
    for (const auto& c : leechClasses())
        if (c.label == label) return c;
    throw UnknownName("unknown conjugacy class '" + label + "'");
}

std::string isometryFileStem(const std::string& label) {
    if (!label.empty() && label[0] == '-') return "minus" + label.substr(1);
    return label;
}

bool hasIsometryRepresentative(const std::string& label) {
    std::ifstream in(dataDirectory() + "/leech_isometries/" + isometryFileStem(label) + ".isom");
    return static_cast<bool>(in);
}

Isometry isometryRepresentative(const std::string& label) {
    const LeechClass& cls = leechClass(label);
    static std::mutex mu;
    static std::map<std::string, Isometry> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(label);
        if (it != cache.end()) return it->second;
    }
    std::string path = dataDirectory() + "/leech_isometries/" + isometryFileStem(label) + ".isom";
    ZMatrix m = readIsometryFile(path);
    const RationalLattice& leech = leechLattice();
    Isometry t;
    try {
        t = makeIsometry(leech, m);
    } catch (const NotAnIsometry& e) {
        throw DataError(path + ": " + e.what());
    }
    if (t.frameShape != cls.frameShape)
        throw DataError(path + ": frame shape " + t.frameShape.str() + ", expected " + cls.frameShape.str());
    if (static_cast<long>(fixedSublattice(leech, t).rank()) != cls.fixedRank) throw DataError(path + ": wrong fixed rank");
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(label, t);
    return t;
}

}  // namespace dh
