#include "deephole/rootsys.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace dh {

// ---- Coxeter data ----

CoxeterData coxeterData(char type, int n) {
    CoxeterData c;
    c.type = type;
    c.rank = n;
    auto bad = [&] { return RecognitionError(std::string("no root system ") + type + "_" + std::to_string(n)); };
    switch (type) {
        case 'A':
            if (n < 1) throw bad();
            c.h = c.hDual = n + 1;
            c.dim = n * (n + 2);
            c.marks.assign(static_cast<std::size_t>(n), 1);
            break;
        case 'B':
            if (n < 2) throw bad();
            c.h = 2 * n;
            c.hDual = 2 * n - 1;
            c.lace = 2;
            c.dim = n * (2 * n + 1);
            c.marks.assign(static_cast<std::size_t>(n), 2);
            c.marks[0] = 1;
            break;
        case 'C':
            if (n < 2) throw bad();
            c.h = 2 * n;
            c.hDual = n + 1;
            c.lace = 2;
            c.dim = n * (2 * n + 1);
            c.marks.assign(static_cast<std::size_t>(n), 2);
            c.marks.back() = 1;
            break;
        case 'D':
            if (n < 4) throw bad();
            c.h = c.hDual = 2 * n - 2;
            c.dim = n * (2 * n - 1);
            c.marks.assign(static_cast<std::size_t>(n), 2);
            c.marks[0] = c.marks[static_cast<std::size_t>(n - 2)] = c.marks[static_cast<std::size_t>(n - 1)] = 1;
            break;
        case 'E':
            if (n == 6) {
                c.h = c.hDual = 12;
                c.dim = 78;
                c.marks = {1, 2, 2, 3, 2, 1};
            } else if (n == 7) {
                c.h = c.hDual = 18;
                c.dim = 133;
                c.marks = {2, 2, 3, 4, 3, 2, 1};
            } else if (n == 8) {
                c.h = c.hDual = 30;
                c.dim = 248;
                c.marks = {2, 3, 4, 6, 5, 4, 3, 2};
            } else {
                throw bad();
            }
            break;
        case 'F':
            if (n != 4) throw bad();
            c.h = 12;
            c.hDual = 9;
            c.lace = 2;
            c.dim = 52;
            c.marks = {2, 3, 4, 2};
            break;
        case 'G':
            if (n != 2) throw bad();
            c.h = 6;
            c.hDual = 4;
            c.lace = 3;
            c.dim = 14;
            c.marks = {3, 2};
            break;
        default:
            throw bad();
    }
    return c;
}

QMatrix baseGram(char type, int n, const Rat& scale) {
    coxeterData(type, n);
    const std::size_t r = static_cast<std::size_t>(n);
    std::vector<Rat> len(r, 2 * scale);
    std::vector<std::tuple<std::size_t, std::size_t, int>> edges;  // 0-based, bond multiplicity
    auto path = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i + 1 < to; ++i) edges.emplace_back(i, i + 1, 1);
    };
    switch (type) {
        case 'A':
            path(0, r);
            break;
        case 'B':
            path(0, r - 1);
            edges.emplace_back(r - 2, r - 1, 2);
            len[r - 1] = scale;
            break;
        case 'C':
            path(0, r - 1);
            edges.emplace_back(r - 2, r - 1, 2);
            len[r - 1] = 4 * scale;
            break;
        case 'D':
            path(0, r - 1);
            edges.emplace_back(r - 3, r - 1, 1);
            break;
        case 'E':
            edges.emplace_back(0, 2, 1);
            edges.emplace_back(1, 3, 1);
            path(2, r);
            break;
        case 'F':
            len = {4 * scale, 4 * scale, 2 * scale, 2 * scale};
            edges = {{0, 1, 1}, {1, 2, 2}, {2, 3, 1}};
            break;
        case 'G':
            len = {2 * scale, 6 * scale};
            edges = {{0, 1, 3}};
            break;
    }
    QMatrix g(r, r);
    for (std::size_t i = 0; i < r; ++i) g(i, i) = len[i];
    for (auto [i, j, b] : edges) {
        Rat s = std::min(len[i], len[j]);
        Rat v = b == 1 ? Rat(-s / 2) : b == 2 ? Rat(-s) : Rat(-3 * s / 2);
        g(i, j) = g(j, i) = v;
    }
    return g;
}

// ---- names ----

namespace {

std::string scalePrefix(const Rat& scale) {
    if (scale == 1) return "";
    if (scale.get_den() == 1) {
        Int m;
        if (isSquare(scale.get_num(), &m)) return m.get_str();
        return "√" + scale.get_num().get_str();
    }
    return "√(" + scale.get_str() + ")";
}

bool simplyLaced(char t) { return t == 'A' || t == 'D' || t == 'E'; }

struct GroupKey {
    char type;
    int rank;
    Rat scale;
    bool operator<(const GroupKey& o) const {
        if (type != o.type) return type < o.type;
        if (rank != o.rank) return rank > o.rank;
        return scale < o.scale;
    }
};

}  // namespace

std::string RootComponent::name() const {
    std::string base = std::string(1, type) + "_" + std::to_string(rank);
    return simplyLaced(type) ? scalePrefix(scale) + base : base;
}

int RootDatum::totalRank() const {
    int r = 0;
    for (const auto& c : components) r += c.rank;
    return r;
}

std::size_t RootDatum::rootCount() const {
    std::size_t n = 0;
    for (const auto& c : components) n += 2 * c.roots.size();
    return n;
}

std::string RootDatum::str() const {
    std::map<GroupKey, int> groups;
    for (const auto& c : components) ++groups[{c.type, c.rank, simplyLaced(c.type) ? c.scale : Rat(1)}];
    std::string s;
    for (const auto& [k, cnt] : groups) {
        RootComponent c;
        c.type = k.type;
        c.rank = k.rank;
        c.scale = k.scale;
        s += c.name();
        if (cnt > 1) s += "^" + std::to_string(cnt);
    }
    return s;
}

std::string typeString(const std::vector<std::pair<char, int>>& parts) {
    std::map<GroupKey, int> groups;
    for (const auto& [t, r] : parts) ++groups[{t, r, Rat(1)}];
    std::string s;
    for (const auto& [k, cnt] : groups) {
        s += std::string(1, k.type) + "_" + std::to_string(k.rank);
        if (cnt > 1) s += "^" + std::to_string(cnt);
    }
    return s;
}

// ---- base recognition ----

std::vector<std::size_t> bourbakiOrder(const QMatrix& sg, char type, int rank, const Rat& scale) {
    const std::size_t n = sg.rows();
    if (static_cast<int>(n) != rank) throw RecognitionError("base has the wrong size");
    QMatrix target = baseGram(type, rank, scale);
    std::vector<std::size_t> assign(n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> match = [&](std::size_t k) {
        if (k == n) return true;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c]) continue;
            bool ok = sg(c, c) == target(k, k);
            for (std::size_t p = 0; p < k && ok; ++p) ok = sg(c, assign[p]) == target(k, p);
            if (!ok) continue;
            used[c] = 1;
            assign[k] = c;
            if (match(k + 1)) return true;
            used[c] = 0;
        }
        return false;
    };
    if (!match(0)) throw RecognitionError(std::string("base does not match the Cartan matrix of ") + type + "_" + std::to_string(rank));
    return assign;
}

std::vector<std::pair<char, int>> recognizeBase(const QMatrix& g) {
    const std::size_t n = g.rows();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comps.emplace_back();
        std::vector<std::size_t> stack{s};
        comp[s] = static_cast<int>(comps.size() - 1);
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            comps.back().push_back(v);
            for (std::size_t w = 0; w < n; ++w)
                if (w != v && g(v, w) != 0 && comp[w] < 0) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    std::vector<std::pair<char, int>> out;
    for (const auto& c : comps) {
        const int r = static_cast<int>(c.size());
        std::set<Rat> lens;
        for (auto i : c) lens.insert(g(i, i));
        std::vector<int> deg(c.size(), 0);
        std::size_t edges = 0;
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (g(c[a], c[b]) != 0) {
                    ++deg[a];
                    ++deg[b];
                    ++edges;
                    Rat cab = 2 * g(c[a], c[b]) / g(c[b], c[b]);
                    Rat cba = 2 * g(c[a], c[b]) / g(c[a], c[a]);
                    if (cab >= 0 || cba >= 0 || !isInteger(cab) || !isInteger(cba) || cab * cba > 3)
                        throw RecognitionError("Gram matrix is not a base of a root system");
                }
        if (edges + 1 != c.size()) throw RecognitionError("diagram is not a tree");
        if (r == 1) {
            out.emplace_back('A', 1);
            continue;
        }
        if (lens.size() == 1) {
            int branch = -1;
            for (std::size_t a = 0; a < c.size(); ++a) {
                if (deg[a] > 3) throw RecognitionError("unsupported diagram");
                if (deg[a] == 3) {
                    if (branch >= 0) throw RecognitionError("unsupported diagram");
                    branch = static_cast<int>(a);
                }
            }
            if (branch < 0) {
                out.emplace_back('A', r);
                continue;
            }
            // arm lengths from the branch node
            std::vector<int> arms;
            for (std::size_t b = 0; b < c.size(); ++b) {
                if (g(c[static_cast<std::size_t>(branch)], c[b]) == 0 || static_cast<int>(b) == branch) continue;
                int len = 1;
                std::size_t prev = static_cast<std::size_t>(branch), cur = b;
                while (true) {
                    std::size_t next = c.size();
                    for (std::size_t x = 0; x < c.size(); ++x)
                        if (x != prev && x != cur && g(c[cur], c[x]) != 0) next = x;
                    if (next == c.size()) break;
                    prev = cur;
                    cur = next;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms[0] == 1 && arms[1] == 1) out.emplace_back('D', r);
            else if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) out.emplace_back('E', r);
            else throw RecognitionError("unsupported diagram");
            continue;
        }
        if (lens.size() != 2) throw RecognitionError("more than two root lengths");
        Rat ratio = *lens.rbegin() / *lens.begin();
        for (int d : deg)
            if (d > 2) throw RecognitionError("branched non-simply-laced diagram");
        if (ratio == 3 && r == 2) {
            out.emplace_back('G', 2);
            continue;
        }
        if (ratio != 2) throw RecognitionError("unsupported length ratio");
        std::size_t shortCount = 0, shortEnd = 0;
        for (std::size_t a = 0; a < c.size(); ++a)
            if (g(c[a], c[a]) == *lens.begin()) {
                ++shortCount;
                if (deg[a] == 1) ++shortEnd;
            }
        if (r == 2) out.emplace_back('C', 2);
        else if (r == 4 && shortCount == 2) out.emplace_back('F', 4);
        else if (shortCount == 1 && shortEnd == 1) out.emplace_back('B', r);
        else if (static_cast<int>(shortCount) == r - 1) out.emplace_back('C', r);
        else throw RecognitionError("unsupported doubly-laced diagram");
    }
    return out;
}

// ---- root sets ----

namespace {

// Integer inner products for integral coordinate vectors.
struct IntForm {
    std::size_t n = 0;
    std::vector<long long> g;  // scaled by factor
    Int factor = 1;
    explicit IntForm(const QMatrix& gram) : n(gram.rows()), g(n * n) {
        ZMatrix z = clearDenominators(gram, &factor);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!z(i, j).fits_slong_p()) throw Error("Gram entry out of range");
                g[i * n + j] = z(i, j).get_si();
            }
    }
    std::vector<long long> apply(const IVec& x) const {
        std::vector<long long> y(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) y[i] += g[i * n + j] * x[j];
        return y;
    }
};

long long dotLL(const IVec& x, const std::vector<long long>& y) {
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

IVec toIVec(const QVec& v) {
    IVec x(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!isInteger(v[i]) || !v[i].get_num().fits_slong_p()) throw RecognitionError("root coordinates must be integral");
        x[i] = v[i].get_num().get_si();
    }
    return x;
}

void positive(IVec& v) {
    for (auto c : v)
        if (c != 0) {
            if (c < 0)
                for (auto& d : v) d = -d;
            return;
        }
}

// Connected components under non-orthogonality.
std::vector<std::vector<std::size_t>> components(const std::vector<IVec>& roots, const IntForm& f) {
    const std::size_t m = roots.size();
    std::vector<std::vector<long long>> gv(m);
    for (std::size_t i = 0; i < m; ++i) gv[i] = f.apply(roots[i]);
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (dotLL(roots[j], gv[i]) != 0) parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [k, v] : groups) out.push_back(std::move(v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QVec> asQ(const std::vector<IVec>& v) {
    std::vector<QVec> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(toQ(x));
    return out;
}

// Simple roots among lexicographically positive roots, then relabelled to match the Bourbaki Gram.
std::vector<QVec> orderedBase(const std::vector<IVec>& pos, const IntForm& f, char type, int rank, const Rat& scale,
                              const QMatrix& gram) {
    std::set<IVec> all(pos.begin(), pos.end());
    std::vector<IVec> simple;
    for (const auto& r : pos) {
        bool decomposable = false;
        for (const auto& s : pos) {
            if (s == r) continue;
            IVec d(r.size());
            for (std::size_t k = 0; k < r.size(); ++k) d[k] = r[k] - s[k];
            if (all.count(d)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.push_back(r);
    }
    if (static_cast<int>(simple.size()) != rank) throw RecognitionError("base has the wrong size");
    const std::size_t n = simple.size();
    QMatrix sg(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto gi = f.apply(simple[i]);
        for (std::size_t j = 0; j < n; ++j) sg(i, j) = frac(Int(static_cast<long>(dotLL(simple[j], gi))), f.factor);
    }
    (void)gram;
    std::vector<std::size_t> assign = bourbakiOrder(sg, type, rank, scale);
    std::vector<QVec> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(toQ(simple[assign[k]]));
    return out;
}

long rankOf(const std::vector<IVec>& v) {
    if (v.empty()) return 0;
    QMatrix m(v.size(), v[0].size());
    for (std::size_t i = 0; i < v.size(); ++i) m.setRow(i, toQ(v[i]));
    return static_cast<long>(rank(m));
}

char simplyLacedType(std::size_t pairs, long n) {
    if (static_cast<long>(pairs) == n * (n + 1) / 2) return 'A';
    if (n >= 4 && static_cast<long>(pairs) == n * (n - 1)) return 'D';
    if ((n == 6 && pairs == 36) || (n == 7 && pairs == 63) || (n == 8 && pairs == 120)) return 'E';
    throw RecognitionError("root count " + std::to_string(pairs) + " does not fit an ADE system of rank " + std::to_string(n));
}

}  // namespace

RootDatum decomposeNorm2Roots(const std::vector<QVec>& vectors, const QMatrix& gram) {
    IntForm f(gram);
    std::set<IVec> uniq;
    for (const auto& v : vectors) {
        IVec x = toIVec(v);
        positive(x);
        uniq.insert(x);
    }
    std::vector<IVec> roots(uniq.begin(), uniq.end());
    for (const auto& r : roots)
        if (frac(Int(static_cast<long>(dotLL(r, f.apply(r)))), f.factor) != 2) throw RecognitionError("vector of norm other than 2");
    RootDatum out;
    for (const auto& idx : components(roots, f)) {
        std::vector<IVec> part;
        for (auto i : idx) part.push_back(roots[i]);
        long n = rankOf(part);
        RootComponent c;
        c.type = simplyLacedType(part.size(), n);
        c.rank = static_cast<int>(n);
        c.scale = 1;
        c.simple = orderedBase(part, f, c.type, c.rank, 1, gram);
        c.roots = asQ(part);
        out.components.push_back(std::move(c));
    }
    return out;
}

RootDatum rootSystemOfEvenLattice(const RationalLattice& k) {
    if (!k.isEven()) throw MalformedLattice("root system needs an even lattice");
    RootDatum out;
    if (k.rank() == 0) return out;
    Int e = discriminantGroup(k).exponent();
    if (!e.fits_slong_p() || e > 10000) throw RecognitionError("discriminant exponent too large");
    const long ex = e.get_si();
    IntForm f(k.gram());
    std::vector<IVec> roots;
    std::vector<long> norms;
    for (const auto& v : shortVectors(k, Rat(2 * ex))) {
        long m = Rat(v.norm / 2).get_num().get_si();
        if (ex % m != 0) continue;
        long long g = 0;
        for (auto c : v.coords) g = std::gcd(g, static_cast<long long>(c < 0 ? -c : c));
        if (g != 1) continue;
        auto gv = f.apply(v.coords);
        bool ok = true;
        for (auto y : gv)
            if (y % m != 0) ok = false;
        if (!ok) continue;
        roots.push_back(v.coords);
        norms.push_back(2 * m);
    }
        for (const auto& idx : components(roots, f)) {
        std::vector<IVec> part;
        std::map<long, std::size_t> count;
        for (auto i : idx) {
            part.push_back(roots[i]);
            ++count[norms[i]];
        }
        long n = rankOf(part);
        RootComponent c;
        c.rank = static_cast<int>(n);
        if (count.size() == 1) {
            c.type = simplyLacedType(part.size(), n);
            c.scale = Rat(count.begin()->first) / 2;
        } else if (count.size() == 2) {
            long sn = count.begin()->first, ln = count.rbegin()->first;
            std::size_t s = count.begin()->second, l = count.rbegin()->second;
            if (ln == 3 * sn && n == 2 && s == 3 && l == 3) {
                c.type = 'G';
                c.scale = Rat(sn) / 2;
            } else if (ln == 2 * sn) {
                const std::size_t nn = static_cast<std::size_t>(n);
                if (n == 2 && s == 2 && l == 2) {
                    c.type = 'C';
                    c.scale = Rat(sn) / 2;
                } else if (n == 4 && s == 12 && l == 12) {
                    c.type = 'F';
                    c.scale = Rat(sn) / 2;
                } else if (s == nn && l == nn * (nn - 1)) {
                    c.type = 'B';
                    c.scale = Rat(sn);
                } else if (s == nn * (nn - 1) && l == nn) {
                    c.type = 'C';
                    c.scale = Rat(sn) / 2;
                } else {
                    throw RecognitionError("unrecognized doubly-laced component");
                }
            } else {
                throw RecognitionError("unsupported root length ratio");
            }
        } else {
            throw RecognitionError("component with more than two root lengths");
        }
        c.simple = orderedBase(part, f, c.type, c.rank, c.scale, k.gram());
        c.roots = asQ(part);
        out.components.push_back(std::move(c));
    }
    return out;
}

std::vector<QVec> simpleRootBasis(const RootComponent& c, const QMatrix& gram) {
    IntForm f(gram);
    std::vector<IVec> pos;
    for (const auto& r : c.roots) {
        IVec x = toIVec(r);
        positive(x);
        pos.push_back(x);
    }
    return orderedBase(pos, f, c.type, c.rank, c.scale, gram);
}

QVec weylVector(const std::vector<QVec>& simple, const QMatrix& gram) {
    const std::size_t n = simple.size();
    if (n == 0) return QVec(gram.rows());
    QMatrix b(n, gram.rows());
    for (std::size_t i = 0; i < n; ++i) b.setRow(i, simple[i]);
    QMatrix c = b * gram * b.transpose();
    if (determinant(c) == 0) throw MalformedLattice("simple roots are linearly dependent");
    QVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = c(i, i) / 2;
    QVec coef = rowTimes(rhs, inverse(c));
    return rowTimes(coef, b);
}

QVec weylVector(const RootDatum& r, const QMatrix& gram) {
    QVec rho(gram.rows());
    for (const auto& c : r.components) {
        QVec p = weylVector(c.simple, gram);
        for (std::size_t i = 0; i < rho.size(); ++i) rho[i] += p[i];
    }
    return rho;
}

AffineDiagram affineDiagram(const RootComponent& c, const QMatrix& gram) {
    CoxeterData cd = coxeterData(c.type, c.rank);
    AffineDiagram d;
    d.type = c.type;
    d.rank = c.rank;
    QVec theta(gram.rows());
    for (std::size_t i = 0; i < c.simple.size(); ++i)
        for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += Rat(cd.marks[i]) * c.simple[i][k];
    for (auto& x : theta) x = -x;
    d.nodes.push_back(theta);
    for (const auto& s : c.simple) d.nodes.push_back(s);
    d.marks.push_back(1);
    for (long m : cd.marks) d.marks.push_back(m);
    const std::size_t n = d.nodes.size();
    d.gram = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d.gram(i, j) = bilinear(d.nodes[i], gram, d.nodes[j]);
    return d;
}

FoldResult foldAffineDiagram(const AffineDiagram& d, const std::vector<int>& perm) {
    const std::size_t n = d.nodes.size();
    if (!simplyLaced(d.type)) throw UnsupportedFolding("folding is only supported for simply-laced diagrams");
    if (perm.size() != n) throw UnsupportedFolding("permutation has the wrong size");
    {
        std::vector<int> s = perm;
        std::sort(s.begin(), s.end());
        for (std::size_t i = 0; i < n; ++i)
            if (s[i] != static_cast<int>(i)) throw UnsupportedFolding("not a permutation of the nodes");
    }
    auto P = [&](std::size_t i) { return static_cast<std::size_t>(perm[i]); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d.gram(P(i), P(j)) != d.gram(i, j)) throw UnsupportedFolding("permutation is not a diagram automorphism");

    // orbits
    std::vector<int> orbitOf(n, -1);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t i = 0; i < n; ++i) {
        if (orbitOf[i] >= 0) continue;
        orbits.emplace_back();
        std::size_t j = i;
        do {
            orbitOf[j] = static_cast<int>(orbits.size() - 1);
            orbits.back().push_back(j);
            j = P(j);
        } while (j != i);
    }

    FoldResult res;
    // quotient diagram: orbit sums, doubled when the orbit contains an edge; the orbit of node 0 is removed
    std::vector<std::size_t> kept;
    std::vector<Rat> weight;
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        if (orbitOf[0] == static_cast<int>(o)) continue;
        bool internal = false;
        for (auto a : orbits[o])
            for (auto b : orbits[o])
                if (a != b && d.gram(a, b) != 0) internal = true;
        kept.push_back(o);
        weight.push_back(internal ? 2 : 1);
    }
    QMatrix q(kept.size(), kept.size());
    for (std::size_t x = 0; x < kept.size(); ++x)
        for (std::size_t y = 0; y < kept.size(); ++y) {
            Rat s = 0;
            for (auto a : orbits[kept[x]])
                for (auto b : orbits[kept[y]]) s += d.gram(a, b);
            q(x, y) = weight[x] * weight[y] * s;
        }
    res.quotient = recognizeBase(q);
    res.quotientType = typeString(res.quotient);

    // fixed simple roots
    std::vector<std::size_t> fixedNodes;
    for (std::size_t i = 1; i < n; ++i)
        if (P(i) == i) fixedNodes.push_back(i);
    QMatrix fg(fixedNodes.size(), fixedNodes.size());
    for (std::size_t x = 0; x < fixedNodes.size(); ++x)
        for (std::size_t y = 0; y < fixedNodes.size(); ++y) fg(x, y) = d.gram(fixedNodes[x], fixedNodes[y]);
    res.fixedSimpleRootType = typeString(recognizeBase(fg));

    // induced isometry on the root lattice, in simple-root coordinates (column j = image of alpha_j)
    const std::size_t r = n - 1;
    ZMatrix m(r, r);
    for (std::size_t j = 1; j < n; ++j) {
        std::size_t img = P(j);
        if (img == 0) {
            for (std::size_t i = 1; i < n; ++i) m(i - 1, j - 1) = -d.marks[i];
        } else {
            m(img - 1, j - 1) = 1;
        }
    }
    QMatrix cartan(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) cartan(i, j) = d.gram(i + 1, j + 1);
    RationalLattice rl(cartan);
    if (!preservesGram(rl, m)) throw UnsupportedFolding("induced map is not an isometry");
    res.frameShape = frameShape(m);
    RationalLattice co = coinvariantSublattice(rl, m);
    std::vector<QVec> coRoots;
    for (const auto& v : shortVectors(co, 2)) coRoots.push_back(co.toAmbient(toQ(v.coords)));
    res.coinvariantRootType = decomposeNorm2Roots(coRoots, cartan).str();
    return res;
}

long coxeterNumberOfNiemeier(const RootDatum& r) {
    if (r.components.empty()) throw MixedCoxeter("no roots");
    long h = -1;
    for (const auto& c : r.components) {
        long hc = coxeterData(c.type, c.rank).h;
        if (h >= 0 && hc != h) throw MixedCoxeter("components have different Coxeter numbers");
        h = hc;
    }
    return h;
}

void writeRootDatum(std::ostream& out, const RootDatum& r, const RationalLattice& l) {
    for (const auto& c : r.components) {
        out << "COMPONENT " << c.type << ' ' << c.rank << " scale " << c.scale.get_str() << '\n';
        for (const auto& v : c.roots) {
            QVec a = l.hasAmbient() ? l.toAmbient(v) : v;
            for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i].get_str();
            out << '\n';
        }
    }
}

}  // namespace dh
