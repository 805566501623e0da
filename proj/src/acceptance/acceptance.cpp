#include "deephole/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "deephole/classify.hpp"
#include "deephole/consab.hpp"
#include "deephole/errors.hpp"
#include "deephole/linalg.hpp"
#include "deephole/niemeier.hpp"

namespace dh {

namespace {

// Collects failures; keeps the first few for the report.
class Failures {
public:
    void add(const std::string& what) {
        std::lock_guard lock(m_);
        if (++count_ <= 3) list_ += (list_.empty() ? "" : "; ") + what;
    }
    bool empty() const { return count_ == 0; }
    std::string str() const { return std::to_string(count_) + " failures: " + list_; }

private:
    std::mutex m_;
    long count_ = 0;
    std::string list_;
};

unsigned threadCount(const AcceptanceOptions& o, std::size_t jobs) {
    unsigned t = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    return std::max(1u, std::min<unsigned>(t, static_cast<unsigned>(jobs)));
}

void parallelFor(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) f(i);
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
}

bool inDual(const RationalLattice& l, const QVec& v) {
    for (std::size_t i = 0; i < l.rank(); ++i)
        if (!isInteger(bilinear(l.ambientBasis().row(i), l.ambientGram(), v))) return false;
    return true;
}

Int intPow(long b, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

// ---- 1: conformal weights and fixed dimensions ----

std::string criterion1(const AcceptanceOptions&) {
    Failures f;
    long n = 0;
    for (const auto& c : leechClasses()) {
        ++n;
        long sum = 0;
        for (const auto& [k, a] : c.frameShape.exponents) sum += a;
        if (twistedConformalWeight(c.frameShape) != c.phi)
            f.add(c.label + " phi " + twistedConformalWeight(c.frameShape).get_str() + " vs " + c.phi.get_str());
        if (sum != c.fixedRank) f.add(c.label + " sum a_n " + std::to_string(sum));
    }
    if (!f.empty()) throw TableRegression(f.str());
    return std::to_string(n) + " frame shapes";
}

// ---- 2: coinvariant lattice models ----

std::string criterion2(const AcceptanceOptions&) {
    Failures f;
    for (const auto& label : coinvariantLabels()) {
        CoinvariantModel m = coinvariantModel(label);
        std::string disc = discriminantGroup(m.lattice).primaryStr();
        if (disc != m.discriminant) f.add(label + " discriminant " + disc);
        // (1 - tau) L* = L: in coordinates (I - T) G^-1 is integral and unimodular
        const std::size_t r = m.lattice.rank();
        QMatrix img = toQ(ZMatrix::identity(r) - m.tau.matrix) * inverse(m.lattice.gram());
        bool integral = true;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) integral = integral && isInteger(img(i, j));
        Rat d = integral ? determinant(img) : Rat(0);
        if (!integral || (d != 1 && d != -1)) f.add(label + " (1-tau)L* != L");
        if (fixedSublattice(m.lattice, m.tau).rank() != 0) f.add(label + " has fixed points");
        long n = 1;
        for (long k : m.code.moduli) n = std::lcm(n, k);
        if (m.tau.order != n) f.add(label + " order " + std::to_string(m.tau.order));
    }
    if (!f.empty()) throw TableRegression(f.str());
    return std::to_string(coinvariantLabels().size()) + " classes";
}

// ---- 3: Leech and Niemeier gate ----

std::string criterion3(const AcceptanceOptions& o) {
    Failures f;
    const RationalLattice& l = leechLattice();
    if (!l.isEven() || l.det() != 1) f.add("Leech not even unimodular");
    if (minimumNorm(l) != 4) f.add("Leech minimum " + minimumNorm(l).get_str());
    auto v = shortVectors(l, 4);
    if (2 * v.size() != 196560) f.add("Leech has " + std::to_string(2 * v.size()) + " norm-4 vectors");
    const auto& names = niemeierNames();
    if (names.size() != 23) f.add(std::to_string(names.size()) + " Niemeier lattices");
    parallelFor(names.size(), threadCount(o, names.size()), [&](std::size_t i) {
        const RationalLattice& n = niemeierLattice(names[i]);
        NiemeierSpec s = niemeierSpec(names[i]);
        if (!n.isEven() || n.det() != 1) f.add(names[i] + " not even unimodular");
        std::size_t roots = 2 * shortVectors(n, 2).size();
        if (static_cast<long>(roots) != 24 * s.h) f.add(names[i] + " has " + std::to_string(roots) + " roots");
    });
    if (!f.empty()) throw TableRegression(f.str());
    return "196560 minimal vectors, 23 lattices";
}

// ---- 4: l-duality of fixed lattices ----

std::string criterion4(const AcceptanceOptions& o) {
    Failures f;
    const auto& labels = coinvariantLabels();
    parallelFor(labels.size(), threadCount(o, labels.size()), [&](std::size_t i) {
        const std::string& label = labels[i];
        const RationalLattice& l = leechLattice();
        Isometry t = isometryRepresentative(label);
        RationalLattice fixed = fixedSublattice(l, t);
        long ell = standardLiftOrder(l, t);
        if (fixed.rank() % 2 != 0 || fixed.det() != Rat(intPow(ell, fixed.rank() / 2)))
            f.add(label + " det " + fixed.det().get_str());
        if (!isIsometric(rescale(dualLattice(fixed), ell), fixed)) f.add(label + " not l-dual");
    });
    if (!f.empty()) throw TableRegression(f.str());
    return std::to_string(labels.size()) + " classes";
}

// ---- 5: deep holes of the 23 Niemeier lattices ----

std::string criterion5(const AcceptanceOptions& o) {
    Failures f;
    const auto& names = niemeierNames();
    parallelFor(names.size(), threadCount(o, names.size()), [&](std::size_t i) {
        const std::string& name = names[i];
        try {
            const RationalLattice& n = niemeierLattice(name);
            DeepHole d = holeFromNiemeier(n);
            if (!d.leech.isEven() || d.leech.det() != 1 || !shortVectors(d.leech, 2).empty())
                f.add(name + ": neighbor is not a rootless even unimodular lattice");
            if (quotientIndex(d.kernel, n) != d.h) f.add(name + ": index is not h");
            auto cert = verifyDeepHole(d.leech, d.beta);
            if (!cert.deep) f.add(name + ": " + cert.reason);
            if (holeDiagramType(cert.components) != d.holeType)
                f.add(name + ": hole diagram " + holeDiagramType(cert.components));
            std::size_t nodes = 0;
            for (const auto& c : cert.components) nodes += c.nodes.size();
            if (nodes != 24 + cert.components.size()) f.add(name + ": " + std::to_string(nodes) + " nodes");
        } catch (const Error& e) {
            f.add(name + ": " + e.what());
        }
    });
    if (!f.empty()) throw TableRegression(f.str());
    return "23 lattices";
}

// ---- 6: classification tables ----

std::string criterion6(const AcceptanceOptions& o) {
    auto rows = reproduceTables(o.threads);
    if (rows.size() != 46) throw TableRegression(std::to_string(rows.size()) + " rows");
    for (const auto& r : rows)
        if (!r.conditions || !r.invariants) throw TableRegression(r.expected.type + ": conditions or invariants");
    return "46 rows";
}

// ---- 7: Construction A/B lemmas ----

std::vector<long> randomModuli(std::mt19937& rng) {
    std::vector<long> m(std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    for (auto& k : m) k = std::uniform_int_distribution<long>(2, 8)(rng);
    return m;
}

Codeword randomWord(std::mt19937& rng, const std::vector<long>& moduli) {
    Codeword x;
    for (long k : moduli) x.push_back(std::uniform_int_distribution<long>(0, k - 1)(rng));
    return x;
}

// <lambda_x, lambda_x> = sum x_i (k_i - x_i) / k_i
Rat weightNorm(const std::vector<long>& moduli, const Codeword& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) s += frac(Int(x[i] * (moduli[i] - x[i])), Int(moduli[i]));
    return s;
}

bool evenCyclicCode(const std::vector<long>& moduli, const Codeword& c) {
    long ord = 1;
    for (std::size_t i = 0; i < c.size(); ++i) ord = std::lcm(ord, moduli[i] / std::gcd(c[i], moduli[i]));
    for (long m = 1; m < ord; ++m) {
        Codeword x = c;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (m * c[i]) % moduli[i];
        if (!isInteger(Rat(weightNorm(moduli, x) / 2))) return false;
    }
    return true;
}

struct LemmaCounts {
    long enorm = 0, indexn = 0, gnc = 0, fpf = 0;
};

void checkLemmas(const std::vector<long>& mod, const GlueCode& code, const Codeword& x, const Codeword& e,
                 bool codeIsEven, const std::string& tag, Failures& f, LemmaCounts& n) {
    RationalLattice r = rootLatticeA(mod);
    QVec chi = chiDelta(mod);
    long lcm = 1;
    for (long k : mod) lcm = std::lcm(lcm, k);

    QVec lx = glueVector(mod, x);
    bool evenNorm = isInteger(Rat(bilinear(lx, r.gram(), lx) / 2));
    if (evenNorm != isInteger(bilinear(lx, r.gram(), chi))) f.add(tag + " enorm");
    ++n.enorm;

    RationalLattice la = constructionA(code), lb = constructionB(code);
    QVec nchi = chi;
    for (auto& v : nchi) v *= lcm;
    if ((quotientIndex(lb, la) == lcm) != inDual(la, nchi)) f.add(tag + " indexn");
    ++n.indexn;

    if (codeIsEven) {
        bool preserved = true;
        try {
            coxeterIsometry(lb, mod, e);
        } catch (const NotAnIsometry&) {
            preserved = false;
        }
        if (preserved != inDual(la, glueVector(mod, e))) f.add(tag + " gNc");
        ++n.gnc;
    }

    Isometry g = coxeterIsometry(r, mod, e);
    bool coprime = true;
    for (std::size_t i = 0; i < mod.size(); ++i) coprime = coprime && std::gcd(e[i], mod[i]) == 1;
    bool fpfOrder = fixedSublattice(r, g).rank() == 0 && g.order == lcm;
    if (fpfOrder != coprime) f.add(tag + " fpf2");
    ++n.fpf;
}

std::string criterion7(const AcceptanceOptions& o) {
    Failures f;
    LemmaCounts n;
    std::mt19937 rng(o.seed);
    for (int trial = 0; trial < 200; ++trial) {
        auto mod = randomModuli(rng);
        Codeword c = randomWord(rng, mod);
        // the isometry criterion is stated for even Construction A lattices: draw an even cyclic code
        for (int tries = 0; tries < 100000 && !evenCyclicCode(mod, c); ++tries) c = randomWord(rng, mod);
        bool even = evenCyclicCode(mod, c);
        GlueCode code{mod, {c}};
        checkLemmas(mod, code, randomWord(rng, mod), randomWord(rng, mod), even, "random #" + std::to_string(trial), f,
                    n);
    }
    for (const auto& label : coinvariantLabels()) {
        CoinvariantModel m = coinvariantModel(label);
        const Codeword& c = m.code.generators.front();
        checkLemmas(m.code.moduli, m.code, c, c, evenCyclicCode(m.code.moduli, c), label, f, n);
        // the table rows are full Construction B lattices with tau = g_{Delta,c}
        long lcm = 1;
        for (long k : m.code.moduli) lcm = std::lcm(lcm, k);
        if (quotientIndex(m.lattice, constructionA(m.code)) != lcm) f.add(label + " index");
    }
    if (n.gnc < 200) f.add("only " + std::to_string(n.gnc) + " even instances for gNc");
    if (!f.empty()) throw TableRegression(f.str());
    return std::to_string(n.enorm) + " instances (" + std::to_string(n.gnc) + " even codes)";
}

// ---- 8: oracles for isometry testing and short vectors ----

// All nonzero x with |x_i| <= box[i] and x G x = target (or <= bound when target < 0).
std::vector<IVec> boxVectors(const QMatrix& g, const std::vector<long>& box, const Rat& bound, bool exact) {
    const std::size_t n = g.rows();
    std::vector<IVec> out;
    IVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -box[i];
    while (true) {
        bool zero = std::all_of(x.begin(), x.end(), [](auto c) { return c == 0; });
        if (!zero) {
            Rat v = bilinear(toQ(x), g, toQ(x));
            if (exact ? v == bound : v <= bound) out.push_back(x);
        }
        std::size_t k = n;
        while (k > 0 && x[k - 1] == box[k - 1]) {
            --k;
            x[k] = -box[k];
        }
        if (k == 0) break;
        ++x[k - 1];
    }
    return out;
}

std::vector<long> boxFor(const QMatrix& g, const Rat& bound) {
    QMatrix gi = inverse(g);
    std::vector<long> box;
    for (std::size_t i = 0; i < g.rows(); ++i)
        box.push_back(static_cast<long>(std::floor(std::sqrt(Rat(bound * gi(i, i)).get_d()) + 1e-9)));
    return box;
}

// Brute-force isometry search: images of the basis vectors among vectors of the right norm.
bool bruteIsometric(const QMatrix& a, const QMatrix& b) {
    const std::size_t n = a.rows();
    if (n != b.rows()) return false;
    std::vector<std::vector<IVec>> cand(n);
    for (std::size_t i = 0; i < n; ++i) cand[i] = boxVectors(b, boxFor(b, a(i, i)), a(i, i), true);
    std::vector<IVec> img(n);
    std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
        if (i == n) {
            ZMatrix m(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) m(r, c) = img[r][c];
            Int d = determinant(m);
            return d == 1 || d == -1;
        }
        for (const auto& y : cand[i]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = bilinear(toQ(y), b, toQ(img[j])) == a(i, j);
            if (!ok) continue;
            img[i] = y;
            if (extend(i + 1)) return true;
        }
        return false;
    };
    return extend(0);
}

QMatrix randomEvenGram(std::mt19937& rng, std::size_t n) {
    for (;;) {
        QMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = 2 * std::uniform_int_distribution<long>(1, 3)(rng);
            for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i) = std::uniform_int_distribution<long>(-2, 2)(rng);
        }
        // positive definite: all leading minors positive
        bool pd = true;
        for (std::size_t k = 1; k <= n && pd; ++k) {
            QMatrix m(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) m(i, j) = g(i, j);
            pd = determinant(m) > 0;
        }
        if (pd) return g;
    }
}

ZMatrix randomUnimodular(std::mt19937& rng, std::size_t n) {
    ZMatrix u = ZMatrix::identity(n);
    for (int k = 0; k < 6; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        long s = std::uniform_int_distribution<long>(-1, 1)(rng);
        for (std::size_t c = 0; c < n; ++c) u(i, c) += s * u(j, c);
    }
    return u;
}

std::string criterion8(const AcceptanceOptions& o) {
    Failures f;
    std::mt19937 rng(o.seed + 8);
    // isometry testing: half the pairs are basis changes, half share rank and determinant
    std::map<std::pair<std::size_t, Rat>, std::vector<QMatrix>> pool;
    for (int i = 0; i < 600; ++i) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        QMatrix g = randomEvenGram(rng, n);
        pool[{n, determinant(g)}].push_back(g);
    }
    std::vector<std::pair<QMatrix, QMatrix>> pairs;
    std::vector<const std::vector<QMatrix>*> groups;
    for (const auto& [k, v] : pool)
        if (v.size() >= 2) groups.push_back(&v);
    while (pairs.size() < 50 && !groups.empty()) {
        const auto& g = *groups[rng() % groups.size()];
        std::size_t a = rng() % g.size(), b = rng() % g.size();
        if (a != b) pairs.emplace_back(g[a], g[b]);
    }
    while (pairs.size() < 100) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        QMatrix g = randomEvenGram(rng, n);
        QMatrix u = toQ(randomUnimodular(rng, n));
        pairs.emplace_back(g, u * g * u.transpose());
    }
    long agreeTrue = 0;
    for (const auto& [a, b] : pairs) {
        bool fast = isIsometric(RationalLattice(a), RationalLattice(b)).has_value();
        bool slow = bruteIsometric(a, b);
        if (fast != slow) f.add("isometry test disagrees on a rank " + std::to_string(a.rows()) + " pair");
        agreeTrue += slow;
    }
    // short vectors against box enumeration
    long lattices = 0;
    while (lattices < 100) {
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        ZMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = std::uniform_int_distribution<long>(-2, 2)(rng);
        for (std::size_t i = 0; i < n; ++i) b(i, i) += 3;
        QMatrix g = toQ(b * b.transpose());
        if (determinant(g) == 0) continue;
        Rat bound = std::uniform_int_distribution<long>(1, 12)(rng);
        auto box = boxFor(g, bound);
        double size = 1;
        for (long x : box) size *= 2.0 * static_cast<double>(x) + 1;
        if (size > 2e6) continue;
        ++lattices;
        std::vector<IVec> naive;
        for (auto& x : boxVectors(g, box, bound, false)) {
            auto first = std::find_if(x.begin(), x.end(), [](auto c) { return c != 0; });
            if (*first > 0) naive.push_back(x);
        }
        std::sort(naive.begin(), naive.end());
        std::vector<IVec> fast;
        for (const auto& v : shortVectors(RationalLattice(g), bound)) fast.push_back(v.coords);
        if (fast != naive) f.add("short vectors disagree on a rank " + std::to_string(n) + " lattice");
    }
    if (!f.empty()) throw TableRegression(f.str());
    return std::to_string(pairs.size()) + " isometry pairs (" + std::to_string(agreeTrue) + " isometric), " +
           std::to_string(lattices) + " short-vector lattices";
}

}  // namespace

const std::string& criterionTitle(int id) {
    static const std::vector<std::string> titles{
        "conformal weights and fixed dimensions of the Leech classes",
        "coinvariant lattices by Construction B",
        "Leech and Niemeier lattices",
        "l-duality of the fixed lattices",
        "deep holes from the 23 Niemeier lattices",
        "pairs (N, tau) and weight-one Lie algebras",
        "Construction A/B lemmas on random codes",
        "isometry and short-vector oracles",
    };
    if (id < 1 || id > kCriterionCount) throw UnknownName("criterion " + std::to_string(id));
    return titles[static_cast<std::size_t>(id - 1)];
}

CriterionResult runCriterion(int id, const AcceptanceOptions& opts) {
    static const std::vector<std::string (*)(const AcceptanceOptions&)> fns{
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8};
    CriterionResult r;
    r.id = id;
    r.title = criterionTitle(id);
    auto start = std::chrono::steady_clock::now();
    try {
        r.detail = fns[static_cast<std::size_t>(id - 1)](opts);
        r.pass = true;
    } catch (const std::exception& e) {
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& opts) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(runCriterion(id, opts));
    return out;
}

}  // namespace dh
