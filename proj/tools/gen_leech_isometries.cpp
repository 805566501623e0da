// Writes monomial representatives (Golay sign changes times M24 permutations) for the
// conjugacy classes of leechClasses() that occur in 2^12:M24.
#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "deephole/niemeier.hpp"

using namespace dh;

namespace {

using Perm = std::array<int, 24>;
constexpr int kInf = 23;
constexpr long kP = 23;

long modp(long x) { return ((x % kP) + kP) % kP; }
long inv(long x) {
    long r = 1;
    for (int i = 0; i < 21; ++i) r = modp(r * x);
    return r;
}

Perm fromFunction(long (*f)(long)) {
    Perm p{};
    for (int i = 0; i < 24; ++i) p[static_cast<std::size_t>(i)] = static_cast<int>(f(i));
    return p;
}

bool isResidue(long x) {
    for (long y = 1; y < kP; ++y)
        if (modp(y * y) == x) return true;
    return false;
}

// Generators of M24 on the coordinates of golay.gen (residues mod 23 and infinity).
std::vector<Perm> m24Generators() {
    return {
        fromFunction([](long x) { return x == kInf ? x : modp(x + 1); }),
        fromFunction([](long x) { return x == kInf ? x : modp(2 * x); }),
        fromFunction([](long x) { return x == kInf ? 0 : x == 0 ? kInf : modp(-inv(x)); }),
        fromFunction([](long x) {
            if (x == kInf || x == 0) return x;
            long c = modp(x * x * x);
            return isResidue(x) ? modp(c * inv(18)) : modp(18 * c);
        }),
    };
}

std::uint32_t mask(const std::vector<int>& w) {
    std::uint32_t m = 0;
    for (int i = 0; i < 24; ++i)
        if (w[static_cast<std::size_t>(i)]) m |= 1u << i;
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    std::string out = argc > 1 ? argv[1] : dataDirectory() + "/leech_isometries";
    const auto& golay = golayCode();
    std::set<std::uint32_t> words;
    for (const auto& w : golay.codewords()) words.insert(mask(w));
    auto gens = m24Generators();
    for (const auto& g : gens) {
        for (const auto& row : golay.generators) {
            std::uint32_t img = 0;
            for (int i = 0; i < 24; ++i)
                if (row[static_cast<std::size_t>(i)]) img |= 1u << g[static_cast<std::size_t>(i)];
            if (!words.count(img)) {
                std::cerr << "generator does not preserve the Golay code\n";
                return 3;
            }
        }
    }

    std::map<std::string, const LeechClass*> wanted;
    for (const auto& c : leechClasses()) wanted[c.frameShape.str()] = &c;
    std::map<std::string, int> seenTypes;
    std::mt19937 rng(2024);
    Perm x;
    for (int i = 0; i < 24; ++i) x[static_cast<std::size_t>(i)] = i;
    const RationalLattice& leech = leechLattice();
    int written = 0;
    for (long step = 0; step < 200000 && !wanted.empty(); ++step) {
        const Perm& g = gens[rng() % gens.size()];
        Perm y;
        for (int i = 0; i < 24; ++i) y[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
        x = y;
        std::vector<std::uint32_t> cycles;
        std::vector<long> lengths;
        std::array<bool, 24> done{};
        for (int i = 0; i < 24; ++i) {
            if (done[static_cast<std::size_t>(i)]) continue;
            std::uint32_t m = 0;
            long len = 0;
            for (int j = i; !done[static_cast<std::size_t>(j)]; j = x[static_cast<std::size_t>(j)]) {
                done[static_cast<std::size_t>(j)] = true;
                m |= 1u << j;
                ++len;
            }
            cycles.push_back(m);
            lengths.push_back(len);
        }
        std::string type;
        for (long l : lengths) type += std::to_string(l) + ",";
        if (seenTypes[type]++ >= 3) continue;
        for (std::uint32_t w : words) {
            FrameShape fs;
            for (std::size_t c = 0; c < cycles.size(); ++c) {
                long n = lengths[c];
                if (std::popcount(cycles[c] & w) % 2 == 0) {
                    ++fs.exponents[n];
                } else {
                    ++fs.exponents[2 * n];
                    --fs.exponents[n];
                }
            }
            for (auto it = fs.exponents.begin(); it != fs.exponents.end();)
                it = it->second == 0 ? fs.exponents.erase(it) : std::next(it);
            auto hit = wanted.find(fs.str());
            if (hit == wanted.end()) continue;
            QMatrix m(24, 24);
            for (int j = 0; j < 24; ++j) {
                int i = x[static_cast<std::size_t>(j)];
                m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = (w >> i & 1) ? -1 : 1;
            }
            Isometry t = ambientIsometry(leech, m);
            if (t.frameShape != hit->second->frameShape) {
                std::cerr << "frame shape mismatch for " << hit->second->label << "\n";
                return 1;
            }
            std::string path = out + "/" + isometryFileStem(hit->second->label) + ".isom";
            std::ofstream f(path);
            f << "# class " << hit->second->label << ", frame shape " << t.frameShape.str() << "\n";
            writeIsometry(f, t.matrix);
            std::cout << "wrote " << path << "\n";
            ++written;
            wanted.erase(hit);
        }
    }
    for (const auto& [fs, c] : wanted) std::cout << "not monomial: " << c->label << " " << fs << "\n";
    std::cout << written << " representatives\n";
    return 0;
}
