#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "deephole/lattice.hpp"

// .lat:  n, then n rows of the Gram matrix; optionally "AMBIENT d" followed by n rows of the
// embedding and, if the ambient form is not the standard one, "AMBIENTGRAM" and d rows.
// .isom: n, then n integer rows.

namespace dh {

namespace {

// Next non-empty line with '#' comments removed.
bool nextLine(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

QMatrix readRows(std::istream& in, std::size_t rows, std::size_t cols) {
    QMatrix m(rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!nextLine(in, line)) throw ParseError("unexpected end of matrix");
        auto t = tokens(line);
        if (t.size() != cols) throw ParseError("expected " + std::to_string(cols) + " entries in row " + std::to_string(i + 1));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parseRational(t[j]);
    }
    return m;
}

std::size_t readCount(const std::string& s) {
    std::size_t pos = 0;
    long v = -1;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected a dimension, got '" + s + "'");
    }
    if (pos != s.size() || v < 0) throw ParseError("expected a dimension, got '" + s + "'");
    return static_cast<std::size_t>(v);
}

template <class T>
void writeMatrix(std::ostream& out, const Matrix<T>& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
        out << '\n';
    }
}

}  // namespace

RationalLattice readLattice(std::istream& in) {
    std::string line;
    if (!nextLine(in, line)) throw ParseError("empty lattice file");
    auto head = tokens(line);
    if (head.size() != 1) throw ParseError("first line must hold the rank");
    const std::size_t n = readCount(head[0]);
    QMatrix gram = readRows(in, n, n);
    if (!nextLine(in, line)) return RationalLattice(gram);
    auto t = tokens(line);
    if (t.size() != 2 || t[0] != "AMBIENT") throw ParseError("unexpected line '" + line + "'");
    const std::size_t d = readCount(t[1]);
    QMatrix basis = readRows(in, n, d);
    QMatrix ambient = QMatrix::identity(d);
    if (nextLine(in, line)) {
        if (tokens(line) != std::vector<std::string>{"AMBIENTGRAM"}) throw ParseError("unexpected line '" + line + "'");
        ambient = readRows(in, d, d);
    }
    RationalLattice l(basis, ambient);
    if (l.gram() != gram) throw MalformedLattice("Gram matrix disagrees with the ambient embedding");
    return l;
}

RationalLattice readLatticeFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path);
    return readLattice(f);
}

void writeLattice(std::ostream& out, const RationalLattice& l) {
    out << l.rank() << '\n';
    writeMatrix(out, l.gram());
    if (!l.hasAmbient()) return;
    const QMatrix& b = l.ambientBasis();
    out << "AMBIENT " << b.cols() << '\n';
    writeMatrix(out, b);
    if (l.ambientGram() != QMatrix::identity(b.cols())) {
        out << "AMBIENTGRAM\n";
        writeMatrix(out, l.ambientGram());
    }
}

ZMatrix readIsometry(std::istream& in) {
    std::string line;
    if (!nextLine(in, line)) throw ParseError("empty isometry file");
    auto head = tokens(line);
    if (head.size() != 1) throw ParseError("first line must hold the dimension");
    const std::size_t n = readCount(head[0]);
    return toZ(readRows(in, n, n));
}

ZMatrix readIsometryFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path);
    return readIsometry(f);
}

void writeIsometry(std::ostream& out, const ZMatrix& m) {
    out << m.rows() << '\n';
    writeMatrix(out, m);
}

}  // namespace dh
