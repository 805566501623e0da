#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "deephole/errors.hpp"

namespace dh {

using Int = mpz_class;
using Rat = mpq_class;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using IVec = std::vector<std::int64_t>;

Rat parseRational(std::string_view text);
Rat frac(const Int& num, const Int& den);  // canonical num/den
std::string str(const Rat& x);
std::string str(const Int& x);

Int lcmDenominators(const QVec& v);
Int gcdOf(const ZVec& v);
bool isSquare(const Int& n, Int* root = nullptr);
Rat modTwo(const Rat& x);  // representative in [0,2)
Rat modOne(const Rat& x);  // representative in [0,1)
bool isInteger(const Rat& x);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, const T& fill = T(0)) : r_(r), c_(c), a_(r * c, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        a_.reserve(r_ * c_);
        for (const auto& row : rows) {
            if (row.size() != c_) throw Error("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix fromRows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw Error("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void setRow(std::size_t i, const std::vector<T>& v) {
        for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = v[j];
    }
    void swapRows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swapCols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < r_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix rowsSubset(std::size_t from, std::size_t to) const {
        Matrix m(to - from, c_);
        for (std::size_t i = from; i < to; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i - from, j) = (*this)(i, j);
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw Error("matrix product dimension mismatch");
        Matrix m(a.r_, b.c_);
        T t;
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.c_; ++j) {
                    t = x * b(k, j);
                    m(i, j) += t;
                }
            }
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix sum dimension mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix difference dimension mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using ZMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

QMatrix toQ(const ZMatrix& m);
// Exact conversion; throws if an entry is not an integer.
ZMatrix toZ(const QMatrix& m);
// Multiplies by the lcm of all denominators; returns the integer matrix and the factor.
ZMatrix clearDenominators(const QMatrix& m, Int* factor = nullptr);

QVec rowTimes(const QVec& x, const QMatrix& m);  // x * m
QVec matTimes(const QMatrix& m, const QVec& x);  // m * x
Rat dot(const QVec& a, const QVec& b);
Rat bilinear(const QVec& a, const QMatrix& g, const QVec& b);
QVec toQ(const IVec& v);
QVec toQ(const ZVec& v);

}  // namespace dh
