#pragma once

#include <vector>

#include "weilres/core/cyclotomic.hpp"

namespace weilres {

/// Dense matrix over an exact field (Rational or Cyclotomic).
template <class F>
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, F(0)) {}

    static FieldMatrix identity(int n) {
        FieldMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }
    static FieldMatrix from_int(const IntMatrix& m) {
        FieldMatrix out(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out(i, j) = F(m(i, j));
        return out;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    F& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const F& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.c_ != b.r_) throw ComputeError("field matrix: shape mismatch in product");
        FieldMatrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                if (scalar_is_zero(a(i, k))) continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!scalar_is_zero(b(k, j))) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
        FieldMatrix m = a;
        for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] - b.a_[i];
        return m;
    }
    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (size_t i = 0; i < a.a_.size(); ++i)
            if (!(a.a_[i] == b.a_[i])) return false;
        return true;
    }

    F trace() const {
        F t(0);
        for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
        return t;
    }

    FieldMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        FieldMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
        return m;
    }

    /// Row-reduced echelon form in place; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> piv;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int p = row;
            while (p < r_ && scalar_is_zero((*this)(p, col))) ++p;
            if (p == r_) continue;
            for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
            F inv = F(1) / (*this)(row, col);
            for (int j = col; j < c_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || scalar_is_zero((*this)(i, col))) continue;
                F f = (*this)(i, col);
                for (int j = col; j < c_; ++j) (*this)(i, j) = (*this)(i, j) - f * (*this)(row, j);
            }
            piv.push_back(col);
            ++row;
        }
        return piv;
    }

    int rank() const {
        FieldMatrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Columns form a basis of the right kernel.
    FieldMatrix kernel() const {
        FieldMatrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (int p : piv) is_piv[p] = true;
        std::vector<int> free;
        for (int j = 0; j < c_; ++j)
            if (!is_piv[j]) free.push_back(j);
        FieldMatrix k(c_, static_cast<int>(free.size()));
        for (size_t f = 0; f < free.size(); ++f) {
            k(free[f], static_cast<int>(f)) = F(1);
            for (size_t i = 0; i < piv.size(); ++i) k(piv[i], static_cast<int>(f)) = F(0) - m(static_cast<int>(i), free[f]);
        }
        return k;
    }

    FieldMatrix inverse() const {
        if (r_ != c_) throw ComputeError("field matrix: inverse of non-square matrix");
        FieldMatrix aug(r_, 2 * r_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < r_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, r_ + i) = F(1);
        }
        auto piv = aug.rref();
        if (static_cast<int>(piv.size()) < r_ || piv[r_ - 1] != r_ - 1) throw ComputeError("field matrix: singular");
        FieldMatrix inv(r_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) inv(i, j) = aug(i, r_ + j);
        return inv;
    }

    /// L with L * this = I, for a matrix of full column rank.
    FieldMatrix left_inverse() const {
        FieldMatrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        auto piv = t.rref(); // pivot columns of the transpose = independent rows
        if (static_cast<int>(piv.size()) < c_) throw ComputeError("field matrix: not of full column rank");
        std::vector<int> all(c_);
        for (int j = 0; j < c_; ++j) all[j] = j;
        FieldMatrix B = submatrix(piv, all).inverse();
        FieldMatrix L(c_, r_);
        for (int i = 0; i < c_; ++i)
            for (size_t k = 0; k < piv.size(); ++k) L(i, piv[k]) = B(i, static_cast<int>(k));
        return L;
    }

    static FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
        FieldMatrix m(a.r_ * b.r_, a.c_ * b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j) {
                if (scalar_is_zero(a(i, j))) continue;
                for (int k = 0; k < b.r_; ++k)
                    for (int l = 0; l < b.c_; ++l) m(i * b.r_ + k, j * b.c_ + l) = a(i, j) * b(k, l);
            }
        return m;
    }

    static FieldMatrix vstack(const std::vector<FieldMatrix>& blocks, int cols) {
        int r = 0;
        for (const auto& b : blocks) r += b.r_;
        FieldMatrix m(r, cols);
        int off = 0;
        for (const auto& b : blocks) {
            for (int i = 0; i < b.r_; ++i)
                for (int j = 0; j < cols; ++j) m(off + i, j) = b(i, j);
            off += b.r_;
        }
        return m;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<F> a_;
};

using CycMatrix = FieldMatrix<Cyclotomic>;

} // namespace weilres
