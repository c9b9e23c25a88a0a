#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "weilres/core/errors.hpp"

namespace weilres {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw ComputeError("integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw ComputeError("integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw ComputeError("integer overflow in multiplication");
    return r;
}

/// Floor-style modulus with result in [0, m).
inline Int mod(Int a, Int m) {
    Int r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace checked

/// Dense row-major integer matrix with overflow-checked arithmetic.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_) throw ValidationError("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols = -1) {
        int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        IntMatrix m(static_cast<int>(rows.size()), c);
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[i].size()) != c) throw ValidationError("ragged matrix rows");
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<IntVec>& cols, int rows) {
        IntMatrix m(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < m.cols_; ++j) {
            if (static_cast<int>(cols[j].size()) != rows) throw ValidationError("ragged matrix columns");
            for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Int operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    IntVec row(int i) const { return IntVec(a_.begin() + static_cast<long>(i) * cols_, a_.begin() + static_cast<long>(i + 1) * cols_); }
    IntVec col(int j) const {
        IntVec c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntVec apply(std::span<const Int> x) const {
        if (static_cast<int>(x.size()) != cols_) throw ComputeError("matrix-vector dimension mismatch");
        IntVec y(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            Int s = 0;
            for (int j = 0; j < cols_; ++j) {
                Int e = (*this)(i, j);
                if (e != 0 && x[j] != 0) s = checked::add(s, checked::mul(e, x[j]));
            }
            y[i] = s;
        }
        return y;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw ComputeError("matrix product dimension mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                Int e = a(i, k);
                if (e == 0) continue;
                for (int j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) c(i, j) = checked::add(c(i, j), checked::mul(e, b(k, j)));
            }
        return c;
    }

    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ComputeError("matrix difference dimension mismatch");
        IntMatrix c(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = checked::sub(a.a_[i], b.a_[i]);
        return c;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;

    /// Horizontal concatenation [a | b].
    static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_) throw ComputeError("hcat row mismatch");
        IntMatrix c(a.rows_, a.cols_ + b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
            for (int j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
        }
        return c;
    }

    IntMatrix select_rows(std::span<const int> idx) const {
        IntMatrix m(static_cast<int>(idx.size()), cols_);
        for (size_t r = 0; r < idx.size(); ++r)
            for (int j = 0; j < cols_; ++j) m(static_cast<int>(r), j) = (*this)(idx[r], j);
        return m;
    }

    IntMatrix select_cols(std::span<const int> idx) const {
        IntMatrix m(rows_, static_cast<int>(idx.size()));
        for (int i = 0; i < rows_; ++i)
            for (size_t c = 0; c < idx.size(); ++c) m(i, static_cast<int>(c)) = (*this)(i, idx[c]);
        return m;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](Int x) { return x == 0; });
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
        os << '[';
        for (int i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
        }
        return os << ']';
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> a_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... (nonnegative).
struct SmithForm {
    IntMatrix U, Uinv, V, D;
    std::vector<Int> diagonal; // length min(rows, cols)
    int rank = 0;
};

namespace detail {

inline void swap_rows(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
inline void swap_cols(IntMatrix& m, int a, int b) {
    if (a == b) return;
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[dst] += k * row[src]
inline void add_row(IntMatrix& m, int dst, int src, Int k) {
    if (k == 0) return;
    for (int j = 0; j < m.cols(); ++j)
        if (m(src, j) != 0) m(dst, j) = checked::add(m(dst, j), checked::mul(k, m(src, j)));
}
// col[dst] += k * col[src]
inline void add_col(IntMatrix& m, int dst, int src, Int k) {
    if (k == 0) return;
    for (int i = 0; i < m.rows(); ++i)
        if (m(i, src) != 0) m(i, dst) = checked::add(m(i, dst), checked::mul(k, m(i, src)));
}

} // namespace detail

/// Smith normal form by elementary row/column operations. Tracks U, U^{-1} and V.
inline SmithForm smith_normal_form(const IntMatrix& M) {
    using namespace detail;
    const int m = M.rows(), n = M.cols();
    SmithForm s{IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), M, {}, 0};
    IntMatrix& D = s.D;
    // Row op r_i += k r_j on D and U; on Uinv it is c_j -= k c_i.
    auto row_add = [&](int dst, int src, Int k) {
        add_row(D, dst, src, k);
        add_row(s.U, dst, src, k);
        add_col(s.Uinv, src, dst, checked::mul(-1, k));
    };
    auto row_swap = [&](int a, int b) {
        swap_rows(D, a, b);
        swap_rows(s.U, a, b);
        swap_cols(s.Uinv, a, b);
    };
    auto row_neg = [&](int a) {
        for (int j = 0; j < n; ++j) D(a, j) = -D(a, j);
        for (int j = 0; j < m; ++j) s.U(a, j) = -s.U(a, j);
        for (int i = 0; i < m; ++i) s.Uinv(i, a) = -s.Uinv(i, a);
    };
    auto col_add = [&](int dst, int src, Int k) {
        add_col(D, dst, src, k);
        add_col(s.V, dst, src, k);
    };
    auto col_swap = [&](int a, int b) {
        swap_cols(D, a, b);
        swap_cols(s.V, a, b);
    };

    int t = 0;
    while (t < m && t < n) {
        // pivot: smallest nonzero |entry| in the trailing block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < m; ++i)
            for (int j = t; j < n; ++j) {
                Int v = D(i, j);
                if (v != 0 && (best == 0 || std::llabs(v) < best)) {
                    best = std::llabs(v);
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool done = false;
        while (!done) {
            done = true;
            for (int i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q = D(i, t) / D(t, t);
                row_add(i, t, -q);
                if (D(i, t) != 0) {
                    row_swap(t, i);
                    done = false;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q = D(t, j) / D(t, t);
                col_add(j, t, -q);
                if (D(t, j) != 0) {
                    col_swap(t, j);
                    done = false;
                }
            }
            if (!done) continue;
            // divisibility of the trailing block by the pivot
            for (int i = t + 1; i < m && done; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_add(t, i, 1);
                        done = false;
                        break;
                    }
        }
        if (D(t, t) < 0) row_neg(t);
        ++t;
    }
    s.rank = t;
    const int k = std::min(m, n);
    s.diagonal.assign(k, 0);
    for (int i = 0; i < k; ++i) s.diagonal[i] = D(i, i);
    return s;
}

/// Columns spanning the integer kernel {x : M x = 0}.
inline IntMatrix kernel_basis(const IntMatrix& M) {
    SmithForm s = smith_normal_form(M);
    std::vector<int> idx;
    for (int j = s.rank; j < M.cols(); ++j) idx.push_back(j);
    return s.V.select_cols(idx);
}

/// Some integer solution of M x = b, if one exists.
inline std::optional<IntVec> solve_integer(const IntMatrix& M, std::span<const Int> b) {
    SmithForm s = smith_normal_form(M);
    IntVec ub = s.U.apply(b);
    IntVec y(M.cols(), 0);
    for (int i = 0; i < M.rows(); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.diagonal[i] != 0) return std::nullopt;
            y[i] = ub[i] / s.diagonal[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
    if (a.size() != b.size()) throw ComputeError("dot product dimension mismatch");
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s = checked::add(s, checked::mul(a[i], b[i]));
    return s;
}

inline IntVec add(std::span<const Int> a, std::span<const Int> b) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = checked::add(a[i], b[i]);
    return c;
}

inline IntVec sub(std::span<const Int> a, std::span<const Int> b) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = checked::sub(a[i], b[i]);
    return c;
}

inline IntVec scale(std::span<const Int> a, Int k) {
    IntVec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = checked::mul(a[i], k);
    return c;
}

inline bool is_zero(std::span<const Int> a) {
    return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

/// Absolute determinant is 1 (checked via Smith form).
inline bool is_unimodular(const IntMatrix& M) {
    if (M.rows() != M.cols()) return false;
    SmithForm s = smith_normal_form(M);
    return s.rank == M.rows() && std::all_of(s.diagonal.begin(), s.diagonal.end(), [](Int d) { return d == 1; });
}

inline IntMatrix inverse_unimodular(const IntMatrix& M) {
    SmithForm s = smith_normal_form(M);
    if (s.rank != M.rows() || M.rows() != M.cols() ||
        !std::all_of(s.diagonal.begin(), s.diagonal.end(), [](Int d) { return d == 1; }))
        throw ComputeError("matrix is not invertible over the integers");
    // U M V = 1  =>  M^{-1} = V U
    return s.V * s.U;
}

} // namespace weilres
