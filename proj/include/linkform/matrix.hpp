#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace linkform {

template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c_) throw Error("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& d) {
        Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool is_square() const { return r_ == c_; }
    T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    template <class F>
    Matrix map(F f) const {
        Matrix m(r_, c_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = f(a_[k]);
        return m;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw MathError("shape_mismatch", "matrix sum of different shapes");
        Matrix m = x;
        for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] += y.a_[k];
        return m;
    }
    Matrix operator-() const {
        return map([](const T& v) { return -v; });
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw MathError("shape_mismatch", "matrix product of incompatible shapes");
        Matrix m(x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                const T& v = x(i, k);
                if (v.is_zero()) continue;
                for (int j = 0; j < y.c_; ++j) m(i, j) += v * y(k, j);
            }
        return m;
    }
    friend Matrix operator*(const T& s, const Matrix& x) {
        return x.map([&](const T& v) { return s * v; });
    }
    friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    void swap_rows(int i, int j) {
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
    // row i += s * row j
    void add_row(int i, int j, const T& s) {
        if (s.is_zero()) return;
        for (int k = 0; k < c_; ++k) (*this)(i, k) += s * (*this)(j, k);
    }
    // col i += col j * s
    void add_col(int i, int j, const T& s) {
        if (s.is_zero()) return;
        for (int k = 0; k < r_; ++k) (*this)(k, i) += (*this)(k, j) * s;
    }
    void scale_row(int i, const T& s) {
        for (int k = 0; k < c_; ++k) (*this)(i, k) = s * (*this)(i, k);
    }
    void scale_col(int i, const T& s) {
        for (int k = 0; k < r_; ++k) (*this)(k, i) = (*this)(k, i) * s;
    }

    // Block diagonal sum.
    friend Matrix direct_sum(const Matrix& x, const Matrix& y) {
        Matrix m(x.r_ + y.r_, x.c_ + y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int j = 0; j < x.c_; ++j) m(i, j) = x(i, j);
        for (int i = 0; i < y.r_; ++i)
            for (int j = 0; j < y.c_; ++j) m(x.r_ + i, x.c_ + j) = y(i, j);
        return m;
    }

  private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using LMatrix = Matrix<LaurentPoly>;
using FMatrix = Matrix<FieldElem>;

// (A^#)^T
inline LMatrix involve_transpose(const LMatrix& a) {
    return a.transpose().map([](const LaurentPoly& p) { return p.involve(); });
}

inline bool is_hermitian(const LMatrix& a) { return a.is_square() && involve_transpose(a) == a; }

inline FMatrix evaluate(const LMatrix& a, const CirclePoint& w) {
    FMatrix m(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).eval(w);
    return m;
}

// Fraction-free Bareiss elimination; exact divisions stay inside the ring.
inline LaurentPoly det(LMatrix a) {
    if (!a.is_square()) throw MathError("shape_mismatch", "determinant of a non-square matrix");
    int n = a.rows();
    if (n == 0) return LaurentPoly(1);
    LaurentPoly prev(1);
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k).is_zero()) {
            int p = k + 1;
            while (p < n && a(p, k).is_zero()) ++p;
            if (p == n) return {};
            a.swap_rows(k, p);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = div_or_throw(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

inline FieldElem det(FMatrix a) {
    int n = a.rows();
    FieldElem d(1);
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return {};
        if (p != k) {
            a.swap_rows(k, p);
            d = -d;
        }
        d *= a(k, k);
        FieldElem inv = a(k, k).inv();
        for (int i = k + 1; i < n; ++i) a.add_row(i, k, -(a(i, k) * inv));
    }
    return d;
}

struct Inertia {
    int pos = 0, neg = 0, zero = 0;
    int signature() const { return pos - neg; }
};

// Inertia of a Hermitian matrix over the field by congruence (LDL* with the x -> x + c y
// move when every remaining diagonal entry vanishes).
inline Inertia inertia(FMatrix a) {
    int n = a.rows();
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    Inertia out;
    while (!alive.empty()) {
        int piv = -1;
        for (int i : alive)
            if (!a(i, i).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) {
            int p = -1, q = -1;
            for (int i : alive) {
                for (int j : alive)
                    if (i != j && !a(i, j).is_zero()) {
                        p = i;
                        q = j;
                        break;
                    }
                if (p >= 0) break;
            }
            if (p < 0) {
                out.zero += static_cast<int>(alive.size());
                break;
            }
            // x_p <- x_p + c x_q with c = a_pq makes a_pp = 2|a_pq|^2
            FieldElem c = a(p, q);
            a.add_row(p, q, c);
            a.add_col(p, q, c.conj());
            piv = p;
        }
        FieldElem d = a(piv, piv);
        int s = d.re().sign();
        (s > 0 ? out.pos : out.neg)++;
        FieldElem inv = d.inv();
        for (int i : alive) {
            if (i == piv || a(i, piv).is_zero()) continue;
            FieldElem f = a(i, piv) * inv;
            for (int j : alive) a(i, j) -= f * a(piv, j);
        }
        for (int i : alive) {
            if (i == piv) continue;
            a(piv, i) = FieldElem();
            a(i, piv) = FieldElem();
        }
        alive.erase(std::find(alive.begin(), alive.end(), piv));
    }
    return out;
}

inline bool is_unit(const LaurentPoly& p) { return p.is_unit(); }

// Smith normal form over F[t, t^-1]: U * A * V = diag(d_1, ..., d_r) with d_i | d_{i+1},
// each d_i normalized (monic, nonzero constant term) or zero.
struct SmithForm {
    LMatrix U, Uinv, V, Vinv;
    std::vector<LaurentPoly> d;  // length min(rows, cols)
};

// Without `track` the transforms are left empty and only d is computed.
inline SmithForm smith(const LMatrix& a0, bool track = true) {
    LMatrix a = a0;
    int m = a.rows(), n = a.cols();
    SmithForm s;
    if (track) s = {LMatrix::identity(m), LMatrix::identity(m), LMatrix::identity(n), LMatrix::identity(n), {}};
    auto row_add = [&](int i, int j, const LaurentPoly& q) {  // row i += q row j
        a.add_row(i, j, q);
        if (!track) return;
        s.U.add_row(i, j, q);
        s.Uinv.add_col(j, i, -q);
    };
    auto col_add = [&](int i, int j, const LaurentPoly& q) {  // col i += col j q
        a.add_col(i, j, q);
        if (!track) return;
        s.V.add_col(i, j, q);
        s.Vinv.add_row(j, i, -q);
    };
    auto row_swap = [&](int i, int j) {
        a.swap_rows(i, j);
        if (!track) return;
        s.U.swap_rows(i, j);
        s.Uinv.swap_cols(i, j);
    };
    auto col_swap = [&](int i, int j) {
        a.swap_cols(i, j);
        if (!track) return;
        s.V.swap_cols(i, j);
        s.Vinv.swap_rows(i, j);
    };
    int r = std::min(m, n);
    for (int k = 0; k < r; ++k) {
        for (;;) {
            // minimal span pivot in the trailing block
            int pi = -1, pj = -1, best = 0;
            for (int i = k; i < m; ++i)
                for (int j = k; j < n; ++j)
                    if (!a(i, j).is_zero() && (pi < 0 || a(i, j).span() < best)) {
                        pi = i;
                        pj = j;
                        best = a(i, j).span();
                    }
            if (pi < 0) break;
            if (pi != k) row_swap(k, pi);
            if (pj != k) col_swap(k, pj);
            bool dirty = false;
            for (int i = k + 1; i < m; ++i) {
                if (a(i, k).is_zero()) continue;
                auto [q, rem] = divmod(a(i, k), a(k, k));
                row_add(i, k, -q);
                if (!rem.is_zero()) dirty = true;
            }
            for (int j = k + 1; j < n; ++j) {
                if (a(k, j).is_zero()) continue;
                auto [q, rem] = divmod(a(k, j), a(k, k));
                col_add(j, k, -q);
                if (!rem.is_zero()) dirty = true;
            }
            if (dirty) continue;
            // divisibility of the trailing block
            int bad = -1;
            for (int i = k + 1; i < m && bad < 0; ++i)
                for (int j = k + 1; j < n; ++j)
                    if (!divides(a(k, k), a(i, j))) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_add(k, bad, LaurentPoly(1));
        }
        if (!a(k, k).is_zero()) {
            LaurentPoly u = unit_part(a(k, k));
            LaurentPoly uinv = LaurentPoly::monomial(u.coeff(u.low()).inv(), -u.low());
            a.scale_row(k, uinv);
            if (track) {
                s.U.scale_row(k, uinv);
                s.Uinv.scale_col(k, u);
            }
        }
    }
    for (int k = 0; k < r; ++k) s.d.push_back(a(k, k));
    return s;
}

inline std::vector<LaurentPoly> invariant_factors(const LMatrix& a) { return smith(a, false).d; }

inline bool is_unimodular(const LMatrix& p) { return p.is_square() && det(p).is_unit(); }

template <class T>
std::string matrix_str(const Matrix<T>& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).str();
        s += "]";
    }
    return s + "]";
}

}  // namespace linkform
