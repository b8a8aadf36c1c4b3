#include "ccs/snf.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ccs {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

IntMat operator*(const IntMat& x, const IntMat& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("IntMat: dimension mismatch in product");
    IntMat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
        for (int k = 0; k < x.cols_; ++k) {
            const Int& xik = x(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

IntMat operator+(const IntMat& x, const IntMat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("IntMat: shape mismatch");
    IntMat r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
}

IntMat operator-(const IntMat& x, const IntMat& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("IntMat: shape mismatch");
    IntMat r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
}

std::vector<Int> operator*(const IntMat& m, const std::vector<Int>& v) {
    if (size_t(m.cols()) != v.size()) throw std::invalid_argument("IntMat: vector length mismatch");
    std::vector<Int> r(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) r[i] += m(i, j) * v[j];
    return r;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(IntMat& m, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row[a] += q * row[b]
void add_row(IntMat& m, int a, int b, const Int& q) {
    if (q == 0) return;
    for (int j = 0; j < m.cols(); ++j) m(a, j) += q * m(b, j);
}
void add_col(IntMat& m, int a, int b, const Int& q) {
    if (q == 0) return;
    for (int i = 0; i < m.rows(); ++i) m(i, a) += q * m(i, b);
}
void negate_row(IntMat& m, int a) {
    for (int j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}
void negate_col(IntMat& m, int a) {
    for (int i = 0; i < m.rows(); ++i) m(i, a) = -m(i, a);
}

}  // namespace

// Elementary row/column reduction with pivot-magnitude minimization: at each
// step the smallest nonzero entry of the remaining block becomes the pivot,
// which keeps intermediate entries from exploding at desk scale.
SmithResult smith_normal_form(const IntMat& m) {
    SmithResult s;
    s.d = m;
    s.u = IntMat::identity(m.rows());
    s.v = IntMat::identity(m.cols());
    IntMat& d = s.d;

    const int n = std::min(m.rows(), m.cols());
    int t = 0;
    for (; t < n; ++t) {
        // locate the minimal-magnitude nonzero entry in the block [t.., t..]
        int pi = -1, pj = -1;
        Int best;
        for (int i = t; i < d.rows(); ++i)
            for (int j = t; j < d.cols(); ++j) {
                if (d(i, j) == 0) continue;
                Int mag = abs(d(i, j));
                if (pi < 0 || mag < best) {
                    best = mag;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // block is zero
        if (pi != t) { swap_rows(d, t, pi); swap_rows(s.u, t, pi); }
        if (pj != t) { swap_cols(d, t, pj); swap_cols(s.v, t, pj); }

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < d.rows(); ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                add_row(d, i, t, -q);
                add_row(s.u, i, t, -q);
                if (d(i, t) != 0) {  // remainder smaller than pivot: promote it
                    swap_rows(d, t, i);
                    swap_rows(s.u, t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < d.cols(); ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                add_col(d, j, t, -q);
                add_col(s.v, j, t, -q);
                if (d(t, j) != 0) {
                    swap_cols(d, t, j);
                    swap_cols(s.v, t, j);
                    clean = false;
                }
            }
        }
        if (d(t, t) < 0) { negate_row(d, t); negate_row(s.u, t); }
    }
    s.rank = t;

    // enforce the divisibility chain d_i | d_{i+1}
    for (int i = 0; i < s.rank; ++i) {
        for (int j = i + 1; j < s.rank; ++j) {
            if (d(j, j) % d(i, i) == 0) continue;
            // fold d(j,j) into column i, then re-reduce the 2x2 block
            add_col(d, i, j, 1);
            add_col(s.v, i, j, 1);
            bool clean = false;
            while (!clean) {
                clean = true;
                if (d(j, i) != 0) {
                    Int q = d(j, i) / d(i, i);
                    add_row(d, j, i, -q);
                    add_row(s.u, j, i, -q);
                    if (d(j, i) != 0) {
                        swap_rows(d, i, j);
                        swap_rows(s.u, i, j);
                        clean = false;
                        continue;
                    }
                }
                if (d(i, j) != 0) {
                    Int q = d(i, j) / d(i, i);
                    add_col(d, j, i, -q);
                    add_col(s.v, j, i, -q);
                    if (d(i, j) != 0) {
                        swap_cols(d, i, j);
                        swap_cols(s.v, i, j);
                        clean = false;
                    }
                }
            }
            if (d(i, i) < 0) { negate_row(d, i); negate_row(s.u, i); }
            if (d(j, j) < 0) { negate_row(d, j); negate_row(s.u, j); }
        }
    }
    s.invariants.clear();
    for (int i = 0; i < s.rank; ++i) s.invariants.push_back(d(i, i));
    return s;
}

Int det(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    // fraction-free Bareiss elimination
    IntMat a = m;
    int n = m.rows();
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

std::optional<std::vector<Int>> solve_integer(const SmithResult& s, const IntMat& m,
                                              const std::vector<Int>& b) {
    // M x = b  <=>  D y = U b, x = V y
    std::vector<Int> ub = s.u * b;
    std::vector<Int> y(m.cols());
    for (int i = 0; i < int(ub.size()); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.d(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / s.d(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.v * y;
}

std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b) {
    return solve_integer(smith_normal_form(m), m, b);
}

IntMat kernel_basis(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    int k = m.cols() - s.rank;
    IntMat basis(m.cols(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < m.cols(); ++i) basis(i, j) = s.v(i, s.rank + j);
    return basis;
}

std::optional<std::vector<Rat>> solve_rational(const IntMat& m, const std::vector<Rat>& b) {
    SmithResult s = smith_normal_form(m);
    std::vector<Rat> ub(m.rows(), Rat(0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j)
            if (s.u(i, j) != 0) ub[i] += Rat(s.u(i, j)) * b[j];
    std::vector<Rat> y(m.cols(), Rat(0));
    for (int i = 0; i < m.rows(); ++i) {
        if (i < s.rank)
            y[i] = ub[i] / Rat(s.d(i, i));
        else if (ub[i] != Rat(0))
            return std::nullopt;
    }
    std::vector<Rat> x(m.cols(), Rat(0));
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (s.v(i, j) != 0) x[i] += Rat(s.v(i, j)) * y[j];
    return x;
}

std::vector<double> solve_real(const SmithResult& s, const std::vector<double>& b,
                               double* residual) {
    const IntMat& u = s.u;
    std::vector<double> ub(u.rows(), 0.0);
    for (int i = 0; i < u.rows(); ++i)
        for (int j = 0; j < u.cols(); ++j)
            if (u(i, j) != 0) ub[i] += double(u(i, j)) * b[j];
    double res = 0.0;
    std::vector<double> y(s.v.rows(), 0.0);
    for (int i = 0; i < int(ub.size()); ++i) {
        if (i < s.rank)
            y[i] = ub[i] / double(s.d(i, i));
        else
            res = std::max(res, std::abs(ub[i]));
    }
    std::vector<double> x(s.v.rows(), 0.0);
    for (int i = 0; i < s.v.rows(); ++i)
        for (int j = 0; j < s.v.cols(); ++j)
            if (s.v(i, j) != 0) x[i] += double(s.v(i, j)) * y[j];
    if (residual) *residual = res;
    return x;
}

}  // namespace ccs
