#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace ccs {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense integer matrix with arbitrary-precision entries.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    IntMat transposed() const;
    bool is_zero() const;
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    friend IntMat operator*(const IntMat& x, const IntMat& y);
    friend IntMat operator+(const IntMat& x, const IntMat& y);
    friend IntMat operator-(const IntMat& x, const IntMat& y);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

std::vector<Int> operator*(const IntMat& m, const std::vector<Int>& v);

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dr.
struct SmithResult {
    IntMat u, d, v;
    int rank = 0;                  // number of nonzero diagonal entries
    std::vector<Int> invariants;   // the nonzero diagonal of D, divisibility chain
};

SmithResult smith_normal_form(const IntMat& m);

Int det(const IntMat& m);

/// One integer solution of M x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IntMat& m, const std::vector<Int>& b);
std::optional<std::vector<Int>> solve_integer(const SmithResult& s, const IntMat& m,
                                              const std::vector<Int>& b);

/// Lattice basis of { x : M x = 0 }, as columns.
IntMat kernel_basis(const IntMat& m);

/// Rational solve M x = b (consistent systems only).
std::optional<std::vector<Rat>> solve_rational(const IntMat& m, const std::vector<Rat>& b);

/// Minimum-norm-ish double solve of M x = b via the Smith decomposition; the
/// residual of the returned solution is reported through *residual when given.
std::vector<double> solve_real(const SmithResult& s, const std::vector<double>& b,
                               double* residual = nullptr);

}  // namespace ccs
