#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ccs {

enum class AlgebraTag { su, so, u };

AlgebraTag algebra_tag_from_string(const std::string& s);
std::string to_string(AlgebraTag t);

/// Element of a matrix Lie algebra. The tag records which defining condition
/// the entries are supposed to satisfy.
struct AlgebraElement {
    Eigen::MatrixXcd m;
    AlgebraTag tag = AlgebraTag::su;

    int n() const { return int(m.rows()); }
};

/// Deviation from the tag's defining condition (max-norm).
double algebra_defect(const Eigen::MatrixXcd& m, AlgebraTag tag);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Symmetric Ad-invariant multilinear functional on a matrix Lie algebra,
/// realized as the polarization of a homogeneous invariant polynomial.
class InvariantPolynomial {
public:
    int degree = 0;
    int n = 0;  // matrix size the polynomial acts on
    AlgebraTag tag = AlgebraTag::su;
    std::string name;  // "chern_2", "half_p1", ...

    std::function<double(const Eigen::MatrixXcd&)> homogeneous;

    /// Full polarization: symmetric and multilinear by construction.
    double operator()(const std::vector<Eigen::MatrixXcd>& args) const;
    /// Closure usable with lambda_wedge.
    std::function<double(const std::vector<Eigen::MatrixXcd>&)> evaluator() const;
};

/// Built-in normalizations. chern_k comes from the t^k coefficient of
/// det(I + (i/2pi) t A); pontryagin_k is (-1)^k chern_{2k} of the
/// complexification; half_p1 on su(2) is -chern_2 under su(2) = spin(3).
InvariantPolynomial standard_polynomial(const std::string& tag, int n);

/// Coefficients over trace monomials: each term is (coeff, partition of the
/// degree), contributing coeff * prod_b tr(A^b) to the homogeneous value
/// (real part).
InvariantPolynomial custom_polynomial(AlgebraTag tag, int n, int degree,
                                      const std::vector<std::pair<double, std::vector<int>>>& terms);

/// Product polynomial (lambda_1 . lambda_2)(A) = lambda_1(A) lambda_2(A).
InvariantPolynomial poly_product(const InvariantPolynomial& a, const InvariantPolynomial& b);

// random sampling for invariance checks
Eigen::MatrixXcd random_algebra(AlgebraTag tag, int n, std::mt19937_64& rng);
Eigen::MatrixXcd random_group(AlgebraTag tag, int n, std::mt19937_64& rng);
Eigen::MatrixXcd ad(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& a);  // g a g^{-1}

}  // namespace ccs
