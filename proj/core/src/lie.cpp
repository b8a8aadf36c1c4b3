#include "ccs/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace ccs {

AlgebraTag algebra_tag_from_string(const std::string& s) {
    if (s == "su") return AlgebraTag::su;
    if (s == "so") return AlgebraTag::so;
    if (s == "u") return AlgebraTag::u;
    throw std::invalid_argument("unknown algebra tag: " + s);
}

std::string to_string(AlgebraTag t) {
    switch (t) {
        case AlgebraTag::su: return "su";
        case AlgebraTag::so: return "so";
        case AlgebraTag::u: return "u";
    }
    return "?";
}

double algebra_defect(const Eigen::MatrixXcd& m, AlgebraTag tag) {
    double d = (m + m.adjoint()).cwiseAbs().maxCoeff();
    switch (tag) {
        case AlgebraTag::su:
            return std::max(d, std::abs(m.trace()));
        case AlgebraTag::u:
            return d;
        case AlgebraTag::so: {
            double im = m.imag().cwiseAbs().maxCoeff();
            double anti = (m.real() + m.real().transpose()).cwiseAbs().maxCoeff();
            return std::max(im, anti);
        }
    }
    return d;
}

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
    if (x.tag != y.tag || x.n() != y.n())
        throw std::invalid_argument("bracket: algebra tag or dimension mismatch");
    return {x.m * y.m - y.m * x.m, x.tag};
}

double InvariantPolynomial::operator()(const std::vector<Eigen::MatrixXcd>& args) const {
    if (int(args.size()) != degree) throw std::invalid_argument("InvariantPolynomial: arity mismatch");
    // polarization: k! lambda(A_1..A_k) = sum_{S subset [k]} (-1)^{k-|S|} L(sum_S A_i)
    const int k = degree;
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    double sum = 0.0;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
        int bits = 0;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                acc += args[i];
                ++bits;
            }
        double term = homogeneous(acc);
        sum += ((k - bits) % 2 == 0 ? term : -term);
    }
    return sum / fact;
}

std::function<double(const std::vector<Eigen::MatrixXcd>&)> InvariantPolynomial::evaluator() const {
    InvariantPolynomial self = *this;
    return [self](const std::vector<Eigen::MatrixXcd>& args) { return self(args); };
}

namespace {

// elementary symmetric function e_k of the eigenvalues of M, via Newton's
// identities on the power sums tr(M^j)
std::complex<double> elementary_symmetric(const Eigen::MatrixXcd& m, int k) {
    std::vector<std::complex<double>> p(k + 1), e(k + 1);
    Eigen::MatrixXcd pow = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    for (int j = 1; j <= k; ++j) {
        pow = pow * m;
        p[j] = pow.trace();
    }
    e[0] = 1.0;
    for (int i = 1; i <= k; ++i) {
        std::complex<double> acc = 0.0;
        for (int j = 1; j <= i; ++j) acc += (j % 2 == 1 ? 1.0 : -1.0) * e[i - j] * p[j];
        e[i] = acc / double(i);
    }
    return e[k];
}

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

InvariantPolynomial standard_polynomial(const std::string& tag, int n) {
    InvariantPolynomial p;
    p.n = n;
    p.name = tag;
    if (tag.rfind("chern_", 0) == 0) {
        int k = std::stoi(tag.substr(6));
        if (k < 1 || k > n) throw std::invalid_argument("chern_k needs 1 <= k <= n");
        p.degree = k;
        p.tag = AlgebraTag::u;  // valid on su as well
        p.homogeneous = [k](const Eigen::MatrixXcd& a) {
            Eigen::MatrixXcd m = (std::complex<double>(0.0, 1.0) / kTwoPi) * a;
            return elementary_symmetric(m, k).real();
        };
        return p;
    }
    if (tag.rfind("pontryagin_", 0) == 0) {
        int k = std::stoi(tag.substr(11));
        if (2 * k > n) throw std::invalid_argument("pontryagin_k needs 2k <= n");
        p.degree = 2 * k;
        p.tag = AlgebraTag::so;
        int sgn = (k % 2 == 0) ? 1 : -1;
        p.homogeneous = [k, sgn](const Eigen::MatrixXcd& a) {
            Eigen::MatrixXcd m = (std::complex<double>(0.0, 1.0) / kTwoPi) * a;
            return sgn * elementary_symmetric(m, 2 * k).real();
        };
        return p;
    }
    if (tag == "half_p1") {
        if (n != 2) throw std::invalid_argument("half_p1 is the su(2) = spin(3) normalization");
        p.degree = 2;
        p.tag = AlgebraTag::su;
        p.homogeneous = [](const Eigen::MatrixXcd& a) {
            Eigen::MatrixXcd m = (std::complex<double>(0.0, 1.0) / kTwoPi) * a;
            return -elementary_symmetric(m, 2).real();
        };
        return p;
    }
    throw std::invalid_argument("unsupported polynomial tag: " + tag);
}

InvariantPolynomial custom_polynomial(AlgebraTag tag, int n, int degree,
                                      const std::vector<std::pair<double, std::vector<int>>>& terms) {
    for (const auto& [c, part] : terms) {
        int s = 0;
        for (int b : part) s += b;
        if (s != degree) throw std::invalid_argument("custom polynomial: partition does not sum to degree");
    }
    InvariantPolynomial p;
    p.n = n;
    p.tag = tag;
    p.degree = degree;
    p.name = "custom";
    p.homogeneous = [terms](const Eigen::MatrixXcd& a) {
        double total = 0.0;
        for (const auto& [c, part] : terms) {
            std::complex<double> prod = 1.0;
            for (int b : part) {
                Eigen::MatrixXcd pow = a;
                for (int i = 1; i < b; ++i) pow = pow * a;
                prod *= pow.trace();
            }
            total += c * prod.real();
        }
        return total;
    };
    return p;
}

InvariantPolynomial poly_product(const InvariantPolynomial& a, const InvariantPolynomial& b) {
    if (a.n != b.n) throw std::invalid_argument("poly_product: size mismatch");
    InvariantPolynomial p;
    p.n = a.n;
    p.tag = a.tag;
    p.degree = a.degree + b.degree;
    p.name = a.name + "*" + b.name;
    auto fa = a.homogeneous, fb = b.homogeneous;
    p.homogeneous = [fa, fb](const Eigen::MatrixXcd& m) { return fa(m) * fb(m); };
    return p;
}

Eigen::MatrixXcd random_algebra(AlgebraTag tag, int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    if (tag == AlgebraTag::so) {
        Eigen::MatrixXd r(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = g(rng);
        Eigen::MatrixXd a = (r - r.transpose()) / 2.0;
        return a.cast<std::complex<double>>();
    }
    Eigen::MatrixXcd r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = std::complex<double>(g(rng), g(rng));
    Eigen::MatrixXcd a = (r - r.adjoint()) / 2.0;
    if (tag == AlgebraTag::su) {
        std::complex<double> tr = a.trace() / double(n);
        a -= tr * Eigen::MatrixXcd::Identity(n, n);
    }
    return a;
}

Eigen::MatrixXcd random_group(AlgebraTag tag, int n, std::mt19937_64& rng) {
    Eigen::MatrixXcd a = random_algebra(tag, n, rng);
    // a is anti-Hermitian: exp(a) through the spectral decomposition of -i a
    Eigen::MatrixXcd h = std::complex<double>(0.0, -1.0) * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phase(n);
    for (int i = 0; i < n; ++i)
        phase[i] = std::exp(std::complex<double>(0.0, es.eigenvalues()[i]));
    Eigen::MatrixXcd gmat = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
    if (tag == AlgebraTag::so) return gmat.real().cast<std::complex<double>>();
    return gmat;
}

Eigen::MatrixXcd ad(const Eigen::MatrixXcd& g, const Eigen::MatrixXcd& a) {
    return g * a * g.inverse();
}

}  // namespace ccs
