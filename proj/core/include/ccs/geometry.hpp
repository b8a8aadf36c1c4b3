#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ccs/quadrature.hpp"

namespace ccs {

/// Numerical knobs shared across the library. `fd_step` is the central
/// difference step for exterior derivatives and Jacobians without an
/// analytic rule.
struct NumCfg {
    int quad_order = 8;
    double fd_step = 1e-4;
    int jobs = 1;
};

/// Coordinate box. The embedding (if any) lives with the objects defined on
/// the chart; a chart by itself is only a named parameter domain. Periodic
/// axes are metadata used by model builders and test-form generators.
struct Chart {
    std::string name;
    int dim = 0;
    Eigen::VectorXd lo, hi;
    std::vector<int> periodic;  // per-axis flag

    static Chart box(std::string name, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
    static Chart cube(std::string name, int dim, double half_width);
};

struct ChartPoint {
    int chart = 0;
    Eigen::VectorXd x;
};

enum class ValueKind { scalar, algebra };

/// Differential form as an evaluator: degree-p antisymmetric map taking a
/// chart point and p tangent columns. Scalar- or Lie-algebra-valued.
/// An analytic exterior derivative can be attached; otherwise d falls back
/// to central finite differences.
class Form {
public:
    int degree = 0;
    ValueKind kind = ValueKind::scalar;
    int alg_n = 0;  // matrix size for algebra-valued forms

    std::function<double(const ChartPoint&, const Eigen::MatrixXd&)> sval;
    std::function<Eigen::MatrixXcd(const ChartPoint&, const Eigen::MatrixXd&)> aval;
    std::shared_ptr<const Form> dform;

    static Form scalar(int degree,
                       std::function<double(const ChartPoint&, const Eigen::MatrixXd&)> f);
    static Form algebra(int degree, int n,
                        std::function<Eigen::MatrixXcd(const ChartPoint&, const Eigen::MatrixXd&)> f);
    static Form zero_scalar(int degree);
    static Form zero_algebra(int degree, int n);

    bool has_analytic_d() const { return dform != nullptr; }
    Form& with_d(Form d);

    double s(const ChartPoint& p, const Eigen::MatrixXd& vecs) const { return sval(p, vecs); }
    Eigen::MatrixXcd a(const ChartPoint& p, const Eigen::MatrixXd& vecs) const { return aval(p, vecs); }
};

/// Smooth map between chart domains, with optional analytic Jacobian.
struct SmoothMap {
    int from_chart = 0;
    int to_chart = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> f;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac;  // optional

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, double h) const;
};

/// Parametrized cube [0,1]^p into a chart.
struct Cell {
    int chart = 0;
    int dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> map;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jac;  // optional

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u, double h) const;
};

/// Integer combination of cells of one dimension.
struct Chain {
    int dim = 0;
    std::vector<std::pair<long, Cell>> terms;  // (coefficient incl. orientation, cell)

    void add(long coeff, Cell c);
};

// ---- exterior calculus ----

Form exterior_derivative(const Form& w, const NumCfg& cfg);
Form form_add(const Form& a, const Form& b);
Form form_scale(double c, const Form& a);
Form form_scale(std::complex<double> c, const Form& a);

/// Shuffle-sum wedge of scalar forms.
Form wedge(const Form& a, const Form& b);
/// [a ^ b] with the matrix commutator pairing; for 1-forms this gives
/// [a^b](u,v) = [a(u),b(v)] - [a(v),b(u)].
Form wedge_bracket(const Form& a, const Form& b);
/// Contraction of m algebra-valued forms through a symmetric multilinear
/// functional, shuffle-summed to degree sum(p_i).
Form lambda_wedge(int alg_n,
                  std::function<double(const std::vector<Eigen::MatrixXcd>&)> lam,
                  const std::vector<Form>& forms);

Form pullback(const SmoothMap& f, const Form& w, const NumCfg& cfg);

enum class FiberKind { interval, circle };

/// Fiber integration over the last coordinate of an extended chart.
/// Convention: the fiber slot is contracted first and
///   fint(w)(v_1..v_{p-1}) = (-1)^{p-1} \int w(e_t, v_1..v_{p-1}) dt
/// over the axis range [t_lo, t_hi].
Form fiber_integrate(const Form& w, double t_lo, double t_hi, const NumCfg& cfg);

double integrate(const Form& w, const Chain& chain, const NumCfg& cfg);
Eigen::MatrixXcd integrate_algebra(const Form& w, const Chain& chain, const NumCfg& cfg);

/// All-axis tensor Gauss points of a cell; `fn` receives (point, jacobian
/// columns, weight). Used by the integrators and a few verification loops.
void for_each_quad_node(const Cell& cell, const NumCfg& cfg,
                        const std::function<void(const ChartPoint&, const Eigen::MatrixXd&, double)>& fn);

}  // namespace ccs
