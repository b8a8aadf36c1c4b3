#pragma once

#include <optional>

#include "ccs/geometry.hpp"
#include "ccs/lie.hpp"

namespace ccs {

/// Fiber coordinate system: a chart together with the group-element map and
/// its analytic partials (finite differences when absent).
struct GroupChart {
    Chart chart;
    AlgebraTag tag = AlgebraTag::su;
    int n = 0;
    std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> g;
    std::function<Eigen::MatrixXcd(const Eigen::VectorXd&, int)> dg;  // d g / d x_axis

    Eigen::MatrixXcd deriv(const Eigen::VectorXd& x, int axis, double h) const;
    bool analytic() const { return bool(dg); }
};

/// Transition g_ij between two base charts; `sample_points` are overlap
/// samples in `from` coordinates used by the validation suite.
struct Transition {
    int from = 0, to = 0;
    SmoothMap point_map;
    std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)> g;
    std::vector<Eigen::VectorXd> sample_points;
};

/// Principal bundle through local trivialization data.
struct BundleAtlas {
    std::string name;
    std::vector<Chart> base_charts;
    AlgebraTag tag = AlgebraTag::su;
    int n = 0;
    std::vector<Form> connection;          // algebra-valued 1-form per base chart
    std::vector<GroupChart> group_charts;  // at least one for total-space work
    std::vector<Transition> transitions;
};

/// F = dA + 1/2 [A ^ A] from the local connection form of one chart.
Form curvature_form(const Form& a, const NumCfg& cfg);
std::vector<Form> curvature(const BundleAtlas& atlas, const NumCfg& cfg);

/// lambda(F^k), the closed scalar 2k-form on the base (per chart).
Form chern_weil_form(const InvariantPolynomial& lam, const Form& a, const NumCfg& cfg);
std::vector<Form> chern_weil(const InvariantPolynomial& lam, const BundleAtlas& atlas, const NumCfg& cfg);

/// Straight-line interpolation of two connection forms, as a form on the
/// chart extended by the path parameter as last coordinate.
Form interpolated_connection(const Form& a0, const Form& a1);

/// Chern-Weil form of a connection form living on any chart (used on
/// extended charts; identical to chern_weil_form).
Form chern_weil_of(const InvariantPolynomial& lam, const Form& theta, const NumCfg& cfg);

/// CS(theta_0, theta_1) = -fint_{[0,1]} CW of the straight-line connection.
Form cs_two_connections(const InvariantPolynomial& lam, const Form& a0, const Form& a1,
                        const NumCfg& cfg);

/// Local connection form of the bundle on a total chart
/// (base chart x group chart): Ad(g^{-1}) A + g^{-1} dg. Tangent layout:
/// base coordinates first, group coordinates last.
Form total_connection(const Form& a, int base_dim, const GroupChart& gc, const NumCfg& cfg);

/// CS form of a single connection form: CS(0, theta) where 0 plays the
/// tautological flat connection in the section-induced trivialization;
/// d CS = CW(theta) by construction.
Form cs_of_connection(const InvariantPolynomial& lam, const Form& theta, const NumCfg& cfg);

/// CS form of the bundle on a total chart.
Form cs_one_connection(const InvariantPolynomial& lam, const BundleAtlas& atlas, int base_chart,
                       int group_chart, const NumCfg& cfg);

/// alpha(theta_0, theta_1) = -fint_{[0,1]} CS of the straight-line family of
/// total connections; satisfies CS_1 - CS_0 = -d alpha + pi^* CS(theta_0, theta_1).
Form alpha_form(const InvariantPolynomial& lam, const Form& theta0_loc, const Form& theta1_loc,
                const NumCfg& cfg);

/// One cell of a mapped-in chain with a section: u -> (base point, group point).
struct SectionCell {
    long coeff = 1;
    int base_chart = 0;
    int group_chart = 0;
    int dim = 0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> base_map;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> group_map;
};

struct CsActionResult {
    double raw = 0.0;      // integral of sigma^* CS before reduction
    double mod_one = 0.0;  // in [0,1)
};

/// Chern-Simons action: integral of sigma^* CS over the mapped chain, mod 1.
CsActionResult cs_action(const InvariantPolynomial& lam, const BundleAtlas& atlas,
                         const std::vector<SectionCell>& cells, const NumCfg& cfg);

double mod_one(double x);
/// distance on the circle R/Z
double circle_dist(double a, double b);

}  // namespace ccs
