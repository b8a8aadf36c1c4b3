#include "ccs/bundle.hpp"

#include <cmath>
#include <stdexcept>

namespace ccs {

namespace {
// path-parameter quadrature; CW along a straight line is polynomial in t of
// degree <= 2k, so 16 points are exact up to roundoff for every desk-scale k
constexpr int kPathQuadOrder = 16;
}  // namespace

Eigen::MatrixXcd GroupChart::deriv(const Eigen::VectorXd& x, int axis, double h) const {
    if (dg) return dg(x, axis);
    Eigen::VectorXd xp = x, xm = x;
    xp[axis] += h;
    xm[axis] -= h;
    return (g(xp) - g(xm)) / (2.0 * h);
}

Form curvature_form(const Form& a, const NumCfg& cfg) {
    Form da = exterior_derivative(a, cfg);
    Form br = form_scale(0.5, wedge_bracket(a, a));
    return form_add(da, br);
}

std::vector<Form> curvature(const BundleAtlas& atlas, const NumCfg& cfg) {
    std::vector<Form> out;
    for (const auto& a : atlas.connection) out.push_back(curvature_form(a, cfg));
    return out;
}

Form chern_weil_of(const InvariantPolynomial& lam, const Form& theta, const NumCfg& cfg) {
    Form f = curvature_form(theta, cfg);
    std::vector<Form> fs(lam.degree, f);
    return lambda_wedge(lam.n, lam.evaluator(), fs);
}

Form chern_weil_form(const InvariantPolynomial& lam, const Form& a, const NumCfg& cfg) {
    return chern_weil_of(lam, a, cfg);
}

std::vector<Form> chern_weil(const InvariantPolynomial& lam, const BundleAtlas& atlas,
                             const NumCfg& cfg) {
    std::vector<Form> out;
    for (const auto& a : atlas.connection) out.push_back(chern_weil_form(lam, a, cfg));
    return out;
}

Form interpolated_connection(const Form& a0, const Form& a1) {
    if (a0.kind != ValueKind::algebra || a1.kind != ValueKind::algebra || a0.alg_n != a1.alg_n ||
        a0.degree != 1 || a1.degree != 1)
        throw std::invalid_argument("interpolated_connection: two algebra 1-forms expected");
    const int n = a0.alg_n;
    Form f0 = a0, f1 = a1;

    auto eval = [f0, f1, n](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        int de = int(pt.x.size());
        double t = pt.x[de - 1];
        ChartPoint base{pt.chart, pt.x.head(de - 1)};
        Eigen::MatrixXd vb = vecs.topRows(de - 1);
        return ((1.0 - t) * f0.a(base, vb) + t * f1.a(base, vb)).eval();
    };
    Form theta = Form::algebra(1, n, eval);

    if (f0.has_analytic_d() && f1.has_analytic_d()) {
        Form d0 = *f0.dform, d1 = *f1.dform;
        auto deval = [f0, f1, d0, d1, n](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
            int de = int(pt.x.size());
            double t = pt.x[de - 1];
            ChartPoint base{pt.chart, pt.x.head(de - 1)};
            Eigen::MatrixXd vb = vecs.topRows(de - 1);
            // spatial part
            Eigen::MatrixXcd out = (1.0 - t) * d0.a(base, vb) + t * d1.a(base, vb);
            // dt ^ (a1 - a0) part
            double ut = vecs(de - 1, 0), vt = vecs(de - 1, 1);
            Eigen::MatrixXd u = vb.col(0), v = vb.col(1);
            Eigen::MatrixXcd dav = f1.a(base, v) - f0.a(base, v);
            Eigen::MatrixXcd dau = f1.a(base, u) - f0.a(base, u);
            out += ut * dav - vt * dau;
            return out.eval();
        };
        theta.with_d(Form::algebra(2, n, deval));
    }
    return theta;
}

Form cs_two_connections(const InvariantPolynomial& lam, const Form& a0, const Form& a1,
                        const NumCfg& cfg) {
    Form theta = interpolated_connection(a0, a1);
    Form cw = chern_weil_of(lam, theta, cfg);
    NumCfg tcfg = cfg;
    tcfg.quad_order = kPathQuadOrder;
    return form_scale(-1.0, fiber_integrate(cw, 0.0, 1.0, tcfg));
}

Form total_connection(const Form& a, int base_dim, const GroupChart& gc, const NumCfg& cfg) {
    if (a.kind != ValueKind::algebra || a.degree != 1)
        throw std::invalid_argument("total_connection: algebra 1-form expected");
    const int n = a.alg_n;
    Form fa = a;
    GroupChart g = gc;
    const int gd = gc.chart.dim;
    double h = cfg.fd_step;

    auto eval = [fa, g, base_dim, gd, n, h](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        Eigen::VectorXd xb = pt.x.head(base_dim);
        Eigen::VectorXd xg = pt.x.tail(gd);
        Eigen::MatrixXcd gm = g.g(xg);
        Eigen::MatrixXcd gi = gm.inverse();
        ChartPoint pb{pt.chart, xb};
        Eigen::MatrixXd vb = vecs.topRows(base_dim);
        Eigen::MatrixXcd av = fa.a(pb, vb);
        // g^{-1} dg contracted with the group part of the tangent vector
        Eigen::MatrixXcd mc = Eigen::MatrixXcd::Zero(n, n);
        for (int ax = 0; ax < gd; ++ax) {
            double c = vecs(base_dim + ax, 0);
            if (c != 0.0) mc += c * g.deriv(xg, ax, h);
        }
        return (gi * av * gm + gi * mc).eval();
    };
    // single tangent argument: vecs is one column
    Form theta = Form::algebra(1, n, [eval](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        return eval(pt, vecs);
    });

    if (fa.has_analytic_d() && g.analytic()) {
        Form da = *fa.dform;
        auto deval = [fa, da, g, base_dim, gd, n](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
            Eigen::VectorXd xb = pt.x.head(base_dim);
            Eigen::VectorXd xg = pt.x.tail(gd);
            Eigen::MatrixXcd gm = g.g(xg);
            Eigen::MatrixXcd gi = gm.inverse();
            ChartPoint pb{pt.chart, xb};
            Eigen::MatrixXd vb = vecs.topRows(base_dim);
            Eigen::MatrixXd u = vb.col(0), v = vb.col(1);

            auto group_d = [&](int col) {
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
                for (int ax = 0; ax < gd; ++ax) {
                    double c = vecs(base_dim + ax, col);
                    if (c != 0.0) m += c * g.dg(xg, ax);
                }
                return (gi * m).eval();  // m_u = g^{-1} Dg[u]
            };
            Eigen::MatrixXcd mu = group_d(0), mv = group_d(1);
            Eigen::MatrixXcd au = fa.a(pb, u), av = fa.a(pb, v);
            Eigen::MatrixXcd qu = gi * au * gm, qv = gi * av * gm;
            Eigen::MatrixXcd dab = gi * da.a(pb, vb) * gm;
            // d(Ad(g^{-1})A + g^{-1}dg) in terms of m and q
            Eigen::MatrixXcd out = dab;
            out += -(mu * qv) + (mv * qu) - (qu * mv) + (qv * mu);
            out += -(mu * mv - mv * mu);
            return out.eval();
        };
        theta.with_d(Form::algebra(2, n, deval));
    }
    return theta;
}

Form cs_of_connection(const InvariantPolynomial& lam, const Form& theta, const NumCfg& cfg) {
    Form zero = Form::zero_algebra(1, theta.alg_n);
    zero.with_d(Form::zero_algebra(2, theta.alg_n));
    return cs_two_connections(lam, zero, theta, cfg);
}

Form cs_one_connection(const InvariantPolynomial& lam, const BundleAtlas& atlas, int base_chart,
                       int group_chart, const NumCfg& cfg) {
    Form theta = total_connection(atlas.connection[base_chart], atlas.base_charts[base_chart].dim,
                                  atlas.group_charts[group_chart], cfg);
    return cs_of_connection(lam, theta, cfg);
}

Form alpha_form(const InvariantPolynomial& lam, const Form& theta0_loc, const Form& theta1_loc,
                const NumCfg& cfg) {
    Form family = interpolated_connection(theta0_loc, theta1_loc);
    Form cs_family = cs_of_connection(lam, family, cfg);
    NumCfg tcfg = cfg;
    tcfg.quad_order = kPathQuadOrder;
    return form_scale(-1.0, fiber_integrate(cs_family, 0.0, 1.0, tcfg));
}

double mod_one(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    return r;
}

double circle_dist(double a, double b) {
    double d = mod_one(a - b);
    return std::min(d, 1.0 - d);
}

CsActionResult cs_action(const InvariantPolynomial& lam, const BundleAtlas& atlas,
                         const std::vector<SectionCell>& cells, const NumCfg& cfg) {
    std::vector<double> per_cell;
    for (const auto& sc : cells) {
        const Chart& bc = atlas.base_charts[sc.base_chart];
        const GroupChart& gc = atlas.group_charts[sc.group_chart];
        Form cs = cs_one_connection(lam, atlas, sc.base_chart, sc.group_chart, cfg);
        Cell cell;
        cell.chart = sc.base_chart;
        cell.dim = sc.dim;
        auto bmap = sc.base_map;
        auto gmap = sc.group_map;
        int bd = bc.dim, gd = gc.chart.dim;
        cell.map = [bmap, gmap, bd, gd](const Eigen::VectorXd& u) {
            Eigen::VectorXd out(bd + gd);
            out.head(bd) = bmap(u);
            out.tail(gd) = gmap(u);
            return out;
        };
        Chain ch;
        ch.add(sc.coeff, cell);
        per_cell.push_back(integrate(cs, ch, cfg));
    }
    CsActionResult r;
    r.raw = pairwise_sum(std::move(per_cell));
    r.mod_one = mod_one(r.raw);
    return r;
}

}  // namespace ccs
