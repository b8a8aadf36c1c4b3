#include "ccs/geometry.hpp"

#include <future>
#include <stdexcept>

namespace ccs {

Chart Chart::box(std::string name, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Chart c;
    c.name = std::move(name);
    c.dim = int(lo.size());
    c.lo = lo;
    c.hi = hi;
    c.periodic.assign(c.dim, 0);
    return c;
}

Chart Chart::cube(std::string name, int dim, double half_width) {
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, -half_width);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, half_width);
    return box(std::move(name), lo, hi);
}

Form Form::scalar(int degree, std::function<double(const ChartPoint&, const Eigen::MatrixXd&)> f) {
    Form w;
    w.degree = degree;
    w.kind = ValueKind::scalar;
    w.sval = std::move(f);
    return w;
}

Form Form::algebra(int degree, int n,
                   std::function<Eigen::MatrixXcd(const ChartPoint&, const Eigen::MatrixXd&)> f) {
    Form w;
    w.degree = degree;
    w.kind = ValueKind::algebra;
    w.alg_n = n;
    w.aval = std::move(f);
    return w;
}

Form Form::zero_scalar(int degree) {
    return scalar(degree, [](const ChartPoint&, const Eigen::MatrixXd&) { return 0.0; });
}

Form Form::zero_algebra(int degree, int n) {
    return algebra(degree, n, [n](const ChartPoint&, const Eigen::MatrixXd&) {
        return Eigen::MatrixXcd::Zero(n, n).eval();
    });
}

Form& Form::with_d(Form d) {
    dform = std::make_shared<const Form>(std::move(d));
    return *this;
}

Eigen::MatrixXd SmoothMap::jacobian(const Eigen::VectorXd& x, double h) const {
    if (jac) return jac(x);
    int n = int(x.size());
    Eigen::VectorXd fx = f(x);
    Eigen::MatrixXd j(fx.size(), n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        j.col(i) = (f(xp) - f(xm)) / (2.0 * h);
    }
    return j;
}

Eigen::MatrixXd Cell::jacobian(const Eigen::VectorXd& u, double h) const {
    if (jac) return jac(u);
    Eigen::VectorXd fu = map(u);
    Eigen::MatrixXd j(fu.size(), dim);
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd up = u, um = u;
        up[i] += h;
        um[i] -= h;
        j.col(i) = (map(up) - map(um)) / (2.0 * h);
    }
    return j;
}

void Chain::add(long coeff, Cell c) {
    if (terms.empty()) dim = c.dim;
    if (c.dim != dim) throw std::invalid_argument("Chain: mixed cell dimensions");
    terms.emplace_back(coeff, std::move(c));
}

Form exterior_derivative(const Form& w, const NumCfg& cfg) {
    if (w.has_analytic_d()) return *w.dform;
    const double h = cfg.fd_step;
    int p = w.degree;
    if (w.kind == ValueKind::scalar) {
        Form src = w;
        return Form::scalar(p + 1, [src, p, h](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
            double sum = 0.0;
            Eigen::MatrixXd rest(vecs.rows(), p);
            for (int i = 0; i <= p; ++i) {
                int c = 0;
                for (int j = 0; j <= p; ++j)
                    if (j != i) rest.col(c++) = vecs.col(j);
                ChartPoint pp = pt, pm = pt;
                pp.x += h * vecs.col(i);
                pm.x -= h * vecs.col(i);
                double der = (src.s(pp, rest) - src.s(pm, rest)) / (2.0 * h);
                sum += (i % 2 == 0 ? der : -der);
            }
            return sum;
        });
    }
    Form src = w;
    int n = w.alg_n;
    return Form::algebra(p + 1, n, [src, p, h, n](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
        Eigen::MatrixXd rest(vecs.rows(), p);
        for (int i = 0; i <= p; ++i) {
            int c = 0;
            for (int j = 0; j <= p; ++j)
                if (j != i) rest.col(c++) = vecs.col(j);
            ChartPoint pp = pt, pm = pt;
            pp.x += h * vecs.col(i);
            pm.x -= h * vecs.col(i);
            Eigen::MatrixXcd der = (src.a(pp, rest) - src.a(pm, rest)) / (2.0 * h);
            sum += (i % 2 == 0 ? 1.0 : -1.0) * der;
        }
        return sum;
    });
}

Form form_add(const Form& a, const Form& b) {
    if (a.degree != b.degree || a.kind != b.kind)
        throw std::invalid_argument("form_add: degree or kind mismatch");
    Form r;
    if (a.kind == ValueKind::scalar) {
        Form fa = a, fb = b;
        r = Form::scalar(a.degree, [fa, fb](const ChartPoint& p, const Eigen::MatrixXd& v) {
            return fa.s(p, v) + fb.s(p, v);
        });
    } else {
        Form fa = a, fb = b;
        r = Form::algebra(a.degree, a.alg_n, [fa, fb](const ChartPoint& p, const Eigen::MatrixXd& v) {
            return (fa.a(p, v) + fb.a(p, v)).eval();
        });
    }
    if (a.has_analytic_d() && b.has_analytic_d()) r.with_d(form_add(*a.dform, *b.dform));
    return r;
}

Form form_scale(double c, const Form& a) {
    Form r;
    if (a.kind == ValueKind::scalar) {
        Form fa = a;
        r = Form::scalar(a.degree,
                         [fa, c](const ChartPoint& p, const Eigen::MatrixXd& v) { return c * fa.s(p, v); });
    } else {
        Form fa = a;
        r = Form::algebra(a.degree, a.alg_n, [fa, c](const ChartPoint& p, const Eigen::MatrixXd& v) {
            return (c * fa.a(p, v)).eval();
        });
    }
    if (a.has_analytic_d()) r.with_d(form_scale(c, *a.dform));
    return r;
}

Form form_scale(std::complex<double> c, const Form& a) {
    if (a.kind != ValueKind::algebra) throw std::invalid_argument("complex scale needs algebra form");
    Form fa = a;
    Form r = Form::algebra(a.degree, a.alg_n, [fa, c](const ChartPoint& p, const Eigen::MatrixXd& v) {
        return (c * fa.a(p, v)).eval();
    });
    if (a.has_analytic_d()) r.with_d(form_scale(c, *a.dform));
    return r;
}

namespace {

// (p,q)-shuffles with signs: selections of which argument slots feed the
// first factor, in order.
struct Shuffle {
    std::vector<int> first, second;
    int sign;
};

std::vector<Shuffle> shuffles(int p, int q) {
    std::vector<Shuffle> out;
    int n = p + q;
    std::vector<int> idx(p);
    // enumerate p-subsets of {0..n-1} in lexicographic order
    for (int i = 0; i < p; ++i) idx[i] = i;
    while (true) {
        Shuffle s;
        s.first = idx;
        std::vector<char> used(n, 0);
        for (int i : idx) used[i] = 1;
        for (int i = 0; i < n; ++i)
            if (!used[i]) s.second.push_back(i);
        // parity of the permutation [first, second]
        std::vector<int> perm = s.first;
        perm.insert(perm.end(), s.second.begin(), s.second.end());
        int inv = 0;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inv;
        s.sign = (inv % 2 == 0) ? 1 : -1;
        out.push_back(std::move(s));
        // next subset
        int i = p - 1;
        while (i >= 0 && idx[i] == n - p + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// ordered partitions of {0..n-1} into blocks of sizes p_0..p_{m-1}, with sign
void block_shuffles(const std::vector<int>& sizes, std::vector<std::vector<std::vector<int>>>& blocks_out,
                    std::vector<int>& signs_out) {
    int n = 0;
    for (int s : sizes) n += s;
    std::vector<int> perm;
    std::vector<std::vector<int>> blocks(sizes.size());
    std::function<void(int, std::vector<int>&)> rec = [&](int b, std::vector<int>& avail) {
        if (b == int(sizes.size())) {
            std::vector<int> flat;
            for (auto& blk : blocks) flat.insert(flat.end(), blk.begin(), blk.end());
            int inv = 0;
            for (size_t i = 0; i < flat.size(); ++i)
                for (size_t j = i + 1; j < flat.size(); ++j)
                    if (flat[i] > flat[j]) ++inv;
            blocks_out.push_back(blocks);
            signs_out.push_back(inv % 2 == 0 ? 1 : -1);
            return;
        }
        // choose sizes[b] elements of avail in increasing order
        int k = sizes[b];
        std::vector<int> sel(k);
        std::function<void(int, int)> choose = [&](int start, int depth) {
            if (depth == k) {
                blocks[b].assign(sel.begin(), sel.end());
                std::vector<int> rest;
                for (int x : avail)
                    if (std::find(sel.begin(), sel.end(), x) == sel.end()) rest.push_back(x);
                rec(b + 1, rest);
                return;
            }
            for (int i = start; i < int(avail.size()); ++i) {
                sel[depth] = avail[i];
                choose(i + 1, depth + 1);
            }
        };
        choose(0, 0);
    };
    std::vector<int> avail(n);
    for (int i = 0; i < n; ++i) avail[i] = i;
    rec(0, avail);
}

}  // namespace

Form wedge(const Form& a, const Form& b) {
    if (a.kind != ValueKind::scalar || b.kind != ValueKind::scalar)
        throw std::invalid_argument("wedge: scalar forms expected (use wedge_bracket/lambda_wedge)");
    Form fa = a, fb = b;
    int p = a.degree, q = b.degree;
    auto sh = shuffles(p, q);
    Form r = Form::scalar(p + q, [fa, fb, sh, p, q](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        double sum = 0.0;
        Eigen::MatrixXd va(vecs.rows(), p), vb(vecs.rows(), q);
        for (const auto& s : sh) {
            for (int i = 0; i < p; ++i) va.col(i) = vecs.col(s.first[i]);
            for (int i = 0; i < q; ++i) vb.col(i) = vecs.col(s.second[i]);
            sum += s.sign * fa.s(pt, va) * fb.s(pt, vb);
        }
        return sum;
    });
    return r;
}

Form wedge_bracket(const Form& a, const Form& b) {
    if (a.kind != ValueKind::algebra || b.kind != ValueKind::algebra || a.alg_n != b.alg_n)
        throw std::invalid_argument("wedge_bracket: matching algebra forms expected");
    Form fa = a, fb = b;
    int p = a.degree, q = b.degree, n = a.alg_n;
    auto sh = shuffles(p, q);
    return Form::algebra(p + q, n, [fa, fb, sh, p, q, n](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
        Eigen::MatrixXd va(vecs.rows(), p), vb(vecs.rows(), q);
        for (const auto& s : sh) {
            for (int i = 0; i < p; ++i) va.col(i) = vecs.col(s.first[i]);
            for (int i = 0; i < q; ++i) vb.col(i) = vecs.col(s.second[i]);
            Eigen::MatrixXcd x = fa.a(pt, va), y = fb.a(pt, vb);
            sum += double(s.sign) * (x * y - y * x);
        }
        return sum.eval();
    });
}

Form lambda_wedge(int alg_n, std::function<double(const std::vector<Eigen::MatrixXcd>&)> lam,
                  const std::vector<Form>& forms) {
    std::vector<int> sizes;
    int total = 0;
    for (const auto& f : forms) {
        if (f.kind != ValueKind::algebra || f.alg_n != alg_n)
            throw std::invalid_argument("lambda_wedge: algebra forms of one size expected");
        sizes.push_back(f.degree);
        total += f.degree;
    }
    std::vector<std::vector<std::vector<int>>> blocks;
    std::vector<int> signs;
    block_shuffles(sizes, blocks, signs);
    std::vector<Form> fs = forms;
    return Form::scalar(total, [fs, lam, blocks, signs, sizes](const ChartPoint& pt,
                                                               const Eigen::MatrixXd& vecs) {
        std::vector<double> terms;
        terms.reserve(blocks.size());
        std::vector<Eigen::MatrixXcd> args(fs.size());
        for (size_t t = 0; t < blocks.size(); ++t) {
            for (size_t b = 0; b < fs.size(); ++b) {
                Eigen::MatrixXd v(vecs.rows(), sizes[b]);
                for (int i = 0; i < sizes[b]; ++i) v.col(i) = vecs.col(blocks[t][b][i]);
                args[b] = fs[b].a(pt, v);
            }
            terms.push_back(signs[t] * lam(args));
        }
        return pairwise_sum(std::move(terms));
    });
}

Form pullback(const SmoothMap& f, const Form& w, const NumCfg& cfg) {
    Form src = w;
    SmoothMap map = f;
    double h = cfg.fd_step;
    Form r;
    if (w.kind == ValueKind::scalar) {
        r = Form::scalar(w.degree, [src, map, h](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
            ChartPoint q{map.to_chart, map.f(pt.x)};
            Eigen::MatrixXd j = map.jacobian(pt.x, h);
            return src.s(q, j * vecs);
        });
    } else {
        r = Form::algebra(w.degree, w.alg_n, [src, map, h](const ChartPoint& pt, const Eigen::MatrixXd& vecs) {
            ChartPoint q{map.to_chart, map.f(pt.x)};
            Eigen::MatrixXd j = map.jacobian(pt.x, h);
            return src.a(q, j * vecs);
        });
    }
    if (w.has_analytic_d()) r.with_d(pullback(f, *w.dform, cfg));
    return r;
}

Form fiber_integrate(const Form& w, double t_lo, double t_hi, const NumCfg& cfg) {
    if (w.degree < 1) throw std::invalid_argument("fiber_integrate: degree must be >= 1");
    Form src = w;
    int p = w.degree;
    int order = cfg.quad_order;
    double sign = (p - 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^{p-1}
    if (w.kind == ValueKind::scalar) {
        return Form::scalar(p - 1, [src, p, order, t_lo, t_hi, sign](const ChartPoint& pt,
                                                                     const Eigen::MatrixXd& vecs) {
            const GaussRule& g = gauss_rule(order);
            int dim_ext = int(pt.x.size()) + 1;
            Eigen::MatrixXd ve = Eigen::MatrixXd::Zero(dim_ext, p);
            ve(dim_ext - 1, 0) = 1.0;  // fiber direction in the first slot
            for (int c = 0; c + 1 < p + 0; ++c) ve.block(0, c + 1, dim_ext - 1, 1) = vecs.col(c);
            ChartPoint q;
            q.chart = pt.chart;
            q.x.resize(dim_ext);
            q.x.head(dim_ext - 1) = pt.x;
            std::vector<double> terms(g.nodes.size());
            double len = t_hi - t_lo;
            for (size_t k = 0; k < g.nodes.size(); ++k) {
                q.x[dim_ext - 1] = t_lo + len * g.nodes[k];
                terms[k] = g.weights[k] * len * src.s(q, ve);
            }
            return sign * pairwise_sum(std::move(terms));
        });
    }
    int n = w.alg_n;
    return Form::algebra(p - 1, n, [src, p, n, order, t_lo, t_hi, sign](const ChartPoint& pt,
                                                                        const Eigen::MatrixXd& vecs) {
        const GaussRule& g = gauss_rule(order);
        int dim_ext = int(pt.x.size()) + 1;
        Eigen::MatrixXd ve = Eigen::MatrixXd::Zero(dim_ext, p);
        ve(dim_ext - 1, 0) = 1.0;
        for (int c = 0; c + 1 < p + 0; ++c) ve.block(0, c + 1, dim_ext - 1, 1) = vecs.col(c);
        ChartPoint q;
        q.chart = pt.chart;
        q.x.resize(dim_ext);
        q.x.head(dim_ext - 1) = pt.x;
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
        double len = t_hi - t_lo;
        for (size_t k = 0; k < g.nodes.size(); ++k) {
            q.x[dim_ext - 1] = t_lo + len * g.nodes[k];
            acc += g.weights[k] * len * src.a(q, ve);
        }
        return (sign * acc).eval();
    });
}

void for_each_quad_node(const Cell& cell, const NumCfg& cfg,
                        const std::function<void(const ChartPoint&, const Eigen::MatrixXd&, double)>& fn) {
    const GaussRule& g = gauss_rule(cfg.quad_order);
    int p = cell.dim;
    if (p == 0) {
        ChartPoint pt{cell.chart, cell.map(Eigen::VectorXd::Zero(0))};
        fn(pt, Eigen::MatrixXd::Zero(pt.x.size(), 0), 1.0);
        return;
    }
    std::vector<size_t> idx(p, 0);
    size_t total = 1;
    for (int i = 0; i < p; ++i) total *= g.nodes.size();
    Eigen::VectorXd u(p);
    for (size_t lin = 0; lin < total; ++lin) {
        size_t rest = lin;
        double wgt = 1.0;
        for (int i = 0; i < p; ++i) {
            idx[i] = rest % g.nodes.size();
            rest /= g.nodes.size();
            u[i] = g.nodes[idx[i]];
            wgt *= g.weights[idx[i]];
        }
        ChartPoint pt{cell.chart, cell.map(u)};
        Eigen::MatrixXd j = cell.jacobian(u, cfg.fd_step);
        fn(pt, j, wgt);
    }
}

namespace {

double integrate_cell(const Form& w, const Cell& cell, const NumCfg& cfg) {
    if (w.degree != cell.dim) throw std::invalid_argument("integrate: form degree != cell dimension");
    if (cell.dim == 0) {
        ChartPoint pt{cell.chart, cell.map(Eigen::VectorXd::Zero(0))};
        return w.s(pt, Eigen::MatrixXd::Zero(pt.x.size(), 0));
    }
    std::vector<double> terms;
    for_each_quad_node(cell, cfg, [&](const ChartPoint& pt, const Eigen::MatrixXd& j, double wgt) {
        terms.push_back(wgt * w.s(pt, j));
    });
    return pairwise_sum(std::move(terms));
}

}  // namespace

double integrate(const Form& w, const Chain& chain, const NumCfg& cfg) {
    if (w.kind != ValueKind::scalar) throw std::invalid_argument("integrate: scalar form expected");
    std::vector<double> per_cell(chain.terms.size(), 0.0);
    if (cfg.jobs > 1 && chain.terms.size() > 1) {
        std::vector<std::future<double>> futs;
        futs.reserve(chain.terms.size());
        for (const auto& [coeff, cell] : chain.terms)
            futs.push_back(std::async(std::launch::async,
                                      [&w, &cfg, coeff = coeff, cell = cell] {
                                          return double(coeff) * integrate_cell(w, cell, cfg);
                                      }));
        for (size_t i = 0; i < futs.size(); ++i) per_cell[i] = futs[i].get();
    } else {
        for (size_t i = 0; i < chain.terms.size(); ++i)
            per_cell[i] = double(chain.terms[i].first) * integrate_cell(w, chain.terms[i].second, cfg);
    }
    return pairwise_sum(std::move(per_cell));
}

Eigen::MatrixXcd integrate_algebra(const Form& w, const Chain& chain, const NumCfg& cfg) {
    if (w.kind != ValueKind::algebra) throw std::invalid_argument("integrate_algebra: algebra form expected");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(w.alg_n, w.alg_n);
    for (const auto& [coeff, cell] : chain.terms) {
        if (w.degree != cell.dim) throw std::invalid_argument("integrate: form degree != cell dimension");
        Eigen::MatrixXcd cell_acc = Eigen::MatrixXcd::Zero(w.alg_n, w.alg_n);
        for_each_quad_node(cell, cfg, [&](const ChartPoint& pt, const Eigen::MatrixXd& j, double wgt) {
            cell_acc += wgt * w.a(pt, j);
        });
        acc += double(coeff) * cell_acc;
    }
    return acc;
}

}  // namespace ccs
