#include "ccs/complexes.hpp"

#include <stdexcept>

namespace ccs {

IntMat ChainComplex::partial(int k) const {
    if (k >= 1 && k <= top() && boundary[k].cols() == ranks[k]) return boundary[k];
    return IntMat::zero(rank(k - 1), rank(k));
}

IntMat ChainComplex::delta(int k) const { return partial(k + 1).transposed(); }

void ChainComplex::validate() const {
    if (int(boundary.size()) != int(ranks.size()))
        throw std::invalid_argument("ChainComplex: boundary/ranks size mismatch");
    for (int k = 1; k <= top(); ++k) {
        if (boundary[k].rows() != rank(k - 1) || boundary[k].cols() != rank(k))
            throw std::invalid_argument("ChainComplex: boundary matrix shape mismatch");
        if (k >= 2 && !(partial(k - 1) * partial(k)).is_zero())
            throw std::invalid_argument("ChainComplex: d o d != 0");
    }
}

IntMat ChainComplex::cycle_basis(int k) const { return kernel_basis(partial(k)); }

IntMat ChainMapData::at(int k, int rows, int cols) const {
    if (k >= 0 && k < int(f.size()) && f[k].rows() == rows && f[k].cols() == cols) return f[k];
    return IntMat::zero(rows, cols);
}

void validate_chain_map(const ChainComplex& a, const ChainComplex& x, const ChainMapData& f) {
    for (int k = 1; k <= a.top(); ++k) {
        IntMat fk = f.at(k, x.rank(k), a.rank(k));
        IntMat fk1 = f.at(k - 1, x.rank(k - 1), a.rank(k - 1));
        if (!(x.partial(k) * fk - fk1 * a.partial(k)).is_zero())
            throw std::invalid_argument("chain map does not commute with boundaries");
    }
}

MappingCone cone_of_map(const ChainComplex& a, const ChainComplex& x, const ChainMapData& f) {
    validate_chain_map(a, x, f);
    MappingCone mc;
    mc.x_ranks.clear();
    mc.a_ranks.clear();
    int top = std::max(x.top(), a.top() + 1);
    mc.cone.ranks.resize(top + 1);
    mc.cone.boundary.resize(top + 1);
    for (int k = 0; k <= top; ++k) {
        mc.x_ranks.push_back(x.rank(k));
        mc.a_ranks.push_back(a.rank(k - 1));
        mc.cone.ranks[k] = x.rank(k) + a.rank(k - 1);
    }
    for (int k = 1; k <= top; ++k) {
        int rows = mc.cone.ranks[k - 1], cols = mc.cone.ranks[k];
        IntMat b(rows, cols);
        IntMat dx = x.partial(k);
        IntMat da = a.partial(k - 1);
        IntMat fk = f.at(k - 1, x.rank(k - 1), a.rank(k - 1));
        // (v, w) -> (dv + f w, -dw)
        for (int i = 0; i < dx.rows(); ++i)
            for (int j = 0; j < dx.cols(); ++j) b(i, j) = dx(i, j);
        for (int i = 0; i < fk.rows(); ++i)
            for (int j = 0; j < fk.cols(); ++j) b(i, x.rank(k) + j) = fk(i, j);
        for (int i = 0; i < da.rows(); ++i)
            for (int j = 0; j < da.cols(); ++j) b(x.rank(k - 1) + i, x.rank(k) + j) = -da(i, j);
        mc.cone.boundary[k] = std::move(b);
    }
    mc.cone.validate();
    return mc;
}

namespace {

// H = (lattice spanned by Z's columns) / (lattice generated by B's columns),
// with B's columns contained in span(Z).
CohomologyGroup quotient_presentation(int degree, const IntMat& z, const IntMat& b) {
    CohomologyGroup g;
    g.degree = degree;
    g.cocycles = z;
    g.zs = smith_normal_form(z);
    int p = z.cols();

    IntMat c(p, b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        IntVec col(b.rows());
        for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        auto sol = solve_integer(g.zs, z, col);
        if (!sol) throw std::logic_error("quotient_presentation: generator outside cocycle lattice");
        for (int i = 0; i < p; ++i) c(i, j) = (*sol)[i];
    }
    SmithResult cs = smith_normal_form(c);
    g.u_quot = cs.u;
    g.diag.assign(p, Int(0));
    for (int i = 0; i < cs.rank; ++i) g.diag[i] = cs.d(i, i);

    g.free_rank = 0;
    g.torsion.clear();
    for (int i = 0; i < p; ++i) {
        if (g.diag[i] == 0)
            ++g.free_rank;
        else if (g.diag[i] > 1)
            g.torsion.push_back(g.diag[i]);
    }

    // generators: z * u_quot^{-1} columns for the nontrivial quotient coordinates
    if (p > 0) {
        SmithResult us = smith_normal_form(g.u_quot);
        std::vector<IntVec> cols;
        std::vector<Int> orders;
        for (int i = 0; i < p; ++i) {
            if (g.diag[i] == 1) continue;
            IntVec e(p, Int(0));
            e[i] = 1;
            auto inv = solve_integer(us, g.u_quot, e);
            if (!inv) throw std::logic_error("quotient_presentation: unimodular solve failed");
            IntVec gen(z.rows(), Int(0));
            for (int r = 0; r < z.rows(); ++r)
                for (int cidx = 0; cidx < p; ++cidx) gen[r] += z(r, cidx) * (*inv)[cidx];
            cols.push_back(std::move(gen));
            orders.push_back(g.diag[i]);
        }
        g.generators = IntMat(z.rows(), int(cols.size()));
        for (int j = 0; j < int(cols.size()); ++j)
            for (int i = 0; i < z.rows(); ++i) g.generators(i, j) = cols[j][i];
        g.gen_orders = std::move(orders);
    } else {
        g.generators = IntMat(z.rows(), 0);
    }
    return g;
}

}  // namespace

IntVec CohomologyGroup::reduce(const IntVec& cocycle) const {
    auto c = solve_integer(zs, cocycles, cocycle);
    if (!c) throw std::invalid_argument("CohomologyGroup::reduce: not a cocycle");
    int p = cocycles.cols();
    IntVec y(p, Int(0));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) y[i] += u_quot(i, j) * (*c)[j];
    for (int i = 0; i < p; ++i) {
        if (diag[i] > 0) {
            y[i] %= diag[i];
            if (y[i] < 0) y[i] += diag[i];
        }
    }
    return y;
}

bool CohomologyGroup::is_zero_class(const IntVec& cocycle) const {
    for (const auto& v : reduce(cocycle))
        if (v != 0) return false;
    return true;
}

bool CohomologyGroup::same_class(const IntVec& z1, const IntVec& z2) const {
    IntVec d(z1.size());
    for (size_t i = 0; i < z1.size(); ++i) d[i] = z1[i] - z2[i];
    return is_zero_class(d);
}

CohomologyGroup cohomology_z_at(const ChainComplex& c, int k) {
    return quotient_presentation(k, kernel_basis(c.delta(k)), c.delta(k - 1));
}

std::vector<CohomologyGroup> cohomology_z(const ChainComplex& c) {
    std::vector<CohomologyGroup> out;
    for (int k = 0; k <= c.top(); ++k) out.push_back(cohomology_z_at(c, k));
    return out;
}

std::vector<int> betti_numbers(const ChainComplex& c) {
    std::vector<int> out;
    for (int k = 0; k <= c.top(); ++k) {
        int zk = c.rank(k) - smith_normal_form(c.delta(k)).rank;
        int bk = smith_normal_form(c.delta(k - 1)).rank;
        out.push_back(zk - bk);
    }
    return out;
}

std::vector<CircleCohomology> cohomology_rz(const ChainComplex& c) {
    std::vector<int> b = betti_numbers(c);
    std::vector<CohomologyGroup> hz = cohomology_z(c);
    std::vector<CircleCohomology> out;
    for (int k = 0; k <= c.top(); ++k) {
        CircleCohomology g;
        g.degree = k;
        g.torus_rank = b[k];
        if (k + 1 <= c.top()) g.torsion = hz[k + 1].torsion;
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<CohomologyGroup> homology_z(const ChainComplex& c) {
    std::vector<CohomologyGroup> out;
    for (int k = 0; k <= c.top(); ++k)
        out.push_back(quotient_presentation(k, kernel_basis(c.partial(k)), c.partial(k + 1)));
    return out;
}

IntVec pullback_cochain(const IntMat& chain_map_k, const IntVec& cochain) {
    if (int(cochain.size()) != chain_map_k.rows())
        throw std::invalid_argument("pullback_cochain: length mismatch");
    IntVec out(chain_map_k.cols(), Int(0));
    for (int j = 0; j < chain_map_k.cols(); ++j)
        for (int i = 0; i < chain_map_k.rows(); ++i)
            if (chain_map_k(i, j) != 0) out[j] += chain_map_k(i, j) * cochain[i];
    return out;
}

RatVec pullback_cochain(const IntMat& chain_map_k, const RatVec& cochain) {
    RatVec out(chain_map_k.cols(), Rat(0));
    for (int j = 0; j < chain_map_k.cols(); ++j)
        for (int i = 0; i < chain_map_k.rows(); ++i)
            if (chain_map_k(i, j) != 0) out[j] += Rat(chain_map_k(i, j)) * cochain[i];
    return out;
}

std::vector<double> pullback_cochain(const IntMat& chain_map_k, const std::vector<double>& cochain) {
    std::vector<double> out(chain_map_k.cols(), 0.0);
    for (int j = 0; j < chain_map_k.cols(); ++j)
        for (int i = 0; i < chain_map_k.rows(); ++i)
            if (chain_map_k(i, j) != 0) out[j] += double(chain_map_k(i, j)) * cochain[i];
    return out;
}

namespace {

IntVec column(const IntMat& m, int j) {
    IntVec v(m.rows());
    for (int i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

IntMat from_columns(int rows, const std::vector<IntVec>& cols) {
    IntMat m(rows, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

// stack [A | B] horizontally
IntMat hstack(const IntMat& a, const IntMat& b) {
    IntMat m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

}  // namespace

JunctionReport check_exactness(const std::string& name, const IntMat& delta_a, const IntMat& f,
                               const IntMat& delta_b_prev, const IntMat& delta_b, const IntMat& g,
                               const IntMat& delta_c_prev) {
    JunctionReport rep;
    rep.name = name;

    IntMat za = kernel_basis(delta_a);
    IntMat zb = kernel_basis(delta_b);
    SmithResult zbs = smith_normal_form(zb);

    // image lattice of f plus coboundaries, in zb coordinates
    std::vector<IntVec> im_cols;
    rep.composition_zero = true;
    SmithResult dcs = smith_normal_form(delta_c_prev);
    for (int j = 0; j < za.cols(); ++j) {
        IntVec fz = f * column(za, j);
        auto coords = solve_integer(zbs, zb, fz);
        if (!coords) throw std::logic_error("check_exactness: f image not a cocycle");
        im_cols.push_back(*coords);
        IntVec gfz = g * fz;
        if (!solve_integer(dcs, delta_c_prev, gfz)) rep.composition_zero = false;
    }
    for (int j = 0; j < delta_b_prev.cols(); ++j) {
        IntVec bb = column(delta_b_prev, j);
        auto coords = solve_integer(zbs, zb, bb);
        if (!coords) throw std::logic_error("check_exactness: coboundary not a cocycle");
        im_cols.push_back(*coords);
    }
    IntMat im = from_columns(zb.cols(), im_cols);

    // kernel lattice of g modulo coboundaries of C, in zb coordinates:
    // c-block of the kernel of [g * zb | -delta_c_prev]
    IntMat gzb = g * zb;
    IntMat sys = hstack(gzb, delta_c_prev);
    IntMat knl = kernel_basis(sys);
    std::vector<IntVec> ker_cols;
    for (int j = 0; j < knl.cols(); ++j) {
        IntVec c(zb.cols());
        for (int i = 0; i < zb.cols(); ++i) c[i] = knl(i, j);
        ker_cols.push_back(std::move(c));
    }
    IntMat ker = from_columns(zb.cols(), ker_cols);

    rep.ker_rank = smith_normal_form(ker).rank;
    rep.im_rank = smith_normal_form(im).rank;

    rep.ker_in_im = true;
    SmithResult ims = smith_normal_form(im);
    for (int j = 0; j < ker.cols(); ++j)
        if (!solve_integer(ims, im, column(ker, j))) {
            rep.ker_in_im = false;
            break;
        }
    rep.im_in_ker = true;
    SmithResult kers = smith_normal_form(ker);
    for (int j = 0; j < im.cols(); ++j)
        if (!solve_integer(kers, ker, column(im, j))) {
            rep.im_in_ker = false;
            break;
        }
    return rep;
}

std::vector<JunctionReport> verify_long_exact(const ChainComplex& a, const ChainComplex& x,
                                              const ChainMapData& f) {
    MappingCone mc = cone_of_map(a, x, f);
    const ChainComplex& cone = mc.cone;
    std::vector<JunctionReport> out;

    auto proj_x = [&](int k) {  // cochain map C^k(cone) -> C^k(X): transpose of X-block inclusion
        IntMat m(cone.rank(k), x.rank(k));
        for (int i = 0; i < x.rank(k); ++i) m(i, i) = 1;
        return m.transposed();
    };
    auto incl_a = [&](int k) {  // cochain map C^{k-1}(A) -> C^k(cone)
        IntMat m(cone.rank(k), a.rank(k - 1));
        for (int i = 0; i < a.rank(k - 1); ++i) m(x.rank(k) + i, 0 + i) = 1;
        return m;
    };
    auto fstar = [&](int k) {  // cochain map C^k(X) -> C^k(A)
        return f.at(k, x.rank(k), a.rank(k)).transposed();
    };

    for (int k = 0; k <= cone.top(); ++k) {
        out.push_back(check_exactness(
            "H^" + std::to_string(k) + "(cone)", a.delta(k - 1), incl_a(k), cone.delta(k - 1),
            cone.delta(k), proj_x(k), x.delta(k - 1)));
        out.push_back(check_exactness(
            "H^" + std::to_string(k) + "(X)", cone.delta(k), proj_x(k), x.delta(k - 1), x.delta(k),
            fstar(k), a.delta(k - 1)));
        out.push_back(check_exactness(
            "H^" + std::to_string(k) + "(A)", x.delta(k), fstar(k), a.delta(k - 1), a.delta(k),
            incl_a(k + 1), cone.delta(k)));
    }
    return out;
}

bool TransgressionResult::coset_contains(const IntVec& z) const {
    IntVec d(rep.size());
    for (size_t i = 0; i < rep.size(); ++i) d[i] = z[i] - rep[i];
    return solve_integer(quotient_lattice, d).has_value();
}

TransgressionResult transgress(const ChainComplex& total, const ChainComplex& base,
                               const ChainMapData& projection, const ChainComplex& fiber,
                               const ChainMapData& fiber_inclusion, int degree, const IntVec& mu) {
    int k = degree;
    if (k < 2) throw std::invalid_argument("transgress: degree >= 2 expected");
    // mu must be a cocycle on the base
    {
        IntMat dlt = base.delta(k);
        IntVec dmu = dlt * mu;
        for (const auto& v : dmu)
            if (v != 0) throw std::invalid_argument("transgress: mu is not a cocycle");
    }
    IntMat pk = projection.at(k, base.rank(k), total.rank(k));
    IntVec pmu = pullback_cochain(pk, mu);
    auto nu = solve_integer(total.delta(k - 1), pmu);
    if (!nu) throw std::invalid_argument("transgress: class is not transgressive (p* mu not a coboundary)");

    IntMat ik1 = fiber_inclusion.at(k - 1, total.rank(k - 1), fiber.rank(k - 1));
    IntVec rep = pullback_cochain(ik1, *nu);
    for (auto& v : rep) v = -v;

    // rep is a fiber cocycle
    {
        IntVec dr = fiber.delta(k - 1) * rep;
        for (const auto& v : dr)
            if (v != 0) throw std::logic_error("transgress: representative is not closed");
    }

    TransgressionResult res;
    res.rep = rep;
    res.fiber_degree = k - 1;
    // quotient lattice: i^* of total-space cocycles plus fiber coboundaries
    IntMat ztot = kernel_basis(total.delta(k - 1));
    std::vector<IntVec> cols;
    for (int j = 0; j < ztot.cols(); ++j) {
        IntVec z(ztot.rows());
        for (int i = 0; i < ztot.rows(); ++i) z[i] = ztot(i, j);
        cols.push_back(pullback_cochain(ik1, z));
    }
    IntMat dfib = fiber.delta(k - 2);
    for (int j = 0; j < dfib.cols(); ++j) {
        IntVec z(dfib.rows());
        for (int i = 0; i < dfib.rows(); ++i) z[i] = dfib(i, j);
        cols.push_back(std::move(z));
    }
    res.quotient_lattice = IntMat(fiber.rank(k - 1), int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < fiber.rank(k - 1); ++i) res.quotient_lattice(i, j) = cols[j][i];
    return res;
}

}  // namespace ccs
