#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "endo.hpp"

namespace extrikit {

struct ProjectiveCover {
    Representation p;
    std::vector<int> vertices;  // P = sum of P_v over this list
    ModuleMorphism map;         // P -> M
};

// Maps from a sum of vertex projectives, one per (vertex, element of M_v).
inline ModuleMorphism from_projectives(const AlgebraPtr& alg, const std::vector<int>& verts,
                                       const std::vector<Vec>& elems, const Representation& m)
{
    std::vector<Representation> parts;
    std::vector<std::vector<ModuleMorphism>> row(1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        parts.push_back(projective(alg, verts[i]));
        row[0].push_back(from_projective(alg, verts[i], m, elems[i]));
    }
    if (parts.empty()) return zero_morphism(zero_rep(m.shape, alg), m);
    return block_morphism(row, parts, {m}, m.nverts());
}

inline Representation sum_of_projectives(const AlgebraPtr& alg, const std::vector<int>& verts)
{
    std::vector<Representation> parts;
    for (int v : verts) parts.push_back(projective(alg, v));
    return direct_sum(parts, shape_of(alg->quiver()), alg).sum;
}

inline Representation sum_of_injectives(const AlgebraPtr& alg, const std::vector<int>& verts)
{
    std::vector<Representation> parts;
    for (int v : verts) parts.push_back(injective(alg, v));
    return direct_sum(parts, shape_of(alg->quiver()), alg).sum;
}

inline ProjectiveCover projective_cover(const Representation& m)
{
    const AlgebraPtr& alg = m.alg;
    auto series = radical_series(m);
    std::vector<int> verts;
    std::vector<Vec> elems;
    for (std::size_t v = 0; v < m.nverts(); ++v) {
        Mat rad = series.size() > 1 ? series[1][v] : Mat(m.dims[v], 0);
        Mat id = Mat::identity(m.dims[v]);
        for (auto c : complement_columns(rad, id)) {
            verts.push_back(int(v));
            elems.push_back(id.col(c));
        }
    }
    return {sum_of_projectives(alg, verts), verts, from_projectives(alg, verts, elems, m)};
}

struct Presentation {
    Representation module;
    Representation p1, p0;
    std::vector<int> p1_vertices, p0_vertices;
    ModuleMorphism d;      // p1 -> p0
    ModuleMorphism cover;  // p0 -> module
    Representation omega;
    ModuleMorphism omega_incl;  // omega -> p0
};

inline Presentation projective_presentation(const Representation& m)
{
    Presentation pr;
    pr.module = m;
    auto c0 = projective_cover(m);
    pr.p0 = c0.p;
    pr.p0_vertices = c0.vertices;
    pr.cover = c0.map;
    auto k = kernel(pr.p0, pr.cover);
    pr.omega = k.rep;
    pr.omega_incl = k.map;
    auto c1 = projective_cover(pr.omega);
    pr.p1 = c1.p;
    pr.p1_vertices = c1.vertices;
    pr.d = compose(pr.omega_incl, c1.map);
    return pr;
}

inline bool is_projective_module(const Representation& m)
{
    return projective_cover(m).p.dims == m.dims;
}

// Basis of Hom(M, N) as columns together with a coordinate solver.
struct HomSpace {
    Representation src, tgt;
    Mat basis;
    Coordinates<Fp> coords;

    explicit HomSpace(const Representation& m, const Representation& n)
        : src(m), tgt(n), basis(hom_matrix(m, n)), coords(basis)
    {
    }
    std::size_t dim() const { return basis.cols(); }
    ModuleMorphism element(std::size_t i) const { return unflatten(src, tgt, basis.col(i)); }
    ModuleMorphism combine(const Vec& x) const { return unflatten(src, tgt, basis * x); }
    Vec coordinates(const ModuleMorphism& f) const { return coords(flatten(f)); }
};

// Ext^1(C, A) = Hom(Omega C, A) / image of Hom(P0, A).
struct Ext1Space {
    Presentation pres;
    Representation target;
    Mat hom;                 // flattened Hom(Omega, A), all columns
    std::size_t coboundary = 0;
    Coordinates<Fp> coords;  // over [coboundaries | representatives]

    std::size_t dim() const { return coords.dim() - coboundary; }
    const Representation& source() const { return pres.module; }

    ModuleMorphism cocycle(const Vec& x) const
    {
        Vec full(coords.dim());
        for (std::size_t i = 0; i < x.size(); ++i) full[coboundary + i] = x[i];
        return unflatten(pres.omega, target, coords.basis() * full);
    }
    Vec coordinates(const ModuleMorphism& phi) const
    {
        Vec full = coords(flatten(phi));
        return Vec(full.begin() + coboundary, full.end());
    }
};

inline Ext1Space ext1(const Presentation& pres, const Representation& a)
{
    Ext1Space e;
    e.pres = pres;
    e.target = a;
    Mat h = hom_matrix(pres.omega, a);
    Mat u(h.rows(), 0);
    for (auto& g : hom_basis(pres.p0, a)) u = hstack(u, Mat::column(flatten(compose(g, pres.omega_incl))));
    u = column_space(u);
    auto extra = complement_columns(u, h);
    e.coboundary = u.cols();
    e.hom = h;
    e.coords = Coordinates<Fp>(hstack(u, h.select_cols(extra)));
    return e;
}

inline Ext1Space ext1(const Representation& c, const Representation& a) { return ext1(projective_presentation(c), a); }

struct ShortExact {
    Representation a, b, c;
    ModuleMorphism mono;  // a -> b
    ModuleMorphism epi;   // b -> c
};

inline ShortExact realize(const Ext1Space& e, const Vec& x)
{
    const auto& pr = e.pres;
    ModuleMorphism phi = e.cocycle(x);
    auto s = direct_sum({e.target, pr.p0}, e.target.shape, e.target.alg);
    ModuleMorphism rel = compose(s.incl[0], phi) - compose(s.incl[1], pr.omega_incl);
    auto q = cokernel(s.sum, rel);
    ShortExact ses;
    ses.a = e.target;
    ses.b = q.rep;
    ses.c = pr.module;
    ses.mono = compose(q.map, s.incl[0]);
    ModuleMorphism down = compose(pr.cover, s.proj[1]);
    ses.epi.comps.clear();
    for (std::size_t v = 0; v < s.sum.nverts(); ++v) {
        const Mat& pi = q.map.comps[v];
        Mat sect = *solve(pi, Mat::identity(pi.rows()));
        ses.epi.comps.push_back(down.comps[v] * sect);
    }
    return ses;
}

// Class of a short exact sequence ending at the presented module.
inline Vec class_of(const Ext1Space& e, const ShortExact& ses)
{
    const auto& pr = e.pres;
    HomSpace h(pr.p0, ses.b);
    Mat lhs(hom_ambient_dim(pr.p0, pr.module), h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) lhs.set_col(i, flatten(compose(ses.epi, h.element(i))));
    auto sol = solve(lhs, Mat::column(flatten(pr.cover)));
    if (!sol) throw std::logic_error("cover does not lift");
    ModuleMorphism g = h.combine(sol->col(0));
    ModuleMorphism gk = compose(g, pr.omega_incl);
    ModuleMorphism psi;
    for (std::size_t v = 0; v < gk.comps.size(); ++v) {
        auto x = solve(ses.mono.comps[v], gk.comps[v]);
        if (!x) throw std::logic_error("lift does not land in the image of the inflation");
        psi.comps.push_back(*x);
    }
    return e.coordinates(psi);
}

// Omega C' -> Omega C induced by c : C' -> C.
inline ModuleMorphism syzygy_map(const Presentation& to, const Presentation& from, const ModuleMorphism& c)
{
    HomSpace h(from.p0, to.p0);
    Mat lhs(hom_ambient_dim(from.p0, to.module), h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) lhs.set_col(i, flatten(compose(to.cover, h.element(i))));
    auto sol = solve(lhs, Mat::column(flatten(compose(c, from.cover))));
    if (!sol) throw std::logic_error("map does not lift to projective covers");
    ModuleMorphism lift = h.combine(sol->col(0));
    ModuleMorphism lk = compose(lift, from.omega_incl);
    ModuleMorphism r;
    for (std::size_t v = 0; v < lk.comps.size(); ++v) r.comps.push_back(*solve(to.omega_incl.comps[v], lk.comps[v]));
    return r;
}

// Matrix of a_* : Ext(C, A) -> Ext(C, A').
inline Mat pushforward_matrix(const Ext1Space& from, const Ext1Space& to, const ModuleMorphism& a)
{
    Mat m(to.dim(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) {
        Vec x(from.dim());
        x[j] = Fp(1);
        m.set_col(j, to.coordinates(compose(a, from.cocycle(x))));
    }
    return m;
}

// Matrix of c^* : Ext(C, A) -> Ext(C', A) for c : C' -> C.
inline Mat pullback_matrix(const Ext1Space& from, const Ext1Space& to, const ModuleMorphism& c)
{
    ModuleMorphism s = syzygy_map(from.pres, to.pres, c);
    Mat m(to.dim(), from.dim());
    for (std::size_t j = 0; j < from.dim(); ++j) {
        Vec x(from.dim());
        x[j] = Fp(1);
        m.set_col(j, to.coordinates(compose(from.cocycle(x), s)));
    }
    return m;
}

// a_* c^* of a class; from is Ext(C, A), to is Ext(C', A').
inline Vec transport(const Ext1Space& from, const Ext1Space& to, const Vec& cls, const ModuleMorphism& a,
                     const ModuleMorphism& c)
{
    ModuleMorphism s = syzygy_map(from.pres, to.pres, c);
    return to.coordinates(compose(a, compose(from.cocycle(cls), s)));
}

namespace detail {

// nu applied to the block P_v -> P_w of a map between sums of vertex projectives.
inline Mat nakayama_block(const AlgebraPtr& alg, int v, int w, const ModuleMorphism& blk, std::size_t vertex)
{
    const auto& at_v = alg->paths(v, v);
    std::size_t e_pos = 0;
    for (std::size_t k = 0; k < at_v.size(); ++k)
        if (at_v[k] == alg->idempotent(v)) e_pos = k;
    Vec q = blk.comps[v].col(e_pos);  // coefficients over paths(w, v)
    const auto& qp = alg->paths(w, v);
    const auto& rows = alg->paths(int(vertex), w);
    const auto& cols = alg->paths(int(vertex), v);
    Mat m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < qp.size(); ++k) {
            if (q[k].is_zero()) continue;
            const Vec& prod = alg->mult(rows[r], qp[k]);
            for (std::size_t s = 0; s < cols.size(); ++s) m(r, s) += q[k] * prod[cols[s]];
        }
    return m;
}

}

// nu(f) : nu(sum P_v) -> nu(sum P_w) for f between sums of vertex projectives.
inline ModuleMorphism nakayama_map(const AlgebraPtr& alg, const std::vector<int>& src, const std::vector<int>& tgt,
                                   const ModuleMorphism& f)
{
    std::vector<Representation> sp, tp;
    for (int v : src) sp.push_back(projective(alg, v));
    for (int w : tgt) tp.push_back(projective(alg, w));
    auto shape = shape_of(alg->quiver());
    auto s = direct_sum(sp, shape, alg);
    auto t = direct_sum(tp, shape, alg);
    std::vector<Representation> si, ti;
    for (int v : src) si.push_back(injective(alg, v));
    for (int w : tgt) ti.push_back(injective(alg, w));
    ModuleMorphism out;
    for (std::size_t vert = 0; vert < alg->num_vertices(); ++vert) {
        std::size_t R = 0, C = 0;
        for (auto& x : ti) R += x.dims[vert];
        for (auto& x : si) C += x.dims[vert];
        Mat m(R, C);
        std::size_t r0 = 0;
        for (std::size_t j = 0; j < tgt.size(); ++j) {
            std::size_t c0 = 0;
            for (std::size_t i = 0; i < src.size(); ++i) {
                ModuleMorphism blk = compose(t.proj[j], compose(f, s.incl[i]));
                m.set_block(r0, c0, detail::nakayama_block(alg, src[i], tgt[j], blk, vert));
                c0 += si[i].dims[vert];
            }
            r0 += ti[j].dims[vert];
        }
        out.comps.push_back(m);
    }
    return out;
}

inline Representation nakayama(const Representation& p)
{
    auto c = projective_cover(p);
    if (c.p.dims != p.dims) throw std::invalid_argument("nakayama: module is not projective");
    return sum_of_injectives(p.alg, c.vertices);
}

inline AlgebraPtr opposite_algebra(const AlgebraPtr& alg)
{
    static std::vector<std::pair<std::weak_ptr<const PathAlgebra>, AlgebraPtr>> cache;
    for (auto& [k, v] : cache)
        if (k.lock() == alg) return v;
    auto op = alg->opposite();
    cache.push_back({alg, op});
    return op;
}

inline Representation ar_translate(const Representation& m)
{
    auto pr = projective_presentation(m);
    if (pr.omega.is_zero() && pr.p0.dims == m.dims) throw std::invalid_argument("projective has no translate");
    ModuleMorphism nd = nakayama_map(m.alg, pr.p1_vertices, pr.p0_vertices, pr.d);
    return kernel(sum_of_injectives(m.alg, pr.p1_vertices), nd).rep;
}

inline Representation ar_translate_inv(const Representation& m)
{
    AlgebraPtr op = opposite_algebra(m.alg);
    Representation dm = dual(m, op);
    if (is_projective_module(dm)) throw std::invalid_argument("injective has no inverse translate");
    return dual(ar_translate(dm), m.alg);
}

inline bool is_injective_module(const Representation& m) { return is_projective_module(dual(m, opposite_algebra(m.alg))); }

}
