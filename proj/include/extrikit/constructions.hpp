#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "category.hpp"
#include "endo.hpp"

namespace extrikit {

struct Check {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct Report {
    std::string op;
    std::vector<Check> checks;

    void add(std::string name, bool pass, std::string witness = {})
    {
        checks.push_back({std::move(name), pass, std::move(witness)});
    }
    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* find(const std::string& name) const
    {
        for (auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline Mat identity_mat(std::size_t n) { return Mat::identity(n); }

// ---------------------------------------------------------------- radicals

inline Mat end_radical(const ExtCategory& cat, std::size_t x)
{
    std::size_t d = cat.hom_dim(x, x);
    const Mat& t = cat.comp(x, x, x);
    return trace_form_radical(d, [&](std::size_t i, std::size_t j) { return t.col(j + d * i); });
}

// rad(x, y): everything between distinct indecomposables, rad End(x) otherwise.
inline Mat radical(const ExtCategory& cat, std::size_t x, std::size_t y)
{
    if (x != y) return identity_mat(cat.hom_dim(x, y));
    return end_radical(cat, x);
}

inline Mat radical_square(const ExtCategory& cat, std::size_t x, std::size_t y)
{
    Mat r(cat.hom_dim(x, y), 0);
    for (std::size_t z = 0; z < cat.size(); ++z) {
        Mat r1 = radical(cat, x, z), r2 = radical(cat, z, y);
        for (std::size_t i = 0; i < r1.cols(); ++i)
            for (std::size_t j = 0; j < r2.cols(); ++j)
                r = hstack(r, Mat::column(compose_coords(cat, x, z, y, r2.col(j), r1.col(i))));
    }
    return column_space(r);
}

inline bool is_endo_local(const ExtCategory& cat, std::size_t x)
{
    return cat.hom_dim(x, x) > 0 && cat.hom_dim(x, x) - end_radical(cat, x).cols() == 1;
}

// Radical of End(b) for a listed object, as coordinates in H(b, b).
inline Mat block_radical(const ExtCategory& cat, const ObjList& b)
{
    auto l = hom_layout(cat, b, b);
    Mat r(l.total, 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            Mat blk = b[i] == b[j] ? end_radical(cat, b[j]) : identity_mat(l.size(i, j));
            for (std::size_t c = 0; c < blk.cols(); ++c) {
                Vec v(l.total);
                for (std::size_t t = 0; t < blk.rows(); ++t) v[l.offset(i, j) + t] = blk(t, c);
                r = hstack(r, Mat::column(v));
            }
        }
    return r;
}

inline bool contained_in(const Mat& sub, const Mat& space)
{
    if (sub.cols() == 0) return true;
    return rank(hstack(space, sub)) == rank(space);
}

// Endomorphisms of b.tgt killed by precomposition with b lie in the radical.
inline bool is_left_minimal(const ExtCategory& cat, const Morphism& f)
{
    Mat ker = kernel_basis(pre_matrix(cat, f, f.tgt));
    return contained_in(ker, block_radical(cat, f.tgt));
}

inline bool is_right_minimal(const ExtCategory& cat, const Morphism& f)
{
    Mat ker = kernel_basis(post_matrix(cat, f, f.src));
    return contained_in(ker, block_radical(cat, f.src));
}

// ---------------------------------------------------------------- projectives and ideals

struct PIObjects {
    ObjList projectives, injectives;
};

inline PIObjects pi_objects(const ExtCategory& cat)
{
    PIObjects r;
    for (std::size_t x = 0; x < cat.size(); ++x) {
        bool p = true, i = true;
        for (std::size_t y = 0; y < cat.size(); ++y) {
            if (cat.e_dim(x, y)) p = false;
            if (cat.e_dim(y, x)) i = false;
        }
        if (p) r.projectives.push_back(x);
        if (i) r.injectives.push_back(x);
    }
    return r;
}

inline bool is_e_projective(const ExtCategory& cat, std::size_t x)
{
    for (std::size_t y = 0; y < cat.size(); ++y)
        if (cat.e_dim(x, y)) return false;
    return true;
}

inline bool is_e_injective(const ExtCategory& cat, std::size_t x)
{
    for (std::size_t y = 0; y < cat.size(); ++y)
        if (cat.e_dim(y, x)) return false;
    return true;
}

// Per-pair subspaces of hom spaces.
struct Ideal {
    std::size_t n = 0;
    std::vector<Mat> basis;
    const Mat& at(std::size_t x, std::size_t y) const { return basis[x * n + y]; }
};

// Linear conditions on coefficient vectors f making sum_k f_k m_k vanish.
inline Mat coefficient_conditions(const std::vector<Mat>& ms, std::size_t k)
{
    std::size_t entries = ms.empty() ? 0 : ms[0].rows() * ms[0].cols();
    Mat r(entries, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t e = 0; e < entries; ++e) r(e, j) = ms[j].entries()[e];
    return r;
}

struct StabilityIdeals {
    Ideal p, i;
};

// P(x, y): maps with f^* = 0 on E(y, -); I(x, y): maps with f_* = 0 on E(-, x).
inline StabilityIdeals stability_ideals(const ExtCategory& cat)
{
    std::size_t n = cat.size();
    StabilityIdeals s;
    s.p.n = s.i.n = n;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t d = cat.hom_dim(x, y);
            Mat cp(0, d), ci(0, d);
            for (std::size_t z = 0; z < n; ++z) {
                if (cat.e_dim(y, z) && cat.e_dim(x, z)) cp = vstack(cp, coefficient_conditions(cat.pull(x, y, z), d));
                if (cat.e_dim(z, x) && cat.e_dim(z, y)) ci = vstack(ci, coefficient_conditions(cat.push(z, x, y), d));
            }
            s.p.basis.push_back(kernel_basis(cp));
            s.i.basis.push_back(kernel_basis(ci));
        }
    return s;
}

// Block-diagonal embedding of per-pair subspaces into the hom space between listed objects.
inline Mat block_subspace(const ExtCategory& cat, const Ideal& id, const ObjList& src, const ObjList& tgt)
{
    auto l = hom_layout(cat, src, tgt);
    Mat r(l.total, 0);
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) {
            const Mat& b = id.at(src[j], tgt[i]);
            for (std::size_t c = 0; c < b.cols(); ++c) {
                Vec v(l.total);
                for (std::size_t t = 0; t < b.rows(); ++t) v[l.offset(i, j) + t] = b(t, c);
                r = hstack(r, Mat::column(v));
            }
        }
    return r;
}

// Additive category data of a quotient by an ideal: dimensions and complement bases.
struct QuotientHom {
    std::vector<std::size_t> dims;
    std::vector<Mat> complement;
};

inline QuotientHom quotient_category(const ExtCategory& cat, const Ideal& ideal)
{
    QuotientHom q;
    for (std::size_t x = 0; x < cat.size(); ++x)
        for (std::size_t y = 0; y < cat.size(); ++y) {
            const Mat& b = ideal.at(x, y);
            Mat id = identity_mat(cat.hom_dim(x, y));
            Mat c = id.select_cols(complement_columns(b, id));
            q.dims.push_back(c.cols());
            q.complement.push_back(c);
        }
    return q;
}

// ---------------------------------------------------------------- subfunctors

struct Subfunctor {
    std::size_t n = 0;
    std::vector<Mat> basis;  // columns in E(c, a)
    const Mat& at(std::size_t c, std::size_t a) const { return basis[c * n + a]; }
    Mat& at(std::size_t c, std::size_t a) { return basis[c * n + a]; }
};

inline Subfunctor full_subfunctor(const ExtCategory& cat)
{
    Subfunctor f{cat.size(), {}};
    for (std::size_t c = 0; c < cat.size(); ++c)
        for (std::size_t a = 0; a < cat.size(); ++a) f.basis.push_back(identity_mat(cat.e_dim(c, a)));
    return f;
}

inline Subfunctor zero_subfunctor(const ExtCategory& cat)
{
    Subfunctor f{cat.size(), {}};
    for (std::size_t c = 0; c < cat.size(); ++c)
        for (std::size_t a = 0; a < cat.size(); ++a) f.basis.push_back(Mat(cat.e_dim(c, a), 0));
    return f;
}

inline std::size_t total_dim(const Subfunctor& f)
{
    std::size_t t = 0;
    for (auto& b : f.basis) t += b.cols();
    return t;
}

struct RelativeSubfunctors {
    Subfunctor lower, upper, both;  // E_D, E^D, and their intersection
};

// E_D(C, A): classes d with f^* d = 0 for all f : X -> C, X in D; E^D dually.
inline RelativeSubfunctors relative_subfunctors(const ExtCategory& cat, const ObjList& d)
{
    std::size_t n = cat.size();
    RelativeSubfunctors r;
    r.lower.n = r.upper.n = r.both.n = n;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a) {
            std::size_t e = cat.e_dim(c, a);
            Mat lo(0, e), up(0, e);
            for (auto x : d) {
                for (auto& m : cat.pull(x, c, a)) lo = vstack(lo, m);
                for (auto& m : cat.push(c, a, x)) up = vstack(up, m);
            }
            Mat kl = kernel_basis(lo), ku = kernel_basis(up);
            r.lower.basis.push_back(kl);
            r.upper.basis.push_back(ku);
            r.both.basis.push_back(e == 0 ? Mat(0, 0) : intersect_spaces(kl, ku));
        }
    return r;
}

inline Mat block_subspace(const ExtCategory& cat, const Subfunctor& f, const ObjList& c, const ObjList& a)
{
    auto l = e_layout(cat, c, a);
    Mat r(l.total, 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            const Mat& b = f.at(c[i], a[j]);
            for (std::size_t k = 0; k < b.cols(); ++k) {
                Vec v(l.total);
                for (std::size_t t = 0; t < b.rows(); ++t) v[l.offset(i, j) + t] = b(t, k);
                r = hstack(r, Mat::column(v));
            }
        }
    return r;
}

inline std::string pair_name(const ExtCategory& cat, std::size_t c, std::size_t a)
{
    return "(" + cat.labels[c] + ", " + cat.labels[a] + ")";
}

// Stability of F under both actions, on every basis morphism.
inline Report is_stable(const ExtCategory& cat, const Subfunctor& f)
{
    Report r{"stability", {}};
    std::size_t n = cat.size();
    std::string bad;
    for (std::size_t c = 0; c < n && bad.empty(); ++c)
        for (std::size_t a = 0; a < n && bad.empty(); ++a) {
            if (f.at(c, a).cols() == 0) continue;
            for (std::size_t x = 0; x < n && bad.empty(); ++x) {
                for (auto& m : cat.push(c, a, x))
                    if (!contained_in(m * f.at(c, a), f.at(c, x))) bad = "push " + pair_name(cat, c, a) + " -> " + pair_name(cat, c, x);
                for (auto& m : cat.pull(x, c, a))
                    if (bad.empty() && !contained_in(m * f.at(c, a), f.at(x, a)))
                        bad = "pull " + pair_name(cat, c, a) + " -> " + pair_name(cat, x, a);
            }
        }
    r.add("subfunctor is stable under both actions", bad.empty(), bad);
    return r;
}

// Exactness of F(-,A) -> F(-,B) -> F(-,C) and F(C,-) -> F(B,-) -> F(A,-) along F-conflations.
struct ClosedReport {
    bool right = true, left = true;
    std::string right_witness, left_witness;
    bool closed() const { return right && left; }
    bool agree() const { return right == left; }
};

inline std::string conflation_name(const ExtCategory& cat, const Conflation& s)
{
    return object_name(cat, s.a()) + " -> " + object_name(cat, s.b()) + " -> " + object_name(cat, s.c());
}

inline ClosedReport is_closed(const ExtCategory& cat, const Subfunctor& f)
{
    ClosedReport r;
    std::size_t n = cat.size();
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t k = 0; k < f.at(c, a).cols(); ++k) {
                ExtClass d{{c}, {a}, f.at(c, a).col(k)};
                Conflation s = cat.realize(d);
                for (std::size_t x = 0; x < n; ++x) {
                    ObjList X{x};
                    Mat fa = block_subspace(cat, f, X, s.a()), fb = block_subspace(cat, f, X, s.b()),
                        fc = block_subspace(cat, f, X, s.c());
                    std::size_t ker = fb.cols() - rank(push_matrix(cat, s.y, X) * fb);
                    std::size_t img = rank(push_matrix(cat, s.x, X) * fa);
                    if (ker != img && r.right) {
                        r.right = false;
                        r.right_witness = conflation_name(cat, s) + " at " + cat.labels[x];
                    }
                    fa = block_subspace(cat, f, s.a(), X);
                    fb = block_subspace(cat, f, s.b(), X);
                    fc = block_subspace(cat, f, s.c(), X);
                    ker = fb.cols() - rank(pull_matrix(cat, s.x, X) * fb);
                    img = rank(pull_matrix(cat, s.y, X) * fc);
                    if (ker != img && r.left) {
                        r.left = false;
                        r.left_witness = conflation_name(cat, s) + " at " + cat.labels[x];
                    }
                }
            }
    return r;
}

// ---------------------------------------------------------------- derived categories of tables

namespace detail {

inline ObjList map_objects(const ObjList& xs, const std::vector<std::size_t>& to)
{
    ObjList r;
    for (auto x : xs) r.push_back(to[x]);
    return r;
}

inline void copy_tables(ExtCategory& out, const ExtCategory& in, const std::vector<std::size_t>& keep)
{
    std::size_t n = keep.size();
    out.resize(n);
    out.labels.clear();
    for (auto k : keep) out.labels.push_back(in.labels[k]);
    if (!in.underlying.empty()) {
        out.underlying.clear();
        for (auto k : keep) out.underlying.push_back(in.underlying[k]);
    }
    if (!in.complexes.empty()) {
        out.complexes.clear();
        for (auto k : keep) out.complexes.push_back(in.complexes[k]);
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            out.set_hom_dim(x, y, in.hom_dim(keep[x], keep[y]));
            out.set_e_dim(x, y, in.e_dim(keep[x], keep[y]));
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                out.comp(x, y, z) = in.comp(keep[x], keep[y], keep[z]);
                out.push(x, y, z) = in.push(keep[x], keep[y], keep[z]);
                out.pull(x, y, z) = in.pull(keep[x], keep[y], keep[z]);
            }
}

}

// Same objects and morphisms, E replaced by the subspaces of F. Stability is not checked here.
inline ExtCategory relative_category_unchecked(CategoryPtr parent, const Subfunctor& f)
{
    ExtCategory cat;
    std::vector<std::size_t> all(parent->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    detail::copy_tables(cat, *parent, all);
    cat.provenance = "relative";
    cat.lineage = parent->lineage;
    cat.lineage.push_back("relative structure");
    std::size_t n = cat.size();
    std::vector<Coordinates<Fp>> co;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a) {
            cat.set_e_dim(c, a, f.at(c, a).cols());
            co.emplace_back(f.at(c, a));
        }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t x = 0; x < n; ++x) {
                for (auto& m : cat.push(c, a, x)) m = co[c * n + x].of_columns(m * f.at(c, a));
                for (auto& m : cat.pull(x, c, a)) m = co[x * n + a].of_columns(m * f.at(c, a));
            }
    cat.finalize();
    cat.parent = parent;
    cat.embedding = f.basis;
    cat.realizer = [parent, f](const ExtCategory& self, const ExtClass& d) {
        auto l = e_layout(self, d.c, d.a);
        auto pl = e_layout(*parent, d.c, d.a);
        ExtClass pd{d.c, d.a, Vec(pl.total)};
        for (std::size_t i = 0; i < d.c.size(); ++i)
            for (std::size_t j = 0; j < d.a.size(); ++j) {
                if (l.size(i, j) == 0) continue;
                Vec v = f.at(d.c[i], d.a[j]) * slice(d.v, l.offset(i, j), l.size(i, j));
                std::copy(v.begin(), v.end(), pd.v.begin() + pl.offset(i, j));
            }
        Conflation s = parent->realize(pd);
        s.cls = d;
        return s;
    };
    return cat;
}

inline ExtCategory relative_category(CategoryPtr parent, const Subfunctor& f)
{
    Report st = is_stable(*parent, f);
    if (!st.ok()) throw std::invalid_argument("subfunctor not closed: unstable at " + st.checks[0].witness);
    ClosedReport cl = is_closed(*parent, f);
    if (!cl.closed()) throw std::invalid_argument("subfunctor not closed: " + (cl.right ? cl.left_witness : cl.right_witness));
    return relative_category_unchecked(std::move(parent), f);
}

// Full subcategory on `keep`; middle terms of conflations must stay inside.
inline ExtCategory subcategory_unchecked(CategoryPtr parent, const ObjList& keep)
{
    ExtCategory cat;
    detail::copy_tables(cat, *parent, keep);
    cat.provenance = "restricted";
    cat.lineage = parent->lineage;
    cat.lineage.push_back("extension-closed subcategory");
    cat.finalize();
    std::vector<std::size_t> back(parent->size(), std::size_t(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) back[keep[i]] = i;
    cat.realizer = [parent, keep, back](const ExtCategory& self, const ExtClass& d) {
        ExtClass pd{detail::map_objects(d.c, keep), detail::map_objects(d.a, keep), d.v};
        Conflation s = parent->realize(pd);
        for (auto b : s.b())
            if (back[b] == std::size_t(-1)) throw std::logic_error("middle term leaves the subcategory");
        ObjList b = detail::map_objects(s.b(), back);
        (void)self;
        return Conflation{{d.a, b, s.x.v}, {b, d.c, s.y.v}, d};
    };
    return cat;
}

struct NotExtensionClosed : std::invalid_argument {
    Conflation witness;
    NotExtensionClosed(const std::string& what, Conflation w) : std::invalid_argument(what), witness(std::move(w)) {}
};

inline ExtCategory restrict_extension_closed(CategoryPtr parent, ObjList keep)
{
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::set<std::size_t> in(keep.begin(), keep.end());
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(1, int(prime()) - 1);
    for (auto c : keep)
        for (auto a : keep) {
            std::size_t e = parent->e_dim(c, a);
            if (e == 0) continue;
            std::vector<Vec> tries;
            for (std::size_t k = 0; k < e; ++k) tries.push_back(basis_class(*parent, c, a, k).v);
            if (e > 1) {
                Vec g(e);
                for (auto& x : g) x = Fp(dist(rng));
                tries.push_back(g);
            }
            for (auto& v : tries) {
                Conflation s = parent->realize({{c}, {a}, v});
                for (auto b : s.b())
                    if (!in.count(b))
                        throw NotExtensionClosed("not extension-closed: " + conflation_name(*parent, s), s);
            }
        }
    return subcategory_unchecked(std::move(parent), keep);
}

// Quotient by the ideal of maps factoring through objects of D, where D consists of E-projective-injectives.
inline ExtCategory ideal_quotient_category(CategoryPtr parent, ObjList d)
{
    for (auto x : d)
        if (!is_e_projective(*parent, x) || !is_e_injective(*parent, x))
            throw std::invalid_argument("D not contained in Proj∩Inj");
    std::set<std::size_t> drop(d.begin(), d.end());
    ObjList keep;
    for (std::size_t x = 0; x < parent->size(); ++x)
        if (!drop.count(x)) keep.push_back(x);
    std::size_t n = keep.size();
    ExtCategory cat;
    detail::copy_tables(cat, *parent, keep);
    cat.provenance = "quotient";
    cat.lineage = parent->lineage;
    cat.lineage.push_back("ideal quotient");

    struct PairData {
        std::vector<std::size_t> cols;  // parent basis vectors kept
        std::size_t ideal = 0;
        Coordinates<Fp> coords;
    };
    auto data = std::make_shared<std::vector<PairData>>();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t px = keep[x], py = keep[y], dim = parent->hom_dim(px, py);
            Mat span(dim, 0);
            for (auto z : drop) span = hstack(span, parent->comp(px, z, py));
            Mat ideal = column_space(span);
            Mat id = identity_mat(dim);
            PairData pd;
            pd.cols = complement_columns(ideal, id);
            pd.ideal = ideal.cols();
            pd.coords = Coordinates<Fp>(hstack(ideal, id.select_cols(pd.cols)));
            data->push_back(std::move(pd));
        }
    auto project = [data, n](std::size_t x, std::size_t y, const Vec& v) {
        const PairData& pd = (*data)[x * n + y];
        Vec full = pd.coords(v);
        return Vec(full.begin() + pd.ideal, full.end());
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) cat.set_hom_dim(x, y, (*data)[x * n + y].cols.size());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const auto& fx = (*data)[x * n + y].cols;
                const auto& gy = (*data)[y * n + z].cols;
                std::size_t pdxy = parent->hom_dim(keep[x], keep[y]);
                const Mat& t = parent->comp(keep[x], keep[y], keep[z]);
                Mat m(cat.hom_dim(x, z), fx.size() * gy.size());
                for (std::size_t g = 0; g < gy.size(); ++g)
                    for (std::size_t f = 0; f < fx.size(); ++f)
                        m.set_col(f + fx.size() * g, project(x, z, t.col(fx[f] + pdxy * gy[g])));
                cat.comp(x, y, z) = std::move(m);
                std::vector<Mat> pu, pl;
                for (auto k : (*data)[y * n + z].cols) pu.push_back(parent->push(keep[x], keep[y], keep[z])[k]);
                for (auto k : (*data)[x * n + y].cols) pl.push_back(parent->pull(keep[x], keep[y], keep[z])[k]);
                cat.push(x, y, z) = std::move(pu);
                cat.pull(x, y, z) = std::move(pl);
            }
    cat.finalize();
    std::vector<std::size_t> back(parent->size(), std::size_t(-1));
    for (std::size_t i = 0; i < n; ++i) back[keep[i]] = i;
    cat.realizer = [parent, keep, back, project](const ExtCategory& self, const ExtClass& d) {
        ExtClass pd{detail::map_objects(d.c, keep), detail::map_objects(d.a, keep), d.v};
        Conflation s = parent->realize(pd);
        std::vector<std::size_t> kept;
        ObjList b;
        for (std::size_t k = 0; k < s.b().size(); ++k)
            if (back[s.b()[k]] != std::size_t(-1)) {
                kept.push_back(k);
                b.push_back(back[s.b()[k]]);
            }
        Morphism x = zero_map(self, d.a, b), y = zero_map(self, b, d.c);
        auto px = hom_layout(*parent, s.x.src, s.x.tgt), py = hom_layout(*parent, s.y.src, s.y.tgt);
        auto lx = hom_layout(self, d.a, b), ly = hom_layout(self, b, d.c);
        for (std::size_t i = 0; i < kept.size(); ++i) {
            for (std::size_t j = 0; j < d.a.size(); ++j) {
                Vec v = project(d.a[j], b[i], slice(s.x.v, px.offset(kept[i], j), px.size(kept[i], j)));
                std::copy(v.begin(), v.end(), x.v.begin() + lx.offset(i, j));
            }
            for (std::size_t j = 0; j < d.c.size(); ++j) {
                Vec v = project(b[i], d.c[j], slice(s.y.v, py.offset(j, kept[i]), py.size(j, kept[i])));
                std::copy(v.begin(), v.end(), y.v.begin() + ly.offset(j, i));
            }
        }
        return Conflation{x, y, d};
    };
    return cat;
}

inline ExtCategory quotient_by_projective_injectives(CategoryPtr parent)
{
    auto pi = pi_objects(*parent);
    ObjList d;
    std::set_intersection(pi.projectives.begin(), pi.projectives.end(), pi.injectives.begin(), pi.injectives.end(),
                          std::back_inserter(d));
    return ideal_quotient_category(std::move(parent), d);
}

// ---------------------------------------------------------------- approximations

// Minimal right add(D)-approximation of an indecomposable a.
inline Morphism minimal_right_approximation(const ExtCategory& cat, const ObjList& d, std::size_t a)
{
    ObjList src;
    std::vector<Vec> comps;
    for (auto x : d) {
        Mat factored(cat.hom_dim(x, a), 0);
        for (auto y : d) {
            Mat r = radical(cat, x, y);
            for (std::size_t g = 0; g < cat.hom_dim(y, a); ++g) {
                Vec gv(cat.hom_dim(y, a));
                gv[g] = Fp(1);
                if (r.cols()) factored = hstack(factored, left_mult(cat, x, y, a, gv) * r);
            }
        }
        Mat id = identity_mat(cat.hom_dim(x, a));
        for (auto c : complement_columns(column_space(factored), id)) {
            src.push_back(x);
            comps.push_back(id.col(c));
        }
    }
    std::vector<std::size_t> order(src.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return src[i] < src[j]; });
    ObjList s;
    for (auto i : order) s.push_back(src[i]);
    Morphism m = zero_map(cat, s, {a});
    auto l = hom_layout(cat, s, {a});
    for (std::size_t k = 0; k < order.size(); ++k)
        std::copy(comps[order[k]].begin(), comps[order[k]].end(), m.v.begin() + l.offset(0, k));
    return m;
}

inline Morphism minimal_left_approximation(const ExtCategory& cat, const ObjList& d, std::size_t a)
{
    ObjList tgt;
    std::vector<Vec> comps;
    for (auto x : d) {
        Mat factored(cat.hom_dim(a, x), 0);
        for (auto y : d) {
            Mat r = radical(cat, y, x);
            for (std::size_t g = 0; g < cat.hom_dim(a, y); ++g) {
                Vec gv(cat.hom_dim(a, y));
                gv[g] = Fp(1);
                if (r.cols()) factored = hstack(factored, right_mult(cat, a, y, x, gv) * r);
            }
        }
        Mat id = identity_mat(cat.hom_dim(a, x));
        for (auto c : complement_columns(column_space(factored), id)) {
            tgt.push_back(x);
            comps.push_back(id.col(c));
        }
    }
    std::vector<std::size_t> order(tgt.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return tgt[i] < tgt[j]; });
    ObjList t;
    for (auto i : order) t.push_back(tgt[i]);
    Morphism m = zero_map(cat, {a}, t);
    auto l = hom_layout(cat, {a}, t);
    for (std::size_t k = 0; k < order.size(); ++k)
        std::copy(comps[order[k]].begin(), comps[order[k]].end(), m.v.begin() + l.offset(k, 0));
    return m;
}

inline bool is_right_approximation(const ExtCategory& cat, const Morphism& f, const ObjList& d)
{
    for (auto x : d) {
        ObjList X{x};
        if (rank(post_matrix(cat, f, X)) != hom_total(cat, X, f.tgt)) return false;
    }
    return true;
}

inline bool is_left_approximation(const ExtCategory& cat, const Morphism& f, const ObjList& d)
{
    for (auto x : d) {
        ObjList X{x};
        if (rank(pre_matrix(cat, f, X)) != hom_total(cat, f.src, X)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- inflations and deflations

namespace detail {

inline void multisets(std::size_t n, std::size_t k, std::size_t from, ObjList& cur, std::vector<ObjList>& out)
{
    out.push_back(cur);
    if (cur.size() == k) return;
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        multisets(n, k, i, cur, out);
        cur.pop_back();
    }
}

inline Vec random_in(const Mat& basis, std::mt19937& rng)
{
    std::uniform_int_distribution<int> dist(1, int(prime()) - 1);
    Vec v(basis.rows());
    for (std::size_t k = 0; k < basis.cols(); ++k) {
        Fp s(dist(rng));
        for (std::size_t r = 0; r < v.size(); ++r) v[r] += s * basis(r, k);
    }
    return v;
}

inline std::vector<ObjList> candidate_objects(const ExtCategory& cat, std::size_t max_summands)
{
    std::vector<ObjList> out;
    ObjList cur;
    multisets(cat.size(), max_summands, 0, cur, out);
    return out;
}

// Some invertible b with b * from = to, where from, to : A -> B and B -> B'.
inline std::optional<Morphism> iso_after(const ExtCategory& cat, const Morphism& from, const Morphism& to,
                                         std::mt19937& rng)
{
    if (from.tgt.size() != to.tgt.size()) return std::nullopt;
    ObjList s1 = from.tgt, s2 = to.tgt;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
    Mat a = pre_matrix(cat, from, to.tgt);
    auto part = solve(a, Mat::column(to.v));
    if (!part) return std::nullopt;
    Mat ker = kernel_basis(a);
    for (int t = 0; t < 6; ++t) {
        Vec b = part->col(0);
        if (t > 0) {
            Vec r = random_in(ker, rng);
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += r[i];
        }
        Morphism m{from.tgt, to.tgt, b};
        if (is_iso(cat, m)) return m;
        if (ker.cols() == 0) break;
    }
    return std::nullopt;
}

inline std::optional<Morphism> iso_before(const ExtCategory& cat, const Morphism& from, const Morphism& to,
                                          std::mt19937& rng)
{
    // b : to.src -> from.src with from * b = to
    if (from.src.size() != to.src.size()) return std::nullopt;
    ObjList s1 = from.src, s2 = to.src;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
    Mat a = post_matrix(cat, from, to.src);
    auto part = solve(a, Mat::column(to.v));
    if (!part) return std::nullopt;
    Mat ker = kernel_basis(a);
    for (int t = 0; t < 6; ++t) {
        Vec b = part->col(0);
        if (t > 0) {
            Vec r = random_in(ker, rng);
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += r[i];
        }
        Morphism m{to.src, from.src, b};
        if (is_iso(cat, m)) return m;
        if (ker.cols() == 0) break;
    }
    return std::nullopt;
}

}

// A conflation A -> B -> C whose deflation is f : B -> C, searched over kernels with at most
// `max_summands` summands.
inline std::optional<Conflation> deflation_conflation(const ExtCategory& cat, const Morphism& f, std::size_t max_summands = 3)
{
    std::mt19937 rng(11);
    for (auto& a : detail::candidate_objects(cat, max_summands)) {
        // classes d in E(C, A) with f^* d = 0
        auto l = e_layout(cat, f.tgt, a);
        Mat ker = kernel_basis(pull_matrix(cat, f, a));
        std::vector<Vec> tries{Vec(l.total)};
        if (ker.cols()) tries.push_back(detail::random_in(ker, rng));
        for (auto& v : tries) {
            Conflation s = cat.realize({f.tgt, a, v});
            auto b = detail::iso_before(cat, s.y, f, rng);
            if (!b) continue;
            // s.y * b = f; transport x along b^{-1}
            Morphism binv = *inverse_of(cat, *b);
            return Conflation{compose(cat, binv, s.x), f, s.cls};
        }
    }
    return std::nullopt;
}

inline std::optional<Conflation> inflation_conflation(const ExtCategory& cat, const Morphism& f, std::size_t max_summands = 3)
{
    std::mt19937 rng(13);
    for (auto& c : detail::candidate_objects(cat, max_summands)) {
        auto l = e_layout(cat, c, f.src);
        Mat ker = kernel_basis(push_matrix(cat, f, c));
        std::vector<Vec> tries{Vec(l.total)};
        if (ker.cols()) tries.push_back(detail::random_in(ker, rng));
        for (auto& v : tries) {
            Conflation s = cat.realize({c, f.src, v});
            auto b = detail::iso_after(cat, s.x, f, rng);
            if (!b) continue;
            Morphism binv = *inverse_of(cat, *b);
            return Conflation{f, compose(cat, s.y, binv), s.cls};
        }
    }
    return std::nullopt;
}

inline bool is_deflation(const ExtCategory& cat, const Morphism& f) { return deflation_conflation(cat, f).has_value(); }
inline bool is_inflation(const ExtCategory& cat, const Morphism& f) { return inflation_conflation(cat, f).has_value(); }

struct MadeDeflation {
    Morphism deflation;  // [f g] : A + P -> B
    Morphism inclusion;  // A -> A + P
    Conflation conflation;
};

// [f g] with g a deflation from an E-projective.
inline MadeDeflation make_deflation(const ExtCategory& cat, const Morphism& f)
{
    auto pi = pi_objects(cat);
    if (f.tgt.size() != 1) throw std::invalid_argument("make_deflation expects an indecomposable target");
    Morphism g = minimal_right_approximation(cat, pi.projectives, f.tgt[0]);
    if (!is_deflation(cat, g)) throw std::runtime_error("not enough projectives");
    ObjList src = f.src;
    src.insert(src.end(), g.src.begin(), g.src.end());
    Morphism h = zero_map(cat, src, f.tgt);
    auto l = hom_layout(cat, src, f.tgt), lf = hom_layout(cat, f.src, f.tgt), lg = hom_layout(cat, g.src, g.tgt);
    for (std::size_t j = 0; j < f.src.size(); ++j)
        std::copy(f.v.begin() + lf.offset(0, j), f.v.begin() + lf.offset(0, j) + lf.size(0, j), h.v.begin() + l.offset(0, j));
    for (std::size_t j = 0; j < g.src.size(); ++j)
        std::copy(g.v.begin() + lg.offset(0, j), g.v.begin() + lg.offset(0, j) + lg.size(0, j),
                  h.v.begin() + l.offset(0, f.src.size() + j));
    // h is not sorted by object; reorder the source to the canonical order
    std::vector<std::size_t> order(src.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return src[i] < src[j]; });
    ObjList sorted;
    for (auto i : order) sorted.push_back(src[i]);
    Morphism perm = zero_map(cat, sorted, src);
    auto lp = hom_layout(cat, sorted, src);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Vec& id = cat.identity(src[order[k]]);
        std::copy(id.begin(), id.end(), perm.v.begin() + lp.offset(order[k], k));
    }
    Morphism hs = compose(cat, h, perm);
    auto conf = deflation_conflation(cat, hs);
    if (!conf) throw std::runtime_error("combined map is not a deflation");
    Morphism incl = zero_map(cat, f.src, src);
    auto li = hom_layout(cat, f.src, src);
    for (std::size_t j = 0; j < f.src.size(); ++j) {
        const Vec& id = cat.identity(f.src[j]);
        std::copy(id.begin(), id.end(), incl.v.begin() + li.offset(j, j));
    }
    Morphism pinv = *inverse_of(cat, perm);
    return {hs, compose(cat, pinv, incl), *conf};
}

// ---------------------------------------------------------------- axioms

// c : C -> C' with c y = y' b and a_* d = c^* d'.
inline Morphism et3_witness(const ExtCategory& cat, const Conflation& s, const Conflation& t, const Morphism& a,
                            const Morphism& b)
{
    Mat m1 = pre_matrix(cat, s.y, t.c());                               // c |-> c y
    Mat m2 = sharp_lower(cat, t.cls, s.c());                             // c |-> c^* d'
    Vec r1 = compose(cat, t.y, b).v, r2 = pushforward(cat, a, s.cls).v;  // y' b, a_* d
    Vec rhs = r1;
    rhs.insert(rhs.end(), r2.begin(), r2.end());
    auto sol = solve(vstack(m1, m2), Mat::column(rhs));
    if (!sol) throw std::runtime_error("no witness");
    return {s.c(), t.c(), sol->col(0)};
}

// a : A -> A' with x' a = b x and a_* d = c^* d'.
inline Morphism et3op_witness(const ExtCategory& cat, const Conflation& s, const Conflation& t, const Morphism& b,
                              const Morphism& c)
{
    Mat m1 = post_matrix(cat, t.x, s.a());
    Mat m2 = sharp_upper(cat, s.cls, t.a());
    Vec r1 = compose(cat, b, s.x).v, r2 = pullback(cat, c, t.cls).v;
    Vec rhs = r1;
    rhs.insert(rhs.end(), r2.begin(), r2.end());
    auto sol = solve(vstack(m1, m2), Mat::column(rhs));
    if (!sol) throw std::runtime_error("no witness");
    return {s.a(), t.a(), sol->col(0)};
}

// Exactness at V of U --f--> V --g--> W modulo subspaces U0, V0, W0 (given by columns).
inline bool exact_at(const Mat& f, const Mat& g, const Mat& v0, const Mat& w0)
{
    std::size_t nv = g.cols();
    // preimage of w0 under g
    Mat sys = hstack(g, w0 * Fp(-1));
    Mat k = kernel_basis(sys);
    Mat pre = k.rows() ? k.block(0, 0, nv, k.cols()) : Mat(nv, 0);
    Mat img = hstack(f, v0);
    if (img.cols() == 0 && pre.cols() == 0) return true;
    std::size_t rp = rank(pre), ri = rank(img);
    return rp == ri && rank(hstack(pre, img)) == rp;
}

inline Mat no_cols(std::size_t n) { return Mat(n, 0); }

// Exactness of the six-term sequences at every indecomposable test object.
inline Report long_exact_report(const ExtCategory& cat, const Conflation& s, const StabilityIdeals* ideals = nullptr)
{
    Report r{"long-exact", {}};
    std::string name = conflation_name(cat, s);
    bool cov = true, con = true, scov = true, scon = true;
    std::string wcov, wcon, wscov, wscon;
    for (std::size_t x = 0; x < cat.size(); ++x) {
        ObjList X{x};
        // C(X,A) -> C(X,B) -> C(X,C) -> E(X,A) -> E(X,B) -> E(X,C)
        Mat h1 = post_matrix(cat, s.x, X), h2 = post_matrix(cat, s.y, X), h3 = sharp_lower(cat, s.cls, X),
            h4 = push_matrix(cat, s.x, X), h5 = push_matrix(cat, s.y, X);
        std::size_t hb = h2.cols(), hc = h3.cols(), ea = h4.cols(), eb = h5.cols();
        bool ok = exact_at(h1, h2, no_cols(hb), no_cols(h2.rows())) && exact_at(h2, h3, no_cols(hc), no_cols(h3.rows())) &&
                  exact_at(h3, h4, no_cols(ea), no_cols(h4.rows())) && exact_at(h4, h5, no_cols(eb), no_cols(h5.rows()));
        if (!ok && cov) {
            cov = false;
            wcov = cat.labels[x];
        }
        // C(C,X) -> C(B,X) -> C(A,X) -> E(C,X) -> E(B,X) -> E(A,X)
        Mat k1 = pre_matrix(cat, s.y, X), k2 = pre_matrix(cat, s.x, X), k3 = sharp_upper(cat, s.cls, X),
            k4 = pull_matrix(cat, s.y, X), k5 = pull_matrix(cat, s.x, X);
        ok = exact_at(k1, k2, no_cols(k2.cols()), no_cols(k2.rows())) && exact_at(k2, k3, no_cols(k3.cols()), no_cols(k3.rows())) &&
             exact_at(k3, k4, no_cols(k4.cols()), no_cols(k4.rows())) && exact_at(k4, k5, no_cols(k5.cols()), no_cols(k5.rows()));
        if (!ok && con) {
            con = false;
            wcon = cat.labels[x];
        }
        if (ideals) {
            Mat pb = block_subspace(cat, ideals->p, X, s.b()), pc = block_subspace(cat, ideals->p, X, s.c());
            ok = exact_at(h1, h2, pb, pc) && exact_at(h2, h3, pc, no_cols(h3.rows())) &&
                 exact_at(h3, h4, no_cols(ea), no_cols(h4.rows())) && exact_at(h4, h5, no_cols(eb), no_cols(h5.rows()));
            if (!ok && scov) {
                scov = false;
                wscov = cat.labels[x];
            }
            Mat ia = block_subspace(cat, ideals->i, s.a(), X), ib = block_subspace(cat, ideals->i, s.b(), X);
            ok = exact_at(k1, k2, ib, ia) && exact_at(k2, k3, ia, no_cols(k3.rows())) &&
                 exact_at(k3, k4, no_cols(k4.cols()), no_cols(k4.rows())) && exact_at(k4, k5, no_cols(k5.cols()), no_cols(k5.rows()));
            if (!ok && scon) {
                scon = false;
                wscon = cat.labels[x];
            }
        }
    }
    r.add("covariant six-term sequence exact for " + name, cov, wcov);
    r.add("contravariant six-term sequence exact for " + name, con, wcon);
    if (ideals) {
        r.add("stable six-term sequence exact for " + name, scov, wscov);
        r.add("costable six-term sequence exact for " + name, scon, wscon);
    }
    return r;
}

inline bool has_enough_pi(const ExtCategory& cat)
{
    auto pi = pi_objects(cat);
    for (std::size_t x = 0; x < cat.size(); ++x) {
        if (!is_e_projective(cat, x) && !is_deflation(cat, minimal_right_approximation(cat, pi.projectives, x))) return false;
        if (!is_e_injective(cat, x) && !is_inflation(cat, minimal_left_approximation(cat, pi.injectives, x))) return false;
    }
    return true;
}

// All conflations realizing basis classes between indecomposables.
inline std::vector<Conflation> basis_conflations(const ExtCategory& cat)
{
    std::vector<Conflation> out;
    for (std::size_t c = 0; c < cat.size(); ++c)
        for (std::size_t a = 0; a < cat.size(); ++a)
            for (std::size_t k = 0; k < cat.e_dim(c, a); ++k) out.push_back(cat.realize(basis_class(cat, c, a, k)));
    return out;
}

// Inflations that are not monomorphisms and deflations that are not epimorphisms.
struct ExactnessReport {
    std::vector<Conflation> non_monic, non_epic;
    bool exact_like() const { return non_monic.empty() && non_epic.empty(); }
};

inline ExactnessReport non_exactness_report(const ExtCategory& cat)
{
    ExactnessReport r;
    for (auto& s : basis_conflations(cat)) {
        bool monic = true, epic = true;
        for (std::size_t x = 0; x < cat.size(); ++x) {
            ObjList X{x};
            Mat m = post_matrix(cat, s.x, X);
            if (rank(m) != m.cols()) monic = false;
            Mat e = pre_matrix(cat, s.y, X);
            if (rank(e) != e.cols()) epic = false;
        }
        if (!monic) r.non_monic.push_back(s);
        if (!epic) r.non_epic.push_back(s);
    }
    return r;
}

struct AuditOptions {
    bool et4_brute = false;
    std::size_t max_squares = 400;
};

namespace detail {

inline Morphism direct_sum_map(const ExtCategory& cat, const Morphism& f, const Morphism& g)
{
    ObjList src = f.src, tgt = f.tgt;
    src.insert(src.end(), g.src.begin(), g.src.end());
    tgt.insert(tgt.end(), g.tgt.begin(), g.tgt.end());
    Morphism m = zero_map(cat, src, tgt);
    auto l = hom_layout(cat, src, tgt), lf = hom_layout(cat, f.src, f.tgt), lg = hom_layout(cat, g.src, g.tgt);
    for (std::size_t i = 0; i < f.tgt.size(); ++i)
        for (std::size_t j = 0; j < f.src.size(); ++j)
            std::copy(f.v.begin() + lf.offset(i, j), f.v.begin() + lf.offset(i, j) + lf.size(i, j), m.v.begin() + l.offset(i, j));
    for (std::size_t i = 0; i < g.tgt.size(); ++i)
        for (std::size_t j = 0; j < g.src.size(); ++j)
            std::copy(g.v.begin() + lg.offset(i, j), g.v.begin() + lg.offset(i, j) + lg.size(i, j),
                      m.v.begin() + l.offset(f.tgt.size() + i, f.src.size() + j));
    return m;
}

// Reorders the middle of a conflation so its object list is sorted.
inline Conflation sort_middle(const ExtCategory& cat, const Conflation& s)
{
    ObjList b = s.b();
    std::vector<std::size_t> order(b.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return b[i] < b[j]; });
    ObjList sorted;
    for (auto i : order) sorted.push_back(b[i]);
    Morphism p = zero_map(cat, b, sorted);
    auto l = hom_layout(cat, b, sorted);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Vec& id = cat.identity(b[order[k]]);
        std::copy(id.begin(), id.end(), p.v.begin() + l.offset(k, order[k]));
    }
    Morphism pinv = *inverse_of(cat, p);
    return {compose(cat, p, s.x), compose(cat, s.y, pinv), s.cls};
}

}

inline Report axiom_audit(const ExtCategory& cat, const AuditOptions& opt = {})
{
    Report r{"audit", {}};
    std::size_t n = cat.size();

    // (ET1): identities, functoriality and commutation of the actions
    std::string bad;
    for (std::size_t c = 0; c < n && bad.empty(); ++c)
        for (std::size_t a = 0; a < n && bad.empty(); ++a) {
            std::size_t e = cat.e_dim(c, a);
            if (e == 0) continue;
            if (push_single(cat, c, a, a, cat.identity(a)) != identity_mat(e)) bad = "identity push on " + pair_name(cat, c, a);
            if (pull_single(cat, c, c, a, cat.identity(c)) != identity_mat(e)) bad = "identity pull on " + pair_name(cat, c, a);
            for (std::size_t a2 = 0; a2 < n && bad.empty(); ++a2)
                for (std::size_t a3 = 0; a3 < n && bad.empty(); ++a3)
                    for (std::size_t g = 0; g < cat.hom_dim(a2, a3) && bad.empty(); ++g)
                        for (std::size_t f = 0; f < cat.hom_dim(a, a2) && bad.empty(); ++f) {
                            Vec gf = cat.comp(a, a2, a3).col(f + cat.hom_dim(a, a2) * g);
                            if (push_single(cat, c, a, a3, gf) != cat.push(c, a2, a3)[g] * cat.push(c, a, a2)[f])
                                bad = "push functoriality at " + pair_name(cat, c, a);
                        }
            for (std::size_t c2 = 0; c2 < n && bad.empty(); ++c2)
                for (std::size_t c3 = 0; c3 < n && bad.empty(); ++c3)
                    for (std::size_t g = 0; g < cat.hom_dim(c2, c) && bad.empty(); ++g)
                        for (std::size_t f = 0; f < cat.hom_dim(c3, c2) && bad.empty(); ++f) {
                            Vec gf = cat.comp(c3, c2, c).col(f + cat.hom_dim(c3, c2) * g);
                            if (pull_single(cat, c3, c, a, gf) != cat.pull(c3, c2, a)[f] * cat.pull(c2, c, a)[g])
                                bad = "pull functoriality at " + pair_name(cat, c, a);
                        }
            for (std::size_t a2 = 0; a2 < n && bad.empty(); ++a2)
                for (std::size_t c2 = 0; c2 < n && bad.empty(); ++c2)
                    for (std::size_t g = 0; g < cat.hom_dim(a, a2) && bad.empty(); ++g)
                        for (std::size_t f = 0; f < cat.hom_dim(c2, c) && bad.empty(); ++f)
                            if (cat.push(c2, a, a2)[g] * cat.pull(c2, c, a)[f] != cat.pull(c2, c, a2)[f] * cat.push(c, a, a2)[g])
                                bad = "actions do not commute at " + pair_name(cat, c, a);
        }
    r.add("ET1 bifunctor", bad.empty(), bad);

    if (cat.parent) {
        Subfunctor f{n, cat.embedding};
        Report st = is_stable(*cat.parent, f);
        r.add("ET1 relative subfunctor stable", st.ok(), st.checks[0].witness);
        if (st.ok()) {
            ClosedReport cl = is_closed(*cat.parent, f);
            r.add("ET4 closed subfunctor", cl.closed(), cl.right ? cl.left_witness : cl.right_witness);
            r.add("closed on the right iff closed on the left", cl.agree());
        }
    }

    // (ET2): realizations of basis classes
    auto confs = basis_conflations(cat);
    bad.clear();
    for (auto& s : confs) {
        if (!is_zero_vec(compose(cat, s.y, s.x).v)) bad = "y x != 0 for " + conflation_name(cat, s);
        else if (!is_zero_vec(pushforward(cat, s.x, s.cls).v)) bad = "x_* d != 0 for " + conflation_name(cat, s);
        else if (!is_zero_vec(pullback(cat, s.y, s.cls).v)) bad = "y^* d != 0 for " + conflation_name(cat, s);
        if (!bad.empty()) break;
    }
    r.add("ET2 realizations are complexes killing their class", bad.empty(), bad);

    bad.clear();
    for (std::size_t c = 0; c < n && bad.empty(); ++c)
        for (std::size_t a = 0; a < n && bad.empty(); ++a) {
            if (hom_total(cat, {c}, {c}) == 0) continue;
            Conflation z = cat.realize({{c}, {a}, Vec(cat.e_dim(c, a))});
            auto [sec, ret] = splitness(cat, z.x);
            if (!sec) bad = "zero class does not split for " + pair_name(cat, c, a);
            (void)ret;
        }
    r.add("ET2 zero class realizes split", bad.empty(), bad);

    bad.clear();
    for (std::size_t i = 0; i + 1 < confs.size() && i < 12 && bad.empty(); ++i) {
        const Conflation& s = confs[i];
        const Conflation& t = confs[i + 1];
        ExtClass sum{s.c(), s.a(), {}};
        sum.c.insert(sum.c.end(), t.c().begin(), t.c().end());
        sum.a.insert(sum.a.end(), t.a().begin(), t.a().end());
        sum.v.assign(e_total(cat, sum.c, sum.a), Fp(0));
        auto l = e_layout(cat, sum.c, sum.a);
        std::copy(s.cls.v.begin(), s.cls.v.end(), sum.v.begin() + l.offset(0, 0));
        std::copy(t.cls.v.begin(), t.cls.v.end(), sum.v.begin() + l.offset(1, 1));
        Conflation direct{detail::direct_sum_map(cat, s.x, t.x), detail::direct_sum_map(cat, s.y, t.y), sum};
        Conflation real = cat.realize(sum);
        if (!conflation_equivalence(cat, detail::sort_middle(cat, direct), real))
            bad = conflation_name(cat, s) + " with " + conflation_name(cat, t);
    }
    r.add("ET2 realization is additive", bad.empty(), bad);

    // (ET3) and its dual on basis squares
    bad.clear();
    std::size_t squares = 0;
    for (std::size_t i = 0; i < confs.size() && squares < opt.max_squares && bad.empty(); ++i)
        for (std::size_t j = 0; j < confs.size() && squares < opt.max_squares && bad.empty(); ++j) {
            const Conflation &s = confs[i], &t = confs[j];
            std::size_t ha = hom_total(cat, s.a(), t.a());
            for (std::size_t k = 0; k < ha && bad.empty(); ++k) {
                Morphism a{s.a(), t.a(), Vec(ha)};
                a.v[k] = Fp(1);
                // b with b x = x' a
                Mat m = pre_matrix(cat, s.x, t.b());
                auto b = solve(m, Mat::column(compose(cat, t.x, a).v));
                if (!b) continue;
                ++squares;
                try {
                    et3_witness(cat, s, t, a, Morphism{s.b(), t.b(), b->col(0)});
                } catch (const std::runtime_error&) {
                    bad = conflation_name(cat, s) + " => " + conflation_name(cat, t);
                }
            }
            std::size_t hc = hom_total(cat, s.c(), t.c());
            for (std::size_t k = 0; k < hc && bad.empty(); ++k) {
                Morphism c{s.c(), t.c(), Vec(hc)};
                c.v[k] = Fp(1);
                Mat m = post_matrix(cat, t.y, s.b());
                auto b = solve(m, Mat::column(compose(cat, c, s.y).v));
                if (!b) continue;
                ++squares;
                try {
                    et3op_witness(cat, s, t, Morphism{s.b(), t.b(), b->col(0)}, c);
                } catch (const std::runtime_error&) {
                    bad = "(op) " + conflation_name(cat, s) + " => " + conflation_name(cat, t);
                }
            }
        }
    r.add("ET3 and ET3op witnesses on " + std::to_string(squares) + " squares", bad.empty(), bad);

    // Realizations related by automorphisms fixing x and y are equivalent.
    bad.clear();
    std::mt19937 rng(5);
    for (std::size_t i = 0; i < confs.size() && i < 16 && bad.empty(); ++i) {
        const Conflation& s = confs[i];
        Mat ka = kernel_basis(post_matrix(cat, s.x, s.a())), kc = kernel_basis(pre_matrix(cat, s.y, s.c()));
        Morphism a = identity_map(cat, s.a()), c = identity_map(cat, s.c());
        Vec ra = detail::random_in(ka, rng), rc = detail::random_in(kc, rng);
        for (std::size_t t = 0; t < a.v.size(); ++t) a.v[t] += ra[t];
        for (std::size_t t = 0; t < c.v.size(); ++t) c.v[t] += rc[t];
        if (!is_iso(cat, a) || !is_iso(cat, c)) continue;
        ExtClass d2 = pushforward(cat, a, pullback(cat, c, s.cls));
        Conflation t = cat.realize(d2);
        if (!conflation_equivalence(cat, s, t)) bad = conflation_name(cat, s);
    }
    r.add("automorphism twist gives equivalent realization", bad.empty(), bad);

    // (ET4)
    if (cat.provenance == "module" || cat.provenance == "two-term" || cat.provenance == "slice" ||
        cat.provenance == "restricted" || cat.provenance == "quotient")
        r.add("ET4 by construction (" + cat.provenance + ")", true);
    if (opt.et4_brute) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t a = 0; a < n; ++a) total += cat.e_dim(c, a);
        if (n <= 6 && total <= 12) {
            bad.clear();
            for (auto& s : confs)
                for (auto& t : confs) {
                    if (!bad.empty()) break;
                    if (s.b() != t.a()) continue;
                    Morphism h = compose(cat, t.x, s.x);
                    if (!is_inflation(cat, h)) bad = conflation_name(cat, s) + " then " + conflation_name(cat, t);
                }
            r.add("ET4 brute: composed inflations are inflations", bad.empty(), bad);
        } else {
            r.add("ET4 brute skipped: category above the size threshold", true);
        }
    }
    return r;
}

}
