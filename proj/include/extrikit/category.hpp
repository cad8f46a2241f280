#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "module.hpp"

namespace extrikit {

// A (possibly decomposable) object, as a list of indecomposable indices with repetition.
using ObjList = std::vector<std::size_t>;

// Block coordinates: block (i, j) pairs tgt[i] with src[j]; blocks are laid out row-major.
struct Morphism {
    ObjList src, tgt;
    Vec v;
};

// Block (i, j) lives in E(c[i], a[j]).
struct ExtClass {
    ObjList c, a;
    Vec v;
};

struct Conflation {
    Morphism x, y;
    ExtClass cls;
    const ObjList& a() const { return x.src; }
    const ObjList& b() const { return x.tgt; }
    const ObjList& c() const { return y.tgt; }
};

class ExtCategory {
public:
    std::string provenance;
    std::vector<std::string> labels;
    std::vector<std::string> lineage;
    // Module-backed categories keep the module of each object.
    std::vector<Representation> underlying;
    // Complex-backed categories keep each complex as a representation of the stacked frame shape.
    std::vector<Representation> complexes;
    std::function<Conflation(const ExtCategory&, const ExtClass&)> realizer;
    // Relative structures remember the ambient category and the chosen subspaces of its E.
    std::shared_ptr<const ExtCategory> parent;
    std::vector<Mat> embedding;

    void resize(std::size_t n)
    {
        n_ = n;
        hom_.assign(n * n, 0);
        e_.assign(n * n, 0);
        comp_.assign(n * n * n, Mat());
        push_.assign(n * n * n, {});
        pull_.assign(n * n * n, {});
    }
    std::size_t size() const { return n_; }

    std::size_t hom_dim(std::size_t x, std::size_t y) const { return hom_[x * n_ + y]; }
    std::size_t e_dim(std::size_t c, std::size_t a) const { return e_[c * n_ + a]; }
    void set_hom_dim(std::size_t x, std::size_t y, std::size_t d) { hom_[x * n_ + y] = d; }
    void set_e_dim(std::size_t c, std::size_t a, std::size_t d) { e_[c * n_ + a] = d; }

    // Columns indexed f + dim H(x,y) * g give coordinates of g f in H(x,z).
    const Mat& comp(std::size_t x, std::size_t y, std::size_t z) const { return comp_[idx(x, y, z)]; }
    Mat& comp(std::size_t x, std::size_t y, std::size_t z) { return comp_[idx(x, y, z)]; }
    // push(c,a,a2)[k]: E(c,a) -> E(c,a2) along basis morphism k of H(a,a2).
    const std::vector<Mat>& push(std::size_t c, std::size_t a, std::size_t a2) const { return push_[idx(c, a, a2)]; }
    std::vector<Mat>& push(std::size_t c, std::size_t a, std::size_t a2) { return push_[idx(c, a, a2)]; }
    // pull(c2,c,a)[k]: E(c,a) -> E(c2,a) along basis morphism k of H(c2,c).
    const std::vector<Mat>& pull(std::size_t c2, std::size_t c, std::size_t a) const { return pull_[idx(c2, c, a)]; }
    std::vector<Mat>& pull(std::size_t c2, std::size_t c, std::size_t a) { return pull_[idx(c2, c, a)]; }

    // Recovers identities from the composition tables; call once all tables are filled.
    void finalize()
    {
        id_.assign(n_, Vec());
        for (std::size_t x = 0; x < n_; ++x) {
            std::size_t d = hom_dim(x, x);
            Mat stack(d * d, d);
            const Mat& t = comp(x, x, x);
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t r = 0; r < d * d; ++r) stack(r, l) = t(r / d, l * d + r % d);
            auto s = solve(stack, Mat::column(Mat::identity(d).entries()));
            if (!s) throw std::logic_error("object without identity");
            id_[x] = s->col(0);
        }
    }
    const Vec& identity(std::size_t x) const { return id_[x]; }

    Conflation realize(const ExtClass& d) const
    {
        if (!realizer) throw std::logic_error("category has no realization");
        return realizer(*this, d);
    }

    std::optional<std::size_t> index(const std::string& label) const
    {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        return std::nullopt;
    }
    std::size_t at(const std::string& label) const
    {
        auto i = index(label);
        if (!i) throw std::invalid_argument("unknown object " + label);
        return *i;
    }

private:
    std::size_t idx(std::size_t x, std::size_t y, std::size_t z) const { return (x * n_ + y) * n_ + z; }

    std::size_t n_ = 0;
    std::vector<std::size_t> hom_, e_;
    std::vector<Mat> comp_;
    std::vector<std::vector<Mat>> push_, pull_;
    std::vector<Vec> id_;
};

using CategoryPtr = std::shared_ptr<const ExtCategory>;

struct BlockLayout {
    std::size_t rows = 0, cols = 0, total = 0;
    std::vector<std::size_t> off, dim;
    std::size_t offset(std::size_t i, std::size_t j) const { return off[i * cols + j]; }
    std::size_t size(std::size_t i, std::size_t j) const { return dim[i * cols + j]; }
};

inline BlockLayout hom_layout(const ExtCategory& cat, const ObjList& src, const ObjList& tgt)
{
    BlockLayout l{tgt.size(), src.size(), 0, {}, {}};
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) {
            l.off.push_back(l.total);
            l.dim.push_back(cat.hom_dim(src[j], tgt[i]));
            l.total += l.dim.back();
        }
    return l;
}

inline BlockLayout e_layout(const ExtCategory& cat, const ObjList& c, const ObjList& a)
{
    BlockLayout l{c.size(), a.size(), 0, {}, {}};
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            l.off.push_back(l.total);
            l.dim.push_back(cat.e_dim(c[i], a[j]));
            l.total += l.dim.back();
        }
    return l;
}

inline Vec slice(const Vec& v, std::size_t off, std::size_t n) { return Vec(v.begin() + off, v.begin() + off + n); }

inline std::size_t hom_total(const ExtCategory& cat, const ObjList& x, const ObjList& y) { return hom_layout(cat, x, y).total; }
inline std::size_t e_total(const ExtCategory& cat, const ObjList& c, const ObjList& a) { return e_layout(cat, c, a).total; }

inline Morphism zero_map(const ExtCategory& cat, const ObjList& x, const ObjList& y)
{
    return {x, y, Vec(hom_total(cat, x, y))};
}

inline const Vec& identity_coords(const ExtCategory& cat, std::size_t x) { return cat.identity(x); }

inline Morphism identity_map(const ExtCategory& cat, const ObjList& x)
{
    Morphism m = zero_map(cat, x, x);
    auto l = hom_layout(cat, x, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vec id = identity_coords(cat, x[i]);
        std::copy(id.begin(), id.end(), m.v.begin() + l.offset(i, i));
    }
    return m;
}

inline Morphism basis_map(const ExtCategory& cat, std::size_t x, std::size_t y, std::size_t k)
{
    Morphism m{{x}, {y}, Vec(cat.hom_dim(x, y))};
    m.v[k] = Fp(1);
    return m;
}

inline ExtClass basis_class(const ExtCategory& cat, std::size_t c, std::size_t a, std::size_t k)
{
    ExtClass d{{c}, {a}, Vec(cat.e_dim(c, a))};
    d.v[k] = Fp(1);
    return d;
}

// f |-> g f on H(x,y) -> H(x,z), for g given by coordinates in H(y,z).
inline Mat left_mult(const ExtCategory& cat, std::size_t x, std::size_t y, std::size_t z, const Vec& g)
{
    std::size_t dxy = cat.hom_dim(x, y), dxz = cat.hom_dim(x, z);
    Mat r(dxz, dxy);
    const Mat& t = cat.comp(x, y, z);
    for (std::size_t l = 0; l < g.size(); ++l)
        if (!g[l].is_zero()) r = r + t.block(0, l * dxy, dxz, dxy) * g[l];
    return r;
}

// g |-> g f on H(y,z) -> H(x,z), for f given by coordinates in H(x,y).
inline Mat right_mult(const ExtCategory& cat, std::size_t x, std::size_t y, std::size_t z, const Vec& f)
{
    std::size_t dxy = cat.hom_dim(x, y), dyz = cat.hom_dim(y, z), dxz = cat.hom_dim(x, z);
    Mat r(dxz, dyz);
    const Mat& t = cat.comp(x, y, z);
    for (std::size_t m = 0; m < dxy; ++m) {
        if (f[m].is_zero()) continue;
        std::vector<std::size_t> cols;
        for (std::size_t l = 0; l < dyz; ++l) cols.push_back(m + dxy * l);
        r = r + t.select_cols(cols) * f[m];
    }
    return r;
}

inline Vec compose_coords(const ExtCategory& cat, std::size_t x, std::size_t y, std::size_t z, const Vec& g, const Vec& f)
{
    return left_mult(cat, x, y, z, g) * f;
}

inline Morphism compose(const ExtCategory& cat, const Morphism& g, const Morphism& f)
{
    if (g.src != f.tgt) throw std::invalid_argument("compose: endpoint mismatch");
    auto lf = hom_layout(cat, f.src, f.tgt), lg = hom_layout(cat, g.src, g.tgt), lr = hom_layout(cat, f.src, g.tgt);
    Morphism r{f.src, g.tgt, Vec(lr.total)};
    for (std::size_t k = 0; k < g.tgt.size(); ++k)
        for (std::size_t j = 0; j < f.src.size(); ++j)
            for (std::size_t i = 0; i < f.tgt.size(); ++i) {
                if (lf.size(i, j) == 0 || lg.size(k, i) == 0) continue;
                Vec c = compose_coords(cat, f.src[j], f.tgt[i], g.tgt[k], slice(g.v, lg.offset(k, i), lg.size(k, i)),
                                       slice(f.v, lf.offset(i, j), lf.size(i, j)));
                for (std::size_t t = 0; t < c.size(); ++t) r.v[lr.offset(k, j) + t] += c[t];
            }
    return r;
}

// Matrix of f |-> g f from H(x, g.src) to H(x, g.tgt).
inline Mat post_matrix(const ExtCategory& cat, const Morphism& g, const ObjList& x)
{
    auto lin = hom_layout(cat, x, g.src), lout = hom_layout(cat, x, g.tgt), lg = hom_layout(cat, g.src, g.tgt);
    Mat r(lout.total, lin.total);
    for (std::size_t k = 0; k < g.tgt.size(); ++k)
        for (std::size_t i = 0; i < g.src.size(); ++i) {
            if (lg.size(k, i) == 0) continue;
            Vec gk = slice(g.v, lg.offset(k, i), lg.size(k, i));
            for (std::size_t j = 0; j < x.size(); ++j)
                r.set_block(lout.offset(k, j), lin.offset(i, j),
                            r.block(lout.offset(k, j), lin.offset(i, j), lout.size(k, j), lin.size(i, j)) +
                                left_mult(cat, x[j], g.src[i], g.tgt[k], gk));
        }
    return r;
}

// Matrix of g |-> g f from H(f.tgt, z) to H(f.src, z).
inline Mat pre_matrix(const ExtCategory& cat, const Morphism& f, const ObjList& z)
{
    auto lin = hom_layout(cat, f.tgt, z), lout = hom_layout(cat, f.src, z), lf = hom_layout(cat, f.src, f.tgt);
    Mat r(lout.total, lin.total);
    for (std::size_t i = 0; i < f.tgt.size(); ++i)
        for (std::size_t j = 0; j < f.src.size(); ++j) {
            if (lf.size(i, j) == 0) continue;
            Vec fij = slice(f.v, lf.offset(i, j), lf.size(i, j));
            for (std::size_t k = 0; k < z.size(); ++k)
                r.set_block(lout.offset(k, j), lin.offset(k, i),
                            r.block(lout.offset(k, j), lin.offset(k, i), lout.size(k, j), lin.size(k, i)) +
                                right_mult(cat, f.src[j], f.tgt[i], z[k], fij));
        }
    return r;
}

inline Mat push_single(const ExtCategory& cat, std::size_t c, std::size_t a, std::size_t a2, const Vec& coeffs)
{
    Mat r(cat.e_dim(c, a2), cat.e_dim(c, a));
    const auto& ms = cat.push(c, a, a2);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) r = r + ms[k] * coeffs[k];
    return r;
}

inline Mat pull_single(const ExtCategory& cat, std::size_t c2, std::size_t c, std::size_t a, const Vec& coeffs)
{
    Mat r(cat.e_dim(c2, a), cat.e_dim(c, a));
    const auto& ms = cat.pull(c2, c, a);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero()) r = r + ms[k] * coeffs[k];
    return r;
}

// a_* : E(c, a.src) -> E(c, a.tgt).
inline Mat push_matrix(const ExtCategory& cat, const Morphism& a, const ObjList& c)
{
    auto lin = e_layout(cat, c, a.src), lout = e_layout(cat, c, a.tgt), la = hom_layout(cat, a.src, a.tgt);
    Mat r(lout.total, lin.total);
    for (std::size_t k = 0; k < a.tgt.size(); ++k)
        for (std::size_t j = 0; j < a.src.size(); ++j) {
            if (la.size(k, j) == 0) continue;
            Vec ak = slice(a.v, la.offset(k, j), la.size(k, j));
            for (std::size_t i = 0; i < c.size(); ++i)
                r.set_block(lout.offset(i, k), lin.offset(i, j),
                            r.block(lout.offset(i, k), lin.offset(i, j), lout.size(i, k), lin.size(i, j)) +
                                push_single(cat, c[i], a.src[j], a.tgt[k], ak));
        }
    return r;
}

// c^* : E(c.tgt, a) -> E(c.src, a).
inline Mat pull_matrix(const ExtCategory& cat, const Morphism& c, const ObjList& a)
{
    auto lin = e_layout(cat, c.tgt, a), lout = e_layout(cat, c.src, a), lc = hom_layout(cat, c.src, c.tgt);
    Mat r(lout.total, lin.total);
    for (std::size_t i = 0; i < c.tgt.size(); ++i)
        for (std::size_t j = 0; j < c.src.size(); ++j) {
            if (lc.size(i, j) == 0) continue;
            Vec cij = slice(c.v, lc.offset(i, j), lc.size(i, j));
            for (std::size_t k = 0; k < a.size(); ++k)
                r.set_block(lout.offset(j, k), lin.offset(i, k),
                            r.block(lout.offset(j, k), lin.offset(i, k), lout.size(j, k), lin.size(i, k)) +
                                pull_single(cat, c.src[j], c.tgt[i], a[k], cij));
        }
    return r;
}

inline ExtClass pushforward(const ExtCategory& cat, const Morphism& a, const ExtClass& d)
{
    if (a.src != d.a) throw std::invalid_argument("pushforward: endpoint mismatch");
    return {d.c, a.tgt, push_matrix(cat, a, d.c) * d.v};
}

inline ExtClass pullback(const ExtCategory& cat, const Morphism& c, const ExtClass& d)
{
    if (c.tgt != d.c) throw std::invalid_argument("pullback: endpoint mismatch");
    return {c.src, d.a, pull_matrix(cat, c, d.a) * d.v};
}

// f |-> f^* d on H(x, d.c) -> E(x, d.a).
inline Mat sharp_lower(const ExtCategory& cat, const ExtClass& d, const ObjList& x)
{
    auto l = hom_layout(cat, x, d.c);
    Mat r(e_total(cat, x, d.a), l.total);
    for (std::size_t t = 0; t < l.total; ++t) {
        Morphism f{x, d.c, Vec(l.total)};
        f.v[t] = Fp(1);
        r.set_col(t, pull_matrix(cat, f, d.a) * d.v);
    }
    return r;
}

// g |-> g_* d on H(d.a, x) -> E(d.c, x).
inline Mat sharp_upper(const ExtCategory& cat, const ExtClass& d, const ObjList& x)
{
    auto l = hom_layout(cat, d.a, x);
    Mat r(e_total(cat, d.c, x), l.total);
    for (std::size_t t = 0; t < l.total; ++t) {
        Morphism g{d.a, x, Vec(l.total)};
        g.v[t] = Fp(1);
        r.set_col(t, push_matrix(cat, g, d.c) * d.v);
    }
    return r;
}

inline bool is_zero_vec(const Vec& v)
{
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// (is_section, is_retraction).
inline std::pair<bool, bool> splitness(const ExtCategory& cat, const Morphism& f)
{
    Vec idx = identity_map(cat, f.src).v, idy = identity_map(cat, f.tgt).v;
    bool sec = solve(pre_matrix(cat, f, f.src), Mat::column(idx)).has_value();
    bool ret = solve(post_matrix(cat, f, f.tgt), Mat::column(idy)).has_value();
    return {sec, ret};
}

inline std::optional<Morphism> inverse_of(const ExtCategory& cat, const Morphism& f)
{
    Mat a = vstack(pre_matrix(cat, f, f.src), post_matrix(cat, f, f.tgt));
    Vec rhs = identity_map(cat, f.src).v;
    Vec idy = identity_map(cat, f.tgt).v;
    rhs.insert(rhs.end(), idy.begin(), idy.end());
    auto s = solve(a, Mat::column(rhs));
    if (!s) return std::nullopt;
    return Morphism{f.tgt, f.src, s->col(0)};
}

inline bool is_iso(const ExtCategory& cat, const Morphism& f) { return inverse_of(cat, f).has_value(); }

// Some invertible b : B -> B' with b x = x' and y' b = y, if the two conflations are equivalent.
inline std::optional<Morphism> conflation_equivalence(const ExtCategory& cat, const Conflation& s, const Conflation& t)
{
    if (s.a() != t.a() || s.c() != t.c()) return std::nullopt;
    if (hom_total(cat, s.b(), t.b()) == 0 && !(s.b().empty() && t.b().empty())) return std::nullopt;
    Mat a = vstack(pre_matrix(cat, s.x, t.b()), post_matrix(cat, t.y, s.b()));
    Vec rhs = t.x.v;
    rhs.insert(rhs.end(), s.y.v.begin(), s.y.v.end());
    auto part = solve(a, Mat::column(rhs));
    if (!part) return std::nullopt;
    Mat ker = kernel_basis(a);
    std::mt19937 rng(20240917);
    std::uniform_int_distribution<int> dist(0, int(prime()) - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Vec b = part->col(0);
        if (attempt > 0)
            for (std::size_t k = 0; k < ker.cols(); ++k) {
                Fp s(dist(rng));
                for (std::size_t r = 0; r < b.size(); ++r) b[r] += s * ker(r, k);
            }
        Morphism m{s.b(), t.b(), b};
        if (is_iso(cat, m)) return m;
        if (ker.cols() == 0) break;
    }
    return std::nullopt;
}

// Inclusions and projections of the summands of a listed object.
inline Morphism summand_inclusion(const ExtCategory& cat, const ObjList& x, std::size_t i)
{
    Morphism m = zero_map(cat, {x[i]}, x);
    auto l = hom_layout(cat, {x[i]}, x);
    Vec id = identity_coords(cat, x[i]);
    std::copy(id.begin(), id.end(), m.v.begin() + l.offset(i, 0));
    return m;
}

inline Morphism summand_projection(const ExtCategory& cat, const ObjList& x, std::size_t i)
{
    Morphism m = zero_map(cat, x, {x[i]});
    auto l = hom_layout(cat, x, {x[i]});
    Vec id = identity_coords(cat, x[i]);
    std::copy(id.begin(), id.end(), m.v.begin() + l.offset(0, i));
    return m;
}

inline std::string object_name(const ExtCategory& cat, const ObjList& x)
{
    if (x.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? " + " : "") + cat.labels[x[i]];
    return s;
}

}
