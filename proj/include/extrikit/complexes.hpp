#pragma once

#include <algorithm>
#include <map>
#include <memory>

#include "category.hpp"
#include "knit.hpp"

namespace extrikit {

// Bounded complexes of projectives in a fixed window of degrees, encoded as representations of a
// product shape: one copy of the quiver per degree plus differential arrows (s, v) -> (s + 1, v).
struct ComplexFrame {
    AlgebraPtr alg;
    ShapePtr base, shape;
    int lo = -3;
    std::size_t slots = 4;

    std::size_t nv() const { return base->nverts; }
    std::size_t na() const { return base->arrows.size(); }
    std::size_t slot(int degree) const
    {
        int s = degree - lo;
        if (s < 0 || std::size_t(s) >= slots) throw std::out_of_range("degree outside the complex window");
        return std::size_t(s);
    }
    std::size_t d_arrow(std::size_t s, std::size_t v) const { return slots * na() + s * nv() + v; }
};
using FramePtr = std::shared_ptr<const ComplexFrame>;

inline FramePtr make_frame(const AlgebraPtr& alg, int lo = -3, std::size_t slots = 4)
{
    auto f = std::make_shared<ComplexFrame>();
    f->alg = alg;
    f->base = shape_of(alg->quiver());
    f->lo = lo;
    f->slots = slots;
    auto sh = std::make_shared<Shape>();
    sh->nverts = slots * f->nv();
    for (std::size_t s = 0; s < slots; ++s)
        for (auto [a, b] : f->base->arrows) sh->arrows.push_back({int(s * f->nv()) + a, int(s * f->nv()) + b});
    for (std::size_t s = 0; s < slots; ++s)
        for (std::size_t v = 0; v < f->nv(); ++v)
            sh->arrows.push_back({int(s * f->nv() + v), int(s + 1 < slots ? (s + 1) * f->nv() + v : s * f->nv() + v)});
    f->shape = sh;
    return f;
}

// The degree-s term as a module.
inline Representation term(const ComplexFrame& fr, const Representation& x, std::size_t s)
{
    Representation m = zero_rep(fr.base, fr.alg);
    for (std::size_t v = 0; v < fr.nv(); ++v) m.dims[v] = x.dims[s * fr.nv() + v];
    for (std::size_t a = 0; a < fr.na(); ++a) m.maps[a] = x.maps[s * fr.na() + a];
    return m;
}

inline ModuleMorphism differential(const ComplexFrame& fr, const Representation& x, std::size_t s)
{
    ModuleMorphism d;
    for (std::size_t v = 0; v < fr.nv(); ++v) d.comps.push_back(x.maps[fr.d_arrow(s, v)]);
    return d;
}

inline ModuleMorphism slot_component(const ComplexFrame& fr, const ModuleMorphism& f, std::size_t s)
{
    ModuleMorphism r;
    for (std::size_t v = 0; v < fr.nv(); ++v) r.comps.push_back(f.comps[s * fr.nv() + v]);
    return r;
}

// Assembles a complex from terms in consecutive slots starting at `first` and the differentials between them.
inline Representation assemble(const ComplexFrame& fr, std::size_t first, const std::vector<Representation>& terms,
                               const std::vector<ModuleMorphism>& diffs)
{
    Representation x = zero_rep(fr.shape, nullptr);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        std::size_t s = first + t;
        for (std::size_t v = 0; v < fr.nv(); ++v) x.dims[s * fr.nv() + v] = terms[t].dims[v];
        for (std::size_t a = 0; a < fr.na(); ++a) x.maps[s * fr.na() + a] = terms[t].maps[a];
    }
    for (std::size_t s = 0; s < fr.slots; ++s)
        for (std::size_t v = 0; v < fr.nv(); ++v) {
            std::size_t src = s * fr.nv() + v;
            std::size_t tgt = s + 1 < fr.slots ? src + fr.nv() : src;
            x.maps[fr.d_arrow(s, v)] = Mat(x.dims[tgt], x.dims[src]);
        }
    for (std::size_t t = 0; t < diffs.size(); ++t)
        for (std::size_t v = 0; v < fr.nv(); ++v) x.maps[fr.d_arrow(first + t, v)] = diffs[t].comps[v];
    return x;
}

// X[1]: the term of degree i is X^{i+1}; the differential changes sign.
inline Representation shift(const ComplexFrame& fr, const Representation& x)
{
    for (std::size_t v = 0; v < fr.nv(); ++v)
        if (x.dims[v] != 0) throw std::out_of_range("shift leaves the complex window");
    std::vector<Representation> terms;
    std::vector<ModuleMorphism> diffs;
    for (std::size_t s = 1; s < fr.slots; ++s) terms.push_back(term(fr, x, s));
    for (std::size_t s = 1; s + 1 < fr.slots; ++s) {
        ModuleMorphism d = differential(fr, x, s);
        diffs.push_back(d * Fp(-1));
    }
    return assemble(fr, 0, terms, diffs);
}

inline ModuleMorphism shift_map(const ComplexFrame& fr, const ModuleMorphism& f, const Representation& src,
                                const Representation& tgt)
{
    ModuleMorphism r = zero_morphism(shift(fr, src), shift(fr, tgt));
    for (std::size_t s = 1; s < fr.slots; ++s)
        for (std::size_t v = 0; v < fr.nv(); ++v) r.comps[(s - 1) * fr.nv() + v] = f.comps[s * fr.nv() + v];
    return r;
}

// Hom in the homotopy category: chain maps modulo null-homotopic ones.
struct KHom {
    Representation src, tgt;
    Mat basis;
    std::size_t null_dim = 0;
    Coordinates<Fp> coords;

    std::size_t dim() const { return basis.cols(); }
    ModuleMorphism element(std::size_t i) const { return unflatten(src, tgt, basis.col(i)); }
    ModuleMorphism combine(const Vec& x) const { return unflatten(src, tgt, basis * x); }
    Vec coordinates(const ModuleMorphism& f) const
    {
        Vec full = coords(flatten(f));
        return Vec(full.begin() + null_dim, full.end());
    }
};

inline Mat null_homotopic(const ComplexFrame& fr, const Representation& x, const Representation& y)
{
    Mat r(hom_ambient_dim(x, y), 0);
    for (std::size_t s = 1; s < fr.slots; ++s) {
        Representation xs = term(fr, x, s), ys = term(fr, y, s - 1);
        if (xs.is_zero() || ys.is_zero()) continue;
        for (auto& h : hom_basis(xs, ys)) {
            ModuleMorphism f = zero_morphism(x, y);
            ModuleMorphism top = compose(differential(fr, y, s - 1), h);
            for (std::size_t v = 0; v < fr.nv(); ++v) f.comps[s * fr.nv() + v] = top.comps[v];
            ModuleMorphism bot = compose(h, differential(fr, x, s - 1));
            for (std::size_t v = 0; v < fr.nv(); ++v) f.comps[(s - 1) * fr.nv() + v] = bot.comps[v];
            r = hstack(r, Mat::column(flatten(f)));
        }
    }
    return r;
}

inline KHom khom(const ComplexFrame& fr, const Representation& x, const Representation& y)
{
    KHom h;
    h.src = x;
    h.tgt = y;
    Mat chains = hom_matrix(x, y);
    Mat null = column_space(null_homotopic(fr, x, y));
    auto extra = complement_columns(null, chains);
    h.basis = chains.select_cols(extra);
    h.null_dim = null.cols();
    h.coords = Coordinates<Fp>(hstack(null, h.basis));
    return h;
}

inline bool is_contractible(const ComplexFrame& fr, const Representation& x) { return khom(fr, x, x).dim() == 0; }

// Indecomposable complexes up to isomorphism, with homotopy-category data.
class ComplexAmbient {
public:
    ComplexAmbient(FramePtr f, std::vector<Representation> objs, std::vector<std::string> names)
        : frame(std::move(f)), objects(std::move(objs)), labels(std::move(names))
    {
        for (auto& o : objects) shifted.push_back(shift(*frame, o));
    }

    std::size_t size() const { return objects.size(); }

    const KHom& hom(std::size_t i, std::size_t j) const
    {
        auto it = homs_.find({i, j});
        if (it == homs_.end()) it = homs_.emplace(std::make_pair(i, j), khom(*frame, objects[i], objects[j])).first;
        return it->second;
    }
    // E(c, a) = Hom(c, a[1]).
    const KHom& ext(std::size_t c, std::size_t a) const
    {
        auto it = exts_.find({c, a});
        if (it == exts_.end()) it = exts_.emplace(std::make_pair(c, a), khom(*frame, objects[c], shifted[a])).first;
        return it->second;
    }

    std::optional<std::size_t> find(const Representation& x) const
    {
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i].dims == x.dims && find_iso(x, objects[i])) return i;
        return std::nullopt;
    }

    struct Split {
        ObjList objs;
        std::vector<ModuleMorphism> to, from;
    };
    // Drops contractible summands and matches the rest against the object list.
    Split split(const Representation& x) const
    {
        std::vector<std::tuple<std::size_t, ModuleMorphism, ModuleMorphism>> parts;
        if (!x.is_zero())
            for (auto& s : split_summands(x)) {
                if (is_contractible(*frame, s.rep)) continue;
                auto idx = find(s.rep);
                if (!idx) throw std::runtime_error("complex summand outside the category");
                ModuleMorphism psi = *find_iso(s.rep, objects[*idx]);
                ModuleMorphism inv;
                for (auto& c : psi.comps) inv.comps.push_back(*inverse(c));
                parts.emplace_back(*idx, compose(psi, s.proj), compose(s.incl, inv));
            }
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
        Split r;
        for (auto& [i, t, f] : parts) {
            r.objs.push_back(i);
            r.to.push_back(t);
            r.from.push_back(f);
        }
        return r;
    }

    FramePtr frame;
    std::vector<Representation> objects, shifted;
    std::vector<std::string> labels;

private:
    mutable std::map<std::pair<std::size_t, std::size_t>, KHom> homs_, exts_;
};

namespace detail {

inline SumData complex_sum(const ComplexAmbient& amb, const ObjList& objs, bool shifted)
{
    std::vector<Representation> parts;
    for (auto i : objs) parts.push_back(shifted ? amb.shifted[i] : amb.objects[i]);
    return direct_sum(parts, amb.frame->shape, nullptr);
}

// Cone of d : C -> A[1], giving A -> B -> C.
inline Conflation realize_complexes(const ComplexAmbient& amb, const ExtCategory& cat, const ExtClass& d)
{
    const ComplexFrame& fr = *amb.frame;
    auto cs = complex_sum(amb, d.c, false), as = complex_sum(amb, d.a, false), as1 = complex_sum(amb, d.a, true);
    ModuleMorphism delta = zero_morphism(cs.sum, as1.sum);
    auto l = e_layout(cat, d.c, d.a);
    for (std::size_t i = 0; i < d.c.size(); ++i)
        for (std::size_t j = 0; j < d.a.size(); ++j) {
            if (l.size(i, j) == 0) continue;
            ModuleMorphism dij = amb.ext(d.c[i], d.a[j]).combine(slice(d.v, l.offset(i, j), l.size(i, j)));
            delta = delta + compose(as1.incl[j], compose(dij, cs.proj[i]));
        }
    auto bs = direct_sum({as.sum, cs.sum}, fr.shape, nullptr);
    Representation b = bs.sum;
    for (std::size_t s = 0; s + 1 < fr.slots; ++s)
        for (std::size_t v = 0; v < fr.nv(); ++v) {
            std::size_t src = s * fr.nv() + v;
            std::size_t arrow = fr.d_arrow(s, v);
            Mat m = b.maps[arrow];
            // delta at (s, v) maps C^s to A[1]^s = A^{s+1}.
            m.set_block(0, as.sum.dims[src], delta.comps[src]);
            b.maps[arrow] = m;
        }
    auto sp = amb.split(b);
    Morphism x = zero_map(cat, d.a, sp.objs), y = zero_map(cat, sp.objs, d.c);
    auto lx = hom_layout(cat, d.a, sp.objs), ly = hom_layout(cat, sp.objs, d.c);
    for (std::size_t k = 0; k < sp.objs.size(); ++k) {
        for (std::size_t j = 0; j < d.a.size(); ++j) {
            if (lx.size(k, j) == 0) continue;
            Vec c = amb.hom(d.a[j], sp.objs[k]).coordinates(compose(sp.to[k], compose(bs.incl[0], as.incl[j])));
            std::copy(c.begin(), c.end(), x.v.begin() + lx.offset(k, j));
        }
        for (std::size_t i = 0; i < d.c.size(); ++i) {
            if (ly.size(i, k) == 0) continue;
            Vec c = amb.hom(sp.objs[k], d.c[i]).coordinates(compose(cs.proj[i], compose(bs.proj[1], sp.from[k])));
            std::copy(c.begin(), c.end(), y.v.begin() + ly.offset(i, k));
        }
    }
    return {x, y, d};
}

}

inline ExtCategory tabulate_complexes(std::shared_ptr<const ComplexAmbient> amb, const std::string& provenance)
{
    const ComplexFrame& fr = *amb->frame;
    ExtCategory cat;
    std::size_t n = amb->size();
    cat.provenance = provenance;
    cat.lineage = {provenance + " category in the homotopy category of projectives"};
    cat.labels = amb->labels;
    cat.complexes = amb->objects;
    cat.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            cat.set_hom_dim(x, y, amb->hom(x, y).dim());
            cat.set_e_dim(x, y, amb->ext(x, y).dim());
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                std::size_t dxy = cat.hom_dim(x, y), dyz = cat.hom_dim(y, z);
                Mat t(cat.hom_dim(x, z), dxy * dyz);
                for (std::size_t g = 0; g < dyz; ++g)
                    for (std::size_t f = 0; f < dxy; ++f)
                        t.set_col(f + dxy * g,
                                  amb->hom(x, z).coordinates(compose(amb->hom(y, z).element(g), amb->hom(x, y).element(f))));
                cat.comp(x, y, z) = std::move(t);
            }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                auto& v = cat.push(c, a, a2);
                std::size_t din = cat.e_dim(c, a), dout = cat.e_dim(c, a2);
                for (std::size_t k = 0; k < cat.hom_dim(a, a2); ++k) {
                    Mat m(dout, din);
                    if (din && dout) {
                        ModuleMorphism s = shift_map(fr, amb->hom(a, a2).element(k), amb->objects[a], amb->objects[a2]);
                        for (std::size_t j = 0; j < din; ++j)
                            m.set_col(j, amb->ext(c, a2).coordinates(compose(s, amb->ext(c, a).element(j))));
                    }
                    v.push_back(std::move(m));
                }
            }
    for (std::size_t c2 = 0; c2 < n; ++c2)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t a = 0; a < n; ++a) {
                auto& v = cat.pull(c2, c, a);
                std::size_t din = cat.e_dim(c, a), dout = cat.e_dim(c2, a);
                for (std::size_t k = 0; k < cat.hom_dim(c2, c); ++k) {
                    Mat m(dout, din);
                    if (din && dout) {
                        ModuleMorphism f = amb->hom(c2, c).element(k);
                        for (std::size_t j = 0; j < din; ++j)
                            m.set_col(j, amb->ext(c2, a).coordinates(compose(amb->ext(c, a).element(j), f)));
                    }
                    v.push_back(std::move(m));
                }
            }
    cat.finalize();
    cat.realizer = [amb](const ExtCategory& self, const ExtClass& d) { return detail::realize_complexes(*amb, self, d); };
    return cat;
}

// Minimal projective presentation of m in degrees -1, 0, or in degrees -2, -1 for m[1].
inline Representation presentation_complex(const ComplexFrame& fr, const Representation& m, bool shifted = false)
{
    Presentation pr = projective_presentation(m);
    if (!shifted) return assemble(fr, fr.slot(-1), {pr.p1, pr.p0}, {pr.d});
    return assemble(fr, fr.slot(-2), {pr.p1, pr.p0}, {pr.d * Fp(-1)});
}

// Two-term complexes P^{-1} -> P^0 up to homotopy.
inline ExtCategory two_term_category(const AlgebraPtr& alg, std::size_t cap = 512)
{
    FramePtr fr = make_frame(alg);
    ModuleCatalog mods = indecomposables(alg, cap);
    std::vector<Representation> objs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < mods.modules.size(); ++i) {
        objs.push_back(presentation_complex(*fr, mods.modules[i]));
        labels.push_back(mods.labels[i]);
    }
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) {
        Representation p = projective(alg, int(v));
        objs.push_back(assemble(*fr, fr->slot(-1), {p}, {}));
        labels.push_back(module_label(p) + "[1]");
    }
    return tabulate_complexes(std::make_shared<const ComplexAmbient>(fr, objs, labels), "two-term");
}

inline bool is_hereditary(const AlgebraPtr& alg)
{
    for (std::size_t v = 0; v < alg->num_vertices(); ++v)
        if (!is_projective_module(projective_presentation(simple(alg, int(v))).omega)) return false;
    return true;
}

// Indecomposable modules and their shifts inside the homotopy category of projectives.
inline ExtCategory hereditary_slice(const AlgebraPtr& alg, std::size_t cap = 512)
{
    if (!is_hereditary(alg)) throw std::invalid_argument("not hereditary");
    FramePtr fr = make_frame(alg);
    ModuleCatalog mods = indecomposables(alg, cap);
    std::vector<Representation> objs;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < mods.modules.size(); ++i) {
        objs.push_back(presentation_complex(*fr, mods.modules[i]));
        labels.push_back(mods.labels[i]);
    }
    for (std::size_t i = 0; i < mods.modules.size(); ++i) {
        objs.push_back(presentation_complex(*fr, mods.modules[i], true));
        labels.push_back(mods.labels[i] + "[1]");
    }
    return tabulate_complexes(std::make_shared<const ComplexAmbient>(fr, objs, labels), "slice");
}

}
