#pragma once

#include <algorithm>
#include <map>
#include <memory>

#include "category.hpp"
#include "knit.hpp"

namespace extrikit {

// Module-level data behind a tabulated module category.
class ModuleAmbient {
public:
    explicit ModuleAmbient(ModuleCatalog c) : catalog(std::move(c))
    {
        for (auto& m : catalog.modules) pres.push_back(projective_presentation(m));
    }

    std::size_t size() const { return catalog.modules.size(); }
    const Representation& object(std::size_t i) const { return catalog.modules[i]; }

    const HomSpace& hom(std::size_t i, std::size_t j) const
    {
        auto it = homs_.find({i, j});
        if (it == homs_.end()) it = homs_.emplace(std::make_pair(i, j), HomSpace(object(i), object(j))).first;
        return it->second;
    }
    const Ext1Space& ext(std::size_t c, std::size_t a) const
    {
        auto it = exts_.find({c, a});
        if (it == exts_.end()) it = exts_.emplace(std::make_pair(c, a), ext1(pres[c], object(a))).first;
        return it->second;
    }
    // Omega c2 -> Omega c induced by basis morphism k of Hom(c2, c).
    const ModuleMorphism& syzygy(std::size_t c2, std::size_t c, std::size_t k) const
    {
        auto key = std::make_tuple(c2, c, k);
        auto it = syz_.find(key);
        if (it == syz_.end()) it = syz_.emplace(key, syzygy_map(pres[c], pres[c2], hom(c2, c).element(k))).first;
        return it->second;
    }

    // Splits a module into catalog objects: indices sorted, with maps to and from the summands.
    struct Split {
        ObjList objs;
        std::vector<ModuleMorphism> to, from;  // m -> object, object -> m
    };
    Split split(const Representation& m) const
    {
        std::vector<std::tuple<std::size_t, ModuleMorphism, ModuleMorphism>> parts;
        if (!m.is_zero())
            for (auto& s : split_summands(m)) {
                auto idx = catalog.find(s.rep);
                if (!idx) throw std::runtime_error("summand outside the catalog");
                ModuleMorphism psi = *find_iso(s.rep, object(*idx));
                ModuleMorphism inv;
                for (auto& c : psi.comps) inv.comps.push_back(*inverse(c));
                parts.emplace_back(*idx, compose(psi, s.proj), compose(s.incl, inv));
            }
        std::stable_sort(parts.begin(), parts.end(),
                         [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });
        Split r;
        for (auto& [i, t, f] : parts) {
            r.objs.push_back(i);
            r.to.push_back(t);
            r.from.push_back(f);
        }
        return r;
    }

    ModuleCatalog catalog;
    std::vector<Presentation> pres;

private:
    mutable std::map<std::pair<std::size_t, std::size_t>, HomSpace> homs_;
    mutable std::map<std::pair<std::size_t, std::size_t>, Ext1Space> exts_;
    mutable std::map<std::tuple<std::size_t, std::size_t, std::size_t>, ModuleMorphism> syz_;
};

namespace detail {

inline SumData sum_of(const ModuleAmbient& amb, const ObjList& objs, const AlgebraPtr& alg)
{
    std::vector<Representation> parts;
    for (auto i : objs) parts.push_back(amb.object(i));
    ShapePtr shape = amb.object(0).shape;
    return direct_sum(parts, shape, alg);
}

// Block coordinates of a module map between listed objects, given maps into and out of the sums.
inline Morphism block_coords(const ModuleAmbient& amb, const ExtCategory& cat, const ObjList& src, const ObjList& tgt,
                             const std::function<ModuleMorphism(std::size_t, std::size_t)>& blk)
{
    Morphism m = zero_map(cat, src, tgt);
    auto l = hom_layout(cat, src, tgt);
    for (std::size_t i = 0; i < tgt.size(); ++i)
        for (std::size_t j = 0; j < src.size(); ++j) {
            if (l.size(i, j) == 0) continue;
            Vec c = amb.hom(src[j], tgt[i]).coordinates(blk(i, j));
            std::copy(c.begin(), c.end(), m.v.begin() + l.offset(i, j));
        }
    return m;
}

inline Conflation realize_modules(const ModuleAmbient& amb, const ExtCategory& cat, const ExtClass& d)
{
    AlgebraPtr alg = amb.object(0).alg;
    auto cs = sum_of(amb, d.c, alg), as = sum_of(amb, d.a, alg);
    Ext1Space e = ext1(cs.sum, as.sum);
    Vec x(e.dim());
    auto l = e_layout(cat, d.c, d.a);
    for (std::size_t i = 0; i < d.c.size(); ++i)
        for (std::size_t j = 0; j < d.a.size(); ++j) {
            if (l.size(i, j) == 0) continue;
            const Ext1Space& eij = amb.ext(d.c[i], d.a[j]);
            Ext1Space mid = ext1(eij.pres, as.sum);
            Vec y = pushforward_matrix(eij, mid, as.incl[j]) * slice(d.v, l.offset(i, j), l.size(i, j));
            Vec z = pullback_matrix(mid, e, cs.proj[i]) * y;
            for (std::size_t t = 0; t < z.size(); ++t) x[t] += z[t];
        }
    ShortExact ses = realize(e, x);
    auto sp = amb.split(ses.b);
    Conflation r;
    r.cls = d;
    r.x = block_coords(amb, cat, d.a, sp.objs,
                       [&](std::size_t i, std::size_t j) { return compose(sp.to[i], compose(ses.mono, as.incl[j])); });
    r.y = block_coords(amb, cat, sp.objs, d.c,
                       [&](std::size_t i, std::size_t j) { return compose(cs.proj[i], compose(ses.epi, sp.from[j])); });
    return r;
}

}

// Tabulates the category of all catalog objects with E = Ext^1.
inline ExtCategory tabulate_modules(std::shared_ptr<const ModuleAmbient> amb)
{
    ExtCategory cat;
    std::size_t n = amb->size();
    cat.provenance = "module";
    cat.lineage = {"module category"};
    cat.labels = amb->catalog.labels;
    cat.underlying = amb->catalog.modules;
    cat.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            cat.set_hom_dim(x, y, amb->hom(x, y).dim());
            cat.set_e_dim(x, y, amb->ext(x, y).dim());
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t dxy = cat.hom_dim(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                std::size_t dyz = cat.hom_dim(y, z);
                Mat t(cat.hom_dim(x, z), dxy * dyz);
                for (std::size_t g = 0; g < dyz; ++g)
                    for (std::size_t f = 0; f < dxy; ++f)
                        t.set_col(f + dxy * g,
                                  amb->hom(x, z).coordinates(compose(amb->hom(y, z).element(g), amb->hom(x, y).element(f))));
                cat.comp(x, y, z) = std::move(t);
            }
        }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t a2 = 0; a2 < n; ++a2) {
                auto& v = cat.push(c, a, a2);
                for (std::size_t k = 0; k < cat.hom_dim(a, a2); ++k) {
                    if (cat.e_dim(c, a) == 0 || cat.e_dim(c, a2) == 0)
                        v.push_back(Mat(cat.e_dim(c, a2), cat.e_dim(c, a)));
                    else
                        v.push_back(pushforward_matrix(amb->ext(c, a), amb->ext(c, a2), amb->hom(a, a2).element(k)));
                }
            }
    for (std::size_t c2 = 0; c2 < n; ++c2)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t a = 0; a < n; ++a) {
                auto& v = cat.pull(c2, c, a);
                for (std::size_t k = 0; k < cat.hom_dim(c2, c); ++k) {
                    std::size_t din = cat.e_dim(c, a), dout = cat.e_dim(c2, a);
                    Mat m(dout, din);
                    if (din && dout) {
                        const Ext1Space& from = amb->ext(c, a);
                        const Ext1Space& to = amb->ext(c2, a);
                        const ModuleMorphism& s = amb->syzygy(c2, c, k);
                        for (std::size_t j = 0; j < din; ++j) {
                            Vec x(din);
                            x[j] = Fp(1);
                            m.set_col(j, to.coordinates(compose(from.cocycle(x), s)));
                        }
                    }
                    v.push_back(std::move(m));
                }
            }
    cat.finalize();
    cat.realizer = [amb](const ExtCategory& self, const ExtClass& d) { return detail::realize_modules(*amb, self, d); };
    return cat;
}

}

namespace extrikit {

inline ExtCategory from_module_category(const AlgebraPtr& alg, std::size_t cap = 512)
{
    return tabulate_modules(std::make_shared<const ModuleAmbient>(indecomposables(alg, cap)));
}

}
