#pragma once

#include <set>

#include "ar.hpp"
#include "constructions.hpp"
#include "endo.hpp"

namespace extrikit {

// Index of the object isomorphic to the given module, in a module-backed category.
inline std::optional<std::size_t> find_module(const ExtCategory& cat, const Representation& m)
{
    for (std::size_t i = 0; i < cat.underlying.size(); ++i) {
        const Representation& u = cat.underlying[i];
        if (u.dims == m.dims && find_iso(m, u)) return i;
    }
    return std::nullopt;
}

// Translate of an indecomposable as a list of objects; empty when x is E-projective.
inline ObjList tau_object(const ExtCategory& cat, std::size_t x)
{
    if (is_e_projective(cat, x)) return {};
    auto w = almost_split_ending_at(cat, x);
    if (!w) throw std::runtime_error("no almost split extension ending at " + cat.labels[x]);
    return w->cls.a;
}

// Objects M with Hom(S, M) = 0 for S in `from` and Hom(Q, tau M) = 0 for Q in `after_tau`.
inline ObjList select_hom_vanishing(const ExtCategory& cat, const ObjList& from, const ObjList& after_tau)
{
    ObjList keep;
    for (std::size_t m = 0; m < cat.size(); ++m) {
        bool ok = true;
        for (auto s : from)
            if (cat.hom_dim(s, m)) ok = false;
        if (ok && !after_tau.empty())
            for (auto t : tau_object(cat, m))
                for (auto q : after_tau)
                    if (cat.hom_dim(q, t)) ok = false;
        if (ok) keep.push_back(m);
    }
    return keep;
}

// M / aM where a is the ideal generated by the vertices outside `keep`.
inline Representation vertex_quotient(const Representation& m, const std::set<int>& keep)
{
    std::vector<Mat> sub;
    for (std::size_t v = 0; v < m.nverts(); ++v)
        sub.push_back(keep.count(int(v)) ? Mat(m.dims[v], 0) : Mat::identity(m.dims[v]));
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t a = 0; a < m.shape->arrows.size(); ++a) {
            auto [s, t] = m.shape->arrows[a];
            Mat span = column_space(hstack(sub[t], m.maps[a] * sub[s]));
            if (span.cols() > sub[t].cols()) {
                sub[t] = span;
                grew = true;
            }
        }
    }
    return quotient_module(m, sub).rep;
}

// Relabels a module-backed category through M -> M/aM. E-injective objects I are named P_j[1],
// with j the kept vertex such that dim E(I, X) = dim (X/aX)_j for every other object X.
inline void relabel_by_vertex_quotient(ExtCategory& cat, const std::vector<std::string>& keep_vertices)
{
    if (cat.underlying.size() != cat.size()) throw std::invalid_argument("relabel needs a module-backed category");
    if (cat.size() == 0) return;
    AlgebraPtr alg = cat.underlying[0].alg;
    std::set<int> keep;
    for (auto& v : keep_vertices) keep.insert(alg->quiver().vertex(v));
    std::vector<Representation> g;
    for (auto& m : cat.underlying) g.push_back(vertex_quotient(m, keep));
    std::vector<std::string> out(cat.size());
    std::vector<bool> inj(cat.size());
    for (std::size_t x = 0; x < cat.size(); ++x) {
        inj[x] = is_e_injective(cat, x);
        if (!inj[x]) out[x] = module_label(g[x]);
    }
    for (std::size_t x = 0; x < cat.size(); ++x) {
        if (!inj[x]) continue;
        std::optional<int> hit;
        for (int j : keep) {
            bool match = true;
            for (std::size_t y = 0; y < cat.size(); ++y)
                if (!inj[y] && cat.e_dim(x, y) != std::size_t(g[y].dims[j])) match = false;
            if (match) {
                if (hit) throw std::runtime_error("ambiguous shifted projective for " + cat.labels[x]);
                hit = j;
            }
        }
        if (!hit) throw std::runtime_error("no shifted projective matches " + cat.labels[x]);
        out[x] = module_label(vertex_quotient(projective(alg, *hit), keep)) + "[1]";
    }
    std::set<std::string> seen(out.begin(), out.end());
    if (seen.size() != out.size()) throw std::runtime_error("relabel is not injective");
    cat.labels = out;
}

// Non-split conflations between indecomposables, one per class up to scalar.
// Exhaustive only where every E(c, a) has dimension at most one; otherwise basis classes are listed.
struct ExtriangleInventory {
    std::vector<Conflation> conflations;
    bool complete = true;
};

inline ExtriangleInventory extriangle_inventory(const ExtCategory& cat)
{
    ExtriangleInventory r;
    for (std::size_t c = 0; c < cat.size(); ++c)
        for (std::size_t a = 0; a < cat.size(); ++a) {
            std::size_t d = cat.e_dim(c, a);
            if (d > 1) r.complete = false;
            for (std::size_t k = 0; k < d; ++k) r.conflations.push_back(detail::sort_middle(cat, cat.realize(basis_class(cat, c, a, k))));
        }
    return r;
}

}
