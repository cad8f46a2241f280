#pragma once

#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "homological.hpp"

namespace extrikit {

// Subspace of Ext(C, A) killed by the radicals of End(C) and End(A).
inline Mat ext_socle(const Ext1Space& e)
{
    Mat stack(0, e.dim());
    for (auto& r : end_radical(e.source())) stack = vstack(stack, pullback_matrix(e, e, r));
    for (auto& r : end_radical(e.target)) stack = vstack(stack, pushforward_matrix(e, e, r));
    return kernel_basis(stack);
}

// Almost split sequence starting at a non-injective indecomposable x.
inline ShortExact almost_split_sequence_from(const Representation& x)
{
    Representation z = ar_translate_inv(x);
    Ext1Space e = ext1(z, x);
    Mat soc = ext_socle(e);
    if (soc.cols() == 0) throw std::logic_error("no almost split class found");
    return realize(e, soc.col(0));
}

inline Representation socle_quotient(const Representation& m)
{
    std::vector<Mat> soc;
    for (std::size_t v = 0; v < m.nverts(); ++v) {
        Mat out(0, m.dims[v]);
        for (std::size_t a = 0; a < m.shape->arrows.size(); ++a)
            if (m.shape->arrows[a].first == int(v)) out = vstack(out, m.maps[a]);
        soc.push_back(kernel_basis(out));
    }
    return quotient_module(m, soc).rep;
}

inline Representation radical_submodule(const Representation& m)
{
    auto s = radical_series(m);
    if (s.size() < 2) return zero_rep(m.shape, m.alg);
    return submodule(m, s[1]).rep;
}

struct ModuleCatalog {
    std::vector<Representation> modules;
    std::vector<std::string> labels;

    std::optional<std::size_t> find(const Representation& m) const
    {
        auto layers = radical_layers(m);
        for (std::size_t i = 0; i < modules.size(); ++i) {
            if (modules[i].dims != m.dims) continue;
            if (radical_layers(modules[i]) != layers) continue;
            if (find_iso(m, modules[i])) return i;
        }
        return std::nullopt;
    }
};

inline void assign_labels(ModuleCatalog& cat)
{
    std::map<std::string, int> seen;
    cat.labels.clear();
    for (auto& m : cat.modules) {
        std::string base = module_label(m);
        int k = ++seen[base];
        cat.labels.push_back(k == 1 ? base : base + "#" + std::to_string(k));
    }
}

// All indecomposables of a representation-finite algebra by knitting from the projectives.
inline ModuleCatalog indecomposables(const AlgebraPtr& alg, std::size_t cap = 512)
{
    ModuleCatalog cat;
    std::deque<std::size_t> queue;
    auto add = [&](const Representation& m) {
        if (m.is_zero()) return;
        for (auto& s : split_summands(m)) {
            if (cat.find(s.rep)) continue;
            if (cat.modules.size() >= cap) throw std::runtime_error("cap exceeded - possibly representation-infinite");
            cat.modules.push_back(s.rep);
            queue.push_back(cat.modules.size() - 1);
        }
    };
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) add(projective(alg, int(v)));
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) add(injective(alg, int(v)));
    for (std::size_t v = 0; v < alg->num_vertices(); ++v) add(simple(alg, int(v)));
    while (!queue.empty()) {
        Representation x = cat.modules[queue.front()];
        queue.pop_front();
        bool proj = is_projective_module(x), inj = is_injective_module(x);
        if (!inj) {
            add(ar_translate_inv(x));
            add(almost_split_sequence_from(x).b);
        }
        if (!proj) add(ar_translate(x));
        if (proj) add(radical_submodule(x));
        if (inj) add(socle_quotient(x));
    }
    assign_labels(cat);
    return cat;
}

}
