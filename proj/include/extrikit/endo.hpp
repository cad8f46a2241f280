#pragma once

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "module.hpp"

namespace extrikit {

// Jacobson radical of an algebra given by structure constants: mult(i, j) = coordinates of e_i e_j.
// Computed as the radical of the trace form, valid when the characteristic exceeds the dimension.
inline Mat trace_form_radical(std::size_t k, const std::function<Vec(std::size_t, std::size_t)>& mult)
{
    if (k == 0) return Mat(0, 0);
    if (prime() <= k) throw std::runtime_error("field too small: prime must exceed endomorphism dimension");
    std::vector<Vec> table(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) table[i * k + j] = mult(i, j);
    Vec tr(k);
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t j = 0; j < k; ++j) tr[m] += table[m * k + j][j];
    Mat form(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Fp s;
            for (std::size_t m = 0; m < k; ++m) s += table[i * k + j][m] * tr[m];
            form(i, j) = s;
        }
    return kernel_basis(form);
}

struct EndAlgebra {
    std::vector<ModuleMorphism> basis;
    Coordinates<Fp> coords;
    Mat radical;  // columns in basis coordinates

    std::size_t dim() const { return basis.size(); }
    Vec coordinates(const ModuleMorphism& f) const { return coords(flatten(f)); }
    bool in_radical(const Vec& c) const { return rank(hstack(radical, Mat::column(c))) == radical.cols(); }
};

inline EndAlgebra end_algebra(const Representation& m)
{
    EndAlgebra e;
    Mat h = hom_matrix(m, m);
    for (std::size_t j = 0; j < h.cols(); ++j) e.basis.push_back(unflatten(m, m, h.col(j)));
    e.coords = Coordinates<Fp>(h);
    e.radical = trace_form_radical(e.dim(), [&](std::size_t i, std::size_t j) {
        return e.coordinates(compose(e.basis[i], e.basis[j]));
    });
    return e;
}

inline std::vector<ModuleMorphism> end_radical(const Representation& m)
{
    EndAlgebra e = end_algebra(m);
    std::vector<ModuleMorphism> out;
    for (std::size_t c = 0; c < e.radical.cols(); ++c) {
        ModuleMorphism f = zero_morphism(m, m);
        for (std::size_t i = 0; i < e.dim(); ++i)
            if (!e.radical(i, c).is_zero()) f = f + e.basis[i] * e.radical(i, c);
        out.push_back(f);
    }
    return out;
}

inline Mat total_matrix(const ModuleMorphism& f)
{
    std::size_t r = 0, c = 0;
    for (auto& x : f.comps) {
        r += x.rows();
        c += x.cols();
    }
    Mat t(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (auto& x : f.comps) {
        t.set_block(r0, c0, x);
        r0 += x.rows();
        c0 += x.cols();
    }
    return t;
}

inline bool is_iso_map(const ModuleMorphism& f)
{
    for (auto& c : f.comps)
        if (!invertible(c)) return false;
    return true;
}

struct Summand {
    Representation rep;
    ModuleMorphism incl;  // rep -> M
    ModuleMorphism proj;  // M -> rep
};

namespace detail {

inline ModuleMorphism power(const ModuleMorphism& f, int n)
{
    ModuleMorphism r = f;
    for (int i = 1; i < n; ++i) r = compose(r, f);
    return r;
}

inline void split_rec(const Representation& m, const ModuleMorphism& incl, const ModuleMorphism& proj,
                      std::vector<Summand>& out, std::mt19937& rng)
{
    if (m.is_zero()) return;
    EndAlgebra e = end_algebra(m);
    if (e.dim() - e.radical.cols() == 1) {
        out.push_back({m, incl, proj});
        return;
    }
    int n = m.total_dim();
    std::uniform_int_distribution<std::uint32_t> dist(0, prime() - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        ModuleMorphism phi = zero_morphism(m, m);
        for (auto& b : e.basis) phi = phi + b * Fp(dist(rng));
        Mat big = total_matrix(phi);
        for (std::uint32_t lam = 0; lam < prime(); ++lam) {
            Mat shifted = big - Mat::identity(n) * Fp(lam);
            if (rank(shifted) == std::size_t(n)) continue;
            ModuleMorphism psi = phi - identity_morphism(m) * Fp(lam);
            ModuleMorphism pn = power(psi, n);
            if (pn.is_zero()) break;  // single eigenvalue: try another element
            std::vector<Mat> kb, ib, full;
            for (std::size_t v = 0; v < m.nverts(); ++v) {
                kb.push_back(kernel_basis(pn.comps[v]));
                ib.push_back(column_space(pn.comps[v]));
                full.push_back(*inverse(hstack(kb.back(), ib.back())));
            }
            SubData k = submodule(m, kb), im = submodule(m, ib);
            ModuleMorphism pk, pi;
            for (std::size_t v = 0; v < m.nverts(); ++v) {
                std::size_t dk = kb[v].cols();
                pk.comps.push_back(full[v].block(0, 0, dk, m.dims[v]));
                pi.comps.push_back(full[v].block(dk, 0, m.dims[v] - dk, m.dims[v]));
            }
            split_rec(k.rep, compose(incl, k.map), compose(pk, proj), out, rng);
            split_rec(im.rep, compose(incl, im.map), compose(pi, proj), out, rng);
            return;
        }
    }
    throw std::runtime_error("decomposition needs a field extension of F_p");
}

}

// Indecomposable summands with split inclusions and projections.
inline std::vector<Summand> split_summands(const Representation& m)
{
    std::vector<Summand> out;
    std::mt19937 rng(20240917u);
    detail::split_rec(m, identity_morphism(m), identity_morphism(m), out, rng);
    return out;
}

// For indecomposables: an isomorphism m -> n if one exists.
inline std::optional<ModuleMorphism> find_iso(const Representation& m, const Representation& n)
{
    if (m.dims != n.dims) return std::nullopt;
    auto f = hom_basis(m, n);
    if (f.empty()) return std::nullopt;
    auto g = hom_basis(n, m);
    for (auto& a : f) {
        if (is_iso_map(a)) return a;
        for (auto& b : g)
            if (is_iso_map(compose(b, a))) return a;
    }
    // A generic combination covers the remaining cases where no basis element is invertible.
    std::mt19937 rng(7u);
    std::uniform_int_distribution<std::uint32_t> dist(1, prime() - 1);
    for (int t = 0; t < 8; ++t) {
        ModuleMorphism c = f[0] * Fp(dist(rng));
        for (std::size_t i = 1; i < f.size(); ++i) c = c + f[i] * Fp(dist(rng));
        if (is_iso_map(c)) return c;
    }
    return std::nullopt;
}

inline bool is_indecomposable(const Representation& m)
{
    if (m.is_zero()) return false;
    EndAlgebra e = end_algebra(m);
    return e.dim() - e.radical.cols() == 1;
}

// Isoclasses of summands with multiplicities, in order of first appearance.
inline std::vector<std::pair<Representation, int>> decompose(const Representation& m)
{
    std::vector<std::pair<Representation, int>> out;
    for (auto& s : split_summands(m)) {
        bool found = false;
        for (auto& [r, c] : out)
            if (find_iso(s.rep, r)) {
                ++c;
                found = true;
                break;
            }
        if (!found) out.push_back({s.rep, 1});
    }
    return out;
}

}
