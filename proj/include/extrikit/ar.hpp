#pragma once

#include <algorithm>
#include <map>
#include <set>

#include "constructions.hpp"

namespace extrikit {

struct AlmostSplitWitness {
    ExtClass cls;
    Conflation conflation;
    bool as1 = false, as2 = false;
    bool endo_local = false;
    bool left_minimal = false, right_minimal = false;
    std::string refusal;  // empty when the class is almost split
    bool ok() const { return refusal.empty(); }
};

// Nonzero classes killed by pushing along rad(A, -) and by pulling along rad(-, C).
inline bool satisfies_as1(const ExtCategory& cat, std::size_t c, std::size_t a, const Vec& d)
{
    for (std::size_t y = 0; y < cat.size(); ++y) {
        if (cat.e_dim(c, y) == 0) continue;
        Mat r = radical(cat, a, y);
        for (std::size_t k = 0; k < r.cols(); ++k)
            if (!is_zero_vec(push_single(cat, c, a, y, r.col(k)) * d)) return false;
    }
    return true;
}

inline bool satisfies_as2(const ExtCategory& cat, std::size_t c, std::size_t a, const Vec& d)
{
    for (std::size_t y = 0; y < cat.size(); ++y) {
        if (cat.e_dim(y, a) == 0) continue;
        Mat r = radical(cat, y, c);
        for (std::size_t k = 0; k < r.cols(); ++k)
            if (!is_zero_vec(pull_single(cat, y, c, a, r.col(k)) * d)) return false;
    }
    return true;
}

inline AlmostSplitWitness is_almost_split(const ExtCategory& cat, const ExtClass& d)
{
    if (d.c.size() != 1 || d.a.size() != 1) throw std::invalid_argument("decomposable endpoint");
    std::size_t c = d.c[0], a = d.a[0];
    AlmostSplitWitness w;
    w.cls = d;
    if (is_zero_vec(d.v)) {
        w.refusal = "split";
        return w;
    }
    w.endo_local = is_endo_local(cat, a) && is_endo_local(cat, c);
    w.as1 = satisfies_as1(cat, c, a, d.v);
    w.as2 = satisfies_as2(cat, c, a, d.v);
    if (!w.endo_local) w.refusal = "endpoint not endo-local";
    else if (!w.as1) w.refusal = "a non-section out of " + cat.labels[a] + " does not kill the class";
    else if (!w.as2) w.refusal = "a non-retraction into " + cat.labels[c] + " does not kill the class";
    if (w.ok()) {
        w.conflation = cat.realize(d);
        w.left_minimal = is_left_minimal(cat, w.conflation.x);
        w.right_minimal = is_right_minimal(cat, w.conflation.y);
    }
    return w;
}

// Subspace of E(c, a) killed by the radicals of End(c) and End(a).
inline Mat end_socle(const ExtCategory& cat, std::size_t c, std::size_t a)
{
    Mat stack(0, cat.e_dim(c, a));
    Mat rc = end_radical(cat, c), ra = end_radical(cat, a);
    for (std::size_t k = 0; k < rc.cols(); ++k) stack = vstack(stack, pull_single(cat, c, c, a, rc.col(k)));
    for (std::size_t k = 0; k < ra.cols(); ++k) stack = vstack(stack, push_single(cat, c, a, a, ra.col(k)));
    return kernel_basis(stack);
}

namespace detail {

inline std::optional<AlmostSplitWitness> search_pair(const ExtCategory& cat, std::size_t c, std::size_t a)
{
    if (cat.e_dim(c, a) == 0) return std::nullopt;
    Mat soc = end_socle(cat, c, a);
    if (soc.cols() == 0) return std::nullopt;
    std::vector<Vec> tries;
    for (std::size_t k = 0; k < soc.cols(); ++k) tries.push_back(soc.col(k));
    if (soc.cols() > 1) {
        Vec s(soc.rows());
        for (std::size_t k = 0; k < soc.cols(); ++k)
            for (std::size_t r = 0; r < s.size(); ++r) s[r] += Fp(static_cast<long long>(k + 1)) * soc(r, k);
        tries.push_back(s);
    }
    for (auto& v : tries) {
        if (!satisfies_as1(cat, c, a, v) || !satisfies_as2(cat, c, a, v)) continue;
        auto w = is_almost_split(cat, {{c}, {a}, v});
        if (w.ok()) return w;
    }
    return std::nullopt;
}

}

inline std::optional<AlmostSplitWitness> almost_split_ending_at(const ExtCategory& cat, std::size_t c)
{
    if (is_e_projective(cat, c)) throw std::invalid_argument("C is E-projective");
    for (std::size_t a = 0; a < cat.size(); ++a)
        if (auto w = detail::search_pair(cat, c, a)) return w;
    return std::nullopt;
}

inline std::optional<AlmostSplitWitness> almost_split_starting_at(const ExtCategory& cat, std::size_t a)
{
    if (is_e_injective(cat, a)) throw std::invalid_argument("A is E-injective");
    for (std::size_t c = 0; c < cat.size(); ++c)
        if (auto w = detail::search_pair(cat, c, a)) return w;
    return std::nullopt;
}

// For witnesses sharing A: an isomorphism c with c^* d1 = d2. For witnesses sharing C: an
// isomorphism a with a_* d1 = d2.
inline Morphism compare_almost_split(const ExtCategory& cat, const AlmostSplitWitness& w1, const AlmostSplitWitness& w2)
{
    std::mt19937 rng(3);
    Mat sys;
    ObjList src, tgt;
    if (w1.cls.a == w2.cls.a) {
        sys = sharp_lower(cat, w1.cls, w2.cls.c);
        src = w2.cls.c;
        tgt = w1.cls.c;
    } else if (w1.cls.c == w2.cls.c) {
        sys = sharp_upper(cat, w1.cls, w2.cls.a);
        src = w1.cls.a;
        tgt = w2.cls.a;
    } else {
        throw std::invalid_argument("witnesses share no endpoint");
    }
    auto part = solve(sys, Mat::column(w2.cls.v));
    if (part) {
        Mat ker = kernel_basis(sys);
        for (int t = 0; t < 8; ++t) {
            Vec v = part->col(0);
            if (t > 0) {
                Vec r = detail::random_in(ker, rng);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += r[i];
            }
            Morphism m{src, tgt, v};
            if (is_iso(cat, m)) return m;
            if (ker.cols() == 0) break;
        }
    }
    throw std::runtime_error("no isomorphism");
}

// ---------------------------------------------------------------- duality

struct ARSDuality {
    std::map<std::size_t, std::size_t> tau;        // non-projective A -> tau A
    std::map<std::size_t, AlmostSplitWitness> at;  // almost split extension ending at A
    std::map<std::size_t, Vec> eta;                // linear form on E(A, tau A)
    // Pairing of stable Hom(A, B) with E(B, tau A); rows follow the stable basis.
    std::map<std::pair<std::size_t, std::size_t>, Mat> pairing;
    std::map<std::pair<std::size_t, std::size_t>, Mat> stable_basis;  // columns in H(A, B)
    StabilityIdeals ideals;
};

namespace detail {

// A deterministic linear form with value 1 on d and 0 on a complement of the line through d.
inline Vec normalized_form(const Vec& d)
{
    std::size_t n = d.size();
    Mat line = Mat::column(d);
    Mat id = Mat::identity(n);
    auto comp = complement_columns(line, id);
    Mat basis = hstack(line, id.select_cols(comp));
    Mat inv = *inverse(basis);
    return inv.transpose().col(0);
}

inline Fp apply(const Vec& form, const Vec& v)
{
    Fp s;
    for (std::size_t i = 0; i < v.size(); ++i) s += form[i] * v[i];
    return s;
}

inline Mat stable_complement(const ExtCategory& cat, const Ideal& p, std::size_t a, std::size_t b)
{
    Mat id = Mat::identity(cat.hom_dim(a, b));
    return id.select_cols(complement_columns(p.at(a, b), id));
}

}

inline ARSDuality ars_duality(const ExtCategory& cat)
{
    ARSDuality d;
    d.ideals = stability_ideals(cat);
    std::size_t n = cat.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (is_e_projective(cat, a)) continue;
        auto w = almost_split_ending_at(cat, a);
        if (!w) throw std::runtime_error("missing almost split extension at " + cat.labels[a]);
        d.tau[a] = w->cls.a[0];
        d.at[a] = *w;
        d.eta[a] = detail::normalized_form(w->cls.v);
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (is_e_injective(cat, a)) continue;
        if (!almost_split_starting_at(cat, a)) throw std::runtime_error("missing almost split extension at " + cat.labels[a]);
    }
    for (auto [a, ta] : d.tau)
        for (std::size_t b = 0; b < n; ++b) {
            Mat st = detail::stable_complement(cat, d.ideals.p, a, b);
            std::size_t e = cat.e_dim(b, ta);
            Mat m(st.cols(), e);
            for (std::size_t i = 0; i < st.cols(); ++i) {
                Mat pull = pull_single(cat, a, b, ta, st.col(i));
                for (std::size_t j = 0; j < e; ++j) {
                    Vec g(e);
                    g[j] = Fp(1);
                    m(i, j) = detail::apply(d.eta[a], pull * g);
                }
            }
            d.stable_basis[{a, b}] = st;
            d.pairing[{a, b}] = m;
        }
    return d;
}

// F(f) : tau A -> tau B for f : A -> B, from eta_A(f^* g) = eta_B(F(f)_* g) for g in E(B, tau A).
inline std::optional<Vec> tau_on_morphism(const ExtCategory& cat, const ARSDuality& d, std::size_t a, std::size_t b, const Vec& f)
{
    std::size_t ta = d.tau.at(a), tb = d.tau.at(b);
    std::size_t e = cat.e_dim(b, ta), h = cat.hom_dim(ta, tb);
    Mat sys(e, h);
    Vec rhs(e);
    Mat pull = pull_single(cat, a, b, ta, f);
    for (std::size_t j = 0; j < e; ++j) {
        Vec g(e);
        g[j] = Fp(1);
        rhs[j] = detail::apply(d.eta.at(a), pull * g);
        for (std::size_t k = 0; k < h; ++k) sys(j, k) = detail::apply(d.eta.at(b), cat.push(b, ta, tb)[k] * g);
    }
    auto s = solve(sys, Mat::column(rhs));
    if (!s) return std::nullopt;
    return s->col(0);
}

inline Report verify_ars(const ExtCategory& cat, const ARSDuality& d)
{
    Report r{"ars", {}};
    std::size_t n = cat.size();
    std::string dims, inv, nat_b, nat_a, inj;
    for (auto [a, ta] : d.tau) {
        if (is_e_injective(cat, ta) && inj.empty()) inj = cat.labels[a] + " -> " + cat.labels[ta];
        for (std::size_t b = 0; b < n; ++b) {
            const Mat& m = d.pairing.at({a, b});
            std::size_t stable = cat.hom_dim(a, b) - d.ideals.p.at(a, b).cols();
            if ((stable != cat.e_dim(b, ta) || m.rows() != m.cols()) && dims.empty())
                dims = cat.labels[a] + ", " + cat.labels[b];
            if (m.rows() == m.cols() && m.rows() && !invertible(m) && inv.empty()) inv = cat.labels[a] + ", " + cat.labels[b];
        }
    }
    // naturality in B: <g f, c> = <f, g^* c> for g : B -> B'
    for (auto [a, ta] : d.tau)
        for (std::size_t b = 0; b < n && nat_b.empty(); ++b)
            for (std::size_t b2 = 0; b2 < n && nat_b.empty(); ++b2) {
                std::size_t e = cat.e_dim(b2, ta);
                if (e == 0) continue;
                for (std::size_t fi = 0; fi < cat.hom_dim(a, b) && nat_b.empty(); ++fi)
                    for (std::size_t gi = 0; gi < cat.hom_dim(b, b2) && nat_b.empty(); ++gi) {
                        Vec gf = cat.comp(a, b, b2).col(fi + cat.hom_dim(a, b) * gi);
                        Mat lhs = pull_single(cat, a, b2, ta, gf);
                        Mat rhs = cat.pull(a, b, ta)[fi] * cat.pull(b, b2, ta)[gi];
                        for (std::size_t j = 0; j < e; ++j) {
                            Vec c(e);
                            c[j] = Fp(1);
                            if (detail::apply(d.eta.at(a), lhs * c) != detail::apply(d.eta.at(a), rhs * c)) {
                                nat_b = cat.labels[a] + ": " + cat.labels[b] + " -> " + cat.labels[b2];
                                break;
                            }
                        }
                    }
            }
    // naturality in A through tau on morphisms
    for (auto [a0, ta0] : d.tau)
        for (auto [a, ta] : d.tau) {
            if (!nat_a.empty()) break;
            for (std::size_t fi = 0; fi < cat.hom_dim(a0, a) && nat_a.empty(); ++fi) {
                Vec f(cat.hom_dim(a0, a));
                f[fi] = Fp(1);
                auto tf = tau_on_morphism(cat, d, a0, a, f);
                if (!tf) {
                    nat_a = "tau undefined on " + cat.labels[a0] + " -> " + cat.labels[a];
                    break;
                }
                for (std::size_t b = 0; b < n && nat_a.empty(); ++b) {
                    std::size_t e = cat.e_dim(b, ta0);
                    for (std::size_t gi = 0; gi < cat.hom_dim(a, b) && nat_a.empty(); ++gi) {
                        Vec g(cat.hom_dim(a, b));
                        g[gi] = Fp(1);
                        Vec gfv = compose_coords(cat, a0, a, b, g, f);
                        for (std::size_t j = 0; j < e; ++j) {
                            Vec c(e);
                            c[j] = Fp(1);
                            Fp lhs = detail::apply(d.eta.at(a0), pull_single(cat, a0, b, ta0, gfv) * c);
                            Vec moved = push_single(cat, b, ta0, ta, *tf) * c;
                            Fp rhs = detail::apply(d.eta.at(a), pull_single(cat, a, b, ta, g) * moved);
                            if (lhs != rhs) {
                                nat_a = cat.labels[a0] + " -> " + cat.labels[a] + " against " + cat.labels[b];
                                break;
                            }
                        }
                    }
                }
            }
        }
    r.add("stable Hom(A, B) and E(B, tau A) have equal dimension", dims.empty(), dims);
    r.add("pairings are non-degenerate", inv.empty(), inv);
    r.add("pairing natural in B", nat_b.empty(), nat_b);
    r.add("pairing natural in A", nat_a.empty(), nat_a);
    r.add("tau A has no E-injective summand", inj.empty(), inj);
    bool finite = true;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (cat.hom_dim(x, y) < d.ideals.p.at(x, y).cols()) finite = false;
    r.add("stable category is Hom-finite", finite);
    return r;
}

// ---------------------------------------------------------------- AR quiver

struct ARQuiver {
    std::vector<std::string> labels;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> solid;  // from, to, multiplicity
    std::vector<std::pair<std::size_t, std::size_t>> dashed;               // C to tau C
    std::vector<std::string> missing;  // non-projectives without an almost split extension
};

inline ARQuiver ar_quiver(const ExtCategory& cat)
{
    ARQuiver q;
    q.labels = cat.labels;
    std::size_t n = cat.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t m = radical(cat, x, y).cols() - radical_square(cat, x, y).cols();
            if (m) q.solid.emplace_back(x, y, m);
        }
    for (std::size_t c = 0; c < n; ++c) {
        if (is_e_projective(cat, c)) continue;
        auto w = almost_split_ending_at(cat, c);
        if (w) q.dashed.emplace_back(c, w->cls.a[0]);
        else q.missing.push_back(cat.labels[c]);
    }
    return q;
}

// ---------------------------------------------------------------- rigid objects and mutation

inline bool is_rigid(const ExtCategory& cat, const ObjList& xs)
{
    for (auto x : xs)
        for (auto y : xs)
            if (cat.e_dim(x, y)) return false;
    return true;
}

struct MutationEdge {
    std::size_t from, to;  // indices into the rigid list
    Conflation conflation;
};

struct RigidResult {
    std::vector<ObjList> rigid;
    std::vector<MutationEdge> edges;
};

namespace detail {

inline void maximal_cliques(const std::vector<std::vector<bool>>& adj, ObjList& r, ObjList p, ObjList x,
                            std::vector<ObjList>& out)
{
    if (p.empty() && x.empty()) {
        ObjList s = r;
        std::sort(s.begin(), s.end());
        out.push_back(s);
        return;
    }
    ObjList pc = p;
    for (auto v : pc) {
        ObjList np, nx;
        for (auto u : p)
            if (adj[v][u]) np.push_back(u);
        for (auto u : x)
            if (adj[v][u]) nx.push_back(u);
        r.push_back(v);
        maximal_cliques(adj, r, np, nx, out);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

// The exchange conflation between x and y given the rest u of a maximal rigid set: a class of
// E(x, y) or E(y, x) whose middle term lies in add u and whose deflation (inflation) is the
// minimal approximation.
inline std::optional<Conflation> exchange_conflation(const ExtCategory& cat, const ObjList& u, std::size_t x, std::size_t y)
{
    std::mt19937 rng(17);
    for (int dir = 0; dir < 2; ++dir) {
        std::size_t c = dir == 0 ? x : y, a = dir == 0 ? y : x;
        std::size_t e = cat.e_dim(c, a);
        if (e == 0) continue;
        Mat all = Mat::identity(e);
        std::vector<Vec> tries;
        for (std::size_t k = 0; k < e; ++k) tries.push_back(all.col(k));
        if (e > 1) tries.push_back(random_in(all, rng));
        Morphism right = minimal_right_approximation(cat, u, c);
        for (auto& v : tries) {
            Conflation s = cat.realize({{c}, {a}, v});
            std::set<std::size_t> us(u.begin(), u.end());
            bool inside = std::all_of(s.b().begin(), s.b().end(), [&](auto b) { return us.count(b) > 0; });
            if (!inside) continue;
            if (s.b() == right.src && is_right_approximation(cat, s.y, u)) return s;
        }
    }
    return std::nullopt;
}

}

inline RigidResult rigid_and_mutation(const ExtCategory& cat)
{
    RigidResult res;
    std::size_t n = cat.size();
    ObjList self;
    for (std::size_t x = 0; x < n; ++x)
        if (cat.e_dim(x, x) == 0) self.push_back(x);
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (auto x : self)
        for (auto y : self)
            if (x != y && cat.e_dim(x, y) == 0 && cat.e_dim(y, x) == 0) adj[x][y] = true;
    ObjList r;
    detail::maximal_cliques(adj, r, self, {}, res.rigid);
    std::sort(res.rigid.begin(), res.rigid.end());
    std::map<ObjList, std::size_t> index;
    for (std::size_t i = 0; i < res.rigid.size(); ++i) index[res.rigid[i]] = i;
    for (std::size_t i = 0; i < res.rigid.size(); ++i) {
        const ObjList& t = res.rigid[i];
        for (std::size_t k = 0; k < t.size(); ++k) {
            ObjList u = t;
            u.erase(u.begin() + k);
            for (std::size_t j = i + 1; j < res.rigid.size(); ++j) {
                const ObjList& t2 = res.rigid[j];
                if (!std::includes(t2.begin(), t2.end(), u.begin(), u.end()) || t2.size() != t.size()) continue;
                std::size_t y = 0;
                for (auto z : t2)
                    if (!std::binary_search(u.begin(), u.end(), z)) y = z;
                auto s = detail::exchange_conflation(cat, u, t[k], y);
                if (s) res.edges.push_back({i, j, *s});
            }
        }
    }
    return res;
}

}
