#pragma once

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "quiver.hpp"

namespace extrikit {

// Bare quiver shape underlying a representation.
struct Shape {
    std::size_t nverts = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target)
};
using ShapePtr = std::shared_ptr<const Shape>;

inline ShapePtr shape_of(const Quiver& q)
{
    auto s = std::make_shared<Shape>();
    s->nverts = q.vertices.size();
    for (auto& a : q.arrows) s->arrows.push_back({a.source, a.target});
    return s;
}

struct Representation {
    ShapePtr shape;
    AlgebraPtr alg;  // null for representations of auxiliary shapes
    std::vector<int> dims;
    std::vector<Mat> maps;  // maps[a] : dims[source] -> dims[target]

    std::size_t nverts() const { return dims.size(); }
    int total_dim() const
    {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }
    bool is_zero() const { return total_dim() == 0; }
    const Mat& map(std::size_t a) const { return maps[a]; }
};

// Per-vertex components f_v : M_v -> N_v.
struct ModuleMorphism {
    std::vector<Mat> comps;

    ModuleMorphism operator+(const ModuleMorphism& o) const
    {
        ModuleMorphism r = *this;
        for (std::size_t v = 0; v < comps.size(); ++v) r.comps[v] = comps[v] + o.comps[v];
        return r;
    }
    ModuleMorphism operator-(const ModuleMorphism& o) const
    {
        ModuleMorphism r = *this;
        for (std::size_t v = 0; v < comps.size(); ++v) r.comps[v] = comps[v] - o.comps[v];
        return r;
    }
    ModuleMorphism operator*(Fp s) const
    {
        ModuleMorphism r = *this;
        for (auto& c : r.comps) c = c * s;
        return r;
    }
    bool is_zero() const
    {
        for (auto& c : comps)
            if (!c.is_zero()) return false;
        return true;
    }
    bool operator==(const ModuleMorphism& o) const { return comps == o.comps; }
};

// g after f.
inline ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f)
{
    if (g.comps.size() != f.comps.size()) throw std::invalid_argument("compose: vertex count mismatch");
    ModuleMorphism r;
    for (std::size_t v = 0; v < f.comps.size(); ++v) r.comps.push_back(g.comps[v] * f.comps[v]);
    return r;
}

inline Representation zero_rep(ShapePtr s, AlgebraPtr alg = nullptr)
{
    Representation r{s, alg, std::vector<int>(s->nverts, 0), {}};
    for (std::size_t a = 0; a < s->arrows.size(); ++a) r.maps.emplace_back(0, 0);
    return r;
}

inline ModuleMorphism zero_morphism(const Representation& m, const Representation& n)
{
    ModuleMorphism f;
    for (std::size_t v = 0; v < m.nverts(); ++v) f.comps.emplace_back(n.dims[v], m.dims[v]);
    return f;
}

inline ModuleMorphism identity_morphism(const Representation& m)
{
    ModuleMorphism f;
    for (std::size_t v = 0; v < m.nverts(); ++v) f.comps.push_back(Mat::identity(m.dims[v]));
    return f;
}

inline bool is_morphism(const Representation& m, const Representation& n, const ModuleMorphism& f)
{
    if (f.comps.size() != m.nverts()) return false;
    for (std::size_t v = 0; v < m.nverts(); ++v)
        if (f.comps[v].rows() != std::size_t(n.dims[v]) || f.comps[v].cols() != std::size_t(m.dims[v])) return false;
    for (std::size_t a = 0; a < m.shape->arrows.size(); ++a) {
        auto [s, t] = m.shape->arrows[a];
        if (n.maps[a] * f.comps[s] != f.comps[t] * m.maps[a]) return false;
    }
    return true;
}

// Concatenated row-major components.
inline Vec flatten(const ModuleMorphism& f)
{
    Vec v;
    for (auto& c : f.comps) v.insert(v.end(), c.entries().begin(), c.entries().end());
    return v;
}

inline std::size_t hom_ambient_dim(const Representation& m, const Representation& n)
{
    std::size_t s = 0;
    for (std::size_t v = 0; v < m.nverts(); ++v) s += std::size_t(m.dims[v]) * n.dims[v];
    return s;
}

inline ModuleMorphism unflatten(const Representation& m, const Representation& n, const Vec& x)
{
    ModuleMorphism f;
    std::size_t off = 0;
    for (std::size_t v = 0; v < m.nverts(); ++v) {
        std::size_t r = n.dims[v], c = m.dims[v];
        f.comps.emplace_back(r, c, Vec(x.begin() + off, x.begin() + off + r * c));
        off += r * c;
    }
    return f;
}

// Basis of Hom(M, N) as a matrix whose columns are flattened morphisms.
inline Mat hom_matrix(const Representation& m, const Representation& n)
{
    std::size_t nv = m.nverts();
    std::vector<std::size_t> off(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + std::size_t(m.dims[v]) * n.dims[v];
    std::size_t neq = 0;
    for (auto [s, t] : m.shape->arrows) neq += std::size_t(n.dims[t]) * m.dims[s];
    Mat eq(neq, off[nv]);
    std::size_t row = 0;
    for (std::size_t a = 0; a < m.shape->arrows.size(); ++a) {
        auto [s, t] = m.shape->arrows[a];
        const Mat& na = n.maps[a];
        const Mat& ma = m.maps[a];
        std::size_t ms = m.dims[s], ns = n.dims[s], mt = m.dims[t], nt = n.dims[t];
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t j = 0; j < ms; ++j, ++row) {
                for (std::size_t k = 0; k < ns; ++k) eq(row, off[s] + k * ms + j) += na(i, k);
                for (std::size_t k = 0; k < mt; ++k) eq(row, off[t] + i * mt + k) -= ma(k, j);
            }
    }
    return kernel_basis(eq);
}

inline std::vector<ModuleMorphism> hom_basis(const Representation& m, const Representation& n)
{
    Mat k = hom_matrix(m, n);
    std::vector<ModuleMorphism> out;
    for (std::size_t j = 0; j < k.cols(); ++j) out.push_back(unflatten(m, n, k.col(j)));
    return out;
}

// Matrix of a path (traversal order) acting on M.
inline Mat path_action(const Representation& m, const Path& p)
{
    Mat r = Mat::identity(m.dims[p.source]);
    for (int a : p.arrows) r = m.maps[a] * r;
    return r;
}

inline bool satisfies_relations(const Representation& m)
{
    if (!m.alg) return true;
    const Quiver& q = m.alg->quiver();
    for (auto& rel : m.alg->relations()) {
        if (rel.empty()) continue;
        Mat acc;
        bool first = true;
        for (auto& t : rel) {
            Path p;
            for (std::size_t i = 0; i < t.path.size(); ++i) {
                int a = q.arrow(t.path[i]);
                if (i == 0) p.source = q.arrows[a].source;
                p.target = q.arrows[a].target;
                p.arrows.push_back(a);
            }
            Mat x = path_action(m, p) * t.coeff;
            if (first) acc = x;
            else acc = acc + x;
            first = false;
        }
        if (!acc.is_zero()) return false;
    }
    return true;
}

inline void validate_representation(const Representation& m)
{
    if (m.dims.size() != m.shape->nverts || m.maps.size() != m.shape->arrows.size())
        throw std::invalid_argument("representation shape mismatch");
    for (std::size_t a = 0; a < m.maps.size(); ++a) {
        auto [s, t] = m.shape->arrows[a];
        if (m.maps[a].rows() != std::size_t(m.dims[t]) || m.maps[a].cols() != std::size_t(m.dims[s]))
            throw std::invalid_argument("arrow matrix has wrong size");
    }
    if (!satisfies_relations(m)) throw std::invalid_argument("representation violates a relation");
}

struct SumData {
    Representation sum;
    std::vector<ModuleMorphism> incl, proj;
};

inline SumData direct_sum(const std::vector<Representation>& parts, ShapePtr shape, AlgebraPtr alg)
{
    SumData d;
    d.sum = zero_rep(shape, alg);
    for (auto& p : parts)
        for (std::size_t v = 0; v < shape->nverts; ++v) d.sum.dims[v] += p.dims[v];
    for (std::size_t a = 0; a < shape->arrows.size(); ++a) {
        auto [s, t] = shape->arrows[a];
        Mat m(d.sum.dims[t], d.sum.dims[s]);
        std::size_t rs = 0, cs = 0;
        for (auto& p : parts) {
            m.set_block(rs, cs, p.maps[a]);
            rs += p.dims[t];
            cs += p.dims[s];
        }
        d.sum.maps[a] = m;
    }
    std::vector<int> off(shape->nverts, 0);
    for (auto& p : parts) {
        ModuleMorphism in, pr;
        for (std::size_t v = 0; v < shape->nverts; ++v) {
            Mat i(d.sum.dims[v], p.dims[v]);
            for (int k = 0; k < p.dims[v]; ++k) i(off[v] + k, k) = Fp::one();
            pr.comps.push_back(i.transpose());
            in.comps.push_back(std::move(i));
            off[v] += p.dims[v];
        }
        d.incl.push_back(in);
        d.proj.push_back(pr);
    }
    return d;
}

inline Representation direct_sum(const Representation& a, const Representation& b)
{
    return direct_sum({a, b}, a.shape, a.alg).sum;
}

// Matrix with the given blocks: target parts by rows, source parts by columns.
inline ModuleMorphism block_morphism(const std::vector<std::vector<ModuleMorphism>>& blocks,
                                     const std::vector<Representation>& src, const std::vector<Representation>& tgt,
                                     std::size_t nverts)
{
    ModuleMorphism f;
    for (std::size_t v = 0; v < nverts; ++v) {
        std::size_t R = 0, C = 0;
        for (auto& t : tgt) R += t.dims[v];
        for (auto& s : src) C += s.dims[v];
        Mat m(R, C);
        std::size_t r0 = 0;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            std::size_t c0 = 0;
            for (std::size_t j = 0; j < src.size(); ++j) {
                m.set_block(r0, c0, blocks[i][j].comps[v]);
                c0 += src[j].dims[v];
            }
            r0 += tgt[i].dims[v];
        }
        f.comps.push_back(m);
    }
    return f;
}

struct SubData {
    Representation rep;
    ModuleMorphism map;  // inclusion for submodules, projection for quotients
};

// Submodule spanned per vertex by the given independent columns.
inline SubData submodule(const Representation& m, const std::vector<Mat>& basis)
{
    SubData d;
    d.rep = zero_rep(m.shape, m.alg);
    for (std::size_t v = 0; v < m.nverts(); ++v) d.rep.dims[v] = int(basis[v].cols());
    for (std::size_t a = 0; a < m.shape->arrows.size(); ++a) {
        auto [s, t] = m.shape->arrows[a];
        auto x = solve(basis[t], m.maps[a] * basis[s]);
        if (!x) throw std::logic_error("subspace is not a submodule");
        d.rep.maps[a] = *x;
    }
    d.map.comps = basis;
    return d;
}

// Quotient by the submodule spanned per vertex by the given columns.
inline SubData quotient_module(const Representation& m, const std::vector<Mat>& sub)
{
    SubData d;
    d.rep = zero_rep(m.shape, m.alg);
    std::vector<Mat> sect;
    for (std::size_t v = 0; v < m.nverts(); ++v) {
        Mat pi = kernel_basis(sub[v].transpose()).transpose();
        if (pi.rows() == 0) pi = Mat(0, m.dims[v]);
        d.rep.dims[v] = int(pi.rows());
        sect.push_back(*solve(pi, Mat::identity(pi.rows())));
        d.map.comps.push_back(pi);
    }
    for (std::size_t a = 0; a < m.shape->arrows.size(); ++a) {
        auto [s, t] = m.shape->arrows[a];
        d.rep.maps[a] = d.map.comps[t] * m.maps[a] * sect[s];
    }
    return d;
}

inline SubData kernel(const Representation& m, const ModuleMorphism& f)
{
    std::vector<Mat> b;
    for (std::size_t v = 0; v < m.nverts(); ++v) b.push_back(kernel_basis(f.comps[v]));
    return submodule(m, b);
}

inline SubData image(const Representation& n, const ModuleMorphism& f)
{
    std::vector<Mat> b;
    for (std::size_t v = 0; v < n.nverts(); ++v) b.push_back(column_space(f.comps[v]));
    return submodule(n, b);
}

inline SubData cokernel(const Representation& n, const ModuleMorphism& f)
{
    std::vector<Mat> b;
    for (std::size_t v = 0; v < n.nverts(); ++v) b.push_back(f.comps[v]);
    return quotient_module(n, b);
}

inline bool is_injective_map(const ModuleMorphism& f)
{
    for (auto& c : f.comps)
        if (rank(c) != c.cols()) return false;
    return true;
}

inline bool is_surjective_map(const ModuleMorphism& f)
{
    for (auto& c : f.comps)
        if (rank(c) != c.rows()) return false;
    return true;
}

inline Path arrow_path(const Quiver& q, int a) { return {q.arrows[a].source, q.arrows[a].target, {a}}; }

inline Representation projective(const AlgebraPtr& alg, int v)
{
    if (v < 0 || std::size_t(v) >= alg->num_vertices()) throw std::invalid_argument("unknown vertex");
    const Quiver& q = alg->quiver();
    Representation r = zero_rep(shape_of(q), alg);
    for (std::size_t i = 0; i < q.vertices.size(); ++i) r.dims[i] = int(alg->paths(v, int(i)).size());
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        const auto& src = alg->paths(v, s);
        const auto& tgt = alg->paths(v, t);
        Mat m(tgt.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            Vec prod = alg->reduce(detail::concat(alg->basis()[src[j]], arrow_path(q, int(a))));
            for (std::size_t i = 0; i < tgt.size(); ++i) m(i, j) = prod[tgt[i]];
        }
        r.maps[a] = m;
    }
    return r;
}

inline Representation injective(const AlgebraPtr& alg, int v)
{
    if (v < 0 || std::size_t(v) >= alg->num_vertices()) throw std::invalid_argument("unknown vertex");
    const Quiver& q = alg->quiver();
    Representation r = zero_rep(shape_of(q), alg);
    for (std::size_t i = 0; i < q.vertices.size(); ++i) r.dims[i] = int(alg->paths(int(i), v).size());
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int s = q.arrows[a].source, t = q.arrows[a].target;
        const auto& src = alg->paths(s, v);
        const auto& tgt = alg->paths(t, v);
        Mat m(tgt.size(), src.size());
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            Vec prod = alg->reduce(detail::concat(arrow_path(q, int(a)), alg->basis()[tgt[i]]));
            for (std::size_t j = 0; j < src.size(); ++j) m(i, j) = prod[src[j]];
        }
        r.maps[a] = m;
    }
    return r;
}

inline Representation simple(const AlgebraPtr& alg, int v)
{
    if (v < 0 || std::size_t(v) >= alg->num_vertices()) throw std::invalid_argument("unknown vertex");
    Representation r = zero_rep(shape_of(alg->quiver()), alg);
    r.dims[v] = 1;
    for (std::size_t a = 0; a < r.maps.size(); ++a) {
        auto [s, t] = r.shape->arrows[a];
        r.maps[a] = Mat(r.dims[t], r.dims[s]);
    }
    return r;
}

// The map P_v -> M sending the trivial path at v to x in M_v.
inline ModuleMorphism from_projective(const AlgebraPtr& alg, int v, const Representation& m, const Vec& x)
{
    ModuleMorphism f;
    for (std::size_t i = 0; i < alg->num_vertices(); ++i) {
        const auto& ps = alg->paths(v, int(i));
        Mat c(m.dims[i], ps.size());
        for (std::size_t j = 0; j < ps.size(); ++j) c.set_col(j, path_action(m, alg->basis()[ps[j]]) * x);
        f.comps.push_back(c);
    }
    return f;
}

// Vector-space dual, a representation of the opposite quiver.
inline Representation dual(const Representation& m, AlgebraPtr op)
{
    Representation d;
    d.shape = op ? shape_of(op->quiver()) : nullptr;
    if (!d.shape) {
        auto s = std::make_shared<Shape>();
        s->nverts = m.shape->nverts;
        for (auto [a, b] : m.shape->arrows) s->arrows.push_back({b, a});
        d.shape = s;
    }
    d.alg = op;
    d.dims = m.dims;
    for (auto& x : m.maps) d.maps.push_back(x.transpose());
    return d;
}

inline ModuleMorphism dual(const ModuleMorphism& f)
{
    ModuleMorphism d;
    for (auto& c : f.comps) d.comps.push_back(c.transpose());
    return d;
}

// Per-vertex bases of rad^k M for k = 0, 1, ... until zero.
inline std::vector<std::vector<Mat>> radical_series(const Representation& m)
{
    std::vector<std::vector<Mat>> series;
    std::vector<Mat> cur;
    for (std::size_t v = 0; v < m.nverts(); ++v) cur.push_back(Mat::identity(m.dims[v]));
    for (;;) {
        series.push_back(cur);
        bool zero = true;
        for (auto& c : cur)
            if (c.cols()) zero = false;
        if (zero) break;
        std::vector<Mat> next;
        for (std::size_t t = 0; t < m.nverts(); ++t) {
            Mat span(m.dims[t], 0);
            for (std::size_t a = 0; a < m.shape->arrows.size(); ++a)
                if (m.shape->arrows[a].second == int(t)) span = hstack(span, m.maps[a] * cur[m.shape->arrows[a].first]);
            next.push_back(column_space(span));
        }
        cur = next;
    }
    return series;
}

// Vertex multiplicities of each radical layer, top first.
inline std::vector<std::vector<int>> radical_layers(const Representation& m)
{
    auto s = radical_series(m);
    std::vector<std::vector<int>> layers;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        std::vector<int> l(m.nverts());
        for (std::size_t v = 0; v < m.nverts(); ++v) l[v] = int(s[k][v].cols() - s[k + 1][v].cols());
        layers.push_back(l);
    }
    return layers;
}

inline std::string layer_label(const std::vector<std::vector<int>>& layers, const std::vector<std::string>& names)
{
    bool wide = false;
    for (auto& n : names)
        if (n.size() != 1) wide = true;
    std::ostringstream os;
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (k) os << "/";
        bool first = true;
        for (std::size_t v = 0; v < layers[k].size(); ++v)
            for (int c = 0; c < layers[k][v]; ++c) {
                if (!first && wide) os << ",";
                os << names[v];
                first = false;
            }
    }
    std::string s = os.str();
    return s.empty() ? "0" : s;
}

inline std::string module_label(const Representation& m)
{
    if (!m.alg) throw std::invalid_argument("module label needs an algebra");
    return layer_label(radical_layers(m), m.alg->quiver().vertices);
}

}
