#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace extrikit {

struct Arrow {
    std::string name;
    int source = 0;
    int target = 0;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex(const std::string& label) const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == label) return static_cast<int>(i);
        throw std::invalid_argument("unknown vertex '" + label + "'");
    }
    int arrow(const std::string& name) const
    {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        throw std::invalid_argument("unknown arrow '" + name + "'");
    }
    int add_vertex(const std::string& label)
    {
        vertices.push_back(label);
        return static_cast<int>(vertices.size()) - 1;
    }
    void add_arrow(const std::string& name, const std::string& from, const std::string& to)
    {
        arrows.push_back({name, vertex(from), vertex(to)});
    }
    void validate() const
    {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            for (std::size_t j = i + 1; j < vertices.size(); ++j)
                if (vertices[i] == vertices[j]) throw std::invalid_argument("duplicate vertex '" + vertices[i] + "'");
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const auto& a = arrows[i];
            if (a.source < 0 || a.target < 0 || a.source >= static_cast<int>(vertices.size()) ||
                a.target >= static_cast<int>(vertices.size()))
                throw std::invalid_argument("arrow '" + a.name + "' has an undeclared endpoint");
            for (std::size_t j = i + 1; j < arrows.size(); ++j)
                if (a.name == arrows[j].name) throw std::invalid_argument("duplicate arrow '" + a.name + "'");
        }
    }
};

// Arrow sequence in traversal order; length-zero paths carry their vertex.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool operator<(const Path& o) const
    {
        if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
        if (source != o.source) return source < o.source;
        return arrows < o.arrows;
    }
    bool operator==(const Path& o) const { return source == o.source && target == o.target && arrows == o.arrows; }
};

struct RelationTerm {
    Fp coeff;
    std::vector<std::string> path;
};
using Relation = std::vector<RelationTerm>;
using RelationSet = std::vector<Relation>;

class PathAlgebra {
public:
    const Quiver& quiver() const { return quiver_; }
    const RelationSet& relations() const { return relations_; }
    std::size_t dimension() const { return basis_.size(); }
    std::size_t num_vertices() const { return quiver_.vertices.size(); }
    const std::vector<Path>& basis() const { return basis_; }

    // Coefficients of a path in the basis.
    Vec reduce(const Path& p) const
    {
        Vec r(basis_.size());
        if (p.length() >= trunc_) return r;
        auto it = index_.find(p);
        if (it == index_.end()) throw std::logic_error("path not enumerated");
        const auto& [is_basis, pos] = it->second;
        if (is_basis) {
            r[pos] = Fp::one();
            return r;
        }
        for (std::size_t b = 0; b < basis_.size(); ++b) r[b] = -elim_(pos, basis_col_[b]);
        return r;
    }

    // Product b_i * b_j (concatenation in traversal order).
    const Vec& mult(std::size_t i, std::size_t j) const { return mult_[i * basis_.size() + j]; }

    // Basis indices of paths from v ending at w.
    const std::vector<std::size_t>& paths(int v, int w) const { return between_[v * num_vertices() + w]; }
    std::size_t idempotent(int v) const { return idem_[v]; }

    std::shared_ptr<const PathAlgebra> opposite() const;

    friend std::shared_ptr<const PathAlgebra> build_algebra(const Quiver&, const RelationSet&, std::size_t);

private:
    Quiver quiver_;
    RelationSet relations_;
    std::vector<Path> basis_;
    std::size_t trunc_ = 0;
    std::map<Path, std::pair<bool, std::size_t>> index_;
    Mat elim_;
    std::vector<std::size_t> basis_col_;
    std::vector<Vec> mult_;
    std::vector<std::vector<std::size_t>> between_;
    std::vector<std::size_t> idem_;
};

using AlgebraPtr = std::shared_ptr<const PathAlgebra>;

namespace detail {

inline Path concat(const Path& a, const Path& b)
{
    Path r{a.source, b.target, a.arrows};
    r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
    return r;
}

inline std::vector<Path> all_paths(const Quiver& q, std::size_t max_len)
{
    std::vector<Path> out;
    std::vector<Path> layer;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) layer.push_back({int(v), int(v), {}});
    for (std::size_t len = 0; len <= max_len; ++len) {
        out.insert(out.end(), layer.begin(), layer.end());
        if (len == max_len) break;
        std::vector<Path> next;
        for (auto& p : layer)
            for (std::size_t a = 0; a < q.arrows.size(); ++a)
                if (q.arrows[a].source == p.target) {
                    Path n = p;
                    n.arrows.push_back(int(a));
                    n.target = q.arrows[a].target;
                    next.push_back(n);
                }
        layer.swap(next);
        if (layer.empty()) break;
    }
    return out;
}

}

inline AlgebraPtr build_algebra(const Quiver& q, const RelationSet& rels, std::size_t dim_cap = 64)
{
    if (dim_cap < 1) throw std::invalid_argument("dim_cap must be positive");
    q.validate();
    struct ParsedTerm {
        Fp c;
        Path p;
    };
    std::vector<std::vector<ParsedTerm>> parsed;
    for (auto& r : rels) {
        std::vector<ParsedTerm> terms;
        for (auto& t : r) {
            if (t.path.size() < 2) throw std::invalid_argument("relation paths must have length at least 2");
            Path p;
            for (std::size_t i = 0; i < t.path.size(); ++i) {
                int a = q.arrow(t.path[i]);
                if (i == 0) p.source = q.arrows[a].source;
                else if (q.arrows[a].source != p.target)
                    throw std::invalid_argument("relation path is not composable at '" + t.path[i] + "'");
                p.target = q.arrows[a].target;
                p.arrows.push_back(a);
            }
            terms.push_back({t.coeff, p});
        }
        if (terms.empty()) continue;
        for (auto& t : terms)
            if (t.p.source != terms[0].p.source || t.p.target != terms[0].p.target)
                throw std::invalid_argument("relation terms are not parallel paths");
        parsed.push_back(terms);
    }

    for (std::size_t n = 1; n <= dim_cap + 1; ++n) {
        auto paths = detail::all_paths(q, n);
        std::vector<Path> cols;
        // Longer paths first so that they are the ones eliminated.
        std::vector<Path> sorted = paths;
        std::stable_sort(sorted.begin(), sorted.end(), [](const Path& a, const Path& b) {
            if (a.length() != b.length()) return a.length() > b.length();
            return a < b;
        });
        std::map<Path, std::size_t> col;
        for (auto& p : sorted) {
            col[p] = cols.size();
            cols.push_back(p);
        }
        std::vector<Vec> gens;
        for (auto& r : parsed) {
            std::size_t minlen = r[0].p.length();
            for (auto& t : r) minlen = std::min(minlen, t.p.length());
            for (auto& u : paths) {
                if (u.target != r[0].p.source || u.length() + minlen > n) continue;
                for (auto& w : paths) {
                    if (w.source != r[0].p.target || u.length() + minlen + w.length() > n) continue;
                    Vec g(cols.size());
                    bool any = false;
                    for (auto& t : r) {
                        Path full = detail::concat(detail::concat(u, t.p), w);
                        if (full.length() > n) continue;
                        g[col.at(full)] += t.c;
                        any = true;
                    }
                    if (any) gens.push_back(g);
                }
            }
        }
        Mat gm(gens.size(), cols.size());
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) gm(i, j) = gens[i][j];
        auto [red, piv] = rref(gm);
        std::vector<bool> is_piv(cols.size(), false);
        for (auto p : piv) is_piv[p] = true;
        bool top_dead = true;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (cols[j].length() == n && !is_piv[j]) top_dead = false;
        if (!top_dead) continue;
        if (n > dim_cap) break;

        auto alg = std::make_shared<PathAlgebra>();
        alg->quiver_ = q;
        alg->relations_ = rels;
        alg->trunc_ = n;
        std::vector<std::size_t> nonpiv;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (!is_piv[j] && cols[j].length() < n) nonpiv.push_back(j);
        std::sort(nonpiv.begin(), nonpiv.end(), [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
        for (auto j : nonpiv) {
            alg->index_[cols[j]] = {true, alg->basis_.size()};
            alg->basis_col_.push_back(j);
            alg->basis_.push_back(cols[j]);
        }
        for (std::size_t i = 0; i < piv.size(); ++i)
            if (cols[piv[i]].length() < n) alg->index_[cols[piv[i]]] = {false, i};
        alg->elim_ = red;
        std::size_t d = alg->basis_.size(), nv = q.vertices.size();
        alg->mult_.assign(d * d, Vec(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (alg->basis_[i].target == alg->basis_[j].source)
                    alg->mult_[i * d + j] = alg->reduce(detail::concat(alg->basis_[i], alg->basis_[j]));
        alg->between_.assign(nv * nv, {});
        alg->idem_.assign(nv, 0);
        for (std::size_t b = 0; b < d; ++b) {
            auto& p = alg->basis_[b];
            alg->between_[p.source * nv + p.target].push_back(b);
            if (p.length() == 0) alg->idem_[p.source] = b;
        }
        return alg;
    }
    throw std::runtime_error("infinite-dimensional: paths survive beyond length " + std::to_string(dim_cap));
}

inline AlgebraPtr PathAlgebra::opposite() const
{
    Quiver q;
    q.vertices = quiver_.vertices;
    for (auto& a : quiver_.arrows) q.arrows.push_back({a.name, a.target, a.source});
    RelationSet rels;
    for (auto& r : relations_) {
        Relation rr;
        for (auto& t : r) rr.push_back({t.coeff, std::vector<std::string>(t.path.rbegin(), t.path.rend())});
        rels.push_back(rr);
    }
    return build_algebra(q, rels, trunc_ + 1);
}

}
