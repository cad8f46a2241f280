#pragma once

#include "extrikit/quiver.hpp"

namespace extrikit::testing {

// 1 <- 2 <- 3, no relations.
inline AlgebraPtr ka3()
{
    static AlgebraPtr alg = [] {
        Quiver q;
        for (auto v : {"1", "2", "3"}) q.add_vertex(v);
        q.add_arrow("b", "2", "1");
        q.add_arrow("c", "3", "2");
        return build_algebra(q, {}, 16);
    }();
    return alg;
}

// 1 -> 2 -> 3 modulo the square of the arrow ideal.
inline AlgebraPtr ka3_rad2()
{
    static AlgebraPtr alg = [] {
        Quiver q;
        for (auto v : {"1", "2", "3"}) q.add_vertex(v);
        q.add_arrow("x", "1", "2");
        q.add_arrow("y", "2", "3");
        return build_algebra(q, {{{Fp(1), {"x", "y"}}}}, 16);
    }();
    return alg;
}

// Eleven-vertex algebra with horizontal (h) and vertical (v) arrows; mixed length-two paths vanish.
inline AlgebraPtr blossom()
{
    static AlgebraPtr alg = [] {
        Quiver q;
        for (auto v : {"1", "2", "3", "a", "b", "c", "d", "e", "f", "g", "h"}) q.add_vertex(v);
        q.add_arrow("h_a1", "a", "1");
        q.add_arrow("h_12", "1", "2");
        q.add_arrow("h_2g", "2", "g");
        q.add_arrow("h_d3", "d", "3");
        q.add_arrow("h_3h", "3", "h");
        q.add_arrow("v_b1", "b", "1");
        q.add_arrow("v_1c", "1", "c");
        q.add_arrow("v_e2", "e", "2");
        q.add_arrow("v_23", "2", "3");
        q.add_arrow("v_3f", "3", "f");
        RelationSet r;
        for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{
                 {"h_a1", "v_1c"}, {"v_b1", "h_12"}, {"h_12", "v_23"},
                 {"v_e2", "h_2g"}, {"h_d3", "v_3f"}, {"v_23", "h_3h"}})
            r.push_back({{Fp(1), {x, y}}});
        return build_algebra(q, r, 16);
    }();
    return alg;
}

}
