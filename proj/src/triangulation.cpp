// triangulation.cpp

#include "cq/triangulation.hpp"

#include <algorithm>
#include <functional>

#include "cq/errors.hpp"

namespace cq {

std::vector<Diagonal> diagonals_of(int m) {
    if (m < 4) throw invalid_input("polygon needs at least 4 vertices");
    std::vector<Diagonal> out;
    for (int a = 0; a < m; ++a)
        for (int b = a + 2; b < m; ++b) {
            if (a == 0 && b == m - 1) continue; // hull edge, not a diagonal
            out.push_back({a, b});
        }
    return out;
}

bool crossing(const Diagonal& d1, const Diagonal& d2) {
    // Strict interleaving around the polygon; shared endpoints don't cross.
    return (d1.a < d2.a && d2.a < d1.b && d1.b < d2.b) ||
           (d2.a < d1.a && d1.a < d2.b && d2.b < d1.b);
}

std::vector<Triangulation> enumerate_triangulations(int m) {
    if (m < 4) throw invalid_input("polygon needs at least 4 vertices");

    // Ear recursion on the hull interval [i..j]: the triangle on edge (i,j)
    // has a unique apex, so every triangulation is produced exactly once.
    std::function<std::vector<std::vector<Diagonal>>(int, int)> rec =
        [&](int i, int j) -> std::vector<std::vector<Diagonal>> {
        if (j - i < 2) return {{}};
        std::vector<std::vector<Diagonal>> out;
        for (int k = i + 1; k < j; ++k) {
            auto lefts = rec(i, k);
            auto rights = rec(k, j);
            for (const auto& l : lefts)
                for (const auto& r : rights) {
                    std::vector<Diagonal> d = l;
                    d.insert(d.end(), r.begin(), r.end());
                    if (k - i >= 2) d.push_back({i, k});
                    if (j - k >= 2) d.push_back({k, j});
                    out.push_back(std::move(d));
                }
        }
        return out;
    };

    std::vector<Triangulation> out;
    for (auto& d : rec(0, m - 1)) {
        std::sort(d.begin(), d.end());
        out.push_back(Triangulation{m, std::move(d)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool has_segment(const Triangulation& t, int a, int b) {
    if (a > b) std::swap(a, b);
    if (b - a == 1 || (a == 0 && b == t.m - 1)) return true; // hull edge
    return std::binary_search(t.diagonals.begin(), t.diagonals.end(), Diagonal{a, b});
}

int diagonal_index(const Triangulation& t, const Diagonal& d) {
    auto it = std::lower_bound(t.diagonals.begin(), t.diagonals.end(), d);
    if (it == t.diagonals.end() || !(*it == d)) return -1;
    return static_cast<int>(it - t.diagonals.begin());
}

} // namespace

Quiver quiver_of(const Triangulation& t) {
    Quiver q;
    for (const auto& d : t.diagonals)
        q.add_vertex(std::to_string(d.a) + "-" + std::to_string(d.b));

    // Triangles are exactly the vertex triples whose three sides are all
    // present (hull vertices are in convex position, so no vertex can sit
    // inside such a triangle and no triple can be subdivided further).
    for (int a = 0; a < t.m; ++a)
        for (int b = a + 1; b < t.m; ++b) {
            if (!has_segment(t, a, b)) continue;
            for (int c = b + 1; c < t.m; ++c) {
                if (!has_segment(t, b, c) || !has_segment(t, a, c)) continue;
                // Counterclockwise cyclic order of the sides: ab, bc, ca.
                int sab = diagonal_index(t, {a, b});
                int sbc = diagonal_index(t, {b, c});
                int sca = diagonal_index(t, {a, c});
                auto arrow = [&](int from, int to) {
                    if (from >= 0 && to >= 0)
                        q.add_arrow("a" + std::to_string(from) + "_" + std::to_string(to),
                                    from, to);
                };
                arrow(sab, sbc);
                arrow(sbc, sca);
                arrow(sca, sab);
            }
        }
    return q;
}

Triangulation flip(const Triangulation& t, const Diagonal& d) {
    if (diagonal_index(t, d) < 0)
        throw invalid_input("diagonal " + std::to_string(d.a) + "-" +
                            std::to_string(d.b) + " is not in the triangulation");

    // Apexes of the two triangles adjacent to d.
    std::vector<int> apex;
    for (int v = 0; v < t.m; ++v) {
        if (v == d.a || v == d.b) continue;
        if (has_segment(t, d.a, v) && has_segment(t, v, d.b)) apex.push_back(v);
    }
    if (apex.size() != 2)
        throw invalid_input("triangulation is malformed: diagonal does not bound "
                            "exactly two triangles");

    Diagonal fresh{std::min(apex[0], apex[1]), std::max(apex[0], apex[1])};
    Triangulation out = t;
    *std::find(out.diagonals.begin(), out.diagonals.end(), d) = fresh;
    std::sort(out.diagonals.begin(), out.diagonals.end());
    return out;
}

} // namespace cq
