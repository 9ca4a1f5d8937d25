#pragma once

// Polynomial-time deciders and constructive strategies for instances whose
// graph leaves every color enough private room, plus the parameterized
// decision pipeline for Fitting.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <vector>

#include "engine.hpp"
#include "solvers.hpp"

namespace hexasort {

using Matching = std::vector<Edge>;

namespace detail {

inline Matching greedy_maximal_matching(const Graph& g, const std::vector<char>& removed) {
    Matching out;
    std::vector<char> used = removed;
    for (const auto& [u, v] : g.edges()) {
        if (used[u] || used[v]) continue;
        used[u] = used[v] = 1;
        out.emplace_back(u, v);
    }
    return out;
}

// Any maximum matching of the remaining graph touches u or v for every
// remaining edge uv, so branching over the edges incident to one fixed edge
// is exhaustive.
inline bool matching_search(const Graph& g, std::vector<char>& removed, std::size_t k, Matching& acc) {
    if (k == 0) return true;
    const auto greedy = greedy_maximal_matching(g, removed);
    if (greedy.size() >= k) {
        acc.insert(acc.end(), greedy.begin(), greedy.begin() + static_cast<std::ptrdiff_t>(k));
        return true;
    }
    if (2 * greedy.size() < k) return false;  // a maximal matching is at least half a maximum one

    const auto [a, b] = greedy.front();
    std::vector<Edge> candidates;
    for (const Vertex end : {a, b}) {
        for (const Vertex w : g.neighbors(end)) {
            if (removed[w]) continue;
            const Edge e{std::min(end, w), std::max(end, w)};
            if (std::find(candidates.begin(), candidates.end(), e) == candidates.end()) candidates.push_back(e);
        }
    }
    for (const auto& e : candidates) {
        removed[e.first] = removed[e.second] = 1;
        acc.push_back(e);
        if (matching_search(g, removed, k - 1, acc)) return true;
        acc.pop_back();
        removed[e.first] = removed[e.second] = 0;
    }
    return false;
}

inline std::vector<std::size_t> indices_of_color(const Instance& instance, ColorId c) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < instance.sequence.size(); ++i) {
        if (instance.sequence[i].color == c) out.push_back(i);
    }
    return out;
}

}  // namespace detail

/// Matching with at least `target` edges if one exists. Exact search bounded
/// by the target size; meant for targets in the order of the color count.
inline std::optional<Matching> maximum_matching(const Graph& graph, std::size_t target) {
    std::vector<char> removed(graph.vertex_count(), 0);
    Matching acc;
    if (!detail::matching_search(graph, removed, target, acc)) return std::nullopt;
    std::sort(acc.begin(), acc.end());
    return acc;
}

/// A matching with one edge per color fits every sequence: each color
/// alternates between the endpoints of its own edge, lower endpoint first.
inline std::optional<Verdict> decide_fitting_matching(const Instance& instance) {
    const auto colors = used_colors(instance);
    const auto matching = maximum_matching(instance.graph, colors.size());
    if (!matching) return std::nullopt;

    Trace trace(instance.sequence.size());
    for (std::size_t c = 0; c < colors.size(); ++c) {
        const auto [low, high] = (*matching)[c];
        bool on_low = true;
        for (const auto i : detail::indices_of_color(instance, colors[c])) {
            trace[i] = on_low ? low : high;
            on_low = !on_low;
        }
    }
    return Verdict::accept(Reason::matching, std::move(trace));
}

/// A hub of degree colors*t fits every sequence: each color owns t neighbors of
/// the hub and, once all of them are occupied, the next stack of that color
/// lands on the hub and pulls the whole group to at least t.
inline std::optional<Verdict> decide_fitting_high_degree(const Instance& instance) {
    const auto colors = used_colors(instance);
    const auto& g = instance.graph;
    const std::size_t need = colors.size() * instance.threshold;

    std::optional<Vertex> hub;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) >= need && (!hub || g.degree(v) > g.degree(*hub))) hub = v;
    }
    if (!hub) return std::nullopt;

    std::vector<std::vector<Vertex>> group(instance.color_count);
    const auto around = g.neighbors(*hub);
    for (std::size_t c = 0; c < colors.size(); ++c) {
        auto first = around.begin() + static_cast<std::ptrdiff_t>(c * instance.threshold);
        group[colors[c].index].assign(first, first + instance.threshold);
    }

    Configuration config(g.vertex_count());
    Trace trace;
    trace.reserve(instance.sequence.size());
    for (std::size_t i = 0; i < instance.sequence.size(); ++i) {
        const auto& stack = instance.sequence[i];
        const auto& mine = group[stack.color.index];
        const auto free = std::find_if(mine.begin(), mine.end(), [&](Vertex v) { return config.is_empty(v); });
        const Vertex target = free != mine.end() ? *free : *hub;
        trace.push_back(target);
        config = place(config, instance, stack, target);
    }
    return Verdict::accept(Reason::high_degree, std::move(trace));
}

/// Empty is impossible when some color's non-height-t stacks sum below t and
/// its last stack is itself below t.
inline std::optional<Verdict> check_empty_trivially_negative(const Instance& instance) {
    const auto t = instance.threshold;
    for (const auto c : used_colors(instance)) {
        std::uint64_t partial = 0;
        Height last = 0;
        for (const auto& s : instance.sequence) {
            if (s.color != c) continue;
            if (s.height < t) partial += s.height;
            last = s.height;
        }
        if (partial < t && last < t) return Verdict::reject(Reason::negative_height_t);
    }
    return std::nullopt;
}

/// Spider with a center, one length-one leg `s` and two length-two legs
/// center-a1-b1 and center-a2-b2.
struct Spider {
    Vertex center = 0;
    Vertex s = 0;
    Vertex a1 = 0;
    Vertex b1 = 0;
    Vertex a2 = 0;
    Vertex b2 = 0;

    std::array<Vertex, 6> vertices() const { return {center, s, a1, b1, a2, b2}; }
    friend bool operator==(const Spider&, const Spider&) = default;
};

struct SpiderPacking {
    std::vector<Spider> spiders;
};

/// True when the six vertices are distinct and induce exactly the spider's
/// five edges.
inline bool is_induced_spider(const Graph& g, const Spider& sp) {
    auto vs = sp.vertices();
    for (const auto v : vs) {
        if (v >= g.vertex_count()) return false;
    }
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end()) return false;

    const std::array<Edge, 5> wanted{Edge{sp.center, sp.s}, Edge{sp.center, sp.a1}, Edge{sp.a1, sp.b1},
                                     Edge{sp.center, sp.a2}, Edge{sp.a2, sp.b2}};
    std::size_t edges = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) edges += g.adjacent(vs[i], vs[j]) ? 1 : 0;
    }
    if (edges != wanted.size()) return false;
    return std::all_of(wanted.begin(), wanted.end(), [&](const Edge& e) { return g.adjacent(e.first, e.second); });
}

/// Greedy packing of `count` vertex-disjoint induced spiders. Centers are
/// tried by decreasing degree. A miss does not prove that no packing exists.
inline std::optional<SpiderPacking> find_spider_packing(const Graph& g, std::size_t count) {
    SpiderPacking packing;
    if (count == 0) return packing;

    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

    std::vector<char> used(g.vertex_count(), 0);
    for (const Vertex x : order) {
        if (used[x] || g.degree(x) < 3) continue;
        std::vector<Vertex> around;
        for (const Vertex w : g.neighbors(x)) {
            if (!used[w]) around.push_back(w);
        }
        std::optional<Spider> found;
        for (std::size_t i = 0; i < around.size() && !found; ++i) {
            for (std::size_t j = 0; j < around.size() && !found; ++j) {
                if (j == i) continue;
                for (std::size_t k = j + 1; k < around.size() && !found; ++k) {
                    if (k == i) continue;
                    const Vertex s = around[i], a1 = around[j], a2 = around[k];
                    for (const Vertex b1 : g.neighbors(a1)) {
                        if (found) break;
                        if (used[b1]) continue;
                        for (const Vertex b2 : g.neighbors(a2)) {
                            if (used[b2]) continue;
                            const Spider candidate{x, s, a1, b1, a2, b2};
                            if (is_induced_spider(g, candidate)) {
                                found = candidate;
                                break;
                            }
                        }
                    }
                }
            }
        }
        if (!found) continue;
        for (const auto v : found->vertices()) used[v] = 1;
        packing.spiders.push_back(*found);
        if (packing.spiders.size() == count) return packing;
    }
    return std::nullopt;
}

/// Constructive Empty strategy with one reserved spider per color (colors in
/// ascending order take spiders in packing order).
inline Trace build_empty_spider_trace(const Instance& instance, const SpiderPacking& packing) {
    const auto colors = used_colors(instance);
    if (packing.spiders.size() < colors.size()) {
        throw PreconditionError("packing has " + std::to_string(packing.spiders.size()) + " spiders for " +
                                std::to_string(colors.size()) + " colors");
    }
    for (const auto& sp : packing.spiders) {
        if (!is_induced_spider(instance.graph, sp)) throw PreconditionError("packing contains a malformed spider");
    }
    if (check_empty_trivially_negative(instance)) {
        throw PreconditionError("instance is trivially negative for the empty variant");
    }
    const auto t = instance.threshold;
    const auto sums = color_sums(instance);
    Trace trace(instance.sequence.size());

    for (std::size_t ci = 0; ci < colors.size(); ++ci) {
        const auto c = colors[ci];
        if (sums[c.index] < t) {
            throw PreconditionError("color " + std::to_string(c.index) + " sums to " +
                                    std::to_string(sums[c.index]) + " < threshold");
        }
        const auto& sp = packing.spiders[ci];
        const auto mine = detail::indices_of_color(instance, c);
        const auto z = mine.back();
        const Height hz = instance.sequence[z].height;

        auto alternate = [&](const std::vector<std::size_t>& stacks, Vertex last, Vertex other) {
            // the final stack lands on `last`
            for (std::size_t k = 0; k < stacks.size(); ++k) {
                trace[stacks[k]] = ((stacks.size() - 1 - k) % 2 == 0) ? last : other;
            }
        };

        if (hz == t || sums[c.index] - hz < t) {
            const Vertex lo = std::min(sp.center, sp.s), hi = std::max(sp.center, sp.s);
            for (std::size_t k = 0; k < mine.size(); ++k) trace[mine[k]] = (k % 2 == 0) ? lo : hi;
            continue;
        }

        // Minimal set X of sub-threshold stacks reaching t: first-fit in
        // sequence order, then drop removable elements from the front.
        std::vector<std::size_t> x;
        std::uint64_t total = 0;
        for (const auto i : mine) {
            if (instance.sequence[i].height >= t) continue;
            x.push_back(i);
            total += instance.sequence[i].height;
            if (total >= t) break;
        }
        for (std::size_t k = 0; k < x.size();) {
            const Height h = instance.sequence[x[k]].height;
            if (total - h >= t) {
                total -= h;
                x.erase(x.begin() + static_cast<std::ptrdiff_t>(k));
            } else {
                ++k;
            }
        }

        const auto y = x.front();
        std::vector<std::size_t> leg1, leg2;
        for (const auto i : mine) {
            if (i == y || i == z) continue;
            if (std::find(x.begin(), x.end(), i) != x.end()) {
                leg1.push_back(i);
            } else {
                leg2.push_back(i);
            }
        }
        trace[y] = sp.s;
        alternate(leg1, sp.a1, sp.b1);
        alternate(leg2, sp.a2, sp.b2);
        trace[z] = sp.center;
    }
    return trace;
}

struct FptOutcome {
    Verdict verdict;
    int branch = 0;  // which pipeline stage decided, 1..5
    std::optional<SearchStats> stats;
};

/// Fitting decision pipeline parameterized by color count and threshold.
inline FptOutcome fpt_decide_fitting(const Instance& instance, const Budget& budget = {}) {
    const auto& g = instance.graph;
    const auto colors = used_colors(instance).size();
    if (instance.sequence.empty()) return {Verdict::accept(Reason::trivial_yes, Trace{}), 0, std::nullopt};

    if (g.vertex_count() <= colors) {
        auto solved = dp_solve(instance, Variant::fitting, budget);
        return {std::move(solved.verdict), 1, solved.stats};
    }
    if (auto v = decide_fitting_matching(instance)) return {std::move(*v), 2, std::nullopt};
    if (auto v = decide_fitting_high_degree(instance)) return {std::move(*v), 3, std::nullopt};

    const auto isolated = g.isolated_vertices();
    if (isolated.size() >= instance.sequence.size()) {
        Trace trace(isolated.begin(), isolated.begin() + static_cast<std::ptrdiff_t>(instance.sequence.size()));
        return {Verdict::accept(Reason::isolated_vertices, std::move(trace)), 4, std::nullopt};
    }
    auto solved = dp_solve_compressed(instance, Variant::fitting, budget);
    return {std::move(solved.verdict), 5, solved.stats};
}

}  // namespace hexasort
