#pragma once

// Seeded instance generators, oracle cross-checks between the solvers,
// exhaustive checkers for the forced-configuration gadget lemmas, and the
// state-space benchmark ladder.

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "engine.hpp"
#include "reductions.hpp"
#include "solvers.hpp"
#include "structural.hpp"

namespace hexasort {

enum class Family { path, star, spider, disjoint_edges, random };

inline std::optional<Family> parse_family(std::string_view text) {
    if (text == "path") return Family::path;
    if (text == "star") return Family::star;
    if (text == "spider") return Family::spider;
    if (text == "disjoint-edges") return Family::disjoint_edges;
    if (text == "random") return Family::random;
    return std::nullopt;
}

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::star: return "star";
        case Family::spider: return "spider";
        case Family::disjoint_edges: return "disjoint-edges";
        case Family::random: return "random";
    }
    return "unknown";
}

struct Range {
    std::uint32_t min = 1;
    std::uint32_t max = 1;
};

struct GeneratorParams {
    Family family = Family::random;
    Range vertices{1, 4};
    double edge_density = 0.5;            // random family only
    std::optional<std::uint32_t> edges;   // random family: exact edge count instead of density
    std::uint32_t component_count = 1;    // disjoint-edges: number of edges
    Range colors{1, 2};
    Range threshold{1, 5};
    Range length{0, 6};
    std::uint32_t height_factor = 1;      // heights drawn from [1, factor*t]
    std::uint64_t seed = 1;
};

// ---------------------------------------------------------------------------
// graph families

inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

/// Star with center 0 and `leaves` leaves.
inline Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph disjoint_edges_graph(std::size_t count) {
    Graph g(2 * count);
    for (Vertex i = 0; i < count; ++i) g.add_edge(2 * i, 2 * i + 1);
    return g;
}

inline Graph triangle_graph() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

/// Spider with legs of the given lengths around center 0.
inline Graph spider_graph(const std::vector<std::size_t>& legs) {
    std::size_t n = 1;
    for (const auto l : legs) n += l;
    Graph g(n);
    Vertex next = 1;
    for (const auto l : legs) {
        Vertex prev = 0;
        for (std::size_t k = 0; k < l; ++k) {
            g.add_edge(prev, next);
            prev = next++;
        }
    }
    return g;
}

/// The nine-vertex spider of the Partition construction (legs 1,1,2,2,2).
inline Graph partition_spider_graph() { return spider_graph({1, 1, 2, 2, 2}); }

// ---------------------------------------------------------------------------
// generator

namespace detail {

inline std::uint32_t draw(std::mt19937_64& rng, Range r) {
    if (r.max <= r.min) return r.min;
    return r.min + static_cast<std::uint32_t>(rng() % (std::uint64_t{r.max} - r.min + 1));
}

}  // namespace detail

/// Deterministic in `params.seed`; the result is validated and normalized.
inline Instance generate_instance(const GeneratorParams& params) {
    for (const auto& [name, r] : {std::pair{"vertices", params.vertices}, std::pair{"colors", params.colors},
                                  std::pair{"threshold", params.threshold}, std::pair{"length", params.length}}) {
        if (r.min > r.max) throw ValidationError(name, "empty range");
    }
    if (params.colors.min < 1) throw ValidationError("colors", "need at least one color");
    if (params.threshold.min < 1) throw ValidationError("threshold", "must be at least 1");
    if (params.height_factor < 1) throw ValidationError("height_factor", "must be at least 1");

    std::mt19937_64 rng(params.seed);
    Instance inst;
    switch (params.family) {
        case Family::path: inst.graph = path_graph(detail::draw(rng, params.vertices)); break;
        case Family::star: {
            const auto n = detail::draw(rng, params.vertices);
            if (n < 1) throw ValidationError("vertices", "a star needs at least one vertex");
            inst.graph = star_graph(n - 1);
            break;
        }
        case Family::spider: inst.graph = partition_spider_graph(); break;
        case Family::disjoint_edges: inst.graph = disjoint_edges_graph(params.component_count); break;
        case Family::random: {
            const auto n = detail::draw(rng, params.vertices);
            const std::uint64_t max_edges = std::uint64_t{n} * (n == 0 ? 0 : n - 1) / 2;
            std::vector<Edge> all;
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
            }
            inst.graph = Graph(n);
            if (params.edges) {
                if (*params.edges > max_edges) {
                    throw ValidationError("edges", std::to_string(*params.edges) + " edges exceed the maximum " +
                                                       std::to_string(max_edges) + " for " + std::to_string(n) +
                                                       " vertices");
                }
                std::shuffle(all.begin(), all.end(), rng);
                all.resize(*params.edges);
                std::sort(all.begin(), all.end());
                for (const auto& [u, v] : all) inst.graph.add_edge(u, v);
            } else {
                if (params.edge_density < 0.0 || params.edge_density > 1.0) {
                    throw ValidationError("edge_density", "must lie in [0, 1]");
                }
                for (const auto& [u, v] : all) {
                    if (static_cast<double>(rng() % 1'000'000) < params.edge_density * 1'000'000.0) {
                        inst.graph.add_edge(u, v);
                    }
                }
            }
            break;
        }
    }
    inst.color_count = detail::draw(rng, params.colors);
    inst.threshold = detail::draw(rng, params.threshold);
    const auto len = detail::draw(rng, params.length);
    const Range heights{1, inst.threshold * params.height_factor};
    for (std::uint32_t i = 0; i < len; ++i) {
        const auto c = static_cast<std::uint32_t>(rng() % inst.color_count);
        inst.sequence.push_back({ColorId{c}, detail::draw(rng, heights)});
    }
    return normalize(std::move(inst));
}

// ---------------------------------------------------------------------------
// cross-check

/// Decision routes compared by cross_check. Replaceable for fault injection.
struct SolverSet {
    std::function<Verdict(const Instance&, Variant, const Budget&)> brute =
        [](const Instance& i, Variant v, const Budget& b) { return brute_force(i, v, b).verdict; };
    std::function<Verdict(const Instance&, Variant, const Budget&)> dp =
        [](const Instance& i, Variant v, const Budget& b) { return dp_solve(i, v, b).verdict; };
    std::function<Verdict(const Instance&, const Budget&)> compressed =
        [](const Instance& i, const Budget& b) { return dp_solve_compressed(i, Variant::fitting, b).verdict; };
    std::function<Verdict(const Instance&, const Budget&)> fpt =
        [](const Instance& i, const Budget& b) { return fpt_decide_fitting(i, b).verdict; };
};

struct Disagreement {
    std::size_t trial = 0;
    Instance instance;
    Variant variant = Variant::fitting;
    std::string route;   // which route disagreed with brute force (or produced a bad witness)
    bool expected = false;
    bool got = false;
};

struct CrossCheckReport {
    std::size_t trials = 0;
    std::size_t comparisons = 0;
    std::size_t skipped = 0;  // trials abandoned on a budget error
    std::vector<Disagreement> disagreements;

    bool ok() const { return disagreements.empty() && skipped * 100 <= trials; }
};

/// Runs every applicable decision route on `trials` generated instances
/// (seeds params.seed, params.seed+1, ...) and records each disagreement with
/// brute force as well as every witness that fails replay.
inline CrossCheckReport cross_check(const GeneratorParams& params, std::size_t trials, const Budget& budget = {},
                                    const SolverSet& solvers = {}) {
    CrossCheckReport report;
    report.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        GeneratorParams p = params;
        p.seed = params.seed + trial;
        const auto inst = generate_instance(p);
        std::vector<Disagreement> found;
        try {
            for (const auto variant : {Variant::fitting, Variant::empty}) {
                const bool truth = solvers.brute(inst, variant, budget).yes;
                auto compare = [&](const std::string& route, const Verdict& v) {
                    ++report.comparisons;
                    const bool bad_witness = v.yes && v.witness && !play_trace(inst, *v.witness, variant).yes;
                    if (v.yes != truth || bad_witness) {
                        found.push_back({trial, inst, variant, route, truth, v.yes});
                    }
                };
                compare("dp", solvers.dp(inst, variant, budget));
                if (const auto trivial = classify_trivial(inst, variant)) compare("trivial", *trivial);
                if (variant == Variant::fitting) {
                    compare("compressed", solvers.compressed(inst, budget));
                    compare("fpt", solvers.fpt(inst, budget));
                    if (const auto v = decide_fitting_matching(inst)) compare("matching", *v);
                    if (const auto v = decide_fitting_high_degree(inst)) compare("high-degree", *v);
                } else {
                    if (const auto v = check_empty_trivially_negative(inst)) compare("negative-height-t", *v);
                    const auto colors = used_colors(inst).size();
                    if (!check_empty_trivially_negative(inst) && !classify_trivial(inst, variant)) {
                        if (const auto packing = find_spider_packing(inst.graph, colors)) {
                            const auto trace = build_empty_spider_trace(inst, *packing);
                            compare("spider-packing", Verdict::accept(Reason::spider_packing, trace));
                        }
                    }
                }
            }
        } catch (const BudgetExceeded&) {
            ++report.skipped;
            continue;
        }
        report.disagreements.insert(report.disagreements.end(), found.begin(), found.end());
    }
    return report;
}

// ---------------------------------------------------------------------------
// gadget lemma checkers

struct LemmaReport {
    std::string lemma;
    std::size_t cases = 0;            // accepting traces (or configurations) inspected
    std::vector<Trace> violations;    // counterexamples; empty on a conforming engine
    std::vector<Configuration> violating_configurations;

    bool ok() const { return violations.empty() && violating_configurations.empty(); }
};

namespace detail {

inline Instance single_color_instance(const Graph& g, Height t, std::initializer_list<Height> heights) {
    Instance inst;
    inst.graph = g;
    inst.threshold = t;
    inst.color_count = 1;
    for (const auto h : heights) inst.sequence.push_back({ColorId{0}, h});
    return inst;
}

inline bool common_neighbor_shape(const Graph& g, Vertex a, Vertex b, Vertex hub) {
    return a != b && !g.adjacent(a, b) && g.adjacent(hub, a) && g.adjacent(hub, b);
}

}  // namespace detail

/// Three stacks of one color with h1+h2 >= t, each below t: every way of
/// emptying the board puts stacks 1 and 2 on non-adjacent vertices and
/// stack 3 on a common neighbor of both.
inline LemmaReport check_forced_three_merge(const Graph& g, Height t, Height h1, Height h2, Height h3,
                                            const Budget& budget = {}) {
    if (!(h1 < t && h2 < t && h3 < t) || h1 + h2 < t) {
        throw PreconditionError("forced three-merge needs every height below t and h1 + h2 >= t");
    }
    const auto inst = detail::single_color_instance(g, t, {h1, h2, h3});
    LemmaReport report{"forced-three-merge", 0, {}, {}};
    for (const auto& trace : solution_lattice(inst, Variant::empty, budget).traces()) {
        ++report.cases;
        if (!detail::common_neighbor_shape(g, trace[0], trace[1], trace[2])) report.violations.push_back(trace);
    }
    return report;
}

/// Four stacks (hl, hl, hs, hs) of one color with hs < t/2 < hl < t and
/// hs + hl >= t: every solution either clears two independent edges (a) or
/// merges all four on a degree-3 star with the last stack on its center (b).
inline LemmaReport check_forced_four_merge(const Graph& g, Height t, Height hl, Height hs,
                                           const Budget& budget = {}) {
    if (!(2 * hs < t && t < 2 * hl && hl < t && hs + hl >= t && hs >= 1)) {
        throw PreconditionError("forced four-merge needs hs < t/2 < hl < t and hs + hl >= t");
    }
    const auto inst = detail::single_color_instance(g, t, {hl, hl, hs, hs});
    LemmaReport report{"forced-four-merge", 0, {}, {}};
    for (const auto& tr : solution_lattice(inst, Variant::empty, budget).traces()) {
        ++report.cases;
        std::array<Vertex, 4> vs{tr[0], tr[1], tr[2], tr[3]};
        std::sort(vs.begin(), vs.end());
        const bool distinct = std::adjacent_find(vs.begin(), vs.end()) == vs.end();
        const bool first_apart = !g.adjacent(tr[0], tr[1]);
        // (a): stack 3 touches exactly one of the first two, stack 4 the other one
        auto pattern_a = [&](Vertex partner3, Vertex partner4) {
            return g.adjacent(tr[2], partner3) && !g.adjacent(tr[2], partner4) && g.adjacent(tr[3], partner4);
        };
        const bool a = distinct && first_apart && (pattern_a(tr[0], tr[1]) || pattern_a(tr[1], tr[0]));
        // (b): first three pairwise apart, all adjacent to the fourth
        const bool b = distinct && first_apart && !g.adjacent(tr[0], tr[2]) && !g.adjacent(tr[1], tr[2]) &&
                       g.adjacent(tr[3], tr[0]) && g.adjacent(tr[3], tr[1]) && g.adjacent(tr[3], tr[2]);
        if (!(a || b)) report.violations.push_back(tr);
    }
    return report;
}

/// Classifies four-merge solutions as pattern (a) or (b); used by the tests
/// to confirm which pattern a graph admits.
struct FourMergePatterns {
    std::size_t independent_edges = 0;
    std::size_t star = 0;
};

inline FourMergePatterns four_merge_patterns(const Graph& g, Height t, Height hl, Height hs,
                                             const Budget& budget = {}) {
    const auto inst = detail::single_color_instance(g, t, {hl, hl, hs, hs});
    FourMergePatterns out;
    for (const auto& tr : solution_lattice(inst, Variant::empty, budget).traces()) {
        const bool star = g.adjacent(tr[3], tr[0]) && g.adjacent(tr[3], tr[1]) && g.adjacent(tr[3], tr[2]);
        (star ? out.star : out.independent_edges) += 1;
    }
    return out;
}

/// After the initial and reservation stacks of the nine-vertex spider
/// construction, every configuration on a complete solution holds red on the
/// center and on one arm leaf, blue on both short arms, and nothing else.
inline LemmaReport check_spider_forced_config(const PartitionInstance& p, const Budget& budget = {}) {
    using namespace spider9;
    const auto artifact = partition_to_spider(p);
    const auto& inst = artifact.instance;
    const auto observe_at = artifact.segments.at("reservation").end;
    const auto states = enumerate_solutions(inst, Variant::empty, observe_at, budget);
    const Height tall = inst.threshold - 1;

    LemmaReport report{"forced-weak-spider-config", 0, {}, {}};
    for (const auto& config : states) {
        ++report.cases;
        auto holds = [&](Vertex v, ColorId c) {
            const auto cell = config.at(v);
            return cell && cell->color == c && cell->height == tall;
        };
        int red_leaves = 0;
        for (std::uint32_t i = 1; i <= 3; ++i) red_leaves += holds(arm_leaf(i), red) ? 1 : 0;
        const bool ok = holds(center, red) && red_leaves == 1 && holds(s1, blue) && holds(s2, blue) &&
                        config.occupied().size() == 4;
        if (!ok) report.violating_configurations.push_back(config);
    }
    return report;
}

// ---------------------------------------------------------------------------
// bench

struct BenchCase {
    std::string name;
    Instance instance;
};

struct BenchRow {
    std::string name;
    std::size_t vertices = 0;
    std::uint32_t colors = 0;
    Height threshold = 0;
    std::size_t length = 0;
    std::string verdict;   // yes | no | budget
    std::uint64_t visited_states = 0;
    SaturatingCount bound;
    std::chrono::nanoseconds elapsed{0};

    bool within_bound() const {
        return (bound * (length + 1)).covers(visited_states);
    }
};

/// Single-color paths on 4..9 vertices, threshold 3, random heights.
inline std::vector<BenchCase> ladder_suite(std::uint64_t seed, std::size_t min_vertices = 4,
                                           std::size_t max_vertices = 9) {
    std::vector<BenchCase> out;
    std::mt19937_64 rng(seed);
    for (std::size_t n = min_vertices; n <= max_vertices; ++n) {
        Instance inst;
        inst.graph = path_graph(n);
        inst.threshold = 3;
        inst.color_count = 1;
        for (std::size_t i = 0; i < n + 2; ++i) inst.sequence.push_back({ColorId{0}, static_cast<Height>(1 + rng() % 2)});
        out.push_back({"ladder-path-" + std::to_string(n), std::move(inst)});
    }
    return out;
}

/// Two-color random graphs on 4..9 vertices.
inline std::vector<BenchCase> mixed_suite(std::uint64_t seed) {
    std::vector<BenchCase> out;
    for (std::uint32_t n = 4; n <= 9; ++n) {
        GeneratorParams p;
        p.family = Family::random;
        p.vertices = {n, n};
        p.edge_density = 0.3;
        p.colors = {2, 2};
        p.threshold = {3, 3};
        p.length = {n + 2, n + 2};
        p.seed = seed + n;
        out.push_back({"mixed-random-" + std::to_string(n), generate_instance(p)});
    }
    return out;
}

inline std::vector<BenchRow> bench(const std::vector<BenchCase>& suite, Variant variant = Variant::empty,
                                   const Budget& budget = {}) {
    std::vector<BenchRow> rows;
    for (const auto& c : suite) {
        BenchRow row;
        row.name = c.name;
        row.vertices = c.instance.graph.vertex_count();
        row.colors = c.instance.color_count;
        row.threshold = c.instance.threshold;
        row.length = c.instance.sequence.size();
        row.bound = state_space_report(c.instance).state_bound;
        try {
            const auto solved = dp_solve(c.instance, variant, budget);
            row.verdict = solved.verdict.yes ? "yes" : "no";
            row.visited_states = solved.stats.visited_states;
            row.elapsed = solved.stats.elapsed;
        } catch (const BudgetExceeded& e) {
            row.verdict = "budget";
            row.visited_states = e.visited_states();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace hexasort
