// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <hexasort/hexasort.hpp>

#include "oracles.hpp"

using namespace hexasort;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Result {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Result()>& body) {
    const auto start = Clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    std::ostringstream line;
    line << (r.pass ? "PASS" : "FAIL") << " AC" << id << ": " << title << " (" << r.detail;
    line.precision(2);
    line << std::fixed << "; " << seconds_since(start) << "s)";
    std::cout << line.str() << std::endl;
    if (!r.pass) ++failures;
}

// Sequences of positive integers with sum <= max_sum, every order.
std::vector<std::vector<std::uint64_t>> compositions(std::uint64_t max_sum) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t left) {
        if (!cur.empty()) out.push_back(cur);
        for (std::uint64_t x = 1; x <= left; ++x) {
            cur.push_back(x);
            rec(left - x);
            cur.pop_back();
        }
    };
    rec(max_sum);
    return out;
}

Graph six_spiders(std::size_t count) {
    Graph g(6 * count);
    for (Vertex k = 0; k < count; ++k) {
        const Vertex b = 6 * k;
        g.add_edge(b, b + 1);
        g.add_edge(b, b + 2);
        g.add_edge(b + 2, b + 3);
        g.add_edge(b, b + 4);
        g.add_edge(b + 4, b + 5);
    }
    return g;
}

std::vector<Stack> random_sequence(std::mt19937_64& rng, std::uint32_t colors, Height t, std::size_t len) {
    std::vector<Stack> seq;
    for (std::size_t i = 0; i < len; ++i) {
        seq.push_back({ColorId{static_cast<std::uint32_t>(rng() % colors)}, static_cast<Height>(1 + rng() % t)});
    }
    return seq;
}

Result ac1() {
    GeneratorParams p;
    p.vertices = {1, 4};
    p.colors = {1, 2};
    p.threshold = {1, 5};
    p.length = {0, 6};
    p.seed = 20240501;
    const auto start = Clock::now();
    const auto r = cross_check(p, 1000);
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << "trials=" << r.trials << " comparisons=" << r.comparisons << " disagreements=" << r.disagreements.size()
      << " skipped=" << r.skipped;
    return {r.disagreements.empty() && r.skipped == 0 && r.trials == 1000 && elapsed < 300.0, d.str()};
}

Result ac2() {
    std::size_t checked = 0, mismatches = 0, yes = 0;
    for (const auto& e : oracle::small_sequences(6, 6)) {
        const PartitionInstance p{e};
        if (!is_canonical(p)) continue;
        const bool expected = oracle::has_equal_split(e);
        const bool got = dp_solve(partition_to_two_edges(p).instance, Variant::empty).verdict.yes;
        ++checked;
        yes += expected ? 1 : 0;
        if (expected != got) ++mismatches;
    }
    std::ostringstream d;
    d << "canonical sequences=" << checked << " yes=" << yes << " mismatches=" << mismatches;
    return {mismatches == 0 && checked > 0, d.str()};
}

Result ac3() {
    std::size_t yes_checked = 0, rejected = 0;
    std::optional<std::vector<std::uint64_t>> no_instance;
    for (const auto& e : compositions(12)) {
        const PartitionInstance p{e};
        if (!is_canonical(p)) continue;
        const auto split = oracle::equal_split(e);
        if (!split) {
            if (!no_instance) no_instance = e;
            continue;
        }
        const auto artifact = partition_to_spider(p);
        const auto trace = witness_from_partition(artifact, *split);
        ++yes_checked;
        if (!play_trace(artifact.instance, trace, Variant::empty).yes) ++rejected;
    }
    bool no_confirmed = false;
    std::string no_text = "none";
    if (no_instance) {
        const auto r = dp_solve(partition_to_spider({*no_instance}).instance, Variant::empty, Budget{10'000'000, std::nullopt});
        no_confirmed = !r.verdict.yes;
        no_text = nlohmann::json(*no_instance).dump() + " visited=" + std::to_string(r.stats.visited_states);
    }
    std::ostringstream d;
    d << "yes instances=" << yes_checked << " rejected witnesses=" << rejected << "; no instance " << no_text
      << (no_confirmed ? " confirmed" : " NOT confirmed");
    return {rejected == 0 && yes_checked > 0 && no_confirmed, d.str()};
}

Result ac4() {
    struct Case {
        ThreePartitionInstance source;
        std::vector<std::array<std::size_t, 3>> triplets;
    };
    const std::vector<Case> cases{{{{1, 1, 1}, 3}, {{0, 1, 2}}}, {{{5, 5, 5, 6, 6, 7}, 17}, {{0, 1, 5}, {2, 3, 4}}}};
    const std::vector<std::optional<TreeShape>> shapes{std::nullopt, TreeShape::path, TreeShape::binary, TreeShape::star};
    std::size_t checked = 0, bad = 0;
    for (const auto& c : cases) {
        for (const auto& shape : shapes) {
            const auto artifact = three_partition_to_gadgets(c.source, shape);
            const auto trace = witness_from_triplets(artifact, c.triplets);
            ++checked;
            if (!play_trace(artifact.instance, trace, Variant::empty).yes) {
                ++bad;
                continue;
            }
            const auto back = triplets_from_witness(artifact, trace);
            std::vector<char> seen(c.source.elements.size(), 0);
            bool ok = back.size() == c.triplets.size();
            for (const auto& tri : back) {
                std::uint64_t sum = 0;
                for (const auto i : tri) {
                    ok = ok && i < seen.size() && !seen[i];
                    if (i < seen.size()) {
                        seen[i] = 1;
                        sum += c.source.elements[i];
                    }
                }
                ok = ok && sum == c.source.bound;
            }
            if (!ok) ++bad;
        }
    }
    std::ostringstream d;
    d << "artifacts=" << checked << " failures=" << bad;
    return {bad == 0 && checked == 8, d.str()};
}

Result ac5() {
    std::vector<std::pair<std::string, Graph>> graphs;
    for (std::size_t n = 2; n <= 9; ++n) graphs.emplace_back("path:" + std::to_string(n), path_graph(n));
    for (std::size_t l = 1; l <= 8; ++l) graphs.emplace_back("star:" + std::to_string(l), star_graph(l));
    for (const std::vector<std::size_t>& legs : std::vector<std::vector<std::size_t>>{
             {1, 1, 2}, {1, 2, 2}, {2, 2, 2}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2}, {1, 1, 2, 2, 2}, {2, 2, 4}, {1, 3, 4}}) {
        graphs.emplace_back("spider", spider_graph(legs));
    }
    graphs.emplace_back("2k2", disjoint_edges_graph(2));
    graphs.emplace_back("triangle", triangle_graph());

    std::size_t three_runs = 0, four_runs = 0, cases = 0, violations = 0;
    for (const auto& [name, g] : graphs) {
        for (Height t = 2; t <= 6; ++t) {
            for (Height h1 = 1; h1 < t; ++h1) {
                for (Height h2 = 1; h2 < t; ++h2) {
                    if (h1 + h2 < t) continue;
                    for (Height h3 = 1; h3 < t; ++h3) {
                        const auto r = check_forced_three_merge(g, t, h1, h2, h3);
                        ++three_runs;
                        cases += r.cases;
                        violations += r.violations.size();
                    }
                }
            }
            for (Height hl = 1; hl < t; ++hl) {
                for (Height hs = 1; 2 * hs < t; ++hs) {
                    if (t >= 2 * hl || hs + hl < t) continue;
                    const auto r = check_forced_four_merge(g, t, hl, hs);
                    ++four_runs;
                    cases += r.cases;
                    violations += r.violations.size();
                }
            }
        }
    }

    std::size_t spider_runs = 0, spider_cases = 0, spider_bad = 0;
    for (const auto& e : compositions(12)) {
        const PartitionInstance p{e};
        if (!is_canonical(p) || !oracle::has_equal_split(e)) continue;
        const auto r = check_spider_forced_config(p, Budget{10'000'000, std::nullopt});
        ++spider_runs;
        spider_cases += r.cases;
        spider_bad += r.violating_configurations.size();
    }
    std::ostringstream d;
    d << "graphs=" << graphs.size() << " three-merge runs=" << three_runs << " four-merge runs=" << four_runs
      << " traces=" << cases << " violations=" << violations << "; spider instances=" << spider_runs
      << " configurations=" << spider_cases << " violations=" << spider_bad;
    return {violations == 0 && spider_bad == 0 && three_runs > 0 && four_runs > 0 && spider_runs > 0, d.str()};
}

Result ac6() {
    constexpr std::size_t want = 200;
    std::size_t matching_ok = 0, degree_ok = 0, spider_ok = 0, rejected = 0;
    std::mt19937_64 rng(606);

    for (std::uint64_t seed = 1; matching_ok + rejected < want && seed < 100000; ++seed) {
        GeneratorParams p;
        p.vertices = {2, 8};
        p.colors = {1, 3};
        p.threshold = {2, 5};
        p.length = {1, 10};
        p.edge_density = 0.6;
        p.seed = seed;
        const auto inst = generate_instance(p);
        const auto v = decide_fitting_matching(inst);
        if (!v) continue;
        if (v->witness && play_trace(inst, *v->witness, Variant::fitting).yes) {
            ++matching_ok;
        } else {
            ++rejected;
        }
    }

    for (std::size_t trial = 0; degree_ok < want && trial < 10 * want; ++trial) {
        const std::uint32_t colors = 1 + rng() % 3;
        const Height t = static_cast<Height>(2 + rng() % 3);
        Graph g(colors * t + 1 + rng() % 3);
        for (Vertex v = 1; v <= colors * t; ++v) g.add_edge(0, v);
        for (Vertex u = 1; u < g.vertex_count(); ++u) {
            for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
                if (rng() % 4 == 0) g.add_edge(u, v);
            }
        }
        Instance inst;
        inst.graph = g;
        inst.threshold = t;
        inst.color_count = colors;
        inst.sequence = random_sequence(rng, colors, t, 1 + rng() % 14);
        inst = normalize(inst);
        const auto v = decide_fitting_high_degree(inst);
        if (!v) continue;
        if (v->witness && play_trace(inst, *v->witness, Variant::fitting).yes) {
            ++degree_ok;
        } else {
            ++rejected;
        }
    }

    for (std::size_t trial = 0; spider_ok < want && trial < 20 * want; ++trial) {
        const std::uint32_t colors = 1 + rng() % 3;
        const Height t = static_cast<Height>(2 + rng() % 4);
        Instance inst;
        inst.graph = six_spiders(colors + rng() % 2);
        inst.threshold = t;
        inst.color_count = colors;
        inst.sequence = random_sequence(rng, colors, t, 1 + rng() % 12);
        inst = normalize(inst);
        if (check_empty_trivially_negative(inst)) continue;
        const auto packing = find_spider_packing(inst.graph, used_colors(inst).size());
        if (!packing) {
            ++rejected;
            continue;
        }
        if (play_trace(inst, build_empty_spider_trace(inst, *packing), Variant::empty).yes) {
            ++spider_ok;
        } else {
            ++rejected;
        }
    }

    std::ostringstream d;
    d << "matching=" << matching_ok << " high-degree=" << degree_ok << " spider=" << spider_ok
      << " rejected=" << rejected;
    return {rejected == 0 && matching_ok >= want && degree_ok >= want && spider_ok >= want, d.str()};
}

Result ac7() {
    const auto rows = bench(ladder_suite(1));
    std::size_t within = 0;
    std::vector<std::size_t> sizes;
    for (const auto& r : rows) {
        within += r.within_bound() ? 1 : 0;
        sizes.push_back(r.vertices);
    }
    const bool ladder = sizes == std::vector<std::size_t>{4, 5, 6, 7, 8, 9};
    std::ostringstream d;
    d << "rows=" << rows.size() << " within bound=" << within;
    return {ladder && within == rows.size(), d.str()};
}

Result ac8() {
    std::mt19937_64 rng(808);
    std::size_t prefixes = 0, broken = 0;
    while (prefixes < 100000) {
        GeneratorParams p;
        p.vertices = {2, 8};
        p.colors = {1, 3};
        p.threshold = {2, 6};
        p.length = {1, 14};
        p.height_factor = 2;
        p.seed = rng();
        const auto inst = generate_instance(p);
        Configuration c(inst.graph.vertex_count());
        for (std::size_t i = 0; i < inst.sequence.size(); ++i) {
            std::vector<Vertex> free;
            for (Vertex v = 0; v < c.size(); ++v) {
                if (c.is_empty(v)) free.push_back(v);
            }
            if (free.empty()) break;
            c = place(c, inst, inst.sequence[i], free[rng() % free.size()]);
            ++prefixes;
            bool ok = true;
            for (const auto& [u, v] : inst.graph.edges()) {
                const auto cu = c.at(u), cv = c.at(v);
                ok = ok && !(cu && cv && cu->color == cv->color);
            }
            for (Vertex v = 0; v < c.size(); ++v) {
                if (const auto cell = c.at(v)) ok = ok && cell->height >= 1 && cell->height < inst.threshold;
            }
            if (!ok) ++broken;
        }
    }

    // every labeled graph on at most 4 vertices, t in {2,3}, two colors, at most 3 stacks
    std::size_t conversions = 0, unsound = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Edge> slots;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
        }
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            Graph g(n);
            for (std::size_t i = 0; i < slots.size(); ++i) {
                if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
            }
            for (Height t = 2; t <= 3; ++t) {
                for (std::size_t len = 0; len <= 3; ++len) {
                    std::size_t combos = 1;
                    for (std::size_t i = 0; i < len; ++i) combos *= 2 * t;
                    for (std::size_t code = 0; code < combos; ++code) {
                        Instance inst;
                        inst.graph = g;
                        inst.threshold = t;
                        inst.color_count = 2;
                        auto rest = code;
                        for (std::size_t i = 0; i < len; ++i) {
                            inst.sequence.push_back(
                                {ColorId{static_cast<std::uint32_t>(rest % 2)}, static_cast<Height>(1 + (rest / 2) % t)});
                            rest /= 2 * t;
                        }
                        const bool empty = oracle::solvable(inst, Variant::empty);
                        const bool fitting = brute_force(empty_to_fitting(inst), Variant::fitting).verdict.yes;
                        ++conversions;
                        if (empty != fitting) ++unsound;
                    }
                }
            }
        }
    }
    std::ostringstream d;
    d << "prefixes=" << prefixes << " invariant breaks=" << broken << "; conversions=" << conversions
      << " mismatches=" << unsound;
    return {broken == 0 && unsound == 0, d.str()};
}

}  // namespace

int main() {
    report(1, "brute force, dp and fpt agree on 1000 seeded instances in under 5 minutes", ac1);
    report(2, "two-edges reduction matches subset sum on canonical inputs, |P|<=6, elements<=6", ac2);
    report(3, "spider reduction witnesses verify for sum<=12; a no-instance is confirmed within 1e7 states", ac3);
    report(4, "3-Partition witnesses verify on disjoint and tree gadgets and round-trip to triplets", ac4);
    report(5, "forced merge and spider configuration checks report zero violations", ac5);
    report(6, "matching, high-degree and spider strategies emit accepted witnesses on 200 instances each", ac6);
    report(7, "ladder |V|=4..9 stays within the state bound times |S|+1", ac7);
    report(8, "engine invariants on 1e5 legal prefixes; Empty to Fitting conversion sound for |V|<=4", ac8);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
