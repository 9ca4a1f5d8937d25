#pragma once

// Command-line front end. `run` is the whole program; tools/hexasort.cpp
// only forwards argv to it.
//
// Exit status: 0 yes/accept, 1 no/reject, 2 usage or validation error,
// 3 budget exceeded, 4 internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "engine.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "reductions.hpp"
#include "solvers.hpp"
#include "structural.hpp"

namespace hexasort::cli {

enum ExitStatus : int { yes = 0, no = 1, usage = 2, budget = 3, internal = 4 };

class UsageError : public Error {
public:
    using Error::Error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << content;
}

/// path:N, star:L, spider, spider:l1,l2,..., 2k2, disjoint:K, triangle
inline Graph parse_graph_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const auto name = spec.substr(0, colon);
    const auto arg = colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
    auto number = [&]() -> std::size_t {
        try {
            return std::stoul(arg);
        } catch (const std::exception&) {
            throw UsageError("graph spec " + spec + " needs a numeric argument");
        }
    };
    if (name == "path") return path_graph(number());
    if (name == "star") return star_graph(number());
    if (name == "disjoint") return disjoint_edges_graph(number());
    if (name == "2k2") return disjoint_edges_graph(2);
    if (name == "triangle") return triangle_graph();
    if (name == "spider") {
        if (arg.empty()) return partition_spider_graph();
        std::vector<std::size_t> legs;
        std::stringstream ss(arg);
        for (std::string part; std::getline(ss, part, ',');) legs.push_back(std::stoul(part));
        return spider_graph(legs);
    }
    throw UsageError("unknown graph spec " + spec);
}

namespace detail {

inline std::string describe(const Verdict& v) {
    std::string out = v.yes ? "yes" : "no";
    if (v.reason) out += " reason=" + std::string(to_string(*v.reason));
    return out;
}

struct AutoResult {
    Verdict verdict;
    std::optional<SearchStats> stats;
};

/// triviality, structural deciders, compressed DP, DP, brute force: the
/// first decisive answer wins.
inline AutoResult solve_auto(const Instance& inst, Variant variant, const Budget& budget) {
    if (auto v = classify_trivial(inst, variant)) return {std::move(*v), std::nullopt};
    if (variant == Variant::fitting) {
        if (auto v = decide_fitting_matching(inst)) return {std::move(*v), std::nullopt};
        if (auto v = decide_fitting_high_degree(inst)) return {std::move(*v), std::nullopt};
        const auto isolated = inst.graph.isolated_vertices();
        if (isolated.size() >= inst.sequence.size()) {
            Trace trace(isolated.begin(), isolated.begin() + static_cast<std::ptrdiff_t>(inst.sequence.size()));
            return {Verdict::accept(Reason::isolated_vertices, std::move(trace)), std::nullopt};
        }
        if (!isolated.empty()) {
            auto r = dp_solve_compressed(inst, variant, budget);
            return {std::move(r.verdict), r.stats};
        }
    } else {
        if (auto v = check_empty_trivially_negative(inst)) return {std::move(*v), std::nullopt};
        if (const auto packing = find_spider_packing(inst.graph, used_colors(inst).size())) {
            auto trace = build_empty_spider_trace(inst, *packing);
            return {Verdict::accept(Reason::spider_packing, std::move(trace)), std::nullopt};
        }
    }
    try {
        auto r = dp_solve(inst, variant, budget);
        return {std::move(r.verdict), r.stats};
    } catch (const BudgetExceeded&) {
        auto r = brute_force(inst, variant, budget);
        return {std::move(r.verdict), r.stats};
    }
}

inline std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        try {
            out.push_back(std::stoull(part));
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated list of integers, got " + text);
        }
    }
    return out;
}

inline nlohmann::json report_json(const LemmaReport& r) {
    nlohmann::json doc;
    doc["lemma"] = r.lemma;
    doc["cases"] = r.cases;
    doc["violations"] = r.violations;
    doc["violating_configurations"] = r.violating_configurations.size();
    return doc;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact solver, reduction compiler and verifier for Hexasort instances", "hexasort"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    std::string family = "random";
    std::uint32_t gen_vertices = 4, gen_colors = 2, gen_threshold = 3, gen_length = 6, gen_count = 2, gen_factor = 1;
    std::optional<std::uint32_t> gen_edges;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--family", family, "path | star | spider | disjoint-edges | random")->capture_default_str();
    gen->add_option("--vertices", gen_vertices)->capture_default_str();
    gen->add_option("--colors", gen_colors)->capture_default_str();
    gen->add_option("--threshold", gen_threshold)->capture_default_str();
    gen->add_option("--length", gen_length)->capture_default_str();
    gen->add_option("--count", gen_count, "edge count for disjoint-edges")->capture_default_str();
    gen->add_option("--density", gen_density, "edge probability for random")->capture_default_str();
    gen->add_option("--edges", gen_edges, "exact edge count for random");
    gen->add_option("--height-factor", gen_factor, "heights drawn from [1, factor*t]")->capture_default_str();
    gen->add_option("--seed", gen_seed)->capture_default_str();
    gen->add_option("-o,--output", gen_out, "instance file (default: stdout)");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "compile a Partition or 3-Partition source into an instance");
    std::string from, construction, tree_shape = "path", source_path, reduce_out, witness_from, witness_out;
    reduce->add_option("--from", from, "partition | 3partition")->required();
    reduce->add_option("--construction", construction, "two-edges | spider | disjoint | tree");
    reduce->add_option("--tree-shape", tree_shape, "path | binary | star")->capture_default_str();
    reduce->add_option("source", source_path, "source problem file")->required();
    reduce->add_option("-o,--output", reduce_out, "artifact file (default: stdout)");
    reduce->add_option("--witness-from", witness_from, "solution file to turn into a witness trace");
    reduce->add_option("--witness-out", witness_out, "trace file (default: stdout)");

    // solve
    auto* solve = app.add_subcommand("solve", "decide an instance");
    std::string solve_path, variant_text = "empty", solver = "auto", solve_witness;
    std::uint64_t max_states = Budget{}.max_states;
    std::optional<std::int64_t> max_ms;
    solve->add_option("instance", solve_path)->required();
    solve->add_option("--variant", variant_text, "fitting | empty")->capture_default_str();
    solve->add_option("--solver", solver, "brute | dp | fpt | auto")->capture_default_str();
    solve->add_option("--witness", solve_witness, "write the witness trace here");
    solve->add_option("--max-states", max_states)->capture_default_str();
    solve->add_option("--max-ms", max_ms, "wall-clock budget in milliseconds");

    // verify
    auto* verify = app.add_subcommand("verify", "replay a witness trace");
    std::string verify_instance, verify_trace, verify_variant;
    verify->add_option("instance", verify_instance)->required();
    verify->add_option("trace", verify_trace)->required();
    verify->add_option("--variant", verify_variant, "override the trace's declared variant");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive lemma checks and solution enumeration");
    enumerate->require_subcommand(1);
    auto* three = enumerate->add_subcommand("three-merge", "forced three-merge check");
    std::string graph_spec = "path:3", heights_text = "2,2,2";
    std::uint32_t lemma_t = 3, long_h = 3, short_h = 2;
    three->add_option("--graph", graph_spec)->capture_default_str();
    three->add_option("--threshold", lemma_t)->capture_default_str();
    three->add_option("--heights", heights_text)->capture_default_str();
    auto* four = enumerate->add_subcommand("four-merge", "forced four-merge check");
    four->add_option("--graph", graph_spec)->capture_default_str();
    four->add_option("--threshold", lemma_t)->capture_default_str();
    four->add_option("--long", long_h)->capture_default_str();
    four->add_option("--short", short_h)->capture_default_str();
    auto* spider_cfg = enumerate->add_subcommand("spider-config", "forced spider configuration check");
    std::string elements_text = "1,1,2,2";
    spider_cfg->add_option("--elements", elements_text)->capture_default_str();
    auto* solutions = enumerate->add_subcommand("solutions", "configurations on complete solutions at a step");
    std::string solutions_path;
    std::size_t observe_at = 0;
    solutions->add_option("instance", solutions_path)->required();
    solutions->add_option("--variant", variant_text)->capture_default_str();
    solutions->add_option("--step", observe_at)->required();
    for (auto* sub : {three, four, spider_cfg, solutions}) sub->add_option("--max-states", max_states)->capture_default_str();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "state-space benchmark table (tab-separated)");
    std::string suite = "ladder";
    std::uint64_t bench_seed = 1;
    bool no_timing = false;
    bench_cmd->add_option("--suite", suite, "ladder | mixed | none")->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed)->capture_default_str();
    bench_cmd->add_option("--variant", variant_text)->capture_default_str();
    bench_cmd->add_option("--max-states", max_states)->capture_default_str();
    bench_cmd->add_flag("--no-timing", no_timing, "print 0 in the elapsed column");

    // cross-check
    auto* cross = app.add_subcommand("cross-check", "compare all decision routes on random instances");
    std::size_t trials = 100;
    std::uint64_t cross_seed = 1;
    std::uint32_t max_v = 4, max_c = 2, max_t = 5, max_len = 6;
    cross->add_option("--trials", trials)->capture_default_str();
    cross->add_option("--seed", cross_seed)->capture_default_str();
    cross->add_option("--max-vertices", max_v)->capture_default_str();
    cross->add_option("--max-colors", max_c)->capture_default_str();
    cross->add_option("--max-threshold", max_t)->capture_default_str();
    cross->add_option("--max-length", max_len)->capture_default_str();
    cross->add_option("--max-states", max_states)->capture_default_str();

    std::vector<const char*> argv{"hexasort"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitStatus::yes : ExitStatus::usage;
    }

    auto variant_of = [](const std::string& text) {
        const auto v = parse_variant(text);
        if (!v) throw UsageError("unknown variant " + text);
        return *v;
    };
    auto emit = [&](const std::string& path, const std::string& content) {
        if (path.empty() || path == "-") {
            out << content;
        } else {
            write_file(path, content);
        }
    };
    Budget budget{max_states, std::nullopt};
    if (max_ms) budget.max_time = std::chrono::milliseconds(*max_ms);

    try {
        if (*gen) {
            const auto fam = parse_family(family);
            if (!fam) throw UsageError("unknown family " + family);
            GeneratorParams p;
            p.family = *fam;
            p.vertices = {gen_vertices, gen_vertices};
            p.colors = {gen_colors, gen_colors};
            p.threshold = {gen_threshold, gen_threshold};
            p.length = {gen_length, gen_length};
            p.component_count = gen_count;
            p.edge_density = gen_density;
            p.edges = gen_edges;
            p.height_factor = gen_factor;
            p.seed = gen_seed;
            emit(gen_out, io::serialize(generate_instance(p)));
            return ExitStatus::yes;
        }

        if (*reduce) {
            const auto source = io::parse_source(read_file(source_path));
            if (from == "partition") {
                const auto* p = std::get_if<PartitionInstance>(&source);
                if (!p) throw UsageError("source file is not a partition document");
                const auto canon = partition_canonicalize(*p);
                if (const auto* decided = std::get_if<DecidedPartition>(&canon)) {
                    out << "decided " << (decided->yes ? "yes" : "no") << " without reduction\n";
                    if (decided->yes && !witness_out.empty()) {
                        write_file(witness_out, io::serialize(io::PartitionSolution{decided->subset}));
                    }
                    return decided->yes ? ExitStatus::yes : ExitStatus::no;
                }
                const auto c = construction.empty() ? Construction::two_edges : parse_construction(construction).value_or(Construction::disjoint_spiders);
                if (c != Construction::two_edges && c != Construction::spider) {
                    throw UsageError("partition supports --construction two-edges or spider");
                }
                const auto artifact = c == Construction::two_edges ? partition_to_two_edges(*p) : partition_to_spider(*p);
                if (!witness_from.empty()) {
                    const auto sol = io::parse_solution(read_file(witness_from));
                    const auto* subset = std::get_if<io::PartitionSolution>(&sol);
                    if (!subset) throw UsageError("solution file is not a partition solution");
                    const auto trace = witness_from_partition(artifact, subset->subset);
                    if (reduce_out.empty() && witness_out.empty()) throw UsageError("--witness-from needs -o or --witness-out");
                    emit(witness_out, io::serialize(io::TraceDocument{trace, Variant::empty}));
                }
                emit(reduce_out, io::serialize(artifact));
                return ExitStatus::yes;
            }
            if (from == "3partition") {
                const auto* p = std::get_if<ThreePartitionInstance>(&source);
                if (!p) throw UsageError("source file is not a 3partition document");
                const auto c = construction.empty() ? Construction::disjoint_spiders : parse_construction(construction).value_or(Construction::two_edges);
                if (c != Construction::disjoint_spiders && c != Construction::spider_tree) {
                    throw UsageError("3partition supports --construction disjoint or tree");
                }
                std::optional<TreeShape> shape;
                if (c == Construction::spider_tree) {
                    shape = parse_tree_shape(tree_shape);
                    if (!shape) throw UsageError("unknown tree shape " + tree_shape);
                }
                const auto artifact = three_partition_to_gadgets(*p, shape);
                if (!witness_from.empty()) {
                    const auto sol = io::parse_solution(read_file(witness_from));
                    const auto* triplets = std::get_if<io::ThreePartitionSolution>(&sol);
                    if (!triplets) throw UsageError("solution file is not a 3partition solution");
                    const auto trace = witness_from_triplets(artifact, triplets->triplets);
                    if (reduce_out.empty() && witness_out.empty()) throw UsageError("--witness-from needs -o or --witness-out");
                    emit(witness_out, io::serialize(io::TraceDocument{trace, Variant::empty}));
                }
                emit(reduce_out, io::serialize(artifact));
                return ExitStatus::yes;
            }
            throw UsageError("--from must be partition or 3partition");
        }

        if (*solve) {
            const auto parsed = io::parse_instance(read_file(solve_path));
            const auto& inst = io::instance_of(parsed);
            const auto variant = variant_of(variant_text);
            Verdict verdict;
            std::optional<SearchStats> stats;
            if (solver == "brute") {
                auto r = brute_force(inst, variant, budget);
                verdict = std::move(r.verdict);
                stats = r.stats;
            } else if (solver == "dp") {
                auto r = dp_solve(inst, variant, budget);
                verdict = std::move(r.verdict);
                stats = r.stats;
            } else if (solver == "fpt") {
                if (variant != Variant::fitting) throw UsageError("--solver fpt only decides the fitting variant");
                auto r = fpt_decide_fitting(inst, budget);
                verdict = std::move(r.verdict);
                stats = r.stats;
            } else if (solver == "auto") {
                auto r = detail::solve_auto(inst, variant, budget);
                verdict = std::move(r.verdict);
                stats = r.stats;
            } else {
                throw UsageError("unknown solver " + solver);
            }
            out << detail::describe(verdict);
            if (stats) {
                out << " visited=" << stats->visited_states << " bound="
                    << (stats->state_bound.saturated ? std::string("saturated") : std::to_string(stats->state_bound.value));
            }
            out << "\n";
            if (verdict.yes && verdict.witness && !solve_witness.empty()) {
                write_file(solve_witness, io::serialize(io::TraceDocument{*verdict.witness, variant}));
            }
            return verdict.yes ? ExitStatus::yes : ExitStatus::no;
        }

        if (*verify) {
            const auto parsed = io::parse_instance(read_file(verify_instance));
            const auto& inst = io::instance_of(parsed);
            const auto doc = io::parse_trace(read_file(verify_trace));
            const auto variant = verify_variant.empty() ? doc.variant : variant_of(verify_variant);
            const auto verdict = play_trace(inst, doc.placements, variant);
            if (verdict.yes) {
                out << "accept\n";
                return ExitStatus::yes;
            }
            if (verdict.failing_step) {
                // steps are reported 1-based
                out << "reject step=" << *verdict.failing_step + 1 << " vertex=" << doc.placements[*verdict.failing_step]
                    << "\n";
            } else {
                out << "reject residual=" << nlohmann::json(verdict.residual).dump() << "\n";
            }
            return ExitStatus::no;
        }

        if (*enumerate) {
            std::optional<LemmaReport> report;
            if (*three) {
                const auto h = detail::parse_list(heights_text);
                if (h.size() != 3) throw UsageError("--heights needs three values");
                report = check_forced_three_merge(parse_graph_spec(graph_spec), lemma_t, static_cast<Height>(h[0]),
                                                  static_cast<Height>(h[1]), static_cast<Height>(h[2]), budget);
            } else if (*four) {
                report = check_forced_four_merge(parse_graph_spec(graph_spec), lemma_t, long_h, short_h, budget);
            } else if (*spider_cfg) {
                report = check_spider_forced_config(PartitionInstance{detail::parse_list(elements_text)}, budget);
            } else {
                const auto parsed = io::parse_instance(read_file(solutions_path));
                const auto configs = enumerate_solutions(io::instance_of(parsed), variant_of(variant_text), observe_at, budget);
                for (const auto& c : configs) {
                    nlohmann::json cells = nlohmann::json::array();
                    for (const auto& cell : c.cells()) {
                        if (cell.empty()) {
                            cells.push_back(nullptr);
                        } else {
                            cells.push_back({cell.color.index, cell.height});
                        }
                    }
                    out << nlohmann::json{{"step", observe_at}, {"cells", cells}}.dump() << "\n";
                }
                return configs.empty() ? ExitStatus::no : ExitStatus::yes;
            }
            out << detail::report_json(*report).dump() << "\n";
            return report->ok() ? ExitStatus::yes : ExitStatus::no;
        }

        if (*bench_cmd) {
            std::vector<BenchCase> cases;
            if (suite == "ladder") {
                cases = ladder_suite(bench_seed);
            } else if (suite == "mixed") {
                cases = mixed_suite(bench_seed);
            } else if (suite != "none") {
                throw UsageError("unknown suite " + suite);
            }
            const auto rows = bench(cases, variant_of(variant_text), budget);
            out << "name\tvertices\tcolors\tthreshold\tlength\tverdict\tvisited_states\tbound\twithin_bound\telapsed_us\n";
            bool all_within = true;
            for (const auto& r : rows) {
                all_within = all_within && r.within_bound();
                out << r.name << '\t' << r.vertices << '\t' << r.colors << '\t' << r.threshold << '\t' << r.length << '\t'
                    << r.verdict << '\t' << r.visited_states << '\t'
                    << (r.bound.saturated ? std::string("saturated") : std::to_string(r.bound.value)) << '\t'
                    << (r.within_bound() ? "true" : "false") << '\t'
                    << (no_timing ? 0 : std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count()) << '\n';
            }
            return all_within ? ExitStatus::yes : ExitStatus::no;
        }

        if (*cross) {
            GeneratorParams p;
            p.vertices = {1, max_v};
            p.colors = {1, max_c};
            p.threshold = {1, max_t};
            p.length = {0, max_len};
            p.seed = cross_seed;
            const auto report = cross_check(p, trials, budget);
            for (const auto& d : report.disagreements) {
                nlohmann::json line;
                line["trial"] = d.trial;
                line["variant"] = to_string(d.variant);
                line["route"] = d.route;
                line["expected"] = d.expected;
                line["got"] = d.got;
                line["instance"] = io::to_json(d.instance);
                out << line.dump() << "\n";
            }
            out << "trials=" << report.trials << " comparisons=" << report.comparisons << " skipped=" << report.skipped
                << " disagreements=" << report.disagreements.size() << "\n";
            return report.ok() ? ExitStatus::yes : ExitStatus::no;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return ExitStatus::budget;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return ExitStatus::usage;
    } catch (const io::SyntaxError& e) {
        err << "error: " << e.what() << "\n";
        return ExitStatus::usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return ExitStatus::usage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return ExitStatus::usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return ExitStatus::internal;
    }
    return ExitStatus::usage;
}

}  // namespace hexasort::cli
