#include <gtest/gtest.h>

#include <hexasort/harness.hpp>

#include "oracles.hpp"

using namespace hexasort;

TEST(Generator, DeterministicInSeed) {
    GeneratorParams p;
    p.seed = 42;
    const auto a = generate_instance(p);
    const auto b = generate_instance(p);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.sequence, b.sequence);
    EXPECT_EQ(a.threshold, b.threshold);
    p.seed = 43;
    p.length = {6, 6};
    p.vertices = {4, 4};
    const auto c = generate_instance(p);
    p.seed = 44;
    const auto d = generate_instance(p);
    EXPECT_FALSE(c.sequence == d.sequence && c.graph == d.graph);
}

TEST(Generator, Families) {
    GeneratorParams p;
    p.family = Family::disjoint_edges;
    p.component_count = 3;
    auto inst = generate_instance(p);
    EXPECT_EQ(inst.graph.vertex_count(), 6u);
    EXPECT_EQ(inst.graph.edge_count(), 3u);
    EXPECT_TRUE(maximum_matching(inst.graph, 3));

    p.family = Family::spider;
    inst = generate_instance(p);
    EXPECT_EQ(inst.graph.vertex_count(), 9u);
    std::vector<std::size_t> degrees;
    for (Vertex v = 0; v < 9; ++v) degrees.push_back(inst.graph.degree(v));
    std::sort(degrees.begin(), degrees.end());
    EXPECT_EQ(degrees, (std::vector<std::size_t>{1, 1, 1, 1, 1, 2, 2, 2, 5}));

    p.family = Family::path;
    p.vertices = {5, 5};
    EXPECT_EQ(generate_instance(p).graph, path_graph(5));

    p.family = Family::star;
    EXPECT_EQ(generate_instance(p).graph, star_graph(4));
}

TEST(Generator, OutputIsNormalized) {
    GeneratorParams p;
    p.height_factor = 3;
    p.length = {5, 10};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        p.seed = seed;
        EXPECT_TRUE(is_normalized(generate_instance(p)));
    }
}

TEST(Generator, RejectsInfeasibleParameters) {
    GeneratorParams p;
    p.vertices = {4, 4};
    p.edges = 7;
    EXPECT_THROW(generate_instance(p), ValidationError);
    p.edges = 6;
    EXPECT_EQ(generate_instance(p).graph.edge_count(), 6u);
    p.colors = {3, 2};
    EXPECT_THROW(generate_instance(p), ValidationError);
    p.colors = {0, 2};
    EXPECT_THROW(generate_instance(p), ValidationError);
}

TEST(CrossCheck, AgreesOnSmallInstances) {
    GeneratorParams p;
    p.seed = 7;
    const auto report = cross_check(p, 150);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.trials, 150u);
    EXPECT_EQ(report.skipped, 0u);
    EXPECT_GT(report.comparisons, 150u * 4);
}

TEST(CrossCheck, ZeroTrials) {
    const auto report = cross_check(GeneratorParams{}, 0);
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.comparisons, 0u);
}

TEST(CrossCheck, CatchesACorruptedSolver) {
    SolverSet broken;
    int calls = 0;
    broken.dp = [&](const Instance& i, Variant v, const Budget& b) {
        auto verdict = dp_solve(i, v, b).verdict;
        if (++calls == 5) verdict.yes = !verdict.yes;
        return verdict;
    };
    const auto report = cross_check(GeneratorParams{}, 20, Budget{}, broken);
    EXPECT_FALSE(report.ok());
    ASSERT_EQ(report.disagreements.size(), 1u);
    EXPECT_EQ(report.disagreements[0].route, "dp");
}

TEST(CrossCheck, CatchesABadWitness) {
    SolverSet broken;
    broken.compressed = [](const Instance& i, const Budget& b) {
        auto verdict = dp_solve_compressed(i, Variant::fitting, b).verdict;
        if (verdict.yes && verdict.witness && !verdict.witness->empty()) verdict.witness->assign(verdict.witness->size(), 0);
        return verdict;
    };
    GeneratorParams p;
    p.vertices = {3, 4};
    p.threshold = {3, 5};
    p.length = {3, 6};
    const auto report = cross_check(p, 30, Budget{}, broken);
    EXPECT_FALSE(report.disagreements.empty());
}

TEST(CrossCheck, BudgetSkipsAreCounted) {
    GeneratorParams p;
    p.vertices = {4, 4};
    p.length = {6, 6};
    p.threshold = {4, 5};
    const auto report = cross_check(p, 10, Budget{3, std::nullopt});
    EXPECT_GT(report.skipped, 0u);
    EXPECT_FALSE(report.ok());
}

TEST(ThreeMerge, Examples) {
    const auto path = check_forced_three_merge(path_graph(3), 3, 2, 2, 2);
    EXPECT_TRUE(path.ok());
    EXPECT_EQ(path.cases, 2u);  // (0,2,1) and (2,0,1)

    const auto tri = check_forced_three_merge(triangle_graph(), 3, 2, 2, 2);
    EXPECT_TRUE(tri.ok());
    EXPECT_EQ(tri.cases, 0u);

    const auto star = check_forced_three_merge(star_graph(3), 3, 2, 2, 2);
    EXPECT_TRUE(star.ok());
    EXPECT_EQ(star.cases, 6u);  // ordered pairs of distinct leaves

    EXPECT_THROW(check_forced_three_merge(path_graph(3), 3, 1, 1, 2), PreconditionError);
    EXPECT_THROW(check_forced_three_merge(path_graph(3), 3, 3, 2, 2), PreconditionError);
}

TEST(ThreeMerge, CaseCountsMatchOracle) {
    for (const auto& g : {path_graph(4), star_graph(4), spider_graph({1, 2, 2}), disjoint_edges_graph(2)}) {
        const auto inst = [&] {
            Instance i;
            i.graph = g;
            i.threshold = 4;
            i.sequence = {{ColorId{0}, 2}, {ColorId{0}, 3}, {ColorId{0}, 1}};
            return i;
        }();
        const auto r = check_forced_three_merge(g, 4, 2, 3, 1);
        EXPECT_TRUE(r.ok());
        EXPECT_EQ(r.cases, oracle::all_solutions(inst, Variant::empty).size());
    }
}

TEST(FourMerge, Examples) {
    const auto edges = four_merge_patterns(disjoint_edges_graph(2), 5, 3, 2);
    EXPECT_GT(edges.independent_edges, 0u);
    EXPECT_EQ(edges.star, 0u);
    EXPECT_TRUE(check_forced_four_merge(disjoint_edges_graph(2), 5, 3, 2).ok());

    const auto star = four_merge_patterns(star_graph(3), 5, 3, 2);
    EXPECT_EQ(star.independent_edges, 0u);
    EXPECT_GT(star.star, 0u);
    EXPECT_TRUE(check_forced_four_merge(star_graph(3), 5, 3, 2).ok());

    const auto path = check_forced_four_merge(path_graph(3), 5, 3, 2);
    EXPECT_TRUE(path.ok());
    EXPECT_EQ(path.cases, 0u);

    EXPECT_THROW(check_forced_four_merge(path_graph(3), 4, 2, 2), PreconditionError);
}

TEST(SpiderConfig, Examples) {
    const auto yes = check_spider_forced_config({{1, 1, 2, 2}});
    EXPECT_TRUE(yes.ok());
    EXPECT_GT(yes.cases, 0u);

    const auto longer = check_spider_forced_config({{1, 1, 2, 1, 1}});
    EXPECT_TRUE(longer.ok());
    EXPECT_GT(longer.cases, 0u);

    const auto no = check_spider_forced_config({{2, 2, 2}});
    EXPECT_TRUE(no.ok());
    EXPECT_EQ(no.cases, 0u);
}

TEST(Bench, LadderWithinBoundAndRepeatable) {
    const auto a = bench(ladder_suite(1));
    const auto b = bench(ladder_suite(1));
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(a[i].within_bound()) << a[i].name;
        EXPECT_EQ(a[i].vertices, 4 + i);
        EXPECT_EQ(a[i].visited_states, b[i].visited_states);
        EXPECT_EQ(a[i].verdict, b[i].verdict);
    }
    EXPECT_TRUE(bench({}).empty());
}

TEST(Bench, BudgetRowsAreRecorded) {
    const auto rows = bench(ladder_suite(1, 8, 9), Variant::empty, Budget{50, std::nullopt});
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) EXPECT_EQ(r.verdict, "budget");
}
