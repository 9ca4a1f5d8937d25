#include <random>

#include <gtest/gtest.h>

#include <hexasort/engine.hpp>
#include <hexasort/harness.hpp>
#include <hexasort/solvers.hpp>

#include "oracles.hpp"

using namespace hexasort;

namespace {

Instance make(Graph g, Height t, std::vector<Stack> seq, std::uint32_t colors = 0) {
    Instance inst;
    inst.graph = std::move(g);
    inst.threshold = t;
    inst.sequence = std::move(seq);
    std::uint32_t c = 1;
    for (const auto& s : inst.sequence) c = std::max(c, s.color.index + 1);
    inst.color_count = std::max(c, colors);
    return inst;
}

Stack st(std::uint32_t c, Height h) { return {ColorId{c}, h}; }

Graph two_edges() { return disjoint_edges_graph(2); }

}  // namespace

TEST(Graph, RejectsBadEdges) {
    Graph g(3);
    g.add_edge(0, 1);
    EXPECT_THROW(g.add_edge(1, 0), ValidationError);
    EXPECT_THROW(g.add_edge(2, 2), ValidationError);
    EXPECT_THROW(g.add_edge(0, 3), ValidationError);
    EXPECT_TRUE(g.adjacent(1, 0));
    EXPECT_FALSE(g.adjacent(1, 2));
    EXPECT_EQ(g.isolated_vertices(), std::vector<Vertex>{2});
}

TEST(Normalize, CapsHeights) {
    auto inst = normalize(make(Graph(1), 3, {st(0, 7)}));
    EXPECT_EQ(inst.sequence[0].height, 3u);
    inst = normalize(make(Graph(1), 3, {st(0, 2)}));
    EXPECT_EQ(inst.sequence[0].height, 2u);
    inst = normalize(make(Graph(1), 2, {st(0, 2), st(1, 5)}));
    EXPECT_EQ(inst.sequence, (std::vector<Stack>{st(0, 2), st(1, 2)}));
}

TEST(Normalize, SameVerdictOnTwoStackExample) {
    const auto raw = make(Graph(1), 2, {st(0, 2), st(1, 5)});
    EXPECT_EQ(oracle::solvable(raw, Variant::empty), oracle::solvable(normalize(raw), Variant::empty));
    EXPECT_TRUE(oracle::solvable(raw, Variant::empty));
}

TEST(Normalize, ValidationNamesField) {
    try {
        normalize(make(Graph(1), 3, {st(0, 0)}));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.field(), "stacks[0].height");
    }
    EXPECT_THROW(normalize(make(Graph(1), 0, {st(0, 1)})), ValidationError);
    auto inst = make(Graph(1), 3, {st(2, 1)});
    inst.color_count = 1;
    EXPECT_THROW(normalize(inst), ValidationError);
}

TEST(Normalize, EquivalenceOnRandomInstances) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = 1 + rng() % 3;
        Graph g(n);
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) {
                if (rng() % 2) g.add_edge(u, v);
            }
        }
        const Height t = 1 + rng() % 3;
        std::vector<Stack> seq;
        const auto len = rng() % 5;
        for (std::size_t i = 0; i < len; ++i) seq.push_back(st(rng() % 2, 1 + rng() % (2 * t)));
        const auto raw = make(g, t, seq, 2);
        const auto norm = normalize(raw);
        ASSERT_TRUE(is_normalized(norm));
        for (const auto v : {Variant::fitting, Variant::empty}) {
            EXPECT_EQ(oracle::solvable(raw, v), oracle::solvable(norm, v));
        }
    }
}

TEST(ApplyPlacement, ThreeMergeOnPath) {
    const auto inst = make(path_graph(3), 5, {st(0, 2)});
    Configuration c(3);
    c.set(0, Cell{ColorId{0}, 2});
    c.set(2, Cell{ColorId{0}, 2});
    const auto [next, out] = apply_placement(c, inst, st(0, 2), 1);
    EXPECT_TRUE(next.all_empty());
    EXPECT_TRUE(out.vanished);
    EXPECT_EQ(out.merged_height, 6u);
    EXPECT_EQ(out.cleared_vertices, (std::vector<Vertex>{0, 2}));
    EXPECT_FALSE(out.resulting_cell);
}

TEST(ApplyPlacement, IsolatedVertex) {
    const auto inst = make(Graph(1), 5, {});
    auto [rest, o1] = apply_placement(Configuration(1), inst, st(0, 3), 0);
    EXPECT_FALSE(o1.vanished);
    EXPECT_EQ(rest.at(0), (Cell{ColorId{0}, 3}));
    auto [gone, o2] = apply_placement(Configuration(1), inst, st(0, 5), 0);
    EXPECT_TRUE(o2.vanished);
    EXPECT_TRUE(gone.all_empty());
}

TEST(ApplyPlacement, OtherColorsUntouched) {
    const auto inst = make(path_graph(3), 5, {}, 2);
    Configuration c(3);
    c.set(0, Cell{ColorId{1}, 2});
    c.set(2, Cell{ColorId{0}, 1});
    const auto [next, out] = apply_placement(c, inst, st(0, 1), 1);
    EXPECT_EQ(next.at(0), (Cell{ColorId{1}, 2}));
    EXPECT_FALSE(next.at(2));
    EXPECT_EQ(next.at(1), (Cell{ColorId{0}, 2}));
    EXPECT_EQ(out.merged_height, 2u);
}

TEST(ApplyPlacement, OccupiedVertexThrows) {
    const auto inst = make(Graph(2), 5, {});
    Configuration c(2);
    c.set(1, Cell{ColorId{0}, 1});
    try {
        (void)apply_placement(c, inst, st(0, 1), 1, 7);
        FAIL();
    } catch (const IllegalMove& e) {
        EXPECT_EQ(e.step(), 7u);
        EXPECT_EQ(e.vertex(), 1u);
    }
    EXPECT_THROW((void)apply_placement(c, inst, st(0, 1), 5), IllegalMove);
}

TEST(PlayTrace, Examples) {
    auto cap = make(Graph(1), 2, {st(0, 2), st(1, 2)});
    EXPECT_TRUE(play_trace(cap, {0, 0}, Variant::empty).yes);

    auto nocap = make(Graph(1), 2, {st(0, 1), st(1, 1)});
    const auto v = play_trace(nocap, {0, 0}, Variant::fitting);
    EXPECT_FALSE(v.yes);
    ASSERT_TRUE(v.failing_step);
    EXPECT_EQ(*v.failing_step, 1u);  // 0-based second step

    auto edges = make(two_edges(), 5, {st(0, 1), st(0, 4), st(0, 2), st(0, 3)});
    EXPECT_TRUE(play_trace(edges, {0, 1, 2, 3}, Variant::empty).yes);
    const auto residual = play_trace(edges, {0, 2, 1, 3}, Variant::empty);
    EXPECT_FALSE(residual.yes);
    EXPECT_FALSE(residual.residual.empty());
    EXPECT_TRUE(play_trace(edges, {0, 2, 1, 3}, Variant::fitting).yes);

    EXPECT_THROW(play_trace(edges, {0, 1}, Variant::empty), ValidationError);
}

TEST(ClassifyTrivial, Examples) {
    auto v = classify_trivial(make(Graph(2), 3, {st(0, 3), st(0, 3)}), Variant::empty);
    ASSERT_TRUE(v);
    EXPECT_TRUE(v->yes);
    EXPECT_EQ(v->reason, Reason::trivial_yes);

    v = classify_trivial(make(Graph(2), 4, {st(0, 1), st(0, 2)}), Variant::empty);
    ASSERT_TRUE(v);
    EXPECT_FALSE(v->yes);
    EXPECT_EQ(v->reason, Reason::trivial_no_sum);

    v = classify_trivial(make(Graph(1), 3, {st(0, 2)}), Variant::empty);
    ASSERT_TRUE(v);
    EXPECT_FALSE(v->yes);
    EXPECT_EQ(v->reason, Reason::single_vertex);

    // t = 1: every stack vanishes on placement
    v = classify_trivial(make(path_graph(2), 1, {st(0, 1), st(1, 1)}), Variant::fitting);
    ASSERT_TRUE(v);
    EXPECT_TRUE(v->yes);

    EXPECT_FALSE(classify_trivial(make(two_edges(), 5, {st(0, 1), st(0, 4)}), Variant::empty));
}

TEST(ClassifyTrivial, SoundAgainstOracle) {
    std::mt19937_64 rng(5);
    std::size_t decided = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto n = 1 + rng() % 3;
        Graph g = path_graph(n);
        const Height t = 1 + rng() % 4;
        std::vector<Stack> seq;
        const auto len = rng() % 5;
        for (std::size_t i = 0; i < len; ++i) seq.push_back(st(rng() % 2, 1 + rng() % t));
        const auto inst = make(g, t, seq, 2);
        for (const auto variant : {Variant::fitting, Variant::empty}) {
            if (const auto v = classify_trivial(inst, variant)) {
                ++decided;
                EXPECT_EQ(v->yes, oracle::solvable(inst, variant));
                if (v->yes && v->witness) {
                    EXPECT_TRUE(oracle::accepts(inst, *v->witness, variant));
                }
            }
        }
    }
    EXPECT_GT(decided, 50u);
}

TEST(ColorSums, Examples) {
    EXPECT_EQ(color_sums(make(Graph(1), 5, {st(0, 2), st(1, 3), st(0, 1)})), (std::vector<std::uint64_t>{3, 3}));
    EXPECT_EQ(color_sums(make(Graph(1), 5, {}, 2)), (std::vector<std::uint64_t>{0, 0}));
    EXPECT_EQ(color_sums(make(Graph(1), 5, {st(0, 5)})), (std::vector<std::uint64_t>{5}));
}

TEST(EmptyToFitting, Examples) {
    const auto big = empty_to_fitting(make(path_graph(4), 5, {st(0, 1), st(0, 2), st(0, 3), st(0, 4)}));
    ASSERT_EQ(big.sequence.size(), 8u);
    EXPECT_EQ(big.color_count, 5u);
    for (std::size_t i = 4; i < 8; ++i) {
        EXPECT_EQ(big.sequence[i].height, 1u);
        EXPECT_EQ(big.sequence[i].color.index, i - 3);
    }

    const auto lone = make(Graph(1), 2, {st(0, 1)});
    EXPECT_FALSE(oracle::solvable(lone, Variant::empty));
    EXPECT_FALSE(oracle::solvable(empty_to_fitting(lone), Variant::fitting));

    const auto edge = make(path_graph(2), 2, {st(0, 1), st(0, 1)});
    EXPECT_TRUE(oracle::solvable(edge, Variant::empty));
    EXPECT_TRUE(oracle::solvable(empty_to_fitting(edge), Variant::fitting));

    EXPECT_THROW(empty_to_fitting(make(Graph(1), 1, {st(0, 1)})), PreconditionError);
}

TEST(Configuration, EncodingOrdersAndHashes) {
    Configuration a(2), b(2);
    EXPECT_EQ(a.encode(), b.encode());
    b.set(1, Cell{ColorId{0}, 1});
    EXPECT_NE(a.encode(), b.encode());
    EXPECT_EQ(a.encode().size(), 16u);
    EXPECT_TRUE(a < b || b < a);
    EXPECT_EQ(b.occupied(), std::vector<Vertex>{1});
}

// Random legal play keeps adjacent cells differently colored and resting
// heights inside [1, t-1]; the fast and the reporting step functions agree.
TEST(Invariants, RandomLegalPrefixes) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        GeneratorParams p;
        p.vertices = {2, 7};
        p.colors = {1, 3};
        p.threshold = {2, 6};
        p.length = {1, 12};
        p.seed = rng();
        const auto inst = generate_instance(p);
        Configuration c(inst.graph.vertex_count());
        for (std::size_t i = 0; i < inst.sequence.size(); ++i) {
            const auto free = [&] {
                std::vector<Vertex> out;
                for (Vertex v = 0; v < c.size(); ++v) {
                    if (c.is_empty(v)) out.push_back(v);
                }
                return out;
            }();
            if (free.empty()) break;
            const auto x = free[rng() % free.size()];
            auto [next, outcome] = apply_placement(c, inst, inst.sequence[i], x, i);
            ASSERT_EQ(place(c, inst, inst.sequence[i], x), next);
            c = std::move(next);
            for (const auto& [u, v] : inst.graph.edges()) {
                const auto cu = c.at(u), cv = c.at(v);
                ASSERT_FALSE(cu && cv && cu->color == cv->color);
            }
            for (Vertex v = 0; v < c.size(); ++v) {
                if (const auto cell = c.at(v)) {
                    ASSERT_GE(cell->height, 1u);
                    ASSERT_LT(cell->height, inst.threshold);
                }
            }
        }
    }
}

// Exhaustive: every instance with at most 3 vertices, 2 colors, t <= 3 and
// at most 3 stacks; the conversion preserves the verdict.
TEST(EmptyToFitting, ConversionSoundExhaustive) {
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<Graph> graphs = n == 3 ? std::vector<Graph>{Graph(3), path_graph(3), triangle_graph()}
                                                 : std::vector<Graph>{Graph(n), path_graph(n)};
        for (const auto& g : graphs) {
            for (Height t = 2; t <= 3; ++t) {
                for (std::size_t len = 0; len <= 3; ++len) {
                    std::size_t combos = 1;
                    for (std::size_t i = 0; i < len; ++i) combos *= 2 * t;
                    for (std::size_t code = 0; code < combos; ++code) {
                        std::vector<Stack> seq;
                        auto rest = code;
                        for (std::size_t i = 0; i < len; ++i) {
                            seq.push_back(st(rest % 2, 1 + (rest / 2) % t));
                            rest /= 2 * t;
                        }
                        const auto inst = make(g, t, seq, 2);
                        ASSERT_EQ(oracle::solvable(inst, Variant::empty),
                                  oracle::solvable(empty_to_fitting(inst), Variant::fitting));
                        ++checked;
                    }
                }
            }
        }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(Reasons, KebabCase) {
    EXPECT_EQ(to_string(Reason::trivial_no_sum), "trivial-no-sum");
    EXPECT_EQ(to_string(Reason::negative_height_t), "negative-height-t");
    EXPECT_EQ(to_string(Reason::brute_force), "brute-force");
    EXPECT_EQ(parse_variant("empty"), Variant::empty);
    EXPECT_FALSE(parse_variant("EMPTY"));
}
