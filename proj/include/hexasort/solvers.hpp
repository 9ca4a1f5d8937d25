#pragma once

// Exact decision procedures: memoized trace search, the layered
// configuration-space dynamic program, and the variant that collapses
// isolated vertices into an occupancy counter.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "engine.hpp"

namespace hexasort {

/// Explicit resource limits. Exceeding either one raises BudgetExceeded.
struct Budget {
    std::uint64_t max_states = 10'000'000;
    std::optional<std::chrono::milliseconds> max_time;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t visited, const std::string& what)
        : Error("budget exceeded after " + std::to_string(visited) + " states: " + what),
          visited_(visited) {}

    std::uint64_t visited_states() const noexcept { return visited_; }

private:
    std::uint64_t visited_;
};

/// Unsigned count that sticks at its maximum instead of wrapping.
struct SaturatingCount {
    std::uint64_t value = 0;
    bool saturated = false;

    static SaturatingCount power(std::uint64_t base, std::uint64_t exponent) {
        SaturatingCount out{1, false};
        for (std::uint64_t i = 0; i < exponent; ++i) out = out * base;
        return out;
    }

    friend SaturatingCount operator*(SaturatingCount a, std::uint64_t b) {
        if (a.saturated) return a;
        if (b != 0 && a.value > std::numeric_limits<std::uint64_t>::max() / b) {
            return {std::numeric_limits<std::uint64_t>::max(), true};
        }
        return {a.value * b, false};
    }

    /// a <= this, treating a saturated count as unbounded.
    bool covers(std::uint64_t a) const { return saturated || a <= value; }
};

struct SearchStats {
    std::uint64_t visited_states = 0;
    std::uint64_t max_frontier = 0;
    std::chrono::nanoseconds elapsed{0};
    SaturatingCount state_bound;  // (colors*(t-1)+1)^vertices
};

struct SolveResult {
    Verdict verdict;
    SearchStats stats;
};

/// Number of distinct configurations: every vertex is empty or holds one of
/// |C| colors at a height in [1, t-1].
inline SaturatingCount configuration_bound(std::uint64_t colors, std::uint64_t threshold,
                                           std::uint64_t vertices) {
    const std::uint64_t per_vertex = colors * (threshold - 1) + 1;
    return SaturatingCount::power(per_vertex, vertices);
}

inline SearchStats state_space_report(const Instance& instance,
                                      std::optional<SearchStats> observed = std::nullopt) {
    SearchStats stats = observed.value_or(SearchStats{});
    stats.state_bound =
        configuration_bound(instance.color_count, instance.threshold, instance.graph.vertex_count());
    return stats;
}

namespace detail {

class BudgetGuard {
public:
    explicit BudgetGuard(const Budget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void check(std::uint64_t visited) {
        if (visited > budget_.max_states) {
            throw BudgetExceeded(visited, "state limit " + std::to_string(budget_.max_states));
        }
        if (budget_.max_time && (++ticks_ & 0x3FFu) == 0 && elapsed() > *budget_.max_time) {
            throw BudgetExceeded(visited, "time limit " + std::to_string(budget_.max_time->count()) + " ms");
        }
    }

    std::chrono::nanoseconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

private:
    const Budget& budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t ticks_ = 0;
};

struct Parent {
    std::uint32_t state = 0;  // index into the previous layer
    Vertex vertex = 0;

    bool preferred_over(const Parent& other) const {
        return vertex != other.vertex ? vertex < other.vertex : state < other.state;
    }
};

/// One DP layer: the distinct configurations reachable after i placements,
/// kept in first-discovery order.
struct Layer {
    std::vector<Configuration> states;
    std::vector<Parent> parents;
    std::unordered_map<Configuration, std::uint32_t, ConfigurationHash> index;

    /// Inserts or keeps the preferred parent. Returns true when `config` is new.
    bool offer(Configuration&& config, Parent parent) {
        auto it = index.find(config);
        if (it != index.end()) {
            if (parent.preferred_over(parents[it->second])) parents[it->second] = parent;
            return false;
        }
        const auto id = static_cast<std::uint32_t>(states.size());
        index.emplace(config, id);
        states.push_back(std::move(config));
        parents.push_back(parent);
        return true;
    }

    std::optional<std::uint32_t> find(const Configuration& config) const {
        auto it = index.find(config);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

struct KeepAll {
    bool operator()(std::size_t, const Configuration&) const { return false; }
};

/// Forward exploration of every reachable configuration, layer by layer.
/// Stops early (returning fewer layers) once a layer is empty. States for
/// which `prune(layer, config)` holds are dropped.
template <class Prune = KeepAll>
std::vector<Layer> explore_layers(const Instance& instance, BudgetGuard& guard, SearchStats& stats,
                                  const Prune& prune = {}) {
    const auto n = instance.graph.vertex_count();
    std::vector<Layer> layers(1);
    layers[0].offer(Configuration(n), Parent{});
    stats.visited_states = 1;
    stats.max_frontier = 1;

    for (std::size_t i = 0; i < instance.sequence.size(); ++i) {
        const auto& stack = instance.sequence[i];
        Layer next;
        const auto& prev = layers.back();
        for (std::uint32_t p = 0; p < prev.states.size(); ++p) {
            const auto& config = prev.states[p];
            for (Vertex v = 0; v < n; ++v) {
                if (!config.is_empty(v)) continue;
                auto placed = place(config, instance, stack, v);
                if (prune(i + 1, placed)) continue;
                if (next.offer(std::move(placed), Parent{p, v})) {
                    guard.check(++stats.visited_states);
                }
            }
        }
        stats.max_frontier = std::max<std::uint64_t>(stats.max_frontier, next.states.size());
        const bool dead = next.states.empty();
        layers.push_back(std::move(next));
        if (dead) break;
    }
    return layers;
}

inline Trace reconstruct(const std::vector<Layer>& layers, std::uint32_t final_state) {
    Trace trace(layers.size() - 1);
    std::uint32_t state = final_state;
    for (std::size_t i = layers.size() - 1; i > 0; --i) {
        const auto& parent = layers[i].parents[state];
        trace[i - 1] = parent.vertex;
        state = parent.state;
    }
    return trace;
}

/// Empty-variant dead states: some color still on the board either has no
/// stack left to pull it, or not enough height left to ever reach t.
class EmptyDeadEnd {
public:
    explicit EmptyDeadEnd(const Instance& instance) : threshold_(instance.threshold), colors_(instance.color_count) {
        const auto m = instance.sequence.size();
        remaining_sum_.assign((m + 1) * colors_, 0);
        remaining_count_.assign((m + 1) * colors_, 0);
        for (std::size_t i = m; i-- > 0;) {
            for (std::uint32_t c = 0; c < colors_; ++c) {
                remaining_sum_[i * colors_ + c] = remaining_sum_[(i + 1) * colors_ + c];
                remaining_count_[i * colors_ + c] = remaining_count_[(i + 1) * colors_ + c];
            }
            const auto& s = instance.sequence[i];
            remaining_sum_[i * colors_ + s.color.index] += s.height;
            remaining_count_[i * colors_ + s.color.index] += 1;
        }
    }

    bool operator()(std::size_t layer, const Configuration& config) const {
        std::vector<std::uint64_t> board(colors_, 0);
        for (const auto& cell : config.cells()) {
            if (!cell.empty()) board[cell.color.index] += cell.height;
        }
        for (std::uint32_t c = 0; c < colors_; ++c) {
            if (board[c] == 0) continue;
            const auto k = layer * colors_ + c;
            if (remaining_count_[k] == 0 || board[c] + remaining_sum_[k] < threshold_) return true;
        }
        return false;
    }

private:
    std::uint64_t threshold_;
    std::uint32_t colors_;
    std::vector<std::uint64_t> remaining_sum_;
    std::vector<std::uint32_t> remaining_count_;
};

}  // namespace detail

/// Exhaustive depth-first search over placement choices, memoizing dead
/// (step, configuration) pairs. Tries vertices in ascending order.
inline SolveResult brute_force(const Instance& instance, Variant variant, const Budget& budget = {}) {
    detail::BudgetGuard guard(budget);
    SolveResult result;
    auto& stats = result.stats;
    const auto n = instance.graph.vertex_count();
    const auto m = instance.sequence.size();

    std::vector<std::unordered_set<Configuration, ConfigurationHash>> dead(m + 1);
    Trace path;
    path.reserve(m);

    auto search = [&](auto&& self, const Configuration& config, std::size_t step) -> bool {
        if (step == m) return variant == Variant::fitting || config.all_empty();
        if (dead[step].contains(config)) return false;
        guard.check(++stats.visited_states);
        stats.max_frontier = std::max<std::uint64_t>(stats.max_frontier, step + 1);
        for (Vertex v = 0; v < n; ++v) {
            if (!config.is_empty(v)) continue;
            path.push_back(v);
            if (self(self, place(config, instance, instance.sequence[step], v), step + 1)) return true;
            path.pop_back();
        }
        dead[step].insert(config);
        return false;
    };

    const bool yes = search(search, Configuration(n), 0);
    stats.elapsed = guard.elapsed();
    stats = state_space_report(instance, stats);
    result.verdict = yes ? Verdict::accept(Reason::brute_force, path) : Verdict::reject(Reason::brute_force);
    return result;
}

/// Layered DP over reachable configurations. Layer i holds exactly the
/// configurations attainable after the first i placements.
inline SolveResult dp_solve(const Instance& instance, Variant variant, const Budget& budget = {}) {
    detail::BudgetGuard guard(budget);
    SolveResult result;
    const auto layers = detail::explore_layers(instance, guard, result.stats);
    result.stats.elapsed = guard.elapsed();
    result.stats = state_space_report(instance, result.stats);

    const auto m = instance.sequence.size();
    result.verdict = Verdict::reject(Reason::dp);
    if (layers.size() != m + 1 || layers.back().states.empty()) return result;

    const auto& last = layers.back();
    std::optional<std::uint32_t> accepting;
    if (variant == Variant::empty) {
        accepting = last.find(Configuration(instance.graph.vertex_count()));
    } else {
        accepting = 0;
    }
    if (accepting) result.verdict = Verdict::accept(Reason::dp, detail::reconstruct(layers, *accepting));
    return result;
}

/// DP state with the isolated vertices collapsed into an occupancy count.
struct CompressedConfiguration {
    Configuration core;                 // indexed by position in the core vertex list
    std::uint32_t occupied_isolated = 0;

    friend bool operator==(const CompressedConfiguration&, const CompressedConfiguration&) = default;
};

struct CompressedConfigurationHash {
    std::size_t operator()(const CompressedConfiguration& c) const noexcept {
        return ConfigurationHash{}(c.core) * 31u + c.occupied_isolated;
    }
};

/// Fitting-only DP in which isolated vertices contribute only the number of
/// them that are occupied. Isolated stacks never merge, so an occupied
/// isolated vertex stays occupied for the rest of the game.
inline SolveResult dp_solve_compressed(const Instance& instance, Variant variant,
                                       const Budget& budget = {}) {
    if (variant != Variant::fitting) {
        throw PreconditionError("dp_solve_compressed is only defined for the fitting variant");
    }
    detail::BudgetGuard guard(budget);
    SolveResult result;
    auto& stats = result.stats;

    const auto& g = instance.graph;
    const auto isolated = g.isolated_vertices();
    std::vector<Vertex> core_vertices;
    std::vector<Vertex> core_index(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) > 0) {
            core_index[v] = static_cast<Vertex>(core_vertices.size());
            core_vertices.push_back(v);
        }
    }
    // core graph relabelled to 0..k-1
    Instance core = instance;
    core.graph = Graph(core_vertices.size());
    for (const auto& [u, v] : g.edges()) core.graph.add_edge(core_index[u], core_index[v]);

    const auto k = static_cast<Vertex>(core_vertices.size());
    const Vertex isolated_move = k;  // pseudo-vertex standing for "any free isolated vertex"
    const auto free_isolated = static_cast<std::uint32_t>(isolated.size());

    struct Node {
        std::uint32_t parent = 0;
        Vertex move = 0;
    };
    struct CLayer {
        std::vector<CompressedConfiguration> states;
        std::vector<Node> parents;
        std::unordered_map<CompressedConfiguration, std::uint32_t, CompressedConfigurationHash> index;
    };

    std::vector<CLayer> layers(1);
    layers[0].states.push_back({Configuration(k), 0});
    layers[0].parents.push_back({});
    layers[0].index.emplace(layers[0].states[0], 0);
    stats.visited_states = 1;
    stats.max_frontier = 1;

    auto offer = [&](CLayer& layer, CompressedConfiguration&& state, Node node) {
        auto it = layer.index.find(state);
        if (it != layer.index.end()) {
            auto& cur = layer.parents[it->second];
            if (node.move != cur.move ? node.move < cur.move : node.parent < cur.parent) cur = node;
            return;
        }
        const auto id = static_cast<std::uint32_t>(layer.states.size());
        layer.index.emplace(state, id);
        layer.states.push_back(std::move(state));
        layer.parents.push_back(node);
        guard.check(++stats.visited_states);
    };

    const auto m = instance.sequence.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& stack = instance.sequence[i];
        CLayer next;
        const auto& prev = layers.back();
        for (std::uint32_t p = 0; p < prev.states.size(); ++p) {
            const auto& state = prev.states[p];
            for (Vertex v = 0; v < k; ++v) {
                if (!state.core.is_empty(v)) continue;
                offer(next, {place(state.core, core, stack, v), state.occupied_isolated}, Node{p, v});
            }
            if (state.occupied_isolated < free_isolated) {
                const auto occupied = state.occupied_isolated + (stack.height < instance.threshold ? 1u : 0u);
                offer(next, {state.core, occupied}, Node{p, isolated_move});
            }
        }
        stats.max_frontier = std::max<std::uint64_t>(stats.max_frontier, next.states.size());
        const bool dead = next.states.empty();
        layers.push_back(std::move(next));
        if (dead) break;
    }
    stats.elapsed = guard.elapsed();
    stats = state_space_report(instance, stats);

    if (layers.size() != m + 1 || layers.back().states.empty()) {
        result.verdict = Verdict::reject(Reason::dp);
        return result;
    }

    // Walk back to the root, then replay forward to map isolated moves onto
    // concrete vertices (lowest free isolated vertex first).
    std::vector<Vertex> moves(m);
    std::uint32_t state = 0;
    for (std::size_t i = m; i > 0; --i) {
        moves[i - 1] = layers[i].parents[state].move;
        state = layers[i].parents[state].parent;
    }
    Trace trace(m);
    std::size_t next_isolated = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (moves[i] == isolated_move) {
            trace[i] = isolated[next_isolated];
            if (instance.sequence[i].height < instance.threshold) ++next_isolated;
        } else {
            trace[i] = core_vertices[moves[i]];
        }
    }
    result.verdict = Verdict::accept(Reason::dp, std::move(trace));
    return result;
}

/// One edge of the solution lattice: state `from` of layer i moves to state
/// `to` of layer i+1 by placing stack i on `vertex`.
struct Transition {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    Vertex vertex = 0;
};

/// Every configuration and move that lies on at least one complete solution.
struct SolutionLattice {
    std::vector<std::vector<Configuration>> layers;      // alive states per layer
    std::vector<std::vector<Transition>> transitions;    // transitions[i]: layer i -> i+1
    SearchStats stats;

    bool solvable() const { return !layers.empty() && !layers.front().empty(); }

    /// Every accepting trace, in lexicographic vertex order. Exponential in
    /// general; intended for lemma checks on tiny instances.
    std::vector<Trace> traces(std::size_t limit = 1'000'000) const {
        std::vector<Trace> out;
        if (!solvable()) return out;
        const auto m = transitions.size();
        std::vector<std::vector<std::vector<const Transition*>>> outgoing(m);
        for (std::size_t i = 0; i < m; ++i) {
            outgoing[i].resize(layers[i].size());
            for (const auto& tr : transitions[i]) outgoing[i][tr.from].push_back(&tr);
        }
        Trace path;
        auto walk = [&](auto&& self, std::size_t layer, std::uint32_t state) -> void {
            if (out.size() >= limit) return;
            if (layer == m) {
                out.push_back(path);
                return;
            }
            for (const auto* tr : outgoing[layer][state]) {
                path.push_back(tr->vertex);
                self(self, layer + 1, tr->to);
                path.pop_back();
            }
        };
        walk(walk, 0, 0);
        return out;
    }
};

/// Forward layers followed by a backward sweep that keeps only states with a
/// path to an accepting final state.
inline SolutionLattice solution_lattice(const Instance& instance, Variant variant,
                                        const Budget& budget = {}) {
    detail::BudgetGuard guard(budget);
    SolutionLattice lattice;
    // Dead ends never lie on a complete Empty solution, so dropping them
    // early leaves the lattice unchanged.
    auto forward = variant == Variant::empty
                       ? detail::explore_layers(instance, guard, lattice.stats, detail::EmptyDeadEnd(instance))
                       : detail::explore_layers(instance, guard, lattice.stats);
    const auto m = instance.sequence.size();
    const auto n = instance.graph.vertex_count();

    if (forward.size() != m + 1) {
        lattice.stats.elapsed = guard.elapsed();
        return lattice;
    }

    std::vector<std::vector<char>> alive(m + 1);
    for (std::size_t i = 0; i <= m; ++i) alive[i].assign(forward[i].states.size(), 0);
    if (variant == Variant::fitting) {
        std::fill(alive[m].begin(), alive[m].end(), 1);
    } else if (const auto id = forward[m].find(Configuration(n))) {
        alive[m][*id] = 1;
    }

    std::vector<std::vector<Transition>> raw(m);
    for (std::size_t i = m; i-- > 0;) {
        const auto& stack = instance.sequence[i];
        for (std::uint32_t s = 0; s < forward[i].states.size(); ++s) {
            const auto& config = forward[i].states[s];
            for (Vertex v = 0; v < n; ++v) {
                if (!config.is_empty(v)) continue;
                const auto to = forward[i + 1].find(place(config, instance, stack, v));
                if (to && alive[i + 1][*to]) {
                    alive[i][s] = 1;
                    raw[i].push_back({s, *to, v});
                }
            }
        }
    }

    // compact: renumber alive states per layer
    std::vector<std::vector<std::uint32_t>> renumber(m + 1);
    lattice.layers.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        renumber[i].assign(forward[i].states.size(), 0);
        for (std::uint32_t s = 0; s < forward[i].states.size(); ++s) {
            if (!alive[i][s]) continue;
            renumber[i][s] = static_cast<std::uint32_t>(lattice.layers[i].size());
            lattice.layers[i].push_back(forward[i].states[s]);
        }
    }
    lattice.transitions.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& tr : raw[i]) {
            lattice.transitions[i].push_back({renumber[i][tr.from], renumber[i + 1][tr.to], tr.vertex});
        }
    }
    if (!alive[0][0]) {
        for (auto& layer : lattice.layers) layer.clear();
        for (auto& t : lattice.transitions) t.clear();
    }
    lattice.stats.elapsed = guard.elapsed();
    lattice.stats = state_space_report(instance, lattice.stats);
    return lattice;
}

/// Configurations at layer `observe_at` that occur on some complete solution.
inline std::vector<Configuration> enumerate_solutions(const Instance& instance, Variant variant,
                                                      std::size_t observe_at,
                                                      const Budget& budget = {}) {
    if (observe_at > instance.sequence.size()) {
        throw PreconditionError("observe_at " + std::to_string(observe_at) + " exceeds sequence length " +
                                std::to_string(instance.sequence.size()));
    }
    auto lattice = solution_lattice(instance, variant, budget);
    if (!lattice.solvable()) return {};
    auto out = std::move(lattice.layers[observe_at]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hexasort
