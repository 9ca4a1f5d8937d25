#pragma once

// Game model and exact move semantics for Hexasort played on a graph.
//
// A board is a graph whose vertices host at most one monochromatic stack.
// Stacks are placed in a fixed order onto empty vertices; a placement pulls
// every same-colored neighbor onto the placed stack and the merged stack
// vanishes once its height reaches the threshold.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hexasort {

using Vertex = std::uint32_t;
using Height = std::uint32_t;

struct ColorId {
    std::uint32_t index = 0;

    friend constexpr auto operator<=>(ColorId, ColorId) = default;
};

struct Stack {
    ColorId color;
    Height height = 1;

    friend constexpr bool operator==(const Stack&, const Stack&) = default;
};

/// Ordered list of placement vertices, one per stack of the sequence.
using Trace = std::vector<Vertex>;

enum class Variant { fitting, empty };

// ---------------------------------------------------------------------------
// errors

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally malformed input. `field()` names the offending field.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IllegalMove : public Error {
public:
    IllegalMove(std::size_t step, Vertex vertex, const std::string& what)
        : Error("step " + std::to_string(step) + ", vertex " + std::to_string(vertex) + ": " + what),
          step_(step), vertex_(vertex) {}

    std::size_t step() const noexcept { return step_; }
    Vertex vertex() const noexcept { return vertex_; }

private:
    std::size_t step_;
    Vertex vertex_;
};

/// A caller-visible precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// graph

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on dense vertex indices 0..n-1.
class Graph {
public:
    Graph() = default;

    explicit Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

    Graph(std::size_t vertex_count, std::span<const Edge> edges) : adjacency_(vertex_count) {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            add_edge(edges[i].first, edges[i].second, "edges[" + std::to_string(i) + "]");
        }
    }

    void add_edge(Vertex u, Vertex v, const std::string& field = "edge") {
        const auto n = vertex_count();
        if (u >= n || v >= n) {
            throw ValidationError(field, "edge [" + std::to_string(u) + "," + std::to_string(v) +
                                             "] references a vertex outside 0.." +
                                             std::to_string(n == 0 ? 0 : n - 1));
        }
        if (u == v) throw ValidationError(field, "self-loop on vertex " + std::to_string(u));
        if (adjacent(u, v)) {
            throw ValidationError(field, "duplicate edge [" + std::to_string(u) + "," +
                                             std::to_string(v) + "]");
        }
        edges_.emplace_back(std::min(u, v), std::max(u, v));
        insert_sorted(adjacency_[u], v);
        insert_sorted(adjacency_[v], u);
    }

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Edges in insertion order, each stored as (min, max).
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }

    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    bool adjacent(Vertex u, Vertex v) const {
        const auto& list = adjacency_.at(u);
        return std::binary_search(list.begin(), list.end(), v);
    }

    std::size_t max_degree() const {
        std::size_t best = 0;
        for (const auto& list : adjacency_) best = std::max(best, list.size());
        return best;
    }

    std::vector<Vertex> isolated_vertices() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < vertex_count(); ++v) {
            if (adjacency_[v].empty()) out.push_back(v);
        }
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_;
    }

private:
    static void insert_sorted(std::vector<Vertex>& list, Vertex v) {
        list.insert(std::upper_bound(list.begin(), list.end(), v), v);
    }

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Edge> edges_;
};

// ---------------------------------------------------------------------------
// instance

struct Instance {
    Graph graph;
    Height threshold = 1;
    std::vector<Stack> sequence;
    std::uint32_t color_count = 1;
};

/// Throws ValidationError naming the first malformed field.
inline void validate(const Instance& instance) {
    if (instance.threshold < 1) throw ValidationError("threshold", "must be at least 1");
    if (instance.color_count < 1) throw ValidationError("color_count", "must be at least 1");
    for (std::size_t i = 0; i < instance.sequence.size(); ++i) {
        const auto& s = instance.sequence[i];
        const auto field = "stacks[" + std::to_string(i) + "]";
        if (s.height < 1) throw ValidationError(field + ".height", "must be at least 1");
        if (s.color.index >= instance.color_count) {
            throw ValidationError(field + ".color", "color " + std::to_string(s.color.index) +
                                                        " is not below color_count " +
                                                        std::to_string(instance.color_count));
        }
    }
}

/// Caps every height at the threshold. Solution-equivalent for both variants.
inline Instance normalize(Instance instance) {
    validate(instance);
    for (auto& s : instance.sequence) s.height = std::min(s.height, instance.threshold);
    return instance;
}

inline bool is_normalized(const Instance& instance) {
    return std::all_of(instance.sequence.begin(), instance.sequence.end(),
                       [&](const Stack& s) { return s.height <= instance.threshold; });
}

/// sum(c, S) for every declared color.
inline std::vector<std::uint64_t> color_sums(const Instance& instance) {
    std::vector<std::uint64_t> sums(instance.color_count, 0);
    for (const auto& s : instance.sequence) {
        if (s.color.index >= sums.size()) sums.resize(s.color.index + 1, 0);
        sums[s.color.index] += s.height;
    }
    return sums;
}

/// Colors that occur at least once in the sequence, ascending.
inline std::vector<ColorId> used_colors(const Instance& instance) {
    std::vector<ColorId> out;
    for (const auto& s : instance.sequence) out.push_back(s.color);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// configuration

/// Resting stack on a vertex. Height 0 marks an empty cell.
struct Cell {
    ColorId color;
    Height height = 0;

    constexpr bool empty() const noexcept { return height == 0; }
    friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::size_t vertex_count) : cells_(vertex_count) {}

    std::size_t size() const noexcept { return cells_.size(); }

    bool is_empty(Vertex v) const { return cells_.at(v).empty(); }

    std::optional<Cell> at(Vertex v) const {
        const auto& c = cells_.at(v);
        if (c.empty()) return std::nullopt;
        return c;
    }

    void set(Vertex v, Cell cell) { cells_.at(v) = cell; }
    void clear(Vertex v) { cells_.at(v) = Cell{}; }

    bool all_empty() const {
        return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.empty(); });
    }

    std::vector<Vertex> occupied() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < cells_.size(); ++v) {
            if (!cells_[v].empty()) out.push_back(v);
        }
        return out;
    }

    std::span<const Cell> cells() const noexcept { return cells_; }

    /// Canonical vertex-major byte encoding: little-endian (color, height) as
    /// two 32-bit words per vertex, an empty cell encoded as (0xFFFFFFFF, 0).
    std::string encode() const {
        std::string out;
        out.reserve(cells_.size() * 8);
        auto put = [&out](std::uint32_t word) {
            for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((word >> (8 * i)) & 0xFFu));
        };
        for (const auto& c : cells_) {
            put(c.empty() ? 0xFFFFFFFFu : c.color.index);
            put(c.height);
        }
        return out;
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend bool operator<(const Configuration& a, const Configuration& b) {
        return a.encode() < b.encode();
    }

private:
    std::vector<Cell> cells_;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& config) const noexcept {
        // FNV-1a over the (color, height) words
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& c : config.cells()) {
            const std::uint64_t word = c.empty() ? 0 : ((std::uint64_t{c.color.index} << 32) | c.height);
            h ^= word;
            h *= 1099511628211ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

// ---------------------------------------------------------------------------
// moves

struct StepOutcome {
    std::vector<Vertex> cleared_vertices;  // same-colored neighbors pulled onto the target
    std::optional<Cell> resulting_cell;    // what rests on the target afterwards
    bool vanished = false;
    std::uint64_t merged_height = 0;       // h + h'
};

/// Places `stack` on the empty `vertex`. `step` only labels errors.
inline std::pair<Configuration, StepOutcome> apply_placement(const Configuration& config,
                                                             const Instance& instance,
                                                             const Stack& stack, Vertex vertex,
                                                             std::size_t step = 0) {
    if (vertex >= config.size()) throw IllegalMove(step, vertex, "vertex does not exist");
    if (!config.is_empty(vertex)) throw IllegalMove(step, vertex, "vertex is occupied");

    Configuration next = config;
    StepOutcome outcome;
    outcome.merged_height = stack.height;
    for (const Vertex u : instance.graph.neighbors(vertex)) {
        const auto cell = config.at(u);
        if (cell && cell->color == stack.color) {
            outcome.merged_height += cell->height;
            outcome.cleared_vertices.push_back(u);
            next.clear(u);
        }
    }
    if (outcome.merged_height >= instance.threshold) {
        outcome.vanished = true;
    } else {
        const Cell cell{stack.color, static_cast<Height>(outcome.merged_height)};
        next.set(vertex, cell);
        outcome.resulting_cell = cell;
    }
    return {std::move(next), std::move(outcome)};
}

/// Same rule as apply_placement without the outcome record; hot path of the solvers.
inline Configuration place(const Configuration& config, const Instance& instance, const Stack& stack,
                           Vertex vertex) {
    Configuration next = config;
    std::uint64_t total = stack.height;
    for (const Vertex u : instance.graph.neighbors(vertex)) {
        const auto& c = config.cells()[u];
        if (!c.empty() && c.color == stack.color) {
            total += c.height;
            next.clear(u);
        }
    }
    if (total < instance.threshold) next.set(vertex, Cell{stack.color, static_cast<Height>(total)});
    return next;
}

// ---------------------------------------------------------------------------
// verdicts

enum class Reason {
    trivial_yes,
    trivial_no_sum,
    single_vertex,
    matching,
    high_degree,
    dp,
    brute_force,
    negative_height_t,
    isolated_vertices,
    spider_packing,
    replay,
};

inline std::string_view to_string(Reason r) {
    switch (r) {
        case Reason::trivial_yes: return "trivial-yes";
        case Reason::trivial_no_sum: return "trivial-no-sum";
        case Reason::single_vertex: return "single-vertex";
        case Reason::matching: return "matching";
        case Reason::high_degree: return "high-degree";
        case Reason::dp: return "dp";
        case Reason::brute_force: return "brute-force";
        case Reason::negative_height_t: return "negative-height-t";
        case Reason::isolated_vertices: return "isolated-vertices";
        case Reason::spider_packing: return "spider-packing";
        case Reason::replay: return "replay";
    }
    return "unknown";
}

inline std::string_view to_string(Variant v) { return v == Variant::empty ? "empty" : "fitting"; }

inline std::optional<Variant> parse_variant(std::string_view text) {
    if (text == "empty") return Variant::empty;
    if (text == "fitting") return Variant::fitting;
    return std::nullopt;
}

struct Verdict {
    bool yes = false;
    std::optional<Trace> witness;
    std::optional<Reason> reason;
    // Set by play_trace on rejection.
    std::optional<std::size_t> failing_step;
    std::vector<Vertex> residual;

    static Verdict accept(Reason reason, std::optional<Trace> witness = std::nullopt) {
        Verdict v;
        v.yes = true;
        v.reason = reason;
        v.witness = std::move(witness);
        return v;
    }
    static Verdict reject(Reason reason) {
        Verdict v;
        v.reason = reason;
        return v;
    }
};

/// Replays a certificate. Illegal steps are reported through the verdict,
/// only a length mismatch throws.
inline Verdict play_trace(const Instance& instance, const Trace& trace, Variant variant) {
    if (trace.size() != instance.sequence.size()) {
        throw ValidationError("placements", "trace has " + std::to_string(trace.size()) +
                                                " placements but the sequence has " +
                                                std::to_string(instance.sequence.size()) +
                                                " stacks");
    }
    Configuration config(instance.graph.vertex_count());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const Vertex v = trace[i];
        if (v >= config.size() || !config.is_empty(v)) {
            Verdict verdict = Verdict::reject(Reason::replay);
            verdict.failing_step = i;
            return verdict;
        }
        config = place(config, instance, instance.sequence[i], v);
    }
    if (variant == Variant::empty && !config.all_empty()) {
        Verdict verdict = Verdict::reject(Reason::replay);
        verdict.residual = config.occupied();
        return verdict;
    }
    return Verdict::accept(Reason::replay, trace);
}

/// Decides the instance when a triviality rule applies. Expects a normalized instance.
inline std::optional<Verdict> classify_trivial(const Instance& instance, Variant variant) {
    const auto n = instance.graph.vertex_count();
    const auto& seq = instance.sequence;
    const auto t = instance.threshold;

    if (seq.empty()) return Verdict::accept(Reason::trivial_yes, Trace{});
    if (n == 0) return std::nullopt;

    // every stack vanishes the moment it is placed
    const bool all_vanish =
        std::all_of(seq.begin(), seq.end(), [t](const Stack& s) { return s.height >= t; });
    if (all_vanish) return Verdict::accept(Reason::trivial_yes, Trace(seq.size(), 0));

    if (n == 1) {
        if (variant == Variant::empty) return Verdict::reject(Reason::single_vertex);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            if (seq[i].height < t) return Verdict::reject(Reason::single_vertex);
        }
        return Verdict::accept(Reason::single_vertex, Trace(seq.size(), 0));
    }

    if (variant == Variant::empty) {
        const auto sums = color_sums(instance);
        for (const auto c : used_colors(instance)) {
            if (sums[c.index] < t) return Verdict::reject(Reason::trivial_no_sum);
        }
    }
    return std::nullopt;
}

/// Appends |V| stacks of fresh distinct colors at height 1, turning an Empty
/// question into an equivalent Fitting question.
inline Instance empty_to_fitting(Instance instance) {
    if (instance.threshold < 2) {
        throw PreconditionError(
            "empty_to_fitting requires threshold >= 2; threshold 1 is decided by classify_trivial");
    }
    const auto n = static_cast<std::uint32_t>(instance.graph.vertex_count());
    const auto base = instance.color_count;
    for (std::uint32_t i = 0; i < n; ++i) instance.sequence.push_back(Stack{ColorId{base + i}, 1});
    instance.color_count = base + n;
    return instance;
}

}  // namespace hexasort
