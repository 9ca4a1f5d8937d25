#pragma once

// Compilers from Partition and 3-Partition to Empty Hexasort gadget
// instances, forward witnesses built from number-theoretic solutions, and
// back-mapping of Hexasort witnesses to number-theoretic solutions.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "engine.hpp"

namespace hexasort {

struct PartitionInstance {
    std::vector<std::uint64_t> elements;
};

struct ThreePartitionInstance {
    std::vector<std::uint64_t> elements;
    std::uint64_t bound = 0;
};

enum class RoleTag { center, short_arm, arm_inner, arm_leaf };

inline std::string_view to_string(RoleTag tag) {
    switch (tag) {
        case RoleTag::center: return "center";
        case RoleTag::short_arm: return "short";
        case RoleTag::arm_inner: return "arm_inner";
        case RoleTag::arm_leaf: return "arm_leaf";
    }
    return "unknown";
}

inline std::optional<RoleTag> parse_role_tag(std::string_view text) {
    if (text == "center") return RoleTag::center;
    if (text == "short") return RoleTag::short_arm;
    if (text == "arm_inner") return RoleTag::arm_inner;
    if (text == "arm_leaf") return RoleTag::arm_leaf;
    return std::nullopt;
}

/// Role of a vertex inside gadget `gadget`. `arm` is 1-based and unused for
/// the center.
struct VertexRole {
    RoleTag tag = RoleTag::center;
    std::uint32_t arm = 0;
    std::uint32_t gadget = 0;

    friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

/// Half-open range of sequence positions.
struct Segment {
    std::string name;
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool contains(std::size_t i) const { return begin <= i && i < end; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentMap {
    std::vector<Segment> segments;

    const Segment& at(std::string_view name) const {
        for (const auto& s : segments) {
            if (s.name == name) return s;
        }
        throw PreconditionError("no segment named " + std::string(name));
    }

    /// Ranges are contiguous, in order, and cover [0, total).
    bool partitions(std::size_t total) const {
        std::size_t cursor = 0;
        for (const auto& s : segments) {
            if (s.begin != cursor || s.end < s.begin) return false;
            cursor = s.end;
        }
        return cursor == total;
    }
    friend bool operator==(const SegmentMap&, const SegmentMap&) = default;
};

enum class Construction { two_edges, spider, disjoint_spiders, spider_tree };

inline std::string_view to_string(Construction c) {
    switch (c) {
        case Construction::two_edges: return "two-edges";
        case Construction::spider: return "spider";
        case Construction::disjoint_spiders: return "disjoint-spiders";
        case Construction::spider_tree: return "spider-tree";
    }
    return "unknown";
}

inline std::optional<Construction> parse_construction(std::string_view text) {
    if (text == "two-edges") return Construction::two_edges;
    if (text == "spider") return Construction::spider;
    if (text == "disjoint-spiders" || text == "disjoint") return Construction::disjoint_spiders;
    if (text == "spider-tree" || text == "tree") return Construction::spider_tree;
    return std::nullopt;
}

struct ReductionArtifact {
    Instance instance;
    std::vector<VertexRole> roles;             // indexed by vertex
    SegmentMap segments;
    std::vector<std::size_t> payload_order;    // payload position -> source element index
    Construction construction = Construction::two_edges;
    std::vector<std::uint64_t> source_elements;
    std::uint64_t source_bound = 0;            // B for 3-Partition, 0 otherwise

    std::size_t gadget_count() const {
        std::size_t m = 0;
        for (const auto& r : roles) m = std::max<std::size_t>(m, r.gadget + 1);
        return m;
    }
};

// ---------------------------------------------------------------------------
// Partition

/// Either the canonical instance or a verdict decided without a reduction.
/// `subset` holds element indices of one half when the verdict is yes.
struct DecidedPartition {
    bool yes = false;
    std::vector<std::size_t> subset;
};

using CanonicalizationResult = std::variant<PartitionInstance, DecidedPartition>;

inline CanonicalizationResult partition_canonicalize(const PartitionInstance& p) {
    const auto& e = p.elements;
    if (e.empty()) return DecidedPartition{false, {}};
    for (const auto x : e) {
        if (x == 0) throw ValidationError("elements", "partition elements must be positive");
    }
    const auto total = std::accumulate(e.begin(), e.end(), std::uint64_t{0});
    if (total % 2 != 0) return DecidedPartition{false, {}};
    const auto half = total / 2;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > half) return DecidedPartition{false, {}};
        if (e[i] == half) return DecidedPartition{true, {i}};
    }
    std::uint64_t prefix = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        prefix += e[i];
        if (prefix == half) {
            std::vector<std::size_t> subset(i + 1);
            std::iota(subset.begin(), subset.end(), std::size_t{0});
            return DecidedPartition{true, std::move(subset)};
        }
    }
    return p;
}

inline bool is_canonical(const PartitionInstance& p) {
    return std::holds_alternative<PartitionInstance>(partition_canonicalize(p));
}

namespace detail {

inline void require_canonical(const PartitionInstance& p) {
    if (!is_canonical(p)) {
        throw PreconditionError("partition instance is not canonical; decide it with partition_canonicalize");
    }
}

inline std::vector<std::size_t> identity(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

}  // namespace detail

/// Two independent edges, one color, threshold half the element sum, heights in source order.
inline ReductionArtifact partition_to_two_edges(const PartitionInstance& p) {
    detail::require_canonical(p);
    ReductionArtifact a;
    a.construction = Construction::two_edges;
    a.source_elements = p.elements;
    const auto total = std::accumulate(p.elements.begin(), p.elements.end(), std::uint64_t{0});

    a.instance.graph = Graph(4);
    a.instance.graph.add_edge(0, 1);
    a.instance.graph.add_edge(2, 3);
    a.instance.threshold = static_cast<Height>(total / 2);
    a.instance.color_count = 1;
    for (const auto x : p.elements) a.instance.sequence.push_back({ColorId{0}, static_cast<Height>(x)});

    a.roles = {{RoleTag::arm_inner, 1, 0}, {RoleTag::arm_leaf, 1, 0}, {RoleTag::arm_inner, 2, 0},
               {RoleTag::arm_leaf, 2, 0}};
    a.segments.segments = {{"payload", 0, p.elements.size()}};
    a.payload_order = detail::identity(p.elements.size());
    return a;
}

/// Colors used by the nine-vertex spider construction.
namespace spider9 {
inline constexpr ColorId red{0};
inline constexpr ColorId blue{1};
inline constexpr ColorId green{2};
inline constexpr ColorId black{3};

// vertex layout
inline constexpr Vertex center = 0;
inline constexpr Vertex s1 = 1;
inline constexpr Vertex s2 = 2;
inline constexpr Vertex arm_inner(std::uint32_t i) { return 3 + 2 * (i - 1); }  // i in 1..3
inline constexpr Vertex arm_leaf(std::uint32_t i) { return 4 + 2 * (i - 1); }
}  // namespace spider9

/// Connected nine-vertex spider (center of degree five, two short arms,
/// three arms of length two) and four colors.
/// Sequence: initial(4) + reservation(4) + payload(|P|) + connector(2).
inline ReductionArtifact partition_to_spider(const PartitionInstance& p) {
    using namespace spider9;
    detail::require_canonical(p);
    const auto total = std::accumulate(p.elements.begin(), p.elements.end(), std::uint64_t{0});
    const auto t = total / 2;
    if (t < 3) {
        throw PreconditionError("spider construction needs threshold sum/2 >= 3, got " + std::to_string(t));
    }
    ReductionArtifact a;
    a.construction = Construction::spider;
    a.source_elements = p.elements;

    auto& g = a.instance.graph;
    g = Graph(9);
    g.add_edge(center, s1);
    g.add_edge(center, s2);
    for (std::uint32_t i = 1; i <= 3; ++i) {
        g.add_edge(center, arm_inner(i));
        g.add_edge(arm_inner(i), arm_leaf(i));
    }
    a.roles = {{RoleTag::center, 0, 0},    {RoleTag::short_arm, 1, 0}, {RoleTag::short_arm, 2, 0},
               {RoleTag::arm_inner, 1, 0}, {RoleTag::arm_leaf, 1, 0},  {RoleTag::arm_inner, 2, 0},
               {RoleTag::arm_leaf, 2, 0},  {RoleTag::arm_inner, 3, 0}, {RoleTag::arm_leaf, 3, 0}};

    const auto th = static_cast<Height>(t);
    a.instance.threshold = th;
    a.instance.color_count = 4;
    auto& seq = a.instance.sequence;
    seq = {{red, th - 1}, {red, th - 1}, {blue, th - 1}, {blue, th - 1}};
    const Height long_h = th / 2 + 1;
    const Height short_h = (th + 1) / 2 - 1;
    seq.insert(seq.end(), {{green, long_h}, {green, long_h}, {green, short_h}, {green, short_h}});
    for (const auto x : p.elements) seq.push_back({black, static_cast<Height>(x)});
    seq.insert(seq.end(), {{red, th - 1}, {blue, th - 1}});

    const auto n = p.elements.size();
    a.segments.segments = {{"initial", 0, 4}, {"reservation", 4, 8}, {"payload", 8, 8 + n}, {"connector", 8 + n, 10 + n}};
    a.payload_order = detail::identity(n);
    return a;
}

/// Forward witness from one half P1 (element indices).
inline Trace witness_from_partition(const ReductionArtifact& a, const std::vector<std::size_t>& first_half) {
    const auto& elements = a.source_elements;
    const auto total = std::accumulate(elements.begin(), elements.end(), std::uint64_t{0});
    std::vector<char> in_first(elements.size(), 0);
    std::uint64_t sum = 0;
    for (const auto i : first_half) {
        if (i >= elements.size()) throw PreconditionError("subset index " + std::to_string(i) + " out of range");
        if (in_first[i]) throw PreconditionError("subset index " + std::to_string(i) + " repeated");
        in_first[i] = 1;
        sum += elements[i];
    }
    if (2 * sum != total) {
        throw PreconditionError("subset sums to " + std::to_string(sum) + ", expected " + std::to_string(total / 2));
    }

    // payload elements of each half alternate on the two ends of their edge
    auto place_payload = [&](Trace& trace, std::size_t offset, std::array<Vertex, 2> edge_one,
                             std::array<Vertex, 2> edge_two) {
        std::array<std::size_t, 2> count{0, 0};
        for (std::size_t pos = 0; pos < a.payload_order.size(); ++pos) {
            const int side = in_first[a.payload_order[pos]] ? 0 : 1;
            const auto& edge = side == 0 ? edge_one : edge_two;
            trace[offset + pos] = edge[count[side]++ % 2];
        }
    };

    if (a.construction == Construction::two_edges) {
        Trace trace(elements.size());
        place_payload(trace, 0, {0, 1}, {2, 3});
        return trace;
    }
    if (a.construction != Construction::spider) {
        throw PreconditionError("witness_from_partition needs a two-edges or spider artifact");
    }
    using namespace spider9;
    Trace trace(a.instance.sequence.size());
    // initial: red on the center and a leaf, blue on both short arms
    trace[0] = center;
    trace[1] = arm_leaf(1);
    trace[2] = s1;
    trace[3] = s2;
    // reservation: two vanishing green pairs on arms 2 and 3
    trace[4] = arm_leaf(2);
    trace[5] = arm_leaf(3);
    trace[6] = arm_inner(2);
    trace[7] = arm_inner(3);
    const auto payload = a.segments.at("payload");
    place_payload(trace, payload.begin, {arm_inner(2), arm_leaf(2)}, {arm_inner(3), arm_leaf(3)});
    const auto connector = a.segments.at("connector");
    trace[connector.begin] = arm_inner(1);
    trace[connector.begin + 1] = center;
    return trace;
}

/// Reads one half of the partition back out of an accepting Empty witness.
/// Payload stacks are grouped by the arm (edge) that received them; the
/// returned half is the group holding the first payload stack.
inline std::vector<std::size_t> partition_from_witness(const ReductionArtifact& a, const Trace& trace) {
    if (trace.size() != a.instance.sequence.size() || !play_trace(a.instance, trace, Variant::empty).yes) {
        throw PreconditionError("trace is not an accepting empty witness for this artifact");
    }
    const auto payload = a.segments.at("payload");
    std::map<std::uint32_t, std::vector<std::size_t>> by_arm;
    for (std::size_t pos = 0; pos < payload.size(); ++pos) {
        const auto& role = a.roles.at(trace[payload.begin + pos]);
        if (role.tag != RoleTag::arm_inner && role.tag != RoleTag::arm_leaf) {
            throw PreconditionError("payload stack placed outside the long arms");
        }
        by_arm[role.arm].push_back(a.payload_order[pos]);
    }
    const auto first_arm = a.roles.at(trace[payload.begin]).arm;
    auto half = by_arm[first_arm];
    std::sort(half.begin(), half.end());

    std::uint64_t sum = 0, total = 0;
    for (const auto i : half) sum += a.source_elements[i];
    for (const auto x : a.source_elements) total += x;
    if (2 * sum != total) throw Error("witness does not split the payload into equal halves");
    return half;
}

// ---------------------------------------------------------------------------
// 3-Partition

enum class TreeShape { path, binary, star };

inline std::optional<TreeShape> parse_tree_shape(std::string_view text) {
    if (text == "path") return TreeShape::path;
    if (text == "binary") return TreeShape::binary;
    if (text == "star") return TreeShape::star;
    return std::nullopt;
}

/// Gadget layout: ten consecutive vertices per gadget.
namespace spider10 {
inline constexpr std::uint32_t size = 10;
inline constexpr Vertex center(std::uint32_t j) { return size * j; }
inline constexpr Vertex s1(std::uint32_t j) { return size * j + 1; }
inline constexpr Vertex arm_inner(std::uint32_t j, std::uint32_t i) { return size * j + 2 * i; }     // i in 1..4
inline constexpr Vertex arm_leaf(std::uint32_t j, std::uint32_t i) { return size * j + 2 * i + 1; }
inline constexpr ColorId black{0};
inline constexpr ColorId red(std::uint32_t j) { return ColorId{1 + 3 * j}; }
inline constexpr ColorId blue(std::uint32_t j) { return ColorId{2 + 3 * j}; }
inline constexpr ColorId green(std::uint32_t j) { return ColorId{3 + 3 * j}; }
}  // namespace spider10

inline void validate(const ThreePartitionInstance& a) {
    const auto n = a.elements.size();
    if (n == 0 || n % 3 != 0) throw ValidationError("elements", "need 3m elements, got " + std::to_string(n));
    if (a.bound == 0) throw ValidationError("bound", "must be positive");
    const auto m = n / 3;
    const auto total = std::accumulate(a.elements.begin(), a.elements.end(), std::uint64_t{0});
    if (total != m * a.bound) {
        throw ValidationError("elements", "sum " + std::to_string(total) + " differs from m*B = " +
                                              std::to_string(m * a.bound));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = a.elements[i];
        if (!(4 * x > a.bound && 2 * x < a.bound)) {
            throw ValidationError("elements[" + std::to_string(i) + "]",
                                  std::to_string(x) + " is not strictly between B/4 and B/2");
        }
    }
}

/// m ten-vertex gadgets (center of degree five, four arms of length two, one
/// short arm s1), either disjoint or joined by identifying each s1 with a
/// node of a tree. Threshold B+4, colors black plus (red, blue, green) per
/// gadget. Sequence: initial(6m) + payload(3m) + connector(3m) + final(4m).
inline ReductionArtifact three_partition_to_gadgets(const ThreePartitionInstance& source,
                                                    std::optional<TreeShape> tree = std::nullopt) {
    using namespace spider10;
    validate(source);
    const auto m = static_cast<std::uint32_t>(source.elements.size() / 3);
    ReductionArtifact a;
    a.construction = tree ? Construction::spider_tree : Construction::disjoint_spiders;
    a.source_elements = source.elements;
    a.source_bound = source.bound;

    auto& g = a.instance.graph;
    g = Graph(size * m);
    a.roles.resize(size * m);
    for (std::uint32_t j = 0; j < m; ++j) {
        g.add_edge(center(j), s1(j));
        a.roles[center(j)] = {RoleTag::center, 0, j};
        a.roles[s1(j)] = {RoleTag::short_arm, 1, j};
        for (std::uint32_t i = 1; i <= 4; ++i) {
            g.add_edge(center(j), arm_inner(j, i));
            g.add_edge(arm_inner(j, i), arm_leaf(j, i));
            a.roles[arm_inner(j, i)] = {RoleTag::arm_inner, i, j};
            a.roles[arm_leaf(j, i)] = {RoleTag::arm_leaf, i, j};
        }
    }
    if (tree) {
        for (std::uint32_t j = 1; j < m; ++j) {
            std::uint32_t parent = 0;
            switch (*tree) {
                case TreeShape::path: parent = j - 1; break;
                case TreeShape::binary: parent = (j - 1) / 2; break;
                case TreeShape::star: parent = 0; break;
            }
            g.add_edge(s1(parent), s1(j));
        }
    }

    const auto t = static_cast<Height>(source.bound + 4);
    a.instance.threshold = t;
    a.instance.color_count = 3 * m + 1;
    auto& seq = a.instance.sequence;
    for (std::uint32_t j = 0; j < m; ++j) {
        seq.insert(seq.end(), {{red(j), t - 1}, {red(j), t - 1}, {blue(j), t - 1}, {blue(j), t - 1},
                               {green(j), t - 1}, {green(j), t - 1}});
    }
    for (const auto x : source.elements) seq.push_back({black, static_cast<Height>(x)});
    for (std::uint32_t j = 0; j < m; ++j) seq.insert(seq.end(), {{red(j), t - 1}, {blue(j), t - 1}, {green(j), t - 1}});
    for (std::uint32_t j = 0; j < 4 * m; ++j) seq.push_back({black, 1});

    const std::size_t mm = m;
    a.segments.segments = {{"initial", 0, 6 * mm},
                           {"payload", 6 * mm, 9 * mm},
                           {"connector", 9 * mm, 12 * mm},
                           {"final", 12 * mm, 16 * mm}};
    a.payload_order = detail::identity(source.elements.size());
    return a;
}

/// Forward witness: triplet j goes to gadget j.
inline Trace witness_from_triplets(const ReductionArtifact& a,
                                   const std::vector<std::array<std::size_t, 3>>& triplets) {
    using namespace spider10;
    if (a.construction != Construction::disjoint_spiders && a.construction != Construction::spider_tree) {
        throw PreconditionError("witness_from_triplets needs a 3-partition artifact");
    }
    const auto m = static_cast<std::uint32_t>(a.source_elements.size() / 3);
    if (triplets.size() != m) {
        throw PreconditionError("expected " + std::to_string(m) + " triplets, got " + std::to_string(triplets.size()));
    }
    std::vector<char> seen(a.source_elements.size(), 0);
    std::vector<std::uint32_t> gadget_of(a.source_elements.size(), 0);
    std::vector<std::uint32_t> slot_of(a.source_elements.size(), 0);
    for (std::uint32_t j = 0; j < m; ++j) {
        std::uint64_t sum = 0;
        for (std::uint32_t k = 0; k < 3; ++k) {
            const auto i = triplets[j][k];
            if (i >= seen.size() || seen[i]) {
                throw PreconditionError("triplets do not partition the element indices");
            }
            seen[i] = 1;
            gadget_of[i] = j;
            slot_of[i] = k;
            sum += a.source_elements[i];
        }
        if (sum != a.source_bound) {
            throw PreconditionError("triplet " + std::to_string(j) + " sums to " + std::to_string(sum) +
                                    ", expected " + std::to_string(a.source_bound));
        }
    }

    Trace trace(a.instance.sequence.size());
    const auto initial = a.segments.at("initial");
    for (std::uint32_t j = 0; j < m; ++j) {
        const auto base = initial.begin + 6 * j;
        trace[base + 0] = center(j);        // red
        trace[base + 1] = arm_leaf(j, 1);   // red
        trace[base + 2] = arm_inner(j, 3);  // blue
        trace[base + 3] = arm_inner(j, 4);  // blue
        trace[base + 4] = s1(j);            // green
        trace[base + 5] = arm_inner(j, 2);  // green
    }
    const auto payload = a.segments.at("payload");
    for (std::size_t pos = 0; pos < payload.size(); ++pos) {
        const auto i = a.payload_order[pos];
        trace[payload.begin + pos] = arm_leaf(gadget_of[i], 2 + slot_of[i]);
    }
    const auto connector = a.segments.at("connector");
    for (std::uint32_t j = 0; j < m; ++j) {
        trace[connector.begin + 3 * j + 0] = arm_inner(j, 1);  // red three-merge
        trace[connector.begin + 3 * j + 1] = center(j);        // blue three-merge
        trace[connector.begin + 3 * j + 2] = center(j);        // green three-merge
    }
    const auto final_segment = a.segments.at("final");
    for (std::uint32_t j = 0; j < m; ++j) {
        trace[final_segment.begin + 4 * j + 0] = arm_inner(j, 2);
        trace[final_segment.begin + 4 * j + 1] = arm_inner(j, 3);
        trace[final_segment.begin + 4 * j + 2] = arm_inner(j, 4);
        trace[final_segment.begin + 4 * j + 3] = center(j);
    }
    return trace;
}

/// Groups payload placements of an accepting Empty witness by gadget.
inline std::vector<std::array<std::size_t, 3>> triplets_from_witness(const ReductionArtifact& a, const Trace& trace) {
    if (trace.size() != a.instance.sequence.size() || !play_trace(a.instance, trace, Variant::empty).yes) {
        throw PreconditionError("trace is not an accepting empty witness for this artifact");
    }
    const auto m = a.source_elements.size() / 3;
    std::vector<std::vector<std::size_t>> groups(m);
    const auto payload = a.segments.at("payload");
    for (std::size_t pos = 0; pos < payload.size(); ++pos) {
        groups.at(a.roles.at(trace[payload.begin + pos]).gadget).push_back(a.payload_order[pos]);
    }
    std::vector<std::array<std::size_t, 3>> out;
    for (std::size_t j = 0; j < m; ++j) {
        auto& g = groups[j];
        std::uint64_t sum = 0;
        for (const auto i : g) sum += a.source_elements[i];
        if (g.size() != 3 || sum != a.source_bound) {
            throw Error("gadget " + std::to_string(j) + " did not receive a triplet summing to B");
        }
        std::sort(g.begin(), g.end());
        out.push_back({g[0], g[1], g[2]});
    }
    return out;
}

}  // namespace hexasort
