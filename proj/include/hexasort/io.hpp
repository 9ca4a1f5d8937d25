#pragma once

// Instance, trace, and source-problem documents. Every document is a JSON
// object with "format_version" and "kind"; serialization is canonical
// (sorted keys, two-space indent, trailing newline).

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "engine.hpp"
#include "reductions.hpp"

namespace hexasort::io {

using json = nlohmann::json;

inline constexpr int format_version = 1;

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed JSON that does not match the document schema.
class SchemaError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// An edge or placement names a vertex the graph does not have.
class DanglingVertex : public ValidationError {
public:
    using ValidationError::ValidationError;
};

namespace detail {

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw SyntaxError(line, column, e.what());
    }
}

inline const json& member(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

inline std::uint64_t unsigned_value(const json& v, const std::string& field) {
    if (!v.is_number_unsigned()) throw SchemaError(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::uint64_t unsigned_member(const json& obj, const std::string& key, const std::string& path = "") {
    return unsigned_value(member(obj, key, path), path.empty() ? key : path + "." + key);
}

inline const json& array_member(const json& obj, const std::string& key, const std::string& path = "") {
    const auto& v = member(obj, key, path);
    if (!v.is_array()) throw SchemaError(path.empty() ? key : path + "." + key, "expected an array");
    return v;
}

inline std::string string_member(const json& obj, const std::string& key, const std::string& path = "") {
    const auto& v = member(obj, key, path);
    if (!v.is_string()) throw SchemaError(path.empty() ? key : path + "." + key, "expected a string");
    return v.get<std::string>();
}

inline std::vector<std::uint64_t> unsigned_array(const json& obj, const std::string& key) {
    std::vector<std::uint64_t> out;
    const auto& arr = array_member(obj, key);
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(unsigned_value(arr[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

inline void check_header(const json& doc, std::string_view expected_kind) {
    if (!doc.is_object()) throw SchemaError("document", "expected a JSON object");
    const auto version = unsigned_member(doc, "format_version");
    if (version != format_version) {
        throw SchemaError("format_version", "unsupported format_version " + std::to_string(version));
    }
    const auto kind = string_member(doc, "kind");
    if (kind != expected_kind) {
        throw SchemaError("kind", "expected \"" + std::string(expected_kind) + "\", got \"" + kind + "\"");
    }
}

inline json header(std::string_view kind) {
    json doc = json::object();
    doc["format_version"] = format_version;
    doc["kind"] = kind;
    return doc;
}

inline std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// instance documents

using ParsedInstance = std::variant<Instance, ReductionArtifact>;

inline json to_json(const Instance& inst) {
    json doc = detail::header("instance");
    doc["threshold"] = inst.threshold;
    doc["color_count"] = inst.color_count;
    doc["vertices"] = inst.graph.vertex_count();
    json edges = json::array();
    for (const auto& [u, v] : inst.graph.edges()) edges.push_back({u, v});
    doc["edges"] = std::move(edges);
    json stacks = json::array();
    for (const auto& s : inst.sequence) stacks.push_back({{"color", s.color.index}, {"height", s.height}});
    doc["stacks"] = std::move(stacks);
    return doc;
}

inline json to_json(const ReductionArtifact& a) {
    json doc = to_json(a.instance);
    json red = json::object();
    red["construction"] = to_string(a.construction);
    json roles = json::array();
    for (const auto& r : a.roles) roles.push_back({{"tag", to_string(r.tag)}, {"arm", r.arm}, {"gadget", r.gadget}});
    red["roles"] = std::move(roles);
    json segments = json::array();
    for (const auto& s : a.segments.segments) segments.push_back({{"name", s.name}, {"begin", s.begin}, {"end", s.end}});
    red["segments"] = std::move(segments);
    red["payload_order"] = a.payload_order;
    red["source_elements"] = a.source_elements;
    red["source_bound"] = a.source_bound;
    doc["reduction"] = std::move(red);
    return doc;
}

inline std::string serialize(const Instance& inst) { return detail::render(to_json(inst)); }
inline std::string serialize(const ReductionArtifact& a) { return detail::render(to_json(a)); }
inline std::string serialize(const ParsedInstance& p) {
    return std::visit([](const auto& x) { return serialize(x); }, p);
}

namespace detail {

inline Instance instance_from_json(const json& doc) {
    check_header(doc, "instance");
    Instance inst;
    const auto threshold = unsigned_member(doc, "threshold");
    if (threshold < 1 || threshold > 0xFFFFFFFFull) throw SchemaError("threshold", "must be in [1, 2^32)");
    inst.threshold = static_cast<Height>(threshold);
    const auto colors = unsigned_member(doc, "color_count");
    if (colors < 1 || colors > 0xFFFFFFFFull) throw SchemaError("color_count", "must be in [1, 2^32)");
    inst.color_count = static_cast<std::uint32_t>(colors);
    const auto n = unsigned_member(doc, "vertices");
    if (n > 0xFFFFFFFFull) throw SchemaError("vertices", "too many vertices");
    inst.graph = Graph(n);

    const auto& edges = array_member(doc, "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto field = "edges[" + std::to_string(i) + "]";
        const auto& e = edges[i];
        if (!e.is_array() || e.size() != 2) throw SchemaError(field, "expected a [u, v] pair");
        const auto u = unsigned_value(e[0], field + "[0]");
        const auto v = unsigned_value(e[1], field + "[1]");
        if (u >= n || v >= n) {
            throw DanglingVertex(field, "edge [" + std::to_string(u) + "," + std::to_string(v) + "] on " +
                                            std::to_string(n) + " vertices");
        }
        inst.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), field);
    }

    const auto& stacks = array_member(doc, "stacks");
    for (std::size_t i = 0; i < stacks.size(); ++i) {
        const auto path = "stacks[" + std::to_string(i) + "]";
        const auto c = unsigned_member(stacks[i], "color", path);
        const auto h = unsigned_member(stacks[i], "height", path);
        if (c > 0xFFFFFFFFull || h > 0xFFFFFFFFull) throw SchemaError(path, "value out of range");
        inst.sequence.push_back({ColorId{static_cast<std::uint32_t>(c)}, static_cast<Height>(h)});
    }
    return normalize(std::move(inst));
}

inline ReductionArtifact artifact_from_json(const json& doc, Instance inst) {
    const auto& red = member(doc, "reduction", "");
    ReductionArtifact a;
    a.instance = std::move(inst);
    const auto construction = string_member(red, "construction", "reduction");
    const auto parsed = parse_construction(construction);
    if (!parsed) throw SchemaError("reduction.construction", "unknown construction \"" + construction + "\"");
    a.construction = *parsed;

    const auto& roles = array_member(red, "roles", "reduction");
    if (roles.size() != a.instance.graph.vertex_count()) {
        throw SchemaError("reduction.roles", "expected one role per vertex");
    }
    for (std::size_t v = 0; v < roles.size(); ++v) {
        const auto path = "reduction.roles[" + std::to_string(v) + "]";
        const auto tag_text = string_member(roles[v], "tag", path);
        const auto tag = parse_role_tag(tag_text);
        if (!tag) throw SchemaError(path + ".tag", "unknown role \"" + tag_text + "\"");
        a.roles.push_back({*tag, static_cast<std::uint32_t>(unsigned_member(roles[v], "arm", path)),
                           static_cast<std::uint32_t>(unsigned_member(roles[v], "gadget", path))});
    }
    const auto& segments = array_member(red, "segments", "reduction");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto path = "reduction.segments[" + std::to_string(i) + "]";
        a.segments.segments.push_back({string_member(segments[i], "name", path), unsigned_member(segments[i], "begin", path),
                                       unsigned_member(segments[i], "end", path)});
    }
    if (!a.segments.partitions(a.instance.sequence.size())) {
        throw SchemaError("reduction.segments", "segments do not partition the sequence");
    }
    for (const auto x : unsigned_array(red, "payload_order")) a.payload_order.push_back(x);
    a.source_elements = unsigned_array(red, "source_elements");
    a.source_bound = unsigned_member(red, "source_bound", "reduction");
    std::vector<char> seen(a.source_elements.size(), 0);
    for (const auto i : a.payload_order) {
        if (i >= seen.size() || seen[i]) throw SchemaError("reduction.payload_order", "not a permutation of the source");
        seen[i] = 1;
    }
    if (a.payload_order.size() != a.source_elements.size()) {
        throw SchemaError("reduction.payload_order", "not a permutation of the source");
    }
    return a;
}

}  // namespace detail

/// Validated, normalized instance, or a reduction artifact when the document
/// carries a "reduction" block.
inline ParsedInstance parse_instance(std::string_view text) {
    const auto doc = detail::parse_json(text);
    auto inst = detail::instance_from_json(doc);
    if (doc.contains("reduction")) return detail::artifact_from_json(doc, std::move(inst));
    return inst;
}

inline const Instance& instance_of(const ParsedInstance& p) {
    if (const auto* a = std::get_if<ReductionArtifact>(&p)) return a->instance;
    return std::get<Instance>(p);
}

// ---------------------------------------------------------------------------
// traces

struct TraceDocument {
    Trace placements;
    Variant variant = Variant::empty;
};

inline std::string serialize(const TraceDocument& t) {
    json doc = detail::header("trace");
    doc["variant"] = to_string(t.variant);
    doc["placements"] = t.placements;
    return detail::render(doc);
}

inline TraceDocument parse_trace(std::string_view text) {
    const auto doc = detail::parse_json(text);
    detail::check_header(doc, "trace");
    TraceDocument t;
    const auto variant_text = detail::string_member(doc, "variant");
    const auto variant = parse_variant(variant_text);
    if (!variant) throw SchemaError("variant", "expected \"fitting\" or \"empty\"");
    t.variant = *variant;
    for (const auto v : detail::unsigned_array(doc, "placements")) {
        if (v > 0xFFFFFFFFull) throw SchemaError("placements", "vertex index out of range");
        t.placements.push_back(static_cast<Vertex>(v));
    }
    return t;
}

// ---------------------------------------------------------------------------
// source problems and their solutions

using SourceProblem = std::variant<PartitionInstance, ThreePartitionInstance>;

inline std::string serialize(const PartitionInstance& p) {
    json doc = detail::header("partition");
    doc["elements"] = p.elements;
    return detail::render(doc);
}

inline std::string serialize(const ThreePartitionInstance& p) {
    json doc = detail::header("3partition");
    doc["elements"] = p.elements;
    doc["bound"] = p.bound;
    return detail::render(doc);
}

inline SourceProblem parse_source(std::string_view text) {
    const auto doc = detail::parse_json(text);
    if (!doc.is_object()) throw SchemaError("document", "expected a JSON object");
    const auto kind = doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
    if (kind == "3partition") {
        detail::check_header(doc, "3partition");
        return ThreePartitionInstance{detail::unsigned_array(doc, "elements"), detail::unsigned_member(doc, "bound")};
    }
    detail::check_header(doc, "partition");
    return PartitionInstance{detail::unsigned_array(doc, "elements")};
}

struct PartitionSolution {
    std::vector<std::size_t> subset;
};

struct ThreePartitionSolution {
    std::vector<std::array<std::size_t, 3>> triplets;
};

using SourceSolution = std::variant<PartitionSolution, ThreePartitionSolution>;

inline std::string serialize(const PartitionSolution& s) {
    json doc = detail::header("partition-solution");
    doc["subset"] = s.subset;
    return detail::render(doc);
}

inline std::string serialize(const ThreePartitionSolution& s) {
    json doc = detail::header("3partition-solution");
    doc["triplets"] = s.triplets;
    return detail::render(doc);
}

inline SourceSolution parse_solution(std::string_view text) {
    const auto doc = detail::parse_json(text);
    if (!doc.is_object()) throw SchemaError("document", "expected a JSON object");
    const auto kind = doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
    if (kind == "3partition-solution") {
        detail::check_header(doc, "3partition-solution");
        ThreePartitionSolution s;
        const auto& arr = detail::array_member(doc, "triplets");
        for (std::size_t j = 0; j < arr.size(); ++j) {
            const auto field = "triplets[" + std::to_string(j) + "]";
            if (!arr[j].is_array() || arr[j].size() != 3) throw SchemaError(field, "expected three indices");
            s.triplets.push_back({detail::unsigned_value(arr[j][0], field), detail::unsigned_value(arr[j][1], field),
                                  detail::unsigned_value(arr[j][2], field)});
        }
        return s;
    }
    detail::check_header(doc, "partition-solution");
    PartitionSolution s;
    for (const auto i : detail::unsigned_array(doc, "subset")) s.subset.push_back(i);
    return s;
}

}  // namespace hexasort::io
