#include "svagen/ast_json.hpp"

#include "svagen/errors.hpp"

#include <array>
#include <utility>

namespace svagen {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<NodeKind, const char *>, 13> kKindNames{{
    {NodeKind::SigRef, "sig"},
    {NodeKind::LevelConst, "level"},
    {NodeKind::WordConst, "word"},
    {NodeKind::Eq, "eq"},
    {NodeKind::Neq, "neq"},
    {NodeKind::And, "and"},
    {NodeKind::Not, "not"},
    {NodeKind::Delay, "delay"},
    {NodeKind::Stable, "stable"},
    {NodeKind::Rose, "rose"},
    {NodeKind::Fell, "fell"},
    {NodeKind::Implic, "implic"},
    {NodeKind::Hole, "hole"},
}};

constexpr std::array<std::pair<HoleKind, const char *>, 5> kHoleNames{{
    {HoleKind::Signal, "signal"},
    {HoleKind::Word, "word"},
    {HoleKind::SignalOrWord, "sw"},
    {HoleKind::Level, "level"},
    {HoleKind::Value, "value"},
}};

const char *kind_name(NodeKind k) {
    for (const auto &[kind, name] : kKindNames)
        if (kind == k)
            return name;
    throw StructureError("unserializable node kind");
}

NodeKind kind_from(const std::string &name) {
    for (const auto &[kind, n] : kKindNames)
        if (name == n)
            return kind;
    throw StructureError("unknown node kind '" + name + "'");
}

const char *hole_name(HoleKind k) {
    for (const auto &[kind, name] : kHoleNames)
        if (kind == k)
            return name;
    throw StructureError("unserializable hole kind");
}

HoleKind hole_from(const std::string &name) {
    for (const auto &[kind, n] : kHoleNames)
        if (name == n)
            return kind;
    throw StructureError("unknown hole kind '" + name + "'");
}

} // namespace

ordered_json node_to_json(const PropertyNode &node) {
    ordered_json j;
    j["kind"] = kind_name(node.kind);
    switch (node.kind) {
    case NodeKind::SigRef:
        j["name"] = node.name;
        break;
    case NodeKind::LevelConst:
        j["level"] = node.level == Level::High ? "HIGH" : "LOW";
        break;
    case NodeKind::WordConst:
        j["token"] = node.name;
        if (node.word_value)
            j["value"] = *node.word_value;
        break;
    case NodeKind::Delay:
        j["cycles"] = node.delay;
        break;
    case NodeKind::Hole:
        j["hole"] = hole_name(node.hole);
        if (!node.name.empty())
            j["subtype"] = node.name;
        break;
    default:
        break;
    }
    if (!node.children.empty()) {
        ordered_json kids = ordered_json::array();
        for (const auto &c : node.children)
            kids.push_back(node_to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

PropertyNode node_from_json(const json &j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw StructureError("AST JSON node must be an object with a kind");
    PropertyNode node;
    node.kind = kind_from(j["kind"].get<std::string>());
    switch (node.kind) {
    case NodeKind::SigRef:
        node.name = j.at("name").get<std::string>();
        break;
    case NodeKind::LevelConst:
        node.level = j.at("level").get<std::string>() == "HIGH" ? Level::High
                                                                : Level::Low;
        break;
    case NodeKind::WordConst:
        node.name = j.at("token").get<std::string>();
        if (j.contains("value"))
            node.word_value = j["value"].get<uint64_t>();
        break;
    case NodeKind::Delay:
        node.delay = j.at("cycles").get<int>();
        break;
    case NodeKind::Hole:
        node.hole = hole_from(j.at("hole").get<std::string>());
        if (j.contains("subtype"))
            node.name = j["subtype"].get<std::string>();
        break;
    default:
        break;
    }
    if (j.contains("children"))
        for (const auto &c : j["children"])
            node.children.push_back(node_from_json(c));
    return node;
}

} // namespace svagen
