#pragma once

#include "svagen/ast.hpp"

#include <optional>
#include <string>

namespace svagen {

struct SignalInventory;

// Concrete SVA text for the supported fragment. Holes are only legal when
// `allow_holes` is set (template listings); otherwise they raise
// StructureError. With `wrap_clock`, emits a full assert directive.
std::string render_sva(const PropertyNode &node,
                       std::optional<std::string> wrap_clock = std::nullopt,
                       bool allow_holes = false);

// Deterministic English rendering; holes become "[signal]", "[level]",
// "[signal/word]", "[word]", "[value]".
std::string render_nl(const PropertyNode &node);

// Parses the fragment's concrete syntax back into a canonical AST. When an
// inventory is given, identifiers on comparison right-hand sides resolve to
// signals where declared; otherwise they become word constants.
PropertyNode parse_sva(const std::string &text,
                       const SignalInventory *inv = nullptr);

} // namespace svagen
