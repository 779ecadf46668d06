#pragma once

#include "svagen/ast.hpp"
#include "svagen/grammar.hpp"
#include "svagen/inventory.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace svagen {

struct Candidate {
    PropertyNode ast;
    size_t template_index = 0;
};

// Cartesian substitution of every hole by its type-compatible fillers:
// SIGNAL <- 1-bit signals, WORD <- words, SW <- both, LEVEL <- {HIGH, LOW},
// VALUE <- the declared constants of the word it is compared to. A subtype
// tag on a hole restricts it to signals carrying that tag. Operands of one
// And node must reference pairwise-disjoint signals. Output is canonical,
// deduplicated, and deterministic. Templates with an unfillable hole yield
// no candidates and append a warning.
std::vector<Candidate> generate_candidates(
    const std::vector<TemplateInfo> &templates, const SignalInventory &inv,
    std::vector<std::string> *warnings = nullptr);

} // namespace svagen
