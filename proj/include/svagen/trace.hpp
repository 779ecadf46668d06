#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagram.hpp"
#include "svagen/inventory.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

// A concrete execution: one value per (signal, cycle). Word values live in
// whatever domain the producer used (raw values, or domain indices for SAT
// witnesses), so comparisons against constants go through a resolver.
struct Trace {
    std::map<std::string, std::vector<uint64_t>> values;

    size_t length() const {
        return values.empty() ? 0 : values.begin()->second.size();
    }
    uint64_t at(const std::string &signal, int cycle) const;
};

// Maps a word constant to its value in the trace's domain.
using ConstResolver = std::function<uint64_t(
    const std::string &word_signal, const std::string &token,
    std::optional<uint64_t> numeric)>;

// Resolver for traces over raw values: numeric constants evaluate to
// themselves, named constants are rejected.
ConstResolver numeric_consts();

// Direct semantics of the fragment at one origin cycle; nullopt when any
// referenced cycle index is out of range. Matches the localization rules.
std::optional<bool> eval_at(const PropertyNode &prop, int cyc,
                            const Trace &trace, const SignalInventory &inv,
                            const ConstResolver &resolve);

// Weak bounded semantics: true iff every defined origin evaluates true
// (vacuously true when defined nowhere).
bool eval_property(const PropertyNode &prop, const Trace &trace,
                   const SignalInventory &inv, const ConstResolver &resolve);

// True iff the trace is a completion of the diagram: explicit cells match
// and all occurrences of one symbolic label carry one value.
bool trace_satisfies_diagram(const Trace &trace, const TimingDiagram &td,
                             const SignalInventory &inv,
                             const ConstResolver &resolve);

} // namespace svagen
