#pragma once

#include "svagen/inventory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

struct Cell {
    enum class Kind { Explicit, Unconstrained, Symbolic } kind =
        Kind::Unconstrained;
    uint64_t value = 0;     // Explicit
    std::string label;      // Symbolic; scoped to (diagram, signal)
};

struct DiagramSignal {
    std::string name;
    std::vector<Cell> cells;
};

struct TimingDiagram {
    std::string name;
    size_t length = 0; // CYC_MAX = length - 1
    std::vector<DiagramSignal> signals;

    const DiagramSignal *find(const std::string &name) const;
    size_t cyc_max() const { return length - 1; }
};

// Signal-vector text: optional `name:` header, one `NAME = [c0, c1, ...]`
// line per signal, cells in {0, 1, X, 0xHEX, decimal, label}. `#` comments.
TimingDiagram parse_diagram(const std::string &text,
                            const SignalInventory &inv);

// Fully unconstrained diagram over the given signals.
TimingDiagram all_x_diagram(const std::vector<std::string> &signals,
                            size_t length);

} // namespace svagen
