#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagram.hpp"
#include "svagen/formula.hpp"
#include "svagen/inventory.hpp"

#include <optional>

namespace svagen {

// phi_td: explicit cells pin their signal-cycle value; runs of one symbolic
// label tie adjacent cycle terms equal (repeated runs of the same label are
// tied through their first cells); X cells contribute nothing.
FormulaPtr encode_diagram(const TimingDiagram &td, const SignalInventory &inv);

// Per-cycle localization of a property. Returns nullopt ("undefined") when
// any referenced cycle index falls outside [0, CYC_MAX]; undefinedness
// propagates through every operator.
std::optional<FormulaPtr> localize(const PropertyNode &prop, int cyc,
                                   size_t diagram_length,
                                   const SignalInventory &inv);

// phi_p: conjunction of localize(prop, cyc) over all defined cycles; `true`
// when defined nowhere. Throws StructureError if the property references a
// signal the diagram does not list.
FormulaPtr encode_property(const PropertyNode &prop, const TimingDiagram &td,
                           const SignalInventory &inv);

} // namespace svagen
