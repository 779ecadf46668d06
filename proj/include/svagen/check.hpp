#pragma once

#include "svagen/ast.hpp"
#include "svagen/diagram.hpp"
#include "svagen/inventory.hpp"
#include "svagen/solver.hpp"
#include "svagen/trace.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

// Satisfiability backend seam. Implementations must be safe to call from
// multiple workers concurrently.
class SatBackend {
public:
    virtual ~SatBackend() = default;
    virtual SolveResult solve(const Cnf &cnf) = 0;
};

class CdclBackend : public SatBackend {
public:
    SolveResult solve(const Cnf &cnf) override {
        return CdclSolver().solve(cnf);
    }
};

enum class Verdict { Holds, Violated, VacuousSkip };

// Pinned domain index of each (signal, constant-token) pair of one check;
// lets witnesses be re-evaluated against constants and explicit cells.
using ConstPins = std::map<std::pair<std::string, std::string>, uint64_t>;

ConstResolver resolver_from(const ConstPins &pins);

struct DiagramVerdict {
    Verdict verdict = Verdict::Holds;
    std::optional<Trace> witness; // word values are domain indices
    ConstPins pins;
};

struct CheckOutcome {
    size_t property_index = 0;
    Verdict verdict = Verdict::Holds;
    std::string first_violation; // diagram name, when Violated
    std::optional<Trace> witness;
    ConstPins pins;
};

struct CheckOptions {
    int jobs = 1;
    std::string dump_cnf_dir; // empty = no DIMACS dumps
};

// HOLDS iff phi_td /\ !phi_p is unsatisfiable; VIOLATED carries the model
// projected to a full completion of the diagram.
DiagramVerdict check_on_diagram(const PropertyNode &prop,
                                const TimingDiagram &td,
                                const SignalInventory &inv,
                                SatBackend &backend,
                                const std::string &dump_path = "");

struct FilterResult {
    std::vector<size_t> verified; // indices into the candidate list, ascending
    std::vector<CheckOutcome> outcomes;
};

// Keeps exactly the candidates that hold on every diagram; records the first
// violating diagram and its witness for each removed property.
FilterResult filter_candidates(const std::vector<PropertyNode> &candidates,
                               const std::vector<TimingDiagram> &diagrams,
                               const SignalInventory &inv,
                               SatBackend &backend,
                               const CheckOptions &opts = {});

// Indices of candidates that are NOT tautologies (do not hold on the all-X
// diagram of length temporal_depth + margin).
std::vector<size_t> remove_tautologies(
    const std::vector<PropertyNode> &candidates, const SignalInventory &inv,
    SatBackend &backend, int margin = 2, int jobs = 1);

// Indices of candidates whose antecedent is satisfiable at some cycle of
// some diagram; non-implication candidates are always kept.
std::vector<size_t> remove_vacuous(const std::vector<PropertyNode> &candidates,
                                   const std::vector<TimingDiagram> &diagrams,
                                   const SignalInventory &inv,
                                   SatBackend &backend, int jobs = 1);

} // namespace svagen
