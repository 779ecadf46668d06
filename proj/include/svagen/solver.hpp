#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace svagen {

// DIMACS-style CNF: variables 1..num_vars, literals +-v.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    int new_var() { return ++num_vars; }
    void add_clause(std::vector<int> lits) { clauses.push_back(std::move(lits)); }
    std::string to_dimacs(const std::vector<std::string> &var_names = {}) const;
};

struct SolveResult {
    bool sat = false;
    std::vector<bool> model; // index 1..num_vars when sat
};

// Conflict-driven clause learning with two-watched-literal propagation,
// first-UIP learning, VSIDS-style activities and geometric restarts. Sound
// and complete; sized for the small formulas this toolkit produces.
class CdclSolver {
public:
    SolveResult solve(const Cnf &cnf);
};

} // namespace svagen
