#pragma once

#include "svagen/diagram.hpp"
#include "svagen/formula.hpp"
#include "svagen/inventory.hpp"
#include "svagen/solver.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace svagen {

// Lowers atom-level formulas over one diagram's signals to CNF.
//
// 1-bit signals get one variable per cycle. Word signals are grouped by the
// equalities that connect them; each group gets a small domain of size
// min(|terms|, 2^width): distinct constants are pinned to distinct domain
// values and every cycle term gets ceil(log2 m) bits constrained below m.
// Equality over terms is bitwise equivalence, which is sound and complete
// for the equality-only fragment the encoders emit.
class BitBlaster {
public:
    BitBlaster(const TimingDiagram &td, const SignalInventory &inv,
               const std::vector<FormulaPtr> &formulas);

    // Tseitin-transforms `f` and asserts it (root forced true).
    void assert_formula(const FormulaPtr &f);

    const Cnf &cnf() const { return cnf_; }
    std::string to_dimacs() const { return cnf_.to_dimacs(var_names_); }

    // Decodes a model into per-(signal, cycle) values: bits are 0/1, word
    // values are domain indices. Indices of pinned constants are exposed via
    // constant_value().
    std::map<std::string, std::vector<uint64_t>> decode(
        const std::vector<bool> &model) const;

    // Domain index a constant token was pinned to, if it was seen.
    std::optional<uint64_t> constant_value(const std::string &signal,
                                           const WordTerm &constant) const;

private:
    struct WordGroup {
        std::vector<std::string> signals;
        std::vector<WordTerm> constants;
        uint64_t domain = 1;
        int bits = 1;
    };

    int bit_var(const std::string &signal, int cycle);
    const std::vector<int> &term_bits(const std::string &signal, int cycle);
    int encode_node(const FormulaPtr &f); // returns a literal
    int fresh(const std::string &name = "");
    int word_eq_lit(const FormulaPtr &f);
    size_t group_of(const std::string &signal) const;

    const TimingDiagram &td_;
    const SignalInventory &inv_;
    Cnf cnf_;
    std::vector<std::string> var_names_;
    std::map<std::pair<std::string, int>, int> bit_vars_;
    std::map<std::pair<std::string, int>, std::vector<int>> word_vars_;
    std::vector<WordGroup> groups_;
    std::map<std::string, size_t> signal_group_;
};

} // namespace svagen
