#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

// A word-valued term: a signal at a cycle, or a constant. Constants compare
// by numeric value when they have one, otherwise by token.
struct WordTerm {
    enum class Kind { Cycle, Constant } kind = Kind::Cycle;
    std::string signal;
    int cycle = 0;
    std::string token;
    std::optional<uint64_t> value;

    static WordTerm at(std::string signal, int cycle);
    static WordTerm constant(std::string token, std::optional<uint64_t> value);

    bool same_constant(const WordTerm &other) const;
    std::string to_string() const;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Propositional structure over signal-cycle bits and word-term equalities.
struct Formula {
    enum class Op { True, False, BitVar, WordEq, Not, And, Or, Implies, Iff };

    Op op = Op::True;
    std::string signal; // BitVar
    int cycle = 0;      // BitVar
    WordTerm lhs, rhs;  // WordEq
    std::vector<FormulaPtr> args;
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_bit(std::string signal, int cycle);
FormulaPtr f_word_eq(WordTerm lhs, WordTerm rhs);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> args); // empty -> true
FormulaPtr f_or(std::vector<FormulaPtr> args);  // empty -> false
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);

std::string formula_to_string(const FormulaPtr &f);

// Top-level conjuncts (flattening nested And), for conjunct-level inspection.
std::vector<FormulaPtr> conjuncts_of(const FormulaPtr &f);

} // namespace svagen
