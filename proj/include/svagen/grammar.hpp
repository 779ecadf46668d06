#pragma once

#include "svagen/ast.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace svagen {

struct GrammarSymbol {
    enum class Type { Operator, Hole, NonTerminal } type;
    std::string text;           // operator token or nonterminal name
    HoleKind hole = HoleKind::Signal;
    std::string subtype;        // hole subtype tag, e.g. <signal:reset>
    int delay = 0;              // ##k operators
};

struct GrammarRule {
    std::string name;
    std::vector<std::vector<GrammarSymbol>> alternatives;
    int line = 0;
};

struct Grammar {
    std::vector<GrammarRule> rules;
    std::string top_rule;       // first rule in the file

    const GrammarRule *find(const std::string &name) const;
};

// Line-oriented BNF: `<name> ::= alt ( | alt )*`, `#` comments. Alternatives
// are whitespace-separated prefix token sequences; the leading operator's
// operands are the remaining symbols. Validates that every nonterminal is
// defined exactly once and that the rule graph is acyclic.
Grammar parse_grammar(const std::string &text);

struct TemplateInfo {
    PropertyNode ast;
    std::string derivation; // production choices, e.g. "implic:0 conj:1 delay:0"
};

// All sentences of the top rule, converted to template ASTs, canonicalized
// and deduplicated, in depth-first order over alternative indices. Throws
// CapExceededError when the (pre-dedup) language size exceeds `cap`.
std::vector<TemplateInfo> enumerate_templates(const Grammar &g,
                                              uint64_t cap = 1000000);

// Pre-dedup sentence count of the top rule.
uint64_t count_sentences(const Grammar &g);

} // namespace svagen
