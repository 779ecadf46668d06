#include "svagen/grammar.hpp"

#include "svagen/errors.hpp"

#include <map>
#include <set>
#include <sstream>

namespace svagen {

namespace {

struct RawToken {
    std::string text;
    int column;
};

std::vector<RawToken> tokenize_line(const std::string &line) {
    std::vector<RawToken> out;
    size_t i = 0;
    while (i < line.size()) {
        if (isspace((unsigned char)line[i])) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i < line.size() && !isspace((unsigned char)line[i]))
            ++i;
        out.push_back({line.substr(start, i - start), int(start) + 1});
    }
    return out;
}

bool hole_kind_for(const std::string &name, HoleKind &out) {
    if (name == "signal")
        out = HoleKind::Signal;
    else if (name == "word")
        out = HoleKind::Word;
    else if (name == "sw")
        out = HoleKind::SignalOrWord;
    else if (name == "level")
        out = HoleKind::Level;
    else if (name == "value")
        out = HoleKind::Value;
    else
        return false;
    return true;
}

GrammarSymbol classify(const RawToken &tok, int line) {
    GrammarSymbol sym;
    const std::string &t = tok.text;
    if (t.size() >= 3 && t.front() == '<' && t.back() == '>') {
        std::string inner = t.substr(1, t.size() - 2);
        std::string tag;
        if (size_t colon = inner.find(':'); colon != std::string::npos) {
            tag = inner.substr(colon + 1);
            inner = inner.substr(0, colon);
        }
        HoleKind hk;
        if (hole_kind_for(inner, hk)) {
            sym.type = GrammarSymbol::Type::Hole;
            sym.hole = hk;
            sym.subtype = tag;
            sym.text = inner;
            return sym;
        }
        if (!tag.empty())
            throw GrammarError("subtype tag on nonterminal '" + t + "'", line,
                               tok.column);
        sym.type = GrammarSymbol::Type::NonTerminal;
        sym.text = inner;
        return sym;
    }
    static const std::set<std::string> plain = {
        "|->", "&&", "!", "==", "!=", "$stable", "$rose", "$fell",
        "HIGH", "LOW"};
    if (plain.count(t)) {
        sym.type = GrammarSymbol::Type::Operator;
        sym.text = t;
        return sym;
    }
    if (t.size() == 3 && t[0] == '#' && t[1] == '#' && t[2] >= '1' &&
        t[2] <= '9') {
        sym.type = GrammarSymbol::Type::Operator;
        sym.text = "##";
        sym.delay = t[2] - '0';
        return sym;
    }
    throw GrammarError("unknown operator token '" + t + "'", line, tok.column);
}

// Expected operand counts; -1 means "two or more".
int operator_arity(const GrammarSymbol &op) {
    if (op.text == "|->" || op.text == "==" || op.text == "!=")
        return 2;
    if (op.text == "&&")
        return -1;
    if (op.text == "!" || op.text == "##" || op.text == "$stable" ||
        op.text == "$rose" || op.text == "$fell")
        return 1;
    return 0; // HIGH / LOW
}

void check_alternative(const std::vector<GrammarSymbol> &alt, int line) {
    if (alt.empty())
        throw GrammarError("empty alternative", line);
    const GrammarSymbol &head = alt[0];
    if (head.type != GrammarSymbol::Type::Operator) {
        if (alt.size() != 1)
            throw GrammarError(
                "alternative must start with an operator or be a single symbol",
                line);
        return;
    }
    int arity = operator_arity(head);
    int operands = int(alt.size()) - 1;
    if (arity == 0 && operands != 0)
        throw GrammarError("'" + head.text + "' takes no operands", line);
    if (arity > 0 && operands != arity)
        throw GrammarError("'" + head.text + "' expects " +
                               std::to_string(arity) + " operand(s), got " +
                               std::to_string(operands),
                           line);
    if (arity == -1 && operands < 2)
        throw GrammarError("'&&' expects at least 2 operands", line);
    for (size_t i = 1; i < alt.size(); ++i) {
        const GrammarSymbol &s = alt[i];
        if (s.type == GrammarSymbol::Type::Operator && s.text != "HIGH" &&
            s.text != "LOW")
            throw GrammarError("operator '" + s.text +
                                   "' in operand position; use a nonterminal",
                               line);
    }
}

void check_cycles(const Grammar &g) {
    enum State { Unseen, Active, Done };
    std::map<std::string, State> state;
    // Iterative DFS with an explicit stack to report the offending rule.
    std::vector<std::pair<std::string, size_t>> stack;
    for (const auto &rule : g.rules) {
        if (state[rule.name] == Done)
            continue;
        stack.push_back({rule.name, 0});
        state[rule.name] = Active;
        while (!stack.empty()) {
            auto &[name, idx] = stack.back();
            const GrammarRule *r = g.find(name);
            std::vector<std::string> refs;
            for (const auto &alt : r->alternatives)
                for (const auto &sym : alt)
                    if (sym.type == GrammarSymbol::Type::NonTerminal)
                        refs.push_back(sym.text);
            if (idx >= refs.size()) {
                state[name] = Done;
                stack.pop_back();
                continue;
            }
            std::string next = refs[idx++];
            if (state[next] == Active)
                throw GrammarError("recursive rule cycle through <" + next +
                                       ">",
                                   g.find(next)->line);
            if (state[next] == Unseen) {
                state[next] = Active;
                stack.push_back({next, 0});
            }
        }
    }
}

struct Expansion {
    PropertyNode node;
    std::string derivation;
};

class Expander {
public:
    explicit Expander(const Grammar &g) : g_(g) {}

    const std::vector<Expansion> &expand_rule(const std::string &name) {
        auto it = memo_.find(name);
        if (it != memo_.end())
            return it->second;
        const GrammarRule *rule = g_.find(name);
        std::vector<Expansion> out;
        for (size_t ai = 0; ai < rule->alternatives.size(); ++ai) {
            std::string step = name + ":" + std::to_string(ai);
            for (auto &e : expand_alt(rule->alternatives[ai])) {
                std::string d = step;
                if (!e.derivation.empty())
                    d += " " + e.derivation;
                out.push_back({std::move(e.node), std::move(d)});
            }
        }
        return memo_[name] = std::move(out);
    }

private:
    std::vector<Expansion> expand_symbol(const GrammarSymbol &sym) {
        switch (sym.type) {
        case GrammarSymbol::Type::NonTerminal:
            return expand_rule(sym.text);
        case GrammarSymbol::Type::Hole:
            return {{hole(sym.hole, sym.subtype), ""}};
        case GrammarSymbol::Type::Operator:
            // Only HIGH/LOW reach operand position.
            return {{level_const(sym.text == "HIGH" ? Level::High : Level::Low),
                     ""}};
        }
        return {};
    }

    std::vector<Expansion> expand_alt(const std::vector<GrammarSymbol> &alt) {
        const GrammarSymbol &head = alt[0];
        if (head.type != GrammarSymbol::Type::Operator)
            return expand_symbol(head);
        if (operator_arity(head) == 0)
            return {{level_const(head.text == "HIGH" ? Level::High
                                                     : Level::Low),
                     ""}};

        // Cartesian product over operand expansions, left to right.
        std::vector<std::pair<std::vector<PropertyNode>, std::string>> acc = {
            {{}, ""}};
        for (size_t i = 1; i < alt.size(); ++i) {
            auto options = expand_symbol(alt[i]);
            std::vector<std::pair<std::vector<PropertyNode>, std::string>> next;
            next.reserve(acc.size() * options.size());
            for (const auto &prefix : acc)
                for (const auto &opt : options) {
                    auto ops = prefix.first;
                    ops.push_back(opt.node);
                    std::string d = prefix.second;
                    if (!opt.derivation.empty())
                        d += (d.empty() ? "" : " ") + opt.derivation;
                    next.push_back({std::move(ops), std::move(d)});
                }
            acc = std::move(next);
        }

        std::vector<Expansion> out;
        out.reserve(acc.size());
        for (auto &[ops, deriv] : acc)
            out.push_back({build(head, std::move(ops)), std::move(deriv)});
        return out;
    }

    static PropertyNode build(const GrammarSymbol &op,
                              std::vector<PropertyNode> ops) {
        if (op.text == "|->")
            return implic(std::move(ops[0]), std::move(ops[1]));
        if (op.text == "&&")
            return conj(std::move(ops));
        if (op.text == "!")
            return neg(std::move(ops[0]));
        if (op.text == "==")
            return eq(std::move(ops[0]), std::move(ops[1]));
        if (op.text == "!=")
            return neq(std::move(ops[0]), std::move(ops[1]));
        if (op.text == "##")
            return delay(op.delay, std::move(ops[0]));
        if (op.text == "$stable")
            return stable(std::move(ops[0]));
        if (op.text == "$rose")
            return rose(std::move(ops[0]));
        return fell(std::move(ops[0]));
    }

    const Grammar &g_;
    std::map<std::string, std::vector<Expansion>> memo_;
};

uint64_t count_rule(const Grammar &g, const std::string &name,
                    std::map<std::string, uint64_t> &memo) {
    auto it = memo.find(name);
    if (it != memo.end())
        return it->second;
    const GrammarRule *rule = g.find(name);
    uint64_t total = 0;
    for (const auto &alt : rule->alternatives) {
        uint64_t prod = 1;
        for (const auto &sym : alt)
            if (sym.type == GrammarSymbol::Type::NonTerminal) {
                uint64_t c = count_rule(g, sym.text, memo);
                if (c != 0 && prod > UINT64_MAX / c)
                    throw CapExceededError(UINT64_MAX, UINT64_MAX);
                prod *= c;
            }
        if (total > UINT64_MAX - prod)
            throw CapExceededError(UINT64_MAX, UINT64_MAX);
        total += prod;
    }
    return memo[name] = total;
}

} // namespace

const GrammarRule *Grammar::find(const std::string &name) const {
    for (const auto &r : rules)
        if (r.name == name)
            return &r;
    return nullptr;
}

Grammar parse_grammar(const std::string &text) {
    Grammar g;
    std::stringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = raw;
        // '#' starts a comment, except inside '##k' delay tokens
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] != '#')
                continue;
            if (i + 1 < line.size() && line[i + 1] == '#') {
                ++i;
                continue;
            }
            line = line.substr(0, i);
            break;
        }
        auto tokens = tokenize_line(line);
        if (tokens.empty())
            continue;

        if (tokens.size() < 3 || tokens[1].text != "::=")
            throw GrammarError("expected '<name> ::= ...'", lineno,
                               tokens[0].column);
        const std::string &head = tokens[0].text;
        if (head.size() < 3 || head.front() != '<' || head.back() != '>')
            throw GrammarError("rule name must be '<name>'", lineno,
                               tokens[0].column);
        GrammarRule rule;
        rule.name = head.substr(1, head.size() - 2);
        rule.line = lineno;
        HoleKind hk;
        if (hole_kind_for(rule.name, hk))
            throw GrammarError("'" + head + "' is a reserved hole token",
                               lineno, tokens[0].column);
        if (g.find(rule.name))
            throw GrammarError("duplicate rule <" + rule.name + ">", lineno,
                               tokens[0].column);

        std::vector<GrammarSymbol> current;
        for (size_t i = 2; i < tokens.size(); ++i) {
            if (tokens[i].text == "|") {
                check_alternative(current, lineno);
                rule.alternatives.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(classify(tokens[i], lineno));
            }
        }
        check_alternative(current, lineno);
        rule.alternatives.push_back(std::move(current));
        g.rules.push_back(std::move(rule));
    }
    if (g.rules.empty())
        throw GrammarError("grammar has no rules", lineno);
    g.top_rule = g.rules[0].name;

    for (const auto &rule : g.rules)
        for (const auto &alt : rule.alternatives)
            for (const auto &sym : alt)
                if (sym.type == GrammarSymbol::Type::NonTerminal &&
                    !g.find(sym.text))
                    throw GrammarError("undefined nonterminal <" + sym.text +
                                           ">",
                                       rule.line);
    check_cycles(g);
    return g;
}

uint64_t count_sentences(const Grammar &g) {
    std::map<std::string, uint64_t> memo;
    return count_rule(g, g.top_rule, memo);
}

std::vector<TemplateInfo> enumerate_templates(const Grammar &g, uint64_t cap) {
    uint64_t count = count_sentences(g);
    if (count > cap)
        throw CapExceededError(count, cap);

    Expander expander(g);
    std::vector<TemplateInfo> out;
    std::set<std::string> seen;
    for (const auto &e : expander.expand_rule(g.top_rule)) {
        PropertyNode canon = canonicalize(e.node);
        std::string key = node_key(canon);
        if (seen.insert(key).second)
            out.push_back({std::move(canon), e.derivation});
    }
    return out;
}

} // namespace svagen
