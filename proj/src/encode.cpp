#include "svagen/encode.hpp"

#include "svagen/errors.hpp"

#include <algorithm>
#include <set>

namespace svagen {

namespace {

FormulaPtr bit_equals(const std::string &signal, int cycle, bool value) {
    FormulaPtr v = f_bit(signal, cycle);
    return value ? v : f_not(v);
}

FormulaPtr cell_pin(const SignalDecl &decl, const std::string &signal,
                    int cycle, uint64_t value) {
    if (!decl.is_word)
        return bit_equals(signal, cycle, value != 0);
    return f_word_eq(WordTerm::at(signal, cycle),
                     WordTerm::constant(std::to_string(value), value));
}

FormulaPtr term_equal(const SignalDecl &decl, const std::string &signal,
                      int a, int b) {
    if (!decl.is_word)
        return f_iff(f_bit(signal, a), f_bit(signal, b));
    return f_word_eq(WordTerm::at(signal, a), WordTerm::at(signal, b));
}

WordTerm word_const_term(const PropertyNode &c) {
    return WordTerm::constant(c.name, c.word_value);
}

class Localizer {
public:
    Localizer(size_t length, const SignalInventory &inv)
        : cyc_max_(int(length) - 1), inv_(inv) {}

    std::optional<FormulaPtr> at(const PropertyNode &node, int cyc) const {
        if (cyc < 0 || cyc > cyc_max_)
            throw StructureError("cycle index out of range");
        return rec(node, cyc);
    }

private:
    std::optional<FormulaPtr> rec(const PropertyNode &node, int cyc) const {
        switch (node.kind) {
        case NodeKind::Eq:
        case NodeKind::Neq: {
            FormulaPtr atom = comparison(node, cyc);
            if (node.kind == NodeKind::Neq)
                atom = f_not(atom);
            return atom;
        }
        case NodeKind::And: {
            std::vector<FormulaPtr> parts;
            for (const auto &child : node.children) {
                auto sub = rec(child, cyc);
                if (!sub)
                    return std::nullopt;
                parts.push_back(*sub);
            }
            return f_and(std::move(parts));
        }
        case NodeKind::Not: {
            auto sub = rec(node.children[0], cyc);
            if (!sub)
                return std::nullopt;
            return f_not(*sub);
        }
        case NodeKind::Delay: {
            int target = cyc + node.delay;
            if (target > cyc_max_)
                return std::nullopt;
            return rec(node.children[0], target);
        }
        case NodeKind::Stable: {
            if (cyc == 0)
                return std::nullopt;
            const std::string &s = node.children[0].name;
            return term_equal(decl(s), s, cyc, cyc - 1);
        }
        case NodeKind::Rose: {
            if (cyc == 0)
                return std::nullopt;
            const std::string &s = node.children[0].name;
            return f_and({bit_equals(s, cyc, true), bit_equals(s, cyc - 1, false)});
        }
        case NodeKind::Fell: {
            if (cyc == 0)
                return std::nullopt;
            const std::string &s = node.children[0].name;
            return f_and({bit_equals(s, cyc, false), bit_equals(s, cyc - 1, true)});
        }
        case NodeKind::Implic: {
            auto ante = rec(node.children[0], cyc);
            auto cons = rec(node.children[1], cyc);
            if (!ante || !cons)
                return std::nullopt;
            return f_implies(*ante, *cons);
        }
        default:
            throw StructureError("cannot localize node " + node_key(node));
        }
    }

    FormulaPtr comparison(const PropertyNode &node, int cyc) const {
        const PropertyNode &l = node.children[0];
        const PropertyNode &r = node.children[1];
        const SignalDecl &ld = decl(l.name);
        if (r.kind == NodeKind::LevelConst)
            return bit_equals(l.name, cyc, r.level == Level::High);
        if (r.kind == NodeKind::WordConst) {
            if (!ld.is_word)
                return bit_equals(l.name, cyc,
                                  r.word_value && *r.word_value != 0);
            return f_word_eq(WordTerm::at(l.name, cyc), word_const_term(r));
        }
        // signal-to-signal comparison at the same cycle
        const SignalDecl &rd = decl(r.name);
        if (!ld.is_word && !rd.is_word)
            return f_iff(f_bit(l.name, cyc), f_bit(r.name, cyc));
        return f_word_eq(WordTerm::at(l.name, cyc), WordTerm::at(r.name, cyc));
    }

    const SignalDecl &decl(const std::string &name) const {
        const SignalDecl *d = inv_.find(name);
        if (!d)
            throw StructureError("undeclared signal '" + name + "'");
        return *d;
    }

    int cyc_max_;
    const SignalInventory &inv_;
};

} // namespace

FormulaPtr encode_diagram(const TimingDiagram &td, const SignalInventory &inv) {
    std::vector<FormulaPtr> parts;
    for (const auto &sig : td.signals) {
        const SignalDecl *decl = inv.find(sig.name);
        if (!decl)
            throw StructureError("undeclared signal '" + sig.name + "'");

        // first cycle of the first run seen for each label, for tying
        // non-adjacent runs of one label together
        std::vector<std::pair<std::string, int>> first_run;

        for (size_t i = 0; i < sig.cells.size(); ++i) {
            const Cell &cell = sig.cells[i];
            switch (cell.kind) {
            case Cell::Kind::Explicit:
                parts.push_back(cell_pin(*decl, sig.name, int(i), cell.value));
                break;
            case Cell::Kind::Symbolic: {
                bool run_start = i == 0 ||
                                 sig.cells[i - 1].kind != Cell::Kind::Symbolic ||
                                 sig.cells[i - 1].label != cell.label;
                if (!run_start) {
                    parts.push_back(
                        term_equal(*decl, sig.name, int(i) - 1, int(i)));
                    break;
                }
                auto it = std::find_if(first_run.begin(), first_run.end(),
                                       [&](const auto &p) {
                                           return p.first == cell.label;
                                       });
                if (it == first_run.end())
                    first_run.push_back({cell.label, int(i)});
                else // one label names one value across the whole vector
                    parts.push_back(
                        term_equal(*decl, sig.name, it->second, int(i)));
                break;
            }
            case Cell::Kind::Unconstrained:
                break;
            }
        }
    }
    return f_and(std::move(parts));
}

std::optional<FormulaPtr> localize(const PropertyNode &prop, int cyc,
                                   size_t diagram_length,
                                   const SignalInventory &inv) {
    return Localizer(diagram_length, inv).at(prop, cyc);
}

FormulaPtr encode_property(const PropertyNode &prop, const TimingDiagram &td,
                           const SignalInventory &inv) {
    std::set<std::string> used;
    collect_signals(prop, used);
    for (const auto &s : used)
        if (!td.find(s))
            throw StructureError("property references signal '" + s +
                                 "' absent from diagram '" + td.name + "'");

    Localizer loc(td.length, inv);
    std::vector<FormulaPtr> parts;
    for (int cyc = 0; cyc <= int(td.cyc_max()); ++cyc)
        if (auto f = loc.at(prop, cyc))
            parts.push_back(*f);
    return f_and(std::move(parts));
}

} // namespace svagen
