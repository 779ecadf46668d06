#include "svagen/trace.hpp"

#include "svagen/errors.hpp"

namespace svagen {

uint64_t Trace::at(const std::string &signal, int cycle) const {
    auto it = values.find(signal);
    if (it == values.end())
        throw StructureError("trace has no signal '" + signal + "'");
    if (cycle < 0 || size_t(cycle) >= it->second.size())
        throw StructureError("trace cycle out of range for '" + signal + "'");
    return it->second[size_t(cycle)];
}

ConstResolver numeric_consts() {
    return [](const std::string &signal, const std::string &token,
              std::optional<uint64_t> numeric) -> uint64_t {
        if (!numeric)
            throw StructureError("named constant '" + token +
                                 "' of '" + signal +
                                 "' has no numeric value in this context");
        return *numeric;
    };
}

namespace {

std::optional<bool> eval_rec(const PropertyNode &node, int cyc,
                             const Trace &trace, const SignalInventory &inv,
                             const ConstResolver &resolve, int cyc_max) {
    switch (node.kind) {
    case NodeKind::Eq:
    case NodeKind::Neq: {
        const PropertyNode &l = node.children[0];
        const PropertyNode &r = node.children[1];
        uint64_t lv = trace.at(l.name, cyc);
        uint64_t rv;
        if (r.kind == NodeKind::LevelConst)
            rv = r.level == Level::High ? 1 : 0;
        else if (r.kind == NodeKind::WordConst)
            rv = resolve(l.name, r.name, r.word_value);
        else
            rv = trace.at(r.name, cyc);
        bool equal = lv == rv;
        return node.kind == NodeKind::Eq ? equal : !equal;
    }
    case NodeKind::And: {
        bool all = true;
        for (const auto &child : node.children) {
            auto v = eval_rec(child, cyc, trace, inv, resolve, cyc_max);
            if (!v)
                return std::nullopt;
            all = all && *v;
        }
        return all;
    }
    case NodeKind::Not: {
        auto v = eval_rec(node.children[0], cyc, trace, inv, resolve, cyc_max);
        if (!v)
            return std::nullopt;
        return !*v;
    }
    case NodeKind::Delay: {
        int target = cyc + node.delay;
        if (target > cyc_max)
            return std::nullopt;
        return eval_rec(node.children[0], target, trace, inv, resolve,
                        cyc_max);
    }
    case NodeKind::Stable:
        if (cyc == 0)
            return std::nullopt;
        return trace.at(node.children[0].name, cyc) ==
               trace.at(node.children[0].name, cyc - 1);
    case NodeKind::Rose:
        if (cyc == 0)
            return std::nullopt;
        return trace.at(node.children[0].name, cyc) == 1 &&
               trace.at(node.children[0].name, cyc - 1) == 0;
    case NodeKind::Fell:
        if (cyc == 0)
            return std::nullopt;
        return trace.at(node.children[0].name, cyc) == 0 &&
               trace.at(node.children[0].name, cyc - 1) == 1;
    case NodeKind::Implic: {
        auto a = eval_rec(node.children[0], cyc, trace, inv, resolve, cyc_max);
        auto c = eval_rec(node.children[1], cyc, trace, inv, resolve, cyc_max);
        if (!a || !c)
            return std::nullopt;
        return !*a || *c;
    }
    default:
        throw StructureError("cannot evaluate node " + node_key(node));
    }
}

} // namespace

std::optional<bool> eval_at(const PropertyNode &prop, int cyc,
                            const Trace &trace, const SignalInventory &inv,
                            const ConstResolver &resolve) {
    int cyc_max = int(trace.length()) - 1;
    if (cyc < 0 || cyc > cyc_max)
        throw StructureError("cycle index out of range");
    return eval_rec(prop, cyc, trace, inv, resolve, cyc_max);
}

bool eval_property(const PropertyNode &prop, const Trace &trace,
                   const SignalInventory &inv, const ConstResolver &resolve) {
    for (int cyc = 0; cyc < int(trace.length()); ++cyc) {
        auto v = eval_at(prop, cyc, trace, inv, resolve);
        if (v && !*v)
            return false;
    }
    return true;
}

bool trace_satisfies_diagram(const Trace &trace, const TimingDiagram &td,
                             const SignalInventory &inv,
                             const ConstResolver &resolve) {
    for (const auto &sig : td.signals) {
        std::map<std::string, uint64_t> label_values;
        for (size_t i = 0; i < sig.cells.size(); ++i) {
            const Cell &cell = sig.cells[i];
            uint64_t v = trace.at(sig.name, int(i));
            switch (cell.kind) {
            case Cell::Kind::Explicit: {
                const SignalDecl *d = inv.find(sig.name);
                uint64_t expected =
                    d && d->is_word
                        ? resolve(sig.name, std::to_string(cell.value),
                                  cell.value)
                        : cell.value;
                if (v != expected)
                    return false;
                break;
            }
            case Cell::Kind::Symbolic: {
                auto [it, inserted] = label_values.try_emplace(cell.label, v);
                if (!inserted && it->second != v)
                    return false;
                break;
            }
            case Cell::Kind::Unconstrained:
                break;
            }
        }
    }
    return true;
}

} // namespace svagen
