#include "svagen/instantiate.hpp"

#include "svagen/errors.hpp"
#include "svagen/render.hpp"

#include <functional>
#include <set>

namespace svagen {

namespace {

class Filler {
public:
    explicit Filler(const SignalInventory &inv) : inv_(inv) {}

    std::vector<PropertyNode> expand(const PropertyNode &node) {
        switch (node.kind) {
        case NodeKind::Hole:
            return fill_hole(node);
        case NodeKind::Eq:
        case NodeKind::Neq:
            return expand_comparison(node);
        case NodeKind::And:
            return expand_and(node);
        case NodeKind::Rose:
        case NodeKind::Fell: {
            std::vector<PropertyNode> out;
            for (auto &op : expand(node.children[0])) {
                const SignalDecl *d = op.kind == NodeKind::SigRef
                                          ? inv_.find(op.name)
                                          : nullptr;
                if (!d || d->is_word)
                    continue; // edge operators apply to 1-bit signals only
                PropertyNode n = node;
                n.children[0] = std::move(op);
                out.push_back(std::move(n));
            }
            return out;
        }
        default: {
            std::vector<std::vector<PropertyNode>> sets;
            for (const auto &child : node.children)
                sets.push_back(expand(child));
            return product(node, sets, nullptr);
        }
        }
    }

private:
    std::vector<PropertyNode> fill_hole(const PropertyNode &h) {
        std::vector<PropertyNode> out;
        auto add_signals = [&](bool words) {
            for (const auto &d : inv_.entries) {
                if (d.is_word != words)
                    continue;
                if (!h.name.empty() && d.subtype != h.name)
                    continue;
                out.push_back(sig_ref(d.name));
            }
        };
        switch (h.hole) {
        case HoleKind::Signal:
            add_signals(false);
            break;
        case HoleKind::Word:
            add_signals(true);
            break;
        case HoleKind::SignalOrWord:
            add_signals(false);
            add_signals(true);
            break;
        case HoleKind::Level:
            out.push_back(level_const(Level::High));
            out.push_back(level_const(Level::Low));
            break;
        case HoleKind::Value:
            // Only meaningful next to a word; handled in expand_comparison.
            break;
        }
        return out;
    }

    enum class Shape { Bit, Word, Lvl, Const, Other };

    Shape shape_of(const PropertyNode &n) const {
        switch (n.kind) {
        case NodeKind::SigRef: {
            const SignalDecl *d = inv_.find(n.name);
            if (!d)
                return Shape::Other;
            return d->is_word ? Shape::Word : Shape::Bit;
        }
        case NodeKind::LevelConst:
            return Shape::Lvl;
        case NodeKind::WordConst:
            return Shape::Const;
        default:
            return Shape::Other;
        }
    }

    bool compatible(const PropertyNode &l, const PropertyNode &r) const {
        Shape a = shape_of(l), b = shape_of(r);
        if (a == Shape::Bit && b == Shape::Lvl)
            return true;
        if (a == Shape::Lvl && b == Shape::Bit)
            return true;
        if (a == Shape::Word && b == Shape::Const)
            return fits(r, l);
        if (a == Shape::Const && b == Shape::Word)
            return fits(l, r);
        if (a == Shape::Word && b == Shape::Word) {
            const SignalDecl *dl = inv_.find(l.name);
            const SignalDecl *dr = inv_.find(r.name);
            return l.name != r.name && dl->width == dr->width;
        }
        return false;
    }

    bool fits(const PropertyNode &cst, const PropertyNode &word) const {
        const SignalDecl *d = inv_.find(word.name);
        if (!d)
            return false;
        if (cst.word_value && d->width < 64 &&
            *cst.word_value >= (uint64_t(1) << d->width))
            return false;
        return true;
    }

    std::vector<PropertyNode> expand_comparison(const PropertyNode &node) {
        std::vector<PropertyNode> out;
        auto lhs_opts = expand(node.children[0]);
        const PropertyNode &rhs_tpl = node.children[1];
        for (auto &l : lhs_opts) {
            std::vector<PropertyNode> rhs_opts;
            if (rhs_tpl.kind == NodeKind::Hole &&
                rhs_tpl.hole == HoleKind::Value) {
                // Value holes fill against the constants declared for the
                // word they are compared to.
                if (l.kind == NodeKind::SigRef) {
                    if (const SignalDecl *d = inv_.find(l.name);
                        d && d->is_word)
                        for (const auto &c : d->constants)
                            rhs_opts.push_back(word_const(c.token));
                }
            } else {
                rhs_opts = expand(rhs_tpl);
            }
            for (auto &r : rhs_opts) {
                if (!compatible(l, r))
                    continue;
                PropertyNode n = node;
                n.children[0] = l;
                n.children[1] = r;
                out.push_back(std::move(n));
            }
        }
        return out;
    }

    std::vector<PropertyNode> expand_and(const PropertyNode &node) {
        std::vector<std::vector<PropertyNode>> sets;
        for (const auto &child : node.children)
            sets.push_back(expand(child));
        return product(node, sets, [this](const std::vector<PropertyNode> &ops) {
            // Operands of one conjunction must not reuse a signal.
            std::set<std::string> seen;
            for (const auto &op : ops) {
                std::set<std::string> sigs;
                collect_signals(op, sigs);
                for (const auto &s : sigs)
                    if (!seen.insert(s).second)
                        return false;
            }
            return true;
        });
    }

    std::vector<PropertyNode> product(
        const PropertyNode &shell,
        const std::vector<std::vector<PropertyNode>> &sets,
        const std::function<bool(const std::vector<PropertyNode> &)> &accept) {
        std::vector<std::vector<PropertyNode>> acc = {{}};
        for (const auto &set : sets) {
            std::vector<std::vector<PropertyNode>> next;
            next.reserve(acc.size() * set.size());
            for (const auto &prefix : acc)
                for (const auto &opt : set) {
                    auto ops = prefix;
                    ops.push_back(opt);
                    next.push_back(std::move(ops));
                }
            acc = std::move(next);
        }
        std::vector<PropertyNode> out;
        for (auto &ops : acc) {
            if (accept && !accept(ops))
                continue;
            PropertyNode n = shell;
            n.children = std::move(ops);
            out.push_back(std::move(n));
        }
        return out;
    }

    const SignalInventory &inv_;
};

} // namespace

std::vector<Candidate> generate_candidates(
    const std::vector<TemplateInfo> &templates, const SignalInventory &inv,
    std::vector<std::string> *warnings) {
    if (inv.entries.empty())
        throw ConfigError("signal inventory is empty");

    SignalOrder order(inv);
    Filler filler(inv);
    std::vector<Candidate> out;
    std::set<std::string> seen;
    for (size_t ti = 0; ti < templates.size(); ++ti) {
        auto expanded = filler.expand(templates[ti].ast);
        size_t added = 0;
        for (auto &node : expanded) {
            PropertyNode canon = canonicalize(node, order);
            validate_property(canon, inv);
            if (seen.insert(node_key(canon)).second) {
                out.push_back({std::move(canon), ti});
                ++added;
            }
        }
        if (expanded.empty() && warnings)
            warnings->push_back("template " + std::to_string(ti) + " (" +
                                render_nl(templates[ti].ast) +
                                ") has no compatible fillers");
        (void)added;
    }
    return out;
}

} // namespace svagen
