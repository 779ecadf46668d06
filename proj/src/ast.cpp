#include "svagen/ast.hpp"

#include "svagen/errors.hpp"
#include "svagen/inventory.hpp"

#include <algorithm>
#include <limits>

namespace svagen {

namespace {

int kind_rank(NodeKind k) { return static_cast<int>(k); }

bool word_const_equal(const PropertyNode &a, const PropertyNode &b) {
    if (a.word_value && b.word_value)
        return *a.word_value == *b.word_value;
    if (a.word_value || b.word_value)
        return false;
    return a.name == b.name;
}

const std::string *leftmost_signal(const PropertyNode &node) {
    if (node.kind == NodeKind::SigRef)
        return &node.name;
    for (const auto &child : node.children)
        if (const std::string *s = leftmost_signal(child))
            return s;
    return nullptr;
}

int cmp3(uint64_t a, uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare_structural(const PropertyNode &a, const PropertyNode &b,
                       const SignalOrder &order) {
    if (a.kind != b.kind)
        return kind_rank(a.kind) < kind_rank(b.kind) ? -1 : 1;
    switch (a.kind) {
    case NodeKind::SigRef:
        if (a.name != b.name) {
            auto ra = order.rank(a.name), rb = order.rank(b.name);
            if (ra != rb)
                return ra < rb ? -1 : 1;
            return a.name < b.name ? -1 : 1;
        }
        break;
    case NodeKind::LevelConst:
        if (a.level != b.level)
            return a.level == Level::High ? -1 : 1;
        break;
    case NodeKind::WordConst: {
        bool an = a.word_value.has_value(), bn = b.word_value.has_value();
        if (an != bn)
            return an ? -1 : 1; // numeric constants before symbolic ones
        if (an) {
            if (int c = cmp3(*a.word_value, *b.word_value))
                return c;
        } else if (a.name != b.name) {
            return a.name < b.name ? -1 : 1;
        }
        break;
    }
    case NodeKind::Delay:
        if (a.delay != b.delay)
            return a.delay < b.delay ? -1 : 1;
        break;
    case NodeKind::Hole:
        if (a.hole != b.hole)
            return static_cast<int>(a.hole) < static_cast<int>(b.hole) ? -1 : 1;
        if (a.name != b.name)
            return a.name < b.name ? -1 : 1;
        break;
    default:
        break;
    }
    if (a.children.size() != b.children.size())
        return a.children.size() < b.children.size() ? -1 : 1;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (int c = compare_structural(a.children[i], b.children[i], order))
            return c;
    return 0;
}

void expect_arity(const PropertyNode &node, size_t min, size_t max) {
    if (node.children.size() < min || node.children.size() > max)
        throw StructureError("malformed node (bad operand count): " +
                             node_key(node));
}

void check_shape(const PropertyNode &node) {
    switch (node.kind) {
    case NodeKind::SigRef:
    case NodeKind::LevelConst:
    case NodeKind::WordConst:
    case NodeKind::Hole:
        expect_arity(node, 0, 0);
        if (node.kind == NodeKind::SigRef && node.name.empty())
            throw StructureError("signal reference with empty name");
        break;
    case NodeKind::Eq:
    case NodeKind::Neq:
    case NodeKind::Implic:
        expect_arity(node, 2, 2);
        break;
    case NodeKind::And:
        expect_arity(node, 2, std::numeric_limits<size_t>::max());
        break;
    case NodeKind::Not:
    case NodeKind::Stable:
    case NodeKind::Rose:
    case NodeKind::Fell:
        expect_arity(node, 1, 1);
        break;
    case NodeKind::Delay:
        expect_arity(node, 1, 1);
        if (node.delay < 1)
            throw StructureError("delay count must be positive: " +
                                 node_key(node));
        break;
    }
}

Level flip(Level l) { return l == Level::High ? Level::Low : Level::High; }

int depth_from(const PropertyNode &node, int acc) {
    switch (node.kind) {
    case NodeKind::Delay:
        return depth_from(node.children[0], acc + node.delay);
    case NodeKind::Stable:
    case NodeKind::Rose:
    case NodeKind::Fell:
        return acc + 1;
    default: {
        int best = acc;
        for (const auto &child : node.children)
            best = std::max(best, depth_from(child, acc));
        return best;
    }
    }
}

} // namespace

bool PropertyNode::operator==(const PropertyNode &other) const {
    if (kind != other.kind)
        return false;
    switch (kind) {
    case NodeKind::SigRef:
        if (name != other.name)
            return false;
        break;
    case NodeKind::LevelConst:
        if (level != other.level)
            return false;
        break;
    case NodeKind::WordConst:
        if (!word_const_equal(*this, other))
            return false;
        break;
    case NodeKind::Delay:
        if (delay != other.delay)
            return false;
        break;
    case NodeKind::Hole:
        if (hole != other.hole || name != other.name)
            return false;
        break;
    default:
        break;
    }
    return children == other.children;
}

PropertyNode sig_ref(std::string name) {
    PropertyNode n;
    n.kind = NodeKind::SigRef;
    n.name = std::move(name);
    return n;
}

PropertyNode level_const(Level level) {
    PropertyNode n;
    n.kind = NodeKind::LevelConst;
    n.level = level;
    return n;
}

PropertyNode word_const(std::string token) {
    PropertyNode n;
    n.kind = NodeKind::WordConst;
    // Numeric tokens (decimal or 0x hex) compare by value.
    if (!token.empty()) {
        try {
            size_t pos = 0;
            uint64_t v = std::stoull(token, &pos, 0);
            if (pos == token.size())
                n.word_value = v;
        } catch (...) {
        }
    }
    n.name = std::move(token);
    return n;
}

static PropertyNode binary(NodeKind k, PropertyNode lhs, PropertyNode rhs) {
    PropertyNode n;
    n.kind = k;
    n.children.push_back(std::move(lhs));
    n.children.push_back(std::move(rhs));
    return n;
}

static PropertyNode unary(NodeKind k, PropertyNode operand) {
    PropertyNode n;
    n.kind = k;
    n.children.push_back(std::move(operand));
    return n;
}

PropertyNode eq(PropertyNode lhs, PropertyNode rhs) {
    return binary(NodeKind::Eq, std::move(lhs), std::move(rhs));
}
PropertyNode neq(PropertyNode lhs, PropertyNode rhs) {
    return binary(NodeKind::Neq, std::move(lhs), std::move(rhs));
}
PropertyNode conj(std::vector<PropertyNode> operands) {
    PropertyNode n;
    n.kind = NodeKind::And;
    n.children = std::move(operands);
    return n;
}
PropertyNode neg(PropertyNode operand) {
    return unary(NodeKind::Not, std::move(operand));
}
PropertyNode delay(int cycles, PropertyNode operand) {
    PropertyNode n = unary(NodeKind::Delay, std::move(operand));
    n.delay = cycles;
    return n;
}
PropertyNode stable(PropertyNode operand) {
    return unary(NodeKind::Stable, std::move(operand));
}
PropertyNode rose(PropertyNode operand) {
    return unary(NodeKind::Rose, std::move(operand));
}
PropertyNode fell(PropertyNode operand) {
    return unary(NodeKind::Fell, std::move(operand));
}
PropertyNode implic(PropertyNode antecedent, PropertyNode consequent) {
    return binary(NodeKind::Implic, std::move(antecedent), std::move(consequent));
}
PropertyNode hole(HoleKind kind, std::string subtype) {
    PropertyNode n;
    n.kind = NodeKind::Hole;
    n.hole = kind;
    n.name = std::move(subtype);
    return n;
}

SignalOrder::SignalOrder(const std::vector<std::string> &names) : names_(names) {}

SignalOrder::SignalOrder(const SignalInventory &inv) : names_(inv.names()) {}

std::pair<int, size_t> SignalOrder::rank(const std::string &name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return {0, i};
    return {1, 0};
}

bool SignalOrder::known(const std::string &name) const {
    return rank(name).first == 0;
}

int compare_nodes(const PropertyNode &a, const PropertyNode &b,
                  const SignalOrder &order) {
    // Declaration order of the leftmost signal dominates; signal-free
    // subtrees sort last.
    const std::string *sa = leftmost_signal(a);
    const std::string *sb = leftmost_signal(b);
    if (sa && sb && *sa != *sb) {
        auto ra = order.rank(*sa), rb = order.rank(*sb);
        if (ra != rb)
            return ra < rb ? -1 : 1;
        return *sa < *sb ? -1 : 1;
    }
    if (sa && !sb)
        return -1;
    if (!sa && sb)
        return 1;
    return compare_structural(a, b, order);
}

PropertyNode canonicalize(const PropertyNode &node, const SignalOrder &order) {
    check_shape(node);
    PropertyNode out = node;
    out.children.clear();
    for (const auto &child : node.children)
        out.children.push_back(canonicalize(child, order));

    switch (out.kind) {
    case NodeKind::And: {
        // Flatten nested conjunctions, then sort operands.
        std::vector<PropertyNode> flat;
        for (auto &child : out.children) {
            if (child.kind == NodeKind::And)
                for (auto &grand : child.children)
                    flat.push_back(std::move(grand));
            else
                flat.push_back(std::move(child));
        }
        std::stable_sort(flat.begin(), flat.end(),
                         [&](const PropertyNode &x, const PropertyNode &y) {
                             return compare_nodes(x, y, order) < 0;
                         });
        out.children = std::move(flat);
        break;
    }
    case NodeKind::Eq:
    case NodeKind::Neq: {
        auto is_ref = [](const PropertyNode &n) {
            return n.kind == NodeKind::SigRef || n.kind == NodeKind::Hole;
        };
        PropertyNode &l = out.children[0], &r = out.children[1];
        bool swap = false;
        if (!is_ref(l) && is_ref(r))
            swap = true;
        else if (is_ref(l) && is_ref(r) && compare_nodes(r, l, order) < 0)
            swap = true;
        if (swap)
            std::swap(l, r);
        // Level inequality is just the flipped equality.
        if (out.kind == NodeKind::Neq && r.kind == NodeKind::LevelConst) {
            out.kind = NodeKind::Eq;
            r.level = flip(r.level);
        }
        break;
    }
    case NodeKind::Not: {
        PropertyNode &c = out.children[0];
        if (c.kind == NodeKind::Not)
            return c.children[0];
        if (c.kind == NodeKind::Eq &&
            c.children[1].kind == NodeKind::LevelConst) {
            c.children[1].level = flip(c.children[1].level);
            return c;
        }
        break;
    }
    default:
        break;
    }
    return out;
}

int temporal_depth(const PropertyNode &node) { return depth_from(node, 0); }

bool is_ground(const PropertyNode &node) {
    if (node.kind == NodeKind::Hole)
        return false;
    for (const auto &child : node.children)
        if (!is_ground(child))
            return false;
    return true;
}

void collect_signals(const PropertyNode &node, std::set<std::string> &out) {
    if (node.kind == NodeKind::SigRef)
        out.insert(node.name);
    for (const auto &child : node.children)
        collect_signals(child, out);
}

namespace {

void validate_rec(const PropertyNode &node, const SignalInventory &inv,
                  bool is_root) {
    check_shape(node);
    if (node.kind == NodeKind::Implic && !is_root)
        throw StructureError("implication allowed only at the root: " +
                             node_key(node));
    if (node.kind == NodeKind::Hole)
        throw StructureError("property contains an unfilled hole: " +
                             node_key(node));
    if (node.kind == NodeKind::SigRef && !inv.has(node.name))
        throw StructureError("undeclared signal '" + node.name + "'");

    auto require_sig = [&](const PropertyNode &n, bool want_word,
                           const char *ctx) -> const SignalDecl * {
        if (n.kind != NodeKind::SigRef)
            throw StructureError(std::string(ctx) +
                                 " expects a signal operand: " + node_key(node));
        const SignalDecl *d = inv.find(n.name);
        if (!d)
            throw StructureError("undeclared signal '" + n.name + "'");
        if (d->is_word != want_word)
            throw StructureError(std::string(ctx) + ": '" + n.name +
                                 "' has the wrong base type in " +
                                 node_key(node));
        return d;
    };

    switch (node.kind) {
    case NodeKind::Eq:
    case NodeKind::Neq: {
        const PropertyNode &l = node.children[0];
        const PropertyNode &r = node.children[1];
        if (l.kind != NodeKind::SigRef)
            throw StructureError("comparison lhs must be a signal: " +
                                 node_key(node));
        const SignalDecl *d = inv.find(l.name);
        if (!d)
            throw StructureError("undeclared signal '" + l.name + "'");
        if (r.kind == NodeKind::LevelConst) {
            if (d->is_word)
                throw StructureError("word '" + l.name +
                                     "' compared to a level: " + node_key(node));
        } else if (r.kind == NodeKind::WordConst) {
            if (!d->is_word)
                throw StructureError("1-bit signal '" + l.name +
                                     "' compared to a word constant: " +
                                     node_key(node));
            if (r.word_value && d->width < 64 &&
                *r.word_value >= (uint64_t(1) << d->width))
                throw StructureError("constant '" + r.name +
                                     "' does not fit width of '" + l.name + "'");
        } else if (r.kind == NodeKind::SigRef) {
            const SignalDecl *rd = inv.find(r.name);
            if (!rd)
                throw StructureError("undeclared signal '" + r.name + "'");
            if (!d->is_word || !rd->is_word)
                throw StructureError(
                    "signal-to-signal comparison requires two words: " +
                    node_key(node));
            if (d->width != rd->width)
                throw StructureError("width mismatch comparing '" + l.name +
                                     "' and '" + r.name + "'");
        } else {
            throw StructureError("bad comparison rhs: " + node_key(node));
        }
        break;
    }
    case NodeKind::Stable:
        if (node.children[0].kind != NodeKind::SigRef)
            throw StructureError("$stable expects a signal operand: " +
                                 node_key(node));
        if (!inv.has(node.children[0].name))
            throw StructureError("undeclared signal '" +
                                 node.children[0].name + "'");
        break;
    case NodeKind::Rose:
        require_sig(node.children[0], false, "$rose");
        break;
    case NodeKind::Fell:
        require_sig(node.children[0], false, "$fell");
        break;
    default:
        break;
    }

    for (const auto &child : node.children)
        validate_rec(child, inv, false);
}

} // namespace

void validate_property(const PropertyNode &node, const SignalInventory &inv) {
    validate_rec(node, inv, true);
}

std::string node_key(const PropertyNode &node) {
    switch (node.kind) {
    case NodeKind::SigRef:
        return "(sig " + node.name + ")";
    case NodeKind::LevelConst:
        return node.level == Level::High ? "HIGH" : "LOW";
    case NodeKind::WordConst:
        return node.word_value ? "(const " + std::to_string(*node.word_value) + ")"
                               : "(const " + node.name + ")";
    case NodeKind::Hole: {
        static const char *names[] = {"signal", "word", "sw", "level", "value"};
        std::string k = std::string("<") + names[static_cast<int>(node.hole)];
        if (!node.name.empty())
            k += ":" + node.name;
        return k + ">";
    }
    default:
        break;
    }
    static const char *ops[] = {"sig",  "lvl",    "const", "eq",   "neq",
                                "and",  "not",    "delay", "stable", "rose",
                                "fell", "implic", "hole"};
    std::string out = "(" + std::string(ops[static_cast<int>(node.kind)]);
    if (node.kind == NodeKind::Delay)
        out += " " + std::to_string(node.delay);
    for (const auto &child : node.children)
        out += " " + node_key(child);
    return out + ")";
}

} // namespace svagen
