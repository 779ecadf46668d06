#include "svagen/render.hpp"

#include "svagen/errors.hpp"
#include "svagen/inventory.hpp"

#include <sstream>

namespace svagen {

namespace {

const char *hole_token(HoleKind k) {
    switch (k) {
    case HoleKind::Signal:
        return "signal";
    case HoleKind::Word:
        return "word";
    case HoleKind::SignalOrWord:
        return "sw";
    case HoleKind::Level:
        return "level";
    case HoleKind::Value:
        return "value";
    }
    return "?";
}

const char *hole_nl(HoleKind k) {
    switch (k) {
    case HoleKind::Signal:
        return "[signal]";
    case HoleKind::Word:
        return "[word]";
    case HoleKind::SignalOrWord:
        return "[signal/word]";
    case HoleKind::Level:
        return "[level]";
    case HoleKind::Value:
        return "[value]";
    }
    return "[?]";
}

std::string sva_operand(const PropertyNode &n, bool allow_holes);

bool is_level_eq(const PropertyNode &n) {
    return n.kind == NodeKind::Eq && n.children[1].kind == NodeKind::LevelConst;
}

std::string sva_expr(const PropertyNode &n, bool allow_holes) {
    switch (n.kind) {
    case NodeKind::SigRef:
        return n.name;
    case NodeKind::LevelConst:
        return n.level == Level::High ? "HIGH" : "LOW";
    case NodeKind::WordConst:
        return n.name;
    case NodeKind::Hole: {
        if (!allow_holes)
            throw StructureError("cannot render unfilled hole " + node_key(n));
        std::string t = std::string("<") + hole_token(n.hole);
        if (!n.name.empty())
            t += ":" + n.name;
        return t + ">";
    }
    case NodeKind::Eq: {
        const PropertyNode &l = n.children[0], &r = n.children[1];
        if (r.kind == NodeKind::LevelConst && l.kind == NodeKind::SigRef)
            return r.level == Level::High ? l.name : "!" + l.name;
        return sva_expr(l, allow_holes) + " == " + sva_expr(r, allow_holes);
    }
    case NodeKind::Neq:
        return sva_expr(n.children[0], allow_holes) + " != " +
               sva_expr(n.children[1], allow_holes);
    case NodeKind::And: {
        std::string out;
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                out += " && ";
            out += sva_operand(n.children[i], allow_holes);
        }
        return out;
    }
    case NodeKind::Not:
        if (is_level_eq(n.children[0]) || n.children[0].kind == NodeKind::SigRef)
            return "!" + sva_operand(n.children[0], allow_holes);
        return "!(" + sva_expr(n.children[0], allow_holes) + ")";
    case NodeKind::Delay:
        return "##" + std::to_string(n.delay) + " " +
               sva_operand(n.children[0], allow_holes);
    case NodeKind::Stable:
        return "$stable(" + sva_expr(n.children[0], allow_holes) + ")";
    case NodeKind::Rose:
        return "$rose(" + sva_expr(n.children[0], allow_holes) + ")";
    case NodeKind::Fell:
        return "$fell(" + sva_expr(n.children[0], allow_holes) + ")";
    case NodeKind::Implic: {
        const PropertyNode &cons = n.children[1];
        std::string rhs;
        switch (cons.kind) {
        case NodeKind::Delay:
        case NodeKind::Stable:
        case NodeKind::Rose:
        case NodeKind::Fell:
            rhs = sva_expr(cons, allow_holes);
            break;
        default:
            rhs = "(" + sva_expr(cons, allow_holes) + ")";
        }
        return "(" + sva_expr(n.children[0], allow_holes) + ") |-> " + rhs;
    }
    }
    throw StructureError("unrenderable node " + node_key(n));
}

std::string sva_operand(const PropertyNode &n, bool allow_holes) {
    switch (n.kind) {
    case NodeKind::And:
    case NodeKind::Delay:
    case NodeKind::Neq:
        return "(" + sva_expr(n, allow_holes) + ")";
    case NodeKind::Eq:
        if (!is_level_eq(n))
            return "(" + sva_expr(n, allow_holes) + ")";
        return sva_expr(n, allow_holes);
    default:
        return sva_expr(n, allow_holes);
    }
}

std::string nl_atom_name(const PropertyNode &n) {
    if (n.kind == NodeKind::Hole)
        return hole_nl(n.hole);
    return n.name;
}

std::string nl_phrase(const PropertyNode &n) {
    switch (n.kind) {
    case NodeKind::SigRef:
        return n.name;
    case NodeKind::LevelConst:
        return n.level == Level::High ? "HIGH" : "LOW";
    case NodeKind::WordConst:
        return n.name;
    case NodeKind::Hole:
        return hole_nl(n.hole);
    case NodeKind::Eq: {
        const PropertyNode &l = n.children[0], &r = n.children[1];
        if (r.kind == NodeKind::SigRef)
            return nl_atom_name(l) + " equals " + r.name;
        return nl_atom_name(l) + " is " + nl_phrase(r);
    }
    case NodeKind::Neq: {
        const PropertyNode &l = n.children[0], &r = n.children[1];
        if (r.kind == NodeKind::SigRef)
            return nl_atom_name(l) + " differs from " + r.name;
        return nl_atom_name(l) + " is not " + nl_phrase(r);
    }
    case NodeKind::And: {
        std::string out;
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                out += " and ";
            out += nl_phrase(n.children[i]);
        }
        return out;
    }
    case NodeKind::Not:
        return "it is not the case that " + nl_phrase(n.children[0]);
    case NodeKind::Delay: {
        std::string inner = nl_phrase(n.children[0]);
        if (n.delay == 1)
            return inner + " in the next cycle";
        return inner + " after " + std::to_string(n.delay) + " cycles";
    }
    case NodeKind::Stable:
        return nl_atom_name(n.children[0]) + " remains stable";
    case NodeKind::Rose:
        return nl_atom_name(n.children[0]) + " rises";
    case NodeKind::Fell:
        return nl_atom_name(n.children[0]) + " falls";
    case NodeKind::Implic:
        return "If " + nl_phrase(n.children[0]) + ", then " +
               nl_phrase(n.children[1]) + ".";
    }
    throw StructureError("unrenderable node " + node_key(n));
}

} // namespace

std::string render_sva(const PropertyNode &node,
                       std::optional<std::string> wrap_clock,
                       bool allow_holes) {
    std::string expr = sva_expr(node, allow_holes);
    if (!wrap_clock)
        return expr;
    return "assert property (@(posedge " + *wrap_clock + ") " + expr + ");";
}

std::string render_nl(const PropertyNode &node) { return nl_phrase(node); }

} // namespace svagen
