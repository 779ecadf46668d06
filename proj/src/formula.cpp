#include "svagen/formula.hpp"

namespace svagen {

WordTerm WordTerm::at(std::string signal, int cycle) {
    WordTerm t;
    t.kind = Kind::Cycle;
    t.signal = std::move(signal);
    t.cycle = cycle;
    return t;
}

WordTerm WordTerm::constant(std::string token, std::optional<uint64_t> value) {
    WordTerm t;
    t.kind = Kind::Constant;
    t.token = std::move(token);
    t.value = value;
    return t;
}

bool WordTerm::same_constant(const WordTerm &other) const {
    if (value && other.value)
        return *value == *other.value;
    if (value || other.value)
        return false;
    return token == other.token;
}

std::string WordTerm::to_string() const {
    if (kind == Kind::Cycle)
        return signal + "[" + std::to_string(cycle) + "]";
    return token;
}

static FormulaPtr make(Formula f) {
    return std::make_shared<const Formula>(std::move(f));
}

FormulaPtr f_true() {
    static FormulaPtr t = make(Formula{Formula::Op::True});
    return t;
}

FormulaPtr f_false() {
    static FormulaPtr f = make(Formula{Formula::Op::False});
    return f;
}

FormulaPtr f_bit(std::string signal, int cycle) {
    Formula f;
    f.op = Formula::Op::BitVar;
    f.signal = std::move(signal);
    f.cycle = cycle;
    return make(std::move(f));
}

FormulaPtr f_word_eq(WordTerm lhs, WordTerm rhs) {
    if (lhs.kind == WordTerm::Kind::Constant &&
        rhs.kind == WordTerm::Kind::Constant)
        return lhs.same_constant(rhs) ? f_true() : f_false();
    Formula f;
    f.op = Formula::Op::WordEq;
    f.lhs = std::move(lhs);
    f.rhs = std::move(rhs);
    return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr a) {
    if (a->op == Formula::Op::True)
        return f_false();
    if (a->op == Formula::Op::False)
        return f_true();
    Formula f;
    f.op = Formula::Op::Not;
    f.args.push_back(std::move(a));
    return make(std::move(f));
}

FormulaPtr f_and(std::vector<FormulaPtr> args) {
    std::vector<FormulaPtr> kept;
    for (auto &a : args) {
        if (a->op == Formula::Op::False)
            return f_false();
        if (a->op != Formula::Op::True)
            kept.push_back(std::move(a));
    }
    if (kept.empty())
        return f_true();
    if (kept.size() == 1)
        return kept[0];
    Formula f;
    f.op = Formula::Op::And;
    f.args = std::move(kept);
    return make(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> args) {
    std::vector<FormulaPtr> kept;
    for (auto &a : args) {
        if (a->op == Formula::Op::True)
            return f_true();
        if (a->op != Formula::Op::False)
            kept.push_back(std::move(a));
    }
    if (kept.empty())
        return f_false();
    if (kept.size() == 1)
        return kept[0];
    Formula f;
    f.op = Formula::Op::Or;
    f.args = std::move(kept);
    return make(std::move(f));
}

FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    if (a->op == Formula::Op::False)
        return f_true();
    if (a->op == Formula::Op::True)
        return b;
    if (b->op == Formula::Op::True)
        return f_true();
    Formula f;
    f.op = Formula::Op::Implies;
    f.args.push_back(std::move(a));
    f.args.push_back(std::move(b));
    return make(std::move(f));
}

FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
    Formula f;
    f.op = Formula::Op::Iff;
    f.args.push_back(std::move(a));
    f.args.push_back(std::move(b));
    return make(std::move(f));
}

static void to_string_rec(const FormulaPtr &f, std::string &out) {
    switch (f->op) {
    case Formula::Op::True:
        out += "true";
        return;
    case Formula::Op::False:
        out += "false";
        return;
    case Formula::Op::BitVar:
        out += f->signal + "[" + std::to_string(f->cycle) + "]";
        return;
    case Formula::Op::WordEq:
        out += f->lhs.to_string() + " = " + f->rhs.to_string();
        return;
    case Formula::Op::Not:
        out += "!(";
        to_string_rec(f->args[0], out);
        out += ")";
        return;
    default:
        break;
    }
    const char *sep = f->op == Formula::Op::And       ? " & "
                      : f->op == Formula::Op::Or      ? " | "
                      : f->op == Formula::Op::Implies ? " -> "
                                                      : " <-> ";
    out += "(";
    for (size_t i = 0; i < f->args.size(); ++i) {
        if (i)
            out += sep;
        to_string_rec(f->args[i], out);
    }
    out += ")";
}

std::string formula_to_string(const FormulaPtr &f) {
    std::string out;
    to_string_rec(f, out);
    return out;
}

std::vector<FormulaPtr> conjuncts_of(const FormulaPtr &f) {
    if (f->op != Formula::Op::And)
        return {f};
    std::vector<FormulaPtr> out;
    for (const auto &a : f->args) {
        auto sub = conjuncts_of(a);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

} // namespace svagen
