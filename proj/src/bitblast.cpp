#include "svagen/bitblast.hpp"

#include "svagen/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace svagen {

namespace {

int ceil_log2(uint64_t m) {
    int bits = 0;
    while ((uint64_t(1) << bits) < m)
        ++bits;
    return std::max(bits, 1);
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    size_t find(size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(size_t a, size_t b) { parent[find(a)] = find(b); }
};

void visit_atoms(const FormulaPtr &f,
                 const std::function<void(const Formula &)> &fn) {
    if (f->op == Formula::Op::WordEq || f->op == Formula::Op::BitVar) {
        fn(*f);
        return;
    }
    for (const auto &a : f->args)
        visit_atoms(a, fn);
}

} // namespace

BitBlaster::BitBlaster(const TimingDiagram &td, const SignalInventory &inv,
                       const std::vector<FormulaPtr> &formulas)
    : td_(td), inv_(inv) {
    // Word signals listed by the diagram, in diagram order.
    std::vector<std::string> words;
    for (const auto &s : td.signals)
        if (const SignalDecl *d = inv.find(s.name); d && d->is_word)
            words.push_back(s.name);

    auto word_index = [&](const std::string &name) -> size_t {
        auto it = std::find(words.begin(), words.end(), name);
        if (it == words.end())
            throw StructureError("word '" + name +
                                 "' not listed by diagram '" + td.name + "'");
        return size_t(it - words.begin());
    };

    // Group word signals connected by cross-signal equalities; collect the
    // constants each group is compared against.
    UnionFind uf(words.size());
    for (const auto &f : formulas)
        visit_atoms(f, [&](const Formula &atom) {
            if (atom.op != Formula::Op::WordEq)
                return;
            if (atom.lhs.kind == WordTerm::Kind::Cycle &&
                atom.rhs.kind == WordTerm::Kind::Cycle)
                uf.merge(word_index(atom.lhs.signal),
                         word_index(atom.rhs.signal));
        });

    std::map<size_t, size_t> root_to_group;
    for (size_t i = 0; i < words.size(); ++i) {
        size_t root = uf.find(i);
        auto [it, inserted] = root_to_group.try_emplace(root, groups_.size());
        if (inserted)
            groups_.push_back({});
        groups_[it->second].signals.push_back(words[i]);
        signal_group_[words[i]] = it->second;
    }

    for (const auto &f : formulas)
        visit_atoms(f, [&](const Formula &atom) {
            if (atom.op != Formula::Op::WordEq)
                return;
            for (const WordTerm *t : {&atom.lhs, &atom.rhs}) {
                if (t->kind != WordTerm::Kind::Constant)
                    continue;
                const WordTerm &other =
                    t == &atom.lhs ? atom.rhs : atom.lhs;
                WordGroup &g = groups_[group_of(other.signal)];
                bool known = std::any_of(
                    g.constants.begin(), g.constants.end(),
                    [&](const WordTerm &c) { return c.same_constant(*t); });
                if (!known)
                    g.constants.push_back(*t);
            }
        });

    // Domain size: one value per term suffices for equality logic, and the
    // declared width caps how many distinct values exist at all.
    for (WordGroup &g : groups_) {
        uint64_t terms = uint64_t(td.length) * g.signals.size() +
                         g.constants.size();
        int min_width = 64;
        for (const auto &s : g.signals)
            min_width = std::min(min_width, inv.find(s)->width);
        uint64_t width_cap = min_width >= 63 ? UINT64_MAX
                                             : (uint64_t(1) << min_width);
        g.domain = std::min<uint64_t>(terms, width_cap);
        g.domain = std::max<uint64_t>(g.domain, g.constants.size());
        g.domain = std::max<uint64_t>(g.domain, 2);
        g.bits = ceil_log2(g.domain);
    }

    // Allocate every signal-cycle variable up front so that models always
    // decode to complete traces.
    for (const auto &s : td.signals) {
        const SignalDecl *d = inv.find(s.name);
        for (int cyc = 0; cyc < int(td.length); ++cyc) {
            if (d->is_word)
                term_bits(s.name, cyc);
            else
                bit_var(s.name, cyc);
        }
    }
}

size_t BitBlaster::group_of(const std::string &signal) const {
    auto it = signal_group_.find(signal);
    if (it == signal_group_.end())
        throw StructureError("word '" + signal + "' not listed by diagram '" +
                             td_.name + "'");
    return it->second;
}

int BitBlaster::fresh(const std::string &name) {
    int v = cnf_.new_var();
    var_names_.push_back(name);
    return v;
}

int BitBlaster::bit_var(const std::string &signal, int cycle) {
    auto key = std::make_pair(signal, cycle);
    auto it = bit_vars_.find(key);
    if (it != bit_vars_.end())
        return it->second;
    int v = fresh(signal + "[" + std::to_string(cycle) + "]");
    bit_vars_[key] = v;
    return v;
}

const std::vector<int> &BitBlaster::term_bits(const std::string &signal,
                                              int cycle) {
    auto key = std::make_pair(signal, cycle);
    auto it = word_vars_.find(key);
    if (it != word_vars_.end())
        return it->second;

    const WordGroup &g = groups_[group_of(signal)];
    std::vector<int> bits;
    for (int b = 0; b < g.bits; ++b)
        bits.push_back(fresh(signal + "[" + std::to_string(cycle) + "].b" +
                             std::to_string(b)));
    // forbid encodings outside the domain
    for (uint64_t v = g.domain; v < (uint64_t(1) << g.bits); ++v) {
        std::vector<int> clause;
        for (int b = 0; b < g.bits; ++b)
            clause.push_back((v >> b) & 1 ? -bits[size_t(b)]
                                          : bits[size_t(b)]);
        cnf_.add_clause(std::move(clause));
    }
    return word_vars_[key] = std::move(bits);
}

int BitBlaster::word_eq_lit(const FormulaPtr &f) {
    const WordTerm &l = f->lhs, &r = f->rhs;
    auto pinned = [&](const WordTerm &c, const std::string &sig) -> uint64_t {
        const WordGroup &g = groups_[group_of(sig)];
        for (size_t i = 0; i < g.constants.size(); ++i)
            if (g.constants[i].same_constant(c))
                return uint64_t(i);
        throw SolverError("unregistered constant '" + c.to_string() + "'");
    };

    if (l.kind == WordTerm::Kind::Cycle && r.kind == WordTerm::Kind::Cycle) {
        const auto lb = term_bits(l.signal, l.cycle);
        const auto rb = term_bits(r.signal, r.cycle);
        if (lb.size() != rb.size())
            throw SolverError("width mismatch in equality " +
                              formula_to_string(f));
        int g = fresh("eq");
        // g <-> AND_i (lb_i <-> rb_i)
        std::vector<int> long_clause{g};
        for (size_t i = 0; i < lb.size(); ++i) {
            cnf_.add_clause({-g, -lb[i], rb[i]});
            cnf_.add_clause({-g, lb[i], -rb[i]});
            int diff = fresh("neq.b" + std::to_string(i));
            cnf_.add_clause({-diff, lb[i], rb[i]});
            cnf_.add_clause({-diff, -lb[i], -rb[i]});
            cnf_.add_clause({diff, -lb[i], rb[i]});
            cnf_.add_clause({diff, lb[i], -rb[i]});
            long_clause.push_back(diff);
        }
        cnf_.add_clause(std::move(long_clause));
        return g;
    }

    const WordTerm &cyc = l.kind == WordTerm::Kind::Cycle ? l : r;
    const WordTerm &cst = l.kind == WordTerm::Kind::Cycle ? r : l;
    uint64_t value = pinned(cst, cyc.signal);
    const auto bits = term_bits(cyc.signal, cyc.cycle);
    int g = fresh("eqc");
    std::vector<int> long_clause{g};
    for (size_t i = 0; i < bits.size(); ++i) {
        int lit = (value >> i) & 1 ? bits[i] : -bits[i];
        cnf_.add_clause({-g, lit});
        long_clause.push_back(-lit);
    }
    cnf_.add_clause(std::move(long_clause));
    return g;
}

int BitBlaster::encode_node(const FormulaPtr &f) {
    switch (f->op) {
    case Formula::Op::True:
    case Formula::Op::False: {
        int v = fresh("const");
        cnf_.add_clause({f->op == Formula::Op::True ? v : -v});
        return v;
    }
    case Formula::Op::BitVar:
        return bit_var(f->signal, f->cycle);
    case Formula::Op::WordEq:
        return word_eq_lit(f);
    case Formula::Op::Not:
        return -encode_node(f->args[0]);
    case Formula::Op::And: {
        std::vector<int> lits;
        for (const auto &a : f->args)
            lits.push_back(encode_node(a));
        int g = fresh("and");
        std::vector<int> long_clause{g};
        for (int lit : lits) {
            cnf_.add_clause({-g, lit});
            long_clause.push_back(-lit);
        }
        cnf_.add_clause(std::move(long_clause));
        return g;
    }
    case Formula::Op::Or: {
        std::vector<int> lits;
        for (const auto &a : f->args)
            lits.push_back(encode_node(a));
        int g = fresh("or");
        std::vector<int> long_clause{-g};
        for (int lit : lits) {
            cnf_.add_clause({g, -lit});
            long_clause.push_back(lit);
        }
        cnf_.add_clause(std::move(long_clause));
        return g;
    }
    case Formula::Op::Implies: {
        int a = encode_node(f->args[0]);
        int b = encode_node(f->args[1]);
        int g = fresh("imp");
        cnf_.add_clause({-g, -a, b});
        cnf_.add_clause({g, a});
        cnf_.add_clause({g, -b});
        return g;
    }
    case Formula::Op::Iff: {
        int a = encode_node(f->args[0]);
        int b = encode_node(f->args[1]);
        int g = fresh("iff");
        cnf_.add_clause({-g, -a, b});
        cnf_.add_clause({-g, a, -b});
        cnf_.add_clause({g, a, b});
        cnf_.add_clause({g, -a, -b});
        return g;
    }
    }
    throw SolverError("unencodable formula node");
}

void BitBlaster::assert_formula(const FormulaPtr &f) {
    if (f->op == Formula::Op::True)
        return;
    if (f->op == Formula::Op::False) {
        cnf_.add_clause({});
        return;
    }
    cnf_.add_clause({encode_node(f)});
}

std::map<std::string, std::vector<uint64_t>> BitBlaster::decode(
    const std::vector<bool> &model) const {
    std::map<std::string, std::vector<uint64_t>> out;
    for (const auto &s : td_.signals) {
        const SignalDecl *d = inv_.find(s.name);
        std::vector<uint64_t> vals(td_.length, 0);
        for (int cyc = 0; cyc < int(td_.length); ++cyc) {
            if (d->is_word) {
                const auto &bits =
                    word_vars_.at(std::make_pair(s.name, cyc));
                uint64_t v = 0;
                for (size_t b = 0; b < bits.size(); ++b)
                    if (size_t(bits[b]) < model.size() && model[bits[b]])
                        v |= uint64_t(1) << b;
                vals[cyc] = v;
            } else {
                int var = bit_vars_.at(std::make_pair(s.name, cyc));
                vals[cyc] = size_t(var) < model.size() && model[var] ? 1 : 0;
            }
        }
        out[s.name] = std::move(vals);
    }
    return out;
}

std::optional<uint64_t> BitBlaster::constant_value(
    const std::string &signal, const WordTerm &constant) const {
    auto it = signal_group_.find(signal);
    if (it == signal_group_.end())
        return std::nullopt;
    const WordGroup &g = groups_[it->second];
    for (size_t i = 0; i < g.constants.size(); ++i)
        if (g.constants[i].same_constant(constant))
            return uint64_t(i);
    return std::nullopt;
}

} // namespace svagen
