#include "svagen/solver.hpp"

#include "svagen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace svagen {

std::string Cnf::to_dimacs(const std::vector<std::string> &var_names) const {
    std::ostringstream out;
    for (size_t v = 0; v < var_names.size() && int(v) < num_vars; ++v)
        if (!var_names[v].empty())
            out << "c var " << (v + 1) << " = " << var_names[v] << "\n";
    out << "p cnf " << num_vars << " " << clauses.size() << "\n";
    for (const auto &clause : clauses) {
        for (int lit : clause)
            out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

namespace {

// Literal encoding: var v (0-based) -> positive 2v, negative 2v+1.
inline int mk_lit(int var, bool neg) { return 2 * var + (neg ? 1 : 0); }
inline int lit_var(int lit) { return lit >> 1; }
inline bool lit_neg(int lit) { return lit & 1; }
inline int lit_flip(int lit) { return lit ^ 1; }

enum : int8_t { kUndef = 0, kTrue = 1, kFalse = -1 };

struct Clause {
    std::vector<int> lits;
    bool learnt = false;
};

class Engine {
public:
    explicit Engine(int num_vars) : nvars_(num_vars) {
        assigns_.assign(nvars_, kUndef);
        level_.assign(nvars_, 0);
        reason_.assign(nvars_, -1);
        activity_.assign(nvars_, 0.0);
        phase_.assign(nvars_, false);
        seen_.assign(nvars_, false);
        watches_.assign(2 * size_t(nvars_), {});
    }

    bool add_clause(std::vector<int> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (size_t i = 0; i + 1 < lits.size(); ++i)
            if (lits[i] == lit_flip(lits[i + 1]))
                return true; // tautological clause
        // drop level-0 false literals, detect satisfied clauses
        std::vector<int> kept;
        for (int lit : lits) {
            int8_t v = value(lit);
            if (v == kTrue)
                return true;
            if (v != kFalse)
                kept.push_back(lit);
        }
        if (kept.empty())
            return false; // conflict at level 0
        if (kept.size() == 1)
            return enqueue(kept[0], -1) && propagate() == -1;
        attach(std::move(kept), false);
        return true;
    }

    bool solve() {
        double restart_limit = 64;
        int64_t conflicts_total = 0;
        for (;;) {
            int confl = propagate();
            if (confl != -1) {
                ++conflicts_total;
                if (decision_level() == 0)
                    return false;
                std::vector<int> learnt;
                int back_level = 0;
                analyze(confl, learnt, back_level);
                backtrack(back_level);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], -1);
                } else {
                    int ci = attach(std::move(learnt), true);
                    enqueue(clauses_[ci].lits[0], ci);
                }
                decay_activities();
                if (double(conflicts_total) > restart_limit) {
                    restart_limit *= 1.5;
                    backtrack(0);
                }
            } else {
                int next = pick_branch();
                if (next == -1)
                    return true; // all variables assigned
                trail_lim_.push_back(int(trail_.size()));
                enqueue(mk_lit(next, !phase_[next]), -1);
            }
        }
    }

    std::vector<bool> model() const {
        std::vector<bool> m(size_t(nvars_) + 1, false);
        for (int v = 0; v < nvars_; ++v)
            m[size_t(v) + 1] = assigns_[v] == kTrue;
        return m;
    }

private:
    struct Watch {
        int clause;
        int blocker;
    };

    int8_t value(int lit) const {
        int8_t a = assigns_[lit_var(lit)];
        if (a == kUndef)
            return kUndef;
        return lit_neg(lit) ? int8_t(-a) : a;
    }

    int decision_level() const { return int(trail_lim_.size()); }

    int attach(std::vector<int> lits, bool learnt) {
        int ci = int(clauses_.size());
        clauses_.push_back({std::move(lits), learnt});
        auto &c = clauses_[ci].lits;
        watches_[lit_flip(c[0])].push_back({ci, c[1]});
        watches_[lit_flip(c[1])].push_back({ci, c[0]});
        return ci;
    }

    bool enqueue(int lit, int reason) {
        int v = lit_var(lit);
        if (assigns_[v] != kUndef)
            return value(lit) == kTrue;
        assigns_[v] = lit_neg(lit) ? kFalse : kTrue;
        phase_[v] = !lit_neg(lit);
        level_[v] = decision_level();
        reason_[v] = reason;
        trail_.push_back(lit);
        return true;
    }

    // Returns the index of a conflicting clause, or -1.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int lit = trail_[qhead_++];
            auto &ws = watches_[lit];
            size_t keep = 0;
            for (size_t wi = 0; wi < ws.size(); ++wi) {
                Watch w = ws[wi];
                if (value(w.blocker) == kTrue) {
                    ws[keep++] = w;
                    continue;
                }
                auto &c = clauses_[w.clause].lits;
                int false_lit = lit_flip(lit);
                if (c[0] == false_lit)
                    std::swap(c[0], c[1]);
                if (value(c[0]) == kTrue) {
                    ws[keep++] = {w.clause, c[0]};
                    continue;
                }
                bool moved = false;
                for (size_t k = 2; k < c.size(); ++k) {
                    if (value(c[k]) != kFalse) {
                        std::swap(c[1], c[k]);
                        watches_[lit_flip(c[1])].push_back({w.clause, c[0]});
                        moved = true;
                        break;
                    }
                }
                if (moved)
                    continue;
                ws[keep++] = {w.clause, c[0]};
                if (value(c[0]) == kFalse) {
                    // conflict: restore untouched watches and bail
                    for (size_t rest = wi + 1; rest < ws.size(); ++rest)
                        ws[keep++] = ws[rest];
                    ws.resize(keep);
                    qhead_ = trail_.size();
                    return w.clause;
                }
                enqueue(c[0], w.clause);
            }
            ws.resize(keep);
        }
        return -1;
    }

    void bump(int var) {
        activity_[var] += var_inc_;
        if (activity_[var] > 1e100) {
            for (auto &a : activity_)
                a *= 1e-100;
            var_inc_ *= 1e-100;
        }
    }

    void decay_activities() { var_inc_ /= 0.95; }

    // First-UIP learning.
    void analyze(int confl, std::vector<int> &learnt, int &back_level) {
        learnt.push_back(0); // placeholder for the asserting literal
        int counter = 0;
        int lit = -1;
        size_t idx = trail_.size();

        int clause = confl;
        do {
            auto &c = clauses_[clause].lits;
            for (int q : c) {
                if (lit != -1 && q == lit)
                    continue;
                int v = lit_var(q);
                if (!seen_[v] && level_[v] > 0) {
                    seen_[v] = true;
                    bump(v);
                    if (level_[v] == decision_level())
                        ++counter;
                    else
                        learnt.push_back(q);
                }
            }
            // pick the next seen literal on the trail
            do {
                --idx;
            } while (!seen_[lit_var(trail_[idx])]);
            lit = trail_[idx];
            seen_[lit_var(lit)] = false;
            clause = reason_[lit_var(lit)];
            --counter;
        } while (counter > 0);
        learnt[0] = lit_flip(lit);

        back_level = 0;
        if (learnt.size() > 1) {
            size_t max_i = 1;
            for (size_t i = 2; i < learnt.size(); ++i)
                if (level_[lit_var(learnt[i])] > level_[lit_var(learnt[max_i])])
                    max_i = i;
            std::swap(learnt[1], learnt[max_i]);
            back_level = level_[lit_var(learnt[1])];
        }
        for (int q : learnt)
            seen_[lit_var(q)] = false;
    }

    void backtrack(int target_level) {
        if (decision_level() <= target_level)
            return;
        int bound = trail_lim_[target_level];
        for (int i = int(trail_.size()) - 1; i >= bound; --i) {
            int v = lit_var(trail_[i]);
            assigns_[v] = kUndef;
            reason_[v] = -1;
        }
        trail_.resize(bound);
        trail_lim_.resize(target_level);
        qhead_ = trail_.size();
    }

    int pick_branch() {
        int best = -1;
        double best_act = -1.0;
        for (int v = 0; v < nvars_; ++v)
            if (assigns_[v] == kUndef && activity_[v] > best_act) {
                best = v;
                best_act = activity_[v];
            }
        return best;
    }

    int nvars_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<Watch>> watches_;
    std::vector<int8_t> assigns_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<double> activity_;
    std::vector<bool> phase_;
    std::vector<bool> seen_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    size_t qhead_ = 0;
    double var_inc_ = 1.0;
};

} // namespace

SolveResult CdclSolver::solve(const Cnf &cnf) {
    if (cnf.num_vars == 0) {
        for (const auto &c : cnf.clauses)
            if (c.empty())
                return {false, {}};
        return {true, {false}};
    }
    Engine engine(cnf.num_vars);
    for (const auto &clause : cnf.clauses) {
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > cnf.num_vars)
                throw SolverError("literal out of range in CNF");
        std::vector<int> internal;
        internal.reserve(clause.size());
        for (int lit : clause)
            internal.push_back(mk_lit(std::abs(lit) - 1, lit < 0));
        if (clause.empty() || !engine.add_clause(std::move(internal)))
            return {false, {}};
    }
    if (!engine.solve())
        return {false, {}};
    return {true, engine.model()};
}

} // namespace svagen
