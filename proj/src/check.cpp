#include "svagen/check.hpp"

#include "svagen/bitblast.hpp"
#include "svagen/encode.hpp"
#include "svagen/errors.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

namespace svagen {

namespace {

std::string const_key(const std::string &token,
                      std::optional<uint64_t> numeric) {
    return numeric ? std::to_string(*numeric) : token;
}

void collect_pins(const BitBlaster &bb, const FormulaPtr &f, ConstPins &out) {
    if (f->op == Formula::Op::WordEq) {
        const WordTerm *cyc = nullptr, *cst = nullptr;
        for (const WordTerm *t : {&f->lhs, &f->rhs})
            (t->kind == WordTerm::Kind::Cycle ? cyc : cst) = t;
        if (cyc && cst)
            if (auto v = bb.constant_value(cyc->signal, *cst))
                out[{cyc->signal, const_key(cst->token, cst->value)}] = *v;
        return;
    }
    for (const auto &a : f->args)
        collect_pins(bb, a, out);
}

// Runs fn(0..n-1), deterministically indexed, on up to `jobs` workers.
void run_indexed(size_t n, int jobs,
                 const std::function<void(size_t)> &fn) {
    jobs = std::max(jobs, 1);
    if (jobs == 1 || n < 2) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mtx;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mtx);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto &t : workers)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

void dump_cnf(const BitBlaster &bb, const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write CNF dump '" + path + "'");
    out << bb.to_dimacs();
}

std::string dump_name(const std::string &dir, size_t prop_index,
                      const std::string &stage, const std::string &diagram) {
    return dir + "/p" + std::to_string(prop_index) + "_" + stage + "_" +
           diagram + ".cnf";
}

} // namespace

ConstResolver resolver_from(const ConstPins &pins) {
    return [pins](const std::string &signal, const std::string &token,
                  std::optional<uint64_t> numeric) -> uint64_t {
        auto it = pins.find({signal, const_key(token, numeric)});
        if (it == pins.end())
            throw SolverError("constant '" + token + "' of '" + signal +
                              "' was not pinned by this check");
        return it->second;
    };
}

DiagramVerdict check_on_diagram(const PropertyNode &prop,
                                const TimingDiagram &td,
                                const SignalInventory &inv,
                                SatBackend &backend,
                                const std::string &dump_path) {
    FormulaPtr ftd = encode_diagram(td, inv);
    FormulaPtr fp = encode_property(prop, td, inv);

    BitBlaster bb(td, inv, {ftd, fp});
    bb.assert_formula(ftd);
    bb.assert_formula(f_not(fp));
    if (!dump_path.empty())
        dump_cnf(bb, dump_path);

    SolveResult res = backend.solve(bb.cnf());
    DiagramVerdict out;
    if (!res.sat) {
        out.verdict = Verdict::Holds;
        return out;
    }
    out.verdict = Verdict::Violated;
    Trace witness;
    witness.values = bb.decode(res.model);
    out.witness = std::move(witness);
    collect_pins(bb, ftd, out.pins);
    collect_pins(bb, fp, out.pins);
    return out;
}

FilterResult filter_candidates(const std::vector<PropertyNode> &candidates,
                               const std::vector<TimingDiagram> &diagrams,
                               const SignalInventory &inv,
                               SatBackend &backend, const CheckOptions &opts) {
    FilterResult result;
    result.outcomes.resize(candidates.size());

    run_indexed(candidates.size(), opts.jobs, [&](size_t i) {
        CheckOutcome &oc = result.outcomes[i];
        oc.property_index = i;
        oc.verdict = Verdict::Holds;
        for (const auto &td : diagrams) {
            std::string dump;
            if (!opts.dump_cnf_dir.empty())
                dump = dump_name(opts.dump_cnf_dir, i, "check", td.name);
            DiagramVerdict dv =
                check_on_diagram(candidates[i], td, inv, backend, dump);
            if (dv.verdict == Verdict::Violated) {
                oc.verdict = Verdict::Violated;
                oc.first_violation = td.name;
                oc.witness = std::move(dv.witness);
                oc.pins = std::move(dv.pins);
                break;
            }
        }
    });

    for (size_t i = 0; i < candidates.size(); ++i)
        if (result.outcomes[i].verdict == Verdict::Holds)
            result.verified.push_back(i);
    return result;
}

std::vector<size_t> remove_tautologies(
    const std::vector<PropertyNode> &candidates, const SignalInventory &inv,
    SatBackend &backend, int margin, int jobs) {
    std::vector<char> keep(candidates.size(), 0);
    run_indexed(candidates.size(), jobs, [&](size_t i) {
        std::set<std::string> used;
        collect_signals(candidates[i], used);
        size_t length =
            size_t(std::max(1, temporal_depth(candidates[i]) + margin));
        TimingDiagram td = all_x_diagram(
            std::vector<std::string>(used.begin(), used.end()), length);
        DiagramVerdict dv = check_on_diagram(candidates[i], td, inv, backend);
        keep[i] = dv.verdict != Verdict::Holds;
    });
    std::vector<size_t> kept;
    for (size_t i = 0; i < candidates.size(); ++i)
        if (keep[i])
            kept.push_back(i);
    return kept;
}

std::vector<size_t> remove_vacuous(const std::vector<PropertyNode> &candidates,
                                   const std::vector<TimingDiagram> &diagrams,
                                   const SignalInventory &inv,
                                   SatBackend &backend, int jobs) {
    std::vector<FormulaPtr> ftds;
    for (const auto &td : diagrams)
        ftds.push_back(encode_diagram(td, inv));

    std::vector<char> keep(candidates.size(), 0);
    run_indexed(candidates.size(), jobs, [&](size_t i) {
        const PropertyNode &prop = candidates[i];
        if (prop.kind != NodeKind::Implic) {
            keep[i] = 1;
            return;
        }
        const PropertyNode &ante = prop.children[0];
        for (size_t d = 0; d < diagrams.size(); ++d) {
            const TimingDiagram &td = diagrams[d];
            std::set<std::string> used;
            collect_signals(prop, used);
            bool missing = std::any_of(
                used.begin(), used.end(),
                [&](const std::string &s) { return !td.find(s); });
            if (missing)
                continue;
            std::vector<FormulaPtr> triggers;
            for (int cyc = 0; cyc <= int(td.cyc_max()); ++cyc)
                if (auto f = localize(ante, cyc, td.length, inv))
                    triggers.push_back(*f);
            if (triggers.empty())
                continue;
            FormulaPtr any_trigger = f_or(std::move(triggers));
            BitBlaster bb(td, inv, {ftds[d], any_trigger});
            bb.assert_formula(ftds[d]);
            bb.assert_formula(any_trigger);
            if (backend.solve(bb.cnf()).sat) {
                keep[i] = 1;
                return;
            }
        }
    });
    std::vector<size_t> kept;
    for (size_t i = 0; i < candidates.size(); ++i)
        if (keep[i])
            kept.push_back(i);
    return kept;
}

} // namespace svagen
