#pragma once

// Shared test utilities: file access, a deterministic RNG, random
// property/diagram generators, and independent oracles used to cross-check
// the library's results.

#include "svagen/ast.hpp"
#include "svagen/check.hpp"
#include "svagen/diagram.hpp"
#include "svagen/inventory.hpp"
#include "svagen/trace.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline std::string data_path(const std::string &name) {
    return std::string(SVAGEN_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

using Rng = std::mt19937_64;

inline int rnd(Rng &rng, int lo, int hi) {
    return int(rng() % uint64_t(hi - lo + 1)) + lo;
}

// --- random ground properties over an inventory ---------------------------

// Generates properties in the supported fragment: Implic at the root
// (sometimes), And/Not/Delay structure, Eq/Neq/Stable/Rose/Fell leaves.
// All constants are numeric and fit the word width.
struct PropGen {
    const svagen::SignalInventory &inv;
    Rng &rng;
    int max_depth = 3;

    std::vector<const svagen::SignalDecl *> bits, words;

    PropGen(const svagen::SignalInventory &inv, Rng &rng) : inv(inv), rng(rng) {
        for (const auto &d : inv.entries)
            (d.is_word ? words : bits).push_back(&d);
    }

    svagen::PropertyNode atom() {
        using namespace svagen;
        for (;;) {
            switch (rnd(rng, 0, 5)) {
            case 0:
                if (bits.empty())
                    continue;
                return eq(sig_ref(bits[size_t(rnd(rng, 0, int(bits.size()) - 1))]
                                      ->name),
                          level_const(rnd(rng, 0, 1) ? Level::High
                                                     : Level::Low));
            case 1: {
                if (words.empty())
                    continue;
                const SignalDecl *w =
                    words[size_t(rnd(rng, 0, int(words.size()) - 1))];
                uint64_t v = uint64_t(
                    rnd(rng, 0, int((uint64_t(1) << w->width) - 1)));
                PropertyNode c = word_const(std::to_string(v));
                PropertyNode e = eq(sig_ref(w->name), std::move(c));
                return rnd(rng, 0, 3) == 0
                           ? neq(e.children[0], e.children[1])
                           : e;
            }
            case 2:
                if (words.size() < 2)
                    continue;
                else {
                    size_t a = size_t(rnd(rng, 0, int(words.size()) - 1));
                    size_t b = size_t(rnd(rng, 0, int(words.size()) - 1));
                    if (a == b || words[a]->width != words[b]->width)
                        continue;
                    return eq(sig_ref(words[a]->name),
                              sig_ref(words[b]->name));
                }
            case 3: {
                const SignalDecl *s;
                if (rnd(rng, 0, 1) && !words.empty())
                    s = words[size_t(rnd(rng, 0, int(words.size()) - 1))];
                else if (!bits.empty())
                    s = bits[size_t(rnd(rng, 0, int(bits.size()) - 1))];
                else
                    continue;
                return stable(sig_ref(s->name));
            }
            case 4:
                if (bits.empty())
                    continue;
                return rose(sig_ref(
                    bits[size_t(rnd(rng, 0, int(bits.size()) - 1))]->name));
            default:
                if (bits.empty())
                    continue;
                return fell(sig_ref(
                    bits[size_t(rnd(rng, 0, int(bits.size()) - 1))]->name));
            }
        }
    }

    svagen::PropertyNode expr(int depth) {
        using namespace svagen;
        if (depth >= max_depth)
            return atom();
        switch (rnd(rng, 0, 4)) {
        case 0: {
            std::vector<PropertyNode> ops;
            int n = rnd(rng, 2, 3);
            for (int i = 0; i < n; ++i)
                ops.push_back(expr(depth + 1));
            return conj(std::move(ops));
        }
        case 1:
            return neg(expr(depth + 1));
        case 2:
            return delay(rnd(rng, 1, 2), expr(depth + 1));
        default:
            return atom();
        }
    }

    svagen::PropertyNode property() {
        using namespace svagen;
        PropertyNode p = rnd(rng, 0, 2) ? implic(expr(1), expr(1)) : expr(0);
        return canonicalize(p, SignalOrder(inv));
    }
};

// --- random diagrams -------------------------------------------------------

inline svagen::TimingDiagram random_diagram(const svagen::SignalInventory &inv,
                                            Rng &rng, size_t length) {
    svagen::TimingDiagram td;
    td.name = "rand";
    td.length = length;
    for (const auto &d : inv.entries) {
        svagen::DiagramSignal sig;
        sig.name = d.name;
        for (size_t i = 0; i < length; ++i) {
            svagen::Cell cell;
            int roll = rnd(rng, 0, 3);
            if (roll == 0) {
                cell.kind = svagen::Cell::Kind::Unconstrained;
            } else if (roll == 1 && d.is_word) {
                cell.kind = svagen::Cell::Kind::Symbolic;
                cell.label = "V" + std::to_string(rnd(rng, 1, 2));
            } else {
                cell.kind = svagen::Cell::Kind::Explicit;
                cell.value = uint64_t(
                    rnd(rng, 0, int((uint64_t(1) << d.width) - 1)));
            }
            sig.cells.push_back(cell);
        }
        td.signals.push_back(std::move(sig));
    }
    return td;
}

// --- brute-force verdict oracle ---------------------------------------------

// Enumerates every completion of the diagram (free cells and label values
// range over the full 2^width domain) and evaluates the property with the
// direct trace semantics. Returns true iff the property holds on all
// completions. `limit` guards against oversized enumerations (throws).
inline bool brute_force_holds(const svagen::PropertyNode &prop,
                              const svagen::TimingDiagram &td,
                              const svagen::SignalInventory &inv,
                              uint64_t limit = 2000000) {
    using namespace svagen;
    struct Slot {
        std::string signal;
        size_t cycle;
        int var = -1;       // -1 = fixed
        uint64_t fixed = 0;
    };
    std::vector<Slot> slots;
    std::vector<uint64_t> domains; // per free variable

    for (const auto &sig : td.signals) {
        const SignalDecl *d = inv.find(sig.name);
        uint64_t domain = uint64_t(1) << d->width;
        std::map<std::string, int> label_var;
        for (size_t i = 0; i < sig.cells.size(); ++i) {
            Slot s{sig.name, i, -1, 0};
            const Cell &cell = sig.cells[i];
            if (cell.kind == Cell::Kind::Explicit) {
                s.fixed = cell.value;
            } else if (cell.kind == Cell::Kind::Symbolic) {
                auto it = label_var.find(cell.label);
                if (it == label_var.end()) {
                    it = label_var.emplace(cell.label, int(domains.size()))
                             .first;
                    domains.push_back(domain);
                }
                s.var = it->second;
            } else {
                s.var = int(domains.size());
                domains.push_back(domain);
            }
            slots.push_back(std::move(s));
        }
    }

    uint64_t total = 1;
    for (uint64_t d : domains) {
        if (total > limit / d)
            throw std::runtime_error("oracle enumeration too large");
        total *= d;
    }

    std::vector<uint64_t> assign(domains.size(), 0);
    ConstResolver resolve = numeric_consts();
    for (uint64_t n = 0; n < total; ++n) {
        uint64_t rem = n;
        for (size_t v = 0; v < domains.size(); ++v) {
            assign[v] = rem % domains[v];
            rem /= domains[v];
        }
        Trace t;
        for (const auto &sig : td.signals)
            t.values[sig.name].assign(td.length, 0);
        for (const auto &s : slots)
            t.values[s.signal][s.cycle] =
                s.var < 0 ? s.fixed : assign[size_t(s.var)];
        if (!eval_property(prop, t, inv, resolve))
            return false;
    }
    return true;
}

} // namespace testutil
