#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace svagen {

struct SignalInventory;

enum class NodeKind {
    SigRef,
    LevelConst,
    WordConst,
    Eq,
    Neq,
    And,
    Not,
    Delay,
    Stable,
    Rose,
    Fell,
    Implic,
    Hole,
};

enum class Level { High, Low };

// Typed template placeholders. Value fills against the declared constants of
// the word it is compared to; Level fills against {HIGH, LOW}.
enum class HoleKind { Signal, Word, SignalOrWord, Level, Value };

struct PropertyNode {
    NodeKind kind = NodeKind::SigRef;

    std::string name;                       // SigRef: signal; WordConst: token; Hole: subtype tag
    Level level = Level::High;              // LevelConst
    std::optional<uint64_t> word_value;     // WordConst, when the token is numeric
    int delay = 0;                          // Delay: cycle count (>= 1)
    HoleKind hole = HoleKind::Signal;       // Hole

    std::vector<PropertyNode> children;

    bool operator==(const PropertyNode &other) const;
};

PropertyNode sig_ref(std::string name);
PropertyNode level_const(Level level);
PropertyNode word_const(std::string token);
PropertyNode eq(PropertyNode lhs, PropertyNode rhs);
PropertyNode neq(PropertyNode lhs, PropertyNode rhs);
PropertyNode conj(std::vector<PropertyNode> operands);
PropertyNode neg(PropertyNode operand);
PropertyNode delay(int cycles, PropertyNode operand);
PropertyNode stable(PropertyNode operand);
PropertyNode rose(PropertyNode operand);
PropertyNode fell(PropertyNode operand);
PropertyNode implic(PropertyNode antecedent, PropertyNode consequent);
PropertyNode hole(HoleKind kind, std::string subtype = "");

// Maps signal names to their declaration rank; names absent from the map sort
// after all declared names, by spelling.
class SignalOrder {
public:
    SignalOrder() = default;
    explicit SignalOrder(const std::vector<std::string> &names);
    explicit SignalOrder(const SignalInventory &inv);

    // (0, rank) for declared names, (1, huge) otherwise; ties broken by name.
    std::pair<int, size_t> rank(const std::string &name) const;
    bool known(const std::string &name) const;

private:
    std::vector<std::string> names_;
};

// Total structural order: -1 / 0 / +1.
int compare_nodes(const PropertyNode &a, const PropertyNode &b,
                  const SignalOrder &order = SignalOrder());

// Sorts And operands, orders Eq/Neq operands (SigRef first; two SigRefs by
// declaration order), folds Not(Eq(s, lvl)) into the flipped Eq for 1-bit
// style atoms. Idempotent. Throws StructureError on malformed arity.
PropertyNode canonicalize(const PropertyNode &node,
                          const SignalOrder &order = SignalOrder());

// Max forward cycle reach: sum of Delay offsets along a path, plus one on
// paths ending in Stable/Rose/Fell (they look back one cycle).
int temporal_depth(const PropertyNode &node);

bool is_ground(const PropertyNode &node);

void collect_signals(const PropertyNode &node, std::set<std::string> &out);

// Full invariant check against an inventory: arity, Implic only at root,
// Eq/Neq operand typing, Stable/Rose/Fell operand shape, declared names.
void validate_property(const PropertyNode &node, const SignalInventory &inv);

// Stable serialization used as a dedup key and in diagnostics.
std::string node_key(const PropertyNode &node);

} // namespace svagen
