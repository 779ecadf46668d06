#include "svagen/encode.hpp"
#include "svagen/errors.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace svagen;

namespace {

SignalInventory handshake_inv() {
    return parse_signals("VALID: signal\nREADY: signal\nDATA: word[8]\n");
}

TimingDiagram handshake_td() {
    return parse_diagram("name: valid-before-ready\n"
                         "DATA  = [X, X, V1, V1, X]\n"
                         "VALID = [0, 0, 1, 1, 0]\n"
                         "READY = [0, 0, 1, 1, 0]\n",
                         handshake_inv());
}

PropertyNode correct_handshake() {
    return implic(conj({eq(sig_ref("VALID"), level_const(Level::High)),
                        eq(sig_ref("READY"), level_const(Level::Low))}),
                  delay(1, stable(sig_ref("DATA"))));
}

std::multiset<std::string> conjunct_strings(const FormulaPtr &f) {
    std::multiset<std::string> out;
    for (const auto &c : conjuncts_of(f))
        out.insert(formula_to_string(c));
    return out;
}

} // namespace

TEST_CASE("encode_diagram pins explicit cells and ties label runs") {
    FormulaPtr phi = encode_diagram(handshake_td(), handshake_inv());
    std::multiset<std::string> expected{
        "DATA[2] = DATA[3]",
        "!(VALID[0])", "!(VALID[1])", "VALID[2]", "VALID[3]", "!(VALID[4])",
        "!(READY[0])", "!(READY[1])", "READY[2]", "READY[3]", "!(READY[4])",
    };
    CHECK(conjunct_strings(phi) == expected);
}

TEST_CASE("encode_property expands the handshake property per cycle") {
    FormulaPtr phi =
        encode_property(correct_handshake(), handshake_td(), handshake_inv());
    auto parts = conjuncts_of(phi);
    // Defined for cycles 0..3; cycle 4 has no next cycle to inspect.
    REQUIRE(parts.size() == 4);
    CHECK(formula_to_string(parts[0]) ==
          "((VALID[0] & !(READY[0])) -> DATA[1] = DATA[0])");
    CHECK(formula_to_string(parts[1]) ==
          "((VALID[1] & !(READY[1])) -> DATA[2] = DATA[1])");
    CHECK(formula_to_string(parts[3]) ==
          "((VALID[3] & !(READY[3])) -> DATA[4] = DATA[3])");
}

TEST_CASE("localize treats out-of-range references as undefined") {
    SignalInventory inv = handshake_inv();
    PropertyNode v = eq(sig_ref("VALID"), level_const(Level::High));

    SUBCASE("delay past the last cycle") {
        CHECK(localize(delay(2, v), 3, 5, inv) == std::nullopt);
        CHECK(localize(delay(2, v), 2, 5, inv).has_value());
    }
    SUBCASE("stable/rose/fell need a previous cycle") {
        CHECK(localize(stable(sig_ref("DATA")), 0, 5, inv) == std::nullopt);
        CHECK(localize(rose(sig_ref("VALID")), 0, 5, inv) == std::nullopt);
        CHECK(localize(fell(sig_ref("VALID")), 0, 5, inv) == std::nullopt);
        CHECK(localize(stable(sig_ref("DATA")), 1, 5, inv).has_value());
    }
    SUBCASE("undefinedness propagates through operators") {
        CHECK(localize(neg(delay(9, v)), 0, 5, inv) == std::nullopt);
        CHECK(localize(conj({v, delay(9, v)}), 0, 5, inv) == std::nullopt);
        CHECK(localize(implic(v, delay(9, v)), 0, 5, inv) == std::nullopt);
        CHECK(localize(implic(delay(9, v), v), 0, 5, inv) == std::nullopt);
    }
}

TEST_CASE("a property defined nowhere encodes to true") {
    SignalInventory inv = handshake_inv();
    TimingDiagram td = all_x_diagram({"VALID"}, 2);
    PropertyNode p = delay(5, eq(sig_ref("VALID"), level_const(Level::High)));
    FormulaPtr phi = encode_property(p, td, inv);
    CHECK(phi->op == Formula::Op::True);
}

TEST_CASE("repeated runs of one label are tied together") {
    SignalInventory inv = parse_signals("D: word[4]\n");
    TimingDiagram td = parse_diagram("D = [V1, V1, X, V1]\n", inv);
    std::multiset<std::string> expected{
        "D[0] = D[1]", // adjacent cells of the first run
        "D[0] = D[3]", // second run tied back to the first
    };
    CHECK(conjunct_strings(encode_diagram(td, inv)) == expected);
}

TEST_CASE("distinct labels stay independent") {
    SignalInventory inv = parse_signals("D: word[4]\n");
    TimingDiagram td = parse_diagram("D = [V1, V2]\n", inv);
    FormulaPtr phi = encode_diagram(td, inv);
    CHECK(phi->op == Formula::Op::True); // no equalities, no disequalities
}

TEST_CASE("1-bit explicit cells become literals, word cells equalities") {
    SignalInventory inv = parse_signals("B: signal\nW: word[8]\n");
    TimingDiagram td = parse_diagram("B = [1]\nW = [0xff]\n", inv);
    std::multiset<std::string> expected{"B[0]", "W[0] = 255"};
    CHECK(conjunct_strings(encode_diagram(td, inv)) == expected);
}

TEST_CASE("encode_property rejects signals missing from the diagram") {
    SignalInventory inv = handshake_inv();
    TimingDiagram td = parse_diagram("DATA = [X, X]\n", inv);
    CHECK_THROWS_AS(
        encode_property(correct_handshake(), td, inv), StructureError);
}

TEST_CASE("formula constructors simplify constants") {
    CHECK(f_and({})->op == Formula::Op::True);
    CHECK(f_and({f_true(), f_false()})->op == Formula::Op::False);
    CHECK(f_or({})->op == Formula::Op::False);
    CHECK(f_or({f_false(), f_true()})->op == Formula::Op::True);
    CHECK(f_not(f_true())->op == Formula::Op::False);
    CHECK(f_implies(f_false(), f_bit("A", 0))->op == Formula::Op::True);
    CHECK(f_word_eq(WordTerm::constant("3", 3), WordTerm::constant("0x3", 3))
              ->op == Formula::Op::True);
    CHECK(f_word_eq(WordTerm::constant("3", 3), WordTerm::constant("4", 4))
              ->op == Formula::Op::False);
    // named constants without numeric values compare by token
    CHECK(f_word_eq(WordTerm::constant("IDLE", std::nullopt),
                    WordTerm::constant("IDLE", std::nullopt))
              ->op == Formula::Op::True);
    CHECK(f_word_eq(WordTerm::constant("IDLE", std::nullopt),
                    WordTerm::constant("BUSY", std::nullopt))
              ->op == Formula::Op::False);
}
