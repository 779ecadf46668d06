#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

struct WordConstant {
    std::string token;                  // as written in the config
    std::optional<uint64_t> value;      // numeric constants only
};

struct SignalDecl {
    std::string name;
    bool is_word = false;
    int width = 1;                      // 1 for signals, >= 2 for words
    std::string subtype;                // empty = untagged
    std::vector<WordConstant> constants;
};

struct SignalInventory {
    std::vector<SignalDecl> entries;

    const SignalDecl *find(const std::string &name) const;
    bool has(const std::string &name) const;
    std::vector<std::string> names() const;
};

// One entry per line: `NAME: signal` or `NAME: word[W]`, then optional
// `subtype=TAG` and `constants=a,b,...`. `#` starts a comment.
SignalInventory parse_signals(const std::string &text);

} // namespace svagen
