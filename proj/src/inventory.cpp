#include "svagen/inventory.hpp"

#include "svagen/errors.hpp"

#include <sstream>

namespace svagen {

namespace {

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

bool valid_name(const std::string &s) {
    if (s.empty() || (!isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    for (char c : s)
        if (!isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

WordConstant parse_constant(const std::string &token, int width, int line) {
    WordConstant c;
    c.token = token;
    try {
        size_t pos = 0;
        uint64_t v = std::stoull(token, &pos, 0);
        if (pos == token.size()) {
            c.value = v;
            if (width < 64 && v >= (uint64_t(1) << width))
                throw ParseError("constant '" + token + "' exceeds width " +
                                     std::to_string(width),
                                 line, 0);
            return c;
        }
    } catch (const ParseError &) {
        throw;
    } catch (...) {
    }
    // Non-numeric tokens are named constants; each denotes a value distinct
    // from every other declared constant.
    if (!valid_name(token))
        throw ParseError("bad constant token '" + token + "'", line, 0);
    return c;
}

} // namespace

const SignalDecl *SignalInventory::find(const std::string &name) const {
    for (const auto &e : entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

bool SignalInventory::has(const std::string &name) const {
    return find(name) != nullptr;
}

std::vector<std::string> SignalInventory::names() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto &e : entries)
        out.push_back(e.name);
    return out;
}

SignalInventory parse_signals(const std::string &text) {
    SignalInventory inv;
    std::stringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos)
            line = line.substr(0, h);
        line = trim(line);
        if (line.empty())
            continue;

        size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected 'NAME: signal|word[W]'", lineno, 1);

        SignalDecl decl;
        decl.name = trim(line.substr(0, colon));
        if (!valid_name(decl.name))
            throw ParseError("bad signal name '" + decl.name + "'", lineno, 1);
        if (inv.has(decl.name))
            throw ParseError("duplicate signal '" + decl.name + "'", lineno, 1);

        std::stringstream rest(line.substr(colon + 1));
        std::string field;
        bool have_type = false;
        while (rest >> field) {
            if (field == "signal") {
                decl.is_word = false;
                decl.width = 1;
                have_type = true;
            } else if (field.rfind("word[", 0) == 0 && field.back() == ']') {
                std::string w = field.substr(5, field.size() - 6);
                try {
                    decl.width = std::stoi(w);
                } catch (...) {
                    throw ParseError("bad word width '" + w + "'", lineno, 0);
                }
                if (decl.width < 2 || decl.width > 63)
                    throw ParseError("word width must be in [2, 63]", lineno, 0);
                decl.is_word = true;
                have_type = true;
            } else if (field.rfind("subtype=", 0) == 0) {
                decl.subtype = field.substr(8);
            } else if (field.rfind("constants=", 0) == 0) {
                for (const auto &tok : split(field.substr(10), ','))
                    if (!tok.empty())
                        decl.constants.push_back(
                            parse_constant(tok, decl.width, lineno));
            } else {
                throw ParseError("unknown field '" + field + "'", lineno, 0);
            }
        }
        if (!have_type)
            throw ParseError("missing base type for '" + decl.name + "'",
                             lineno, 0);
        if (!decl.is_word && !decl.constants.empty())
            throw ParseError("constants only apply to words ('" + decl.name +
                                 "')",
                             lineno, 0);
        inv.entries.push_back(std::move(decl));
    }
    return inv;
}

} // namespace svagen
