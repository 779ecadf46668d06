#include "svagen/diagram.hpp"

#include "svagen/errors.hpp"

#include <cctype>
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

Cell parse_cell(const std::string &token, const SignalDecl &decl, int line) {
    Cell cell;
    if (token == "X" || token == "x") {
        cell.kind = Cell::Kind::Unconstrained;
        return cell;
    }
    if (isdigit((unsigned char)token[0])) {
        uint64_t v = 0;
        try {
            size_t pos = 0;
            v = std::stoull(token, &pos, 0);
            if (pos != token.size())
                throw std::invalid_argument(token);
        } catch (...) {
            throw DiagramError("malformed cell token '" + token + "'", line);
        }
        if (!decl.is_word && v > 1)
            throw DiagramError("1-bit signal '" + decl.name +
                                   "' cannot take value " + token,
                               line);
        if (decl.is_word && decl.width < 64 &&
            v >= (uint64_t(1) << decl.width))
            throw DiagramError("value " + token + " exceeds width of '" +
                                   decl.name + "'",
                               line);
        cell.kind = Cell::Kind::Explicit;
        cell.value = v;
        return cell;
    }
    for (char c : token)
        if (!isalnum((unsigned char)c) && c != '_')
            throw DiagramError("malformed cell token '" + token + "'", line);
    cell.kind = Cell::Kind::Symbolic;
    cell.label = token;
    return cell;
}

} // namespace

const DiagramSignal *TimingDiagram::find(const std::string &name) const {
    for (const auto &s : signals)
        if (s.name == name)
            return &s;
    return nullptr;
}

TimingDiagram parse_diagram(const std::string &text,
                            const SignalInventory &inv) {
    TimingDiagram td;
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

        if (line.rfind("name:", 0) == 0) {
            td.name = trim(line.substr(5));
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DiagramError("expected 'NAME = [c0, c1, ...]'", lineno);
        std::string name = trim(line.substr(0, eq));
        const SignalDecl *decl = inv.find(name);
        if (!decl)
            throw DiagramError("undeclared signal '" + name + "'", lineno);
        if (td.find(name))
            throw DiagramError("duplicate signal '" + name + "'", lineno);

        std::string rest = trim(line.substr(eq + 1));
        if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
            throw DiagramError("expected '[...]' cell list", lineno);
        rest = rest.substr(1, rest.size() - 2);

        DiagramSignal sig;
        sig.name = name;
        std::stringstream cells(rest);
        std::string tok;
        while (std::getline(cells, tok, ',')) {
            tok = trim(tok);
            if (tok.empty())
                throw DiagramError("empty cell", lineno);
            sig.cells.push_back(parse_cell(tok, *decl, lineno));
        }
        if (sig.cells.empty())
            throw DiagramError("signal '" + name + "' has no cells", lineno);
        td.signals.push_back(std::move(sig));
    }
    if (td.signals.empty())
        throw DiagramError("diagram lists no signals");

    td.length = td.signals[0].cells.size();
    for (const auto &s : td.signals)
        if (s.cells.size() != td.length)
            throw DiagramError("length mismatch: '" + s.name + "' has " +
                               std::to_string(s.cells.size()) +
                               " cells, expected " + std::to_string(td.length));
    return td;
}

TimingDiagram all_x_diagram(const std::vector<std::string> &signals,
                            size_t length) {
    TimingDiagram td;
    td.name = "all-x";
    td.length = length;
    for (const auto &name : signals) {
        DiagramSignal s;
        s.name = name;
        s.cells.resize(length);
        td.signals.push_back(std::move(s));
    }
    return td;
}

} // namespace svagen
