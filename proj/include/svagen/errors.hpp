#pragma once

#include <stdexcept>
#include <string>

namespace svagen {

// Base for all toolkit errors; `what()` carries the full message.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed AST (bad arity, bad operand type, undeclared name).
class StructureError : public Error {
public:
    explicit StructureError(const std::string &msg) : Error(msg) {}
};

// Syntax error with position info (line/column are 1-based; 0 = unknown).
class ParseError : public Error {
public:
    ParseError(const std::string &msg, int line, int column)
        : Error(format(msg, line, column)), line(line), column(column) {}
    int line;
    int column;

private:
    static std::string format(const std::string &msg, int line, int column) {
        if (line <= 0)
            return msg;
        return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }
};

// Input uses a construct outside the supported fragment.
class UnsupportedConstructError : public ParseError {
public:
    UnsupportedConstructError(const std::string &token, int line, int column)
        : ParseError("unsupported construct '" + token + "'", line, column),
          token(token) {}
    std::string token;
};

class GrammarError : public ParseError {
public:
    GrammarError(const std::string &msg, int line, int column = 0)
        : ParseError(msg, line, column) {}
};

// Enumeration would exceed the configured sentence cap.
class CapExceededError : public Error {
public:
    CapExceededError(unsigned long long count, unsigned long long cap)
        : Error("grammar language size " + std::to_string(count) +
                " exceeds cap " + std::to_string(cap)),
          count(count), cap(cap) {}
    unsigned long long count;
    unsigned long long cap;
};

class DiagramError : public ParseError {
public:
    DiagramError(const std::string &msg, int line = 0, int column = 0)
        : ParseError(msg, line, column) {}
};

class SolverError : public Error {
public:
    explicit SolverError(const std::string &msg) : Error(msg) {}
};

class LlmError : public Error {
public:
    explicit LlmError(const std::string &msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string &msg) : Error(msg) {}
};

} // namespace svagen
