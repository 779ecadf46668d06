#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace svagen {

struct LlmParams {
    std::string model = "o1";
    double temperature = 1.0;
    int timeout_seconds = 60;
    int max_retries = 2;
};

class LlmClient {
public:
    virtual ~LlmClient() = default;
    // One completion. `run` distinguishes repeated calls with an identical
    // prompt so scripted clients can vary their answers per run.
    virtual std::string complete(const std::string &prompt, int run) = 0;
};

// OpenAI-style chat completion over HTTP. Endpoint is a full URL, e.g.
// http://host:8080/v1/chat/completions. Reads the bearer token from the
// SVAGEN_LLM_TOKEN environment variable when set.
class HttpLlmClient : public LlmClient {
public:
    HttpLlmClient(std::string endpoint, LlmParams params);
    std::string complete(const std::string &prompt, int run) override;

private:
    std::string scheme_host_;
    std::string path_;
    LlmParams params_;
};

// Deterministic scripted client: a JSON object mapping prompt hash (or "*"
// as a catch-all) to a response string or an array of per-run responses.
class MockLlmClient : public LlmClient {
public:
    static MockLlmClient from_file(const std::string &path);
    static MockLlmClient from_json_text(const std::string &json_text);
    std::string complete(const std::string &prompt, int run) override;

private:
    std::map<std::string, std::vector<std::string>> fixtures_;
};

// FNV-1a (64-bit) hex digest; the key mock fixtures are looked up by.
std::string prompt_hash(const std::string &text);

std::string build_prompt(const std::vector<std::string> &nl_items,
                         const std::string &description);

struct ParsedResponse {
    std::set<size_t> selected; // 0-based indices into nl_items
    std::vector<std::string> hallucinations;
    bool unparseable = false;
};

// Tolerant extraction: every integer on a line is a selection (out-of-range
// integers become hallucinations); integer-free lines must restate one item
// verbatim or they are hallucinations too.
ParsedResponse parse_response(const std::string &text,
                              const std::vector<std::string> &nl_items);

struct LlmTranscript {
    size_t block = 0;
    int run = 0;
    std::string prompt;
    std::string response;
    bool failed = false;
};

struct ExtractionResult {
    std::vector<std::set<size_t>> per_run; // 0-based indices, one set per run
    std::vector<size_t> final_indices;     // union, in checked-set order
    std::vector<std::string> hallucinations;
    std::vector<LlmTranscript> transcripts;
    std::vector<std::string> warnings;
};

// Issues the same prompt `runs` times and unions the parsed selections.
// Oversized checked sets are split into blocks of `block_size` items, each
// with its own prompt. Failed runs are tolerated unless a block loses all
// of its runs.
ExtractionResult filter_properties(const std::vector<std::string> &nl_items,
                                   const std::string &description,
                                   LlmClient &client, int runs = 3,
                                   size_t block_size = 100);

} // namespace svagen
