#include "svagen/llm.hpp"

#include "svagen/errors.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace svagen {

using nlohmann::json;

std::string prompt_hash(const std::string &text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

HttpLlmClient::HttpLlmClient(std::string endpoint, LlmParams params)
    : params_(std::move(params)) {
    size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos)
        throw ConfigError("LLM endpoint must be a full URL: " + endpoint);
    size_t slash = endpoint.find('/', scheme + 3);
    if (slash == std::string::npos) {
        scheme_host_ = endpoint;
        path_ = "/v1/chat/completions";
    } else {
        scheme_host_ = endpoint.substr(0, slash);
        path_ = endpoint.substr(slash);
    }
}

std::string HttpLlmClient::complete(const std::string &prompt, int) {
    json body = {
        {"model", params_.model},
        {"temperature", params_.temperature},
        {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
    };

    httplib::Client cli(scheme_host_);
    cli.set_connection_timeout(params_.timeout_seconds);
    cli.set_read_timeout(params_.timeout_seconds);
    httplib::Headers headers{{"Content-Type", "application/json"}};
    if (const char *token = std::getenv("SVAGEN_LLM_TOKEN"))
        headers.emplace("Authorization", std::string("Bearer ") + token);

    std::string last_error;
    for (int attempt = 0; attempt <= params_.max_retries; ++attempt) {
        auto res = cli.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
            if (res->status >= 400 && res->status < 500 && res->status != 429)
                break; // client errors won't improve on retry
            continue;
        }
        json reply = json::parse(res->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("choices") ||
            reply["choices"].empty())
            throw LlmError("malformed completion response");
        return reply["choices"][0]["message"]["content"].get<std::string>();
    }
    throw LlmError("LLM request to " + scheme_host_ + path_ + " failed: " +
                   last_error);
}

namespace {

std::vector<std::string> responses_from(const json &value,
                                        const std::string &key) {
    std::vector<std::string> out;
    if (value.is_string()) {
        out.push_back(value.get<std::string>());
    } else if (value.is_array()) {
        for (const auto &item : value)
            if (item.is_string())
                out.push_back(item.get<std::string>());
            else
                throw ConfigError("fixture entry '" + key +
                                  "' must hold strings");
    } else {
        throw ConfigError("fixture entry '" + key +
                          "' must be a string or array of strings");
    }
    if (out.empty())
        throw ConfigError("fixture entry '" + key + "' is empty");
    return out;
}

} // namespace

MockLlmClient MockLlmClient::from_json_text(const std::string &json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw ConfigError("mock fixtures must be a JSON object");
    MockLlmClient client;
    for (const auto &[key, value] : doc.items())
        client.fixtures_[key] = responses_from(value, key);
    return client;
}

MockLlmClient MockLlmClient::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read mock fixtures '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string MockLlmClient::complete(const std::string &prompt, int run) {
    auto it = fixtures_.find(prompt_hash(prompt));
    if (it == fixtures_.end())
        it = fixtures_.find("*");
    if (it == fixtures_.end())
        throw LlmError("no fixture for prompt hash " + prompt_hash(prompt));
    const auto &responses = it->second;
    return responses[size_t(run) % responses.size()];
}

std::string build_prompt(const std::vector<std::string> &nl_items,
                         const std::string &description) {
    std::ostringstream out;
    out << "You are given a numbered list of candidate hardware protocol "
           "properties and a protocol description.\n"
           "Select the properties from the numbered list that best describe "
           "the details of the description.\n"
           "Select only from the list below; do not invent properties.\n\n"
           "Properties:\n";
    for (size_t i = 0; i < nl_items.size(); ++i)
        out << (i + 1) << ". " << nl_items[i] << "\n";
    out << "\nDescription:\n" << description << "\n\n";
    out << "Respond with one selected number per line and nothing else.\n";
    return out.str();
}

ParsedResponse parse_response(const std::string &text,
                              const std::vector<std::string> &nl_items) {
    ParsedResponse out;
    bool saw_content = false;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        // trim
        size_t b = line.find_first_not_of(" \t\r");
        size_t e = line.find_last_not_of(" \t\r");
        if (b == std::string::npos)
            continue;
        line = line.substr(b, e - b + 1);
        saw_content = true;

        bool any_int = false;
        for (size_t i = 0; i < line.size();) {
            if (!std::isdigit((unsigned char)line[i])) {
                ++i;
                continue;
            }
            size_t j = i;
            while (j < line.size() && std::isdigit((unsigned char)line[j]))
                ++j;
            any_int = true;
            unsigned long long n = std::stoull(line.substr(i, j - i));
            if (n >= 1 && n <= nl_items.size())
                out.selected.insert(size_t(n) - 1);
            else
                out.hallucinations.push_back(line.substr(i, j - i));
            i = j;
        }
        if (any_int)
            continue;
        // integer-free line: accept only a verbatim restatement of one item
        auto it = std::find(nl_items.begin(), nl_items.end(), line);
        if (it != nl_items.end())
            out.selected.insert(size_t(it - nl_items.begin()));
        else
            out.hallucinations.push_back(line);
    }
    out.unparseable = saw_content && out.selected.empty() &&
                      out.hallucinations.empty();
    return out;
}

ExtractionResult filter_properties(const std::vector<std::string> &nl_items,
                                   const std::string &description,
                                   LlmClient &client, int runs,
                                   size_t block_size) {
    if (nl_items.empty())
        throw StructureError("checked set is empty");
    if (description.empty())
        throw StructureError("description is empty");
    if (runs < 1)
        throw ConfigError("llm runs must be >= 1");
    if (block_size < 1)
        throw ConfigError("llm block size must be >= 1");

    ExtractionResult result;
    result.per_run.resize(size_t(runs));
    std::set<size_t> unioned;
    std::set<std::string> dropped;

    size_t num_blocks = (nl_items.size() + block_size - 1) / block_size;
    for (size_t blk = 0; blk < num_blocks; ++blk) {
        size_t lo = blk * block_size;
        size_t hi = std::min(lo + block_size, nl_items.size());
        std::vector<std::string> block_items(nl_items.begin() + lo,
                                             nl_items.begin() + hi);
        std::string prompt = build_prompt(block_items, description);

        int ok_runs = 0;
        for (int run = 0; run < runs; ++run) {
            LlmTranscript tr;
            tr.block = blk;
            tr.run = run;
            tr.prompt = prompt;
            try {
                tr.response = client.complete(prompt, run);
            } catch (const LlmError &e) {
                tr.failed = true;
                result.warnings.push_back("block " + std::to_string(blk) +
                                          " run " + std::to_string(run) +
                                          " failed: " + e.what());
                result.transcripts.push_back(std::move(tr));
                continue;
            }
            ++ok_runs;
            ParsedResponse parsed = parse_response(tr.response, block_items);
            if (parsed.unparseable)
                result.warnings.push_back("block " + std::to_string(blk) +
                                          " run " + std::to_string(run) +
                                          ": unparseable response");
            for (size_t local : parsed.selected) {
                result.per_run[size_t(run)].insert(lo + local);
                unioned.insert(lo + local);
            }
            for (auto &h : parsed.hallucinations)
                dropped.insert(h);
            result.transcripts.push_back(std::move(tr));
        }
        if (ok_runs == 0)
            throw LlmError("all " + std::to_string(runs) +
                           " runs failed for block " + std::to_string(blk));
    }

    result.final_indices.assign(unioned.begin(), unioned.end());
    result.hallucinations.assign(dropped.begin(), dropped.end());
    return result;
}

} // namespace svagen
