#include "svagen/errors.hpp"
#include "svagen/llm.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>

using namespace svagen;

namespace {

const std::vector<std::string> kItems = {
    "If VALID is HIGH and READY is LOW, then DATA remains stable in the next "
    "cycle.",
    "If VALID is HIGH, then READY is HIGH in the next cycle.",
    "VALID rises",
    "READY falls",
    "DATA is 0x0",
};

// Scripted client answering from a per-run list, independent of the prompt.
struct ScriptedClient : LlmClient {
    std::vector<std::string> responses;
    std::vector<std::string> prompts_seen;
    std::string complete(const std::string &prompt, int run) override {
        prompts_seen.push_back(prompt);
        return responses[size_t(run) % responses.size()];
    }
};

struct FailingClient : LlmClient {
    int fail_first_n = 0;
    int calls = 0;
    std::string response = "1";
    std::string complete(const std::string &, int) override {
        if (calls++ < fail_first_n)
            throw LlmError("scripted failure");
        return response;
    }
};

} // namespace

TEST_CASE("build_prompt numbers the items and embeds the description") {
    std::string prompt = build_prompt(kItems, "A handshake protocol.");
    CHECK(prompt.find("1. " + kItems[0]) != std::string::npos);
    CHECK(prompt.find("5. " + kItems[4]) != std::string::npos);
    CHECK(prompt.find("A handshake protocol.") != std::string::npos);
    CHECK(prompt.find("one selected number per line") != std::string::npos);
    CHECK(prompt == build_prompt(kItems, "A handshake protocol."));
    CHECK(prompt != build_prompt(kItems, "A different description."));
}

TEST_CASE("parse_response extracts one-based selections") {
    SUBCASE("plain numbers") {
        ParsedResponse r = parse_response("1\n3\n", kItems);
        CHECK(r.selected == std::set<size_t>{0, 2});
        CHECK(r.hallucinations.empty());
    }
    SUBCASE("numbers embedded in prose") {
        ParsedResponse r = parse_response("I select: 1, 3", kItems);
        CHECK(r.selected == std::set<size_t>{0, 2});
    }
    SUBCASE("out-of-range numbers are hallucinations") {
        ParsedResponse r = parse_response("3\n99\n0\n", kItems);
        CHECK(r.selected == std::set<size_t>{2});
        CHECK(r.hallucinations == std::vector<std::string>{"99", "0"});
    }
    SUBCASE("verbatim restatements resolve to their index") {
        ParsedResponse r = parse_response(kItems[2] + "\n", kItems);
        CHECK(r.selected == std::set<size_t>{2});
    }
    SUBCASE("near-miss restatements are hallucinations") {
        ParsedResponse r = parse_response("VALID rises eventually\n", kItems);
        CHECK(r.selected.empty());
        REQUIRE(r.hallucinations.size() == 1);
        CHECK(r.hallucinations[0] == "VALID rises eventually");
    }
    SUBCASE("blank responses select nothing") {
        ParsedResponse r = parse_response("  \n\n", kItems);
        CHECK(r.selected.empty());
        CHECK(r.hallucinations.empty());
    }
}

TEST_CASE("filter_properties unions the runs") {
    ScriptedClient client;
    client.responses = {"1\n3\n", "3\n5\n", "3\n"};
    ExtractionResult r =
        filter_properties(kItems, "handshake", client, 3, 100);
    CHECK(r.final_indices == std::vector<size_t>{0, 2, 4});
    REQUIRE(r.per_run.size() == 3);
    CHECK(r.per_run[0] == std::set<size_t>{0, 2});
    CHECK(r.per_run[1] == std::set<size_t>{2, 4});
    CHECK(r.per_run[2] == std::set<size_t>{2});
    CHECK(r.hallucinations.empty());
    CHECK(r.transcripts.size() == 3);
}

TEST_CASE("hallucinated numbers are dropped mechanically") {
    ScriptedClient client;
    client.responses = {"2\n99\n"};
    ExtractionResult r =
        filter_properties(kItems, "handshake", client, 3, 100);
    CHECK(r.final_indices == std::vector<size_t>{1});
    CHECK(r.hallucinations == std::vector<std::string>{"99"});
}

TEST_CASE("oversized lists are chunked into blocks") {
    ScriptedClient client;
    client.responses = {"1\n"}; // first item of every block
    ExtractionResult r = filter_properties(kItems, "handshake", client, 1, 2);
    // blocks: [0,1], [2,3], [4]; "1" picks the first of each
    CHECK(r.final_indices == std::vector<size_t>{0, 2, 4});
    CHECK(client.prompts_seen.size() == 3);
    CHECK(client.prompts_seen[0].find("2. ") != std::string::npos);
    CHECK(client.prompts_seen[2].find("2. ") == std::string::npos);
    CHECK(client.prompts_seen[1].find("1. " + kItems[2]) != std::string::npos);
}

TEST_CASE("failed runs are tolerated, fully failed blocks are not") {
    SUBCASE("partial failure yields a warning but succeeds") {
        FailingClient client;
        client.fail_first_n = 2;
        ExtractionResult r =
            filter_properties(kItems, "handshake", client, 3, 100);
        CHECK(r.final_indices == std::vector<size_t>{0});
        REQUIRE(r.warnings.size() == 2);
        CHECK(r.warnings[0].find("failed") != std::string::npos);
        int failed = 0;
        for (const auto &t : r.transcripts)
            failed += t.failed ? 1 : 0;
        CHECK(failed == 2);
    }
    SUBCASE("all runs failing raises an error") {
        FailingClient client;
        client.fail_first_n = 3;
        CHECK_THROWS_AS(filter_properties(kItems, "handshake", client, 3, 100),
                        LlmError);
    }
}

TEST_CASE("selections are always a subset of the offered list") {
    testutil::Rng rng(5150);
    for (int iter = 0; iter < 100; ++iter) {
        // random noisy response text
        std::string text;
        int lines = testutil::rnd(rng, 0, 6);
        for (int l = 0; l < lines; ++l) {
            switch (testutil::rnd(rng, 0, 3)) {
            case 0:
                text += std::to_string(testutil::rnd(rng, 0, 12)) + "\n";
                break;
            case 1:
                text += "maybe " + std::to_string(testutil::rnd(rng, 1, 5)) +
                        " applies\n";
                break;
            case 2:
                text += kItems[size_t(testutil::rnd(rng, 0, 4))] + "\n";
                break;
            default:
                text += "nothing relevant here\n";
            }
        }
        ParsedResponse r = parse_response(text, kItems);
        for (size_t idx : r.selected)
            CHECK(idx < kItems.size());
    }
}

TEST_CASE("the union never shrinks below any individual run") {
    ScriptedClient client;
    client.responses = {"1\n2\n", "4\n", "2\n5\n"};
    ExtractionResult r =
        filter_properties(kItems, "handshake", client, 3, 100);
    for (const auto &run : r.per_run)
        for (size_t idx : run)
            CHECK(std::count(r.final_indices.begin(), r.final_indices.end(),
                             idx) == 1);
}

TEST_CASE("prompt_hash is the 64-bit FNV-1a hex digest") {
    CHECK(prompt_hash("") == "cbf29ce484222325");
    CHECK(prompt_hash("a") == "af63dc4c8601ec8c");
    CHECK(prompt_hash("ab") != prompt_hash("ba"));
}

TEST_CASE("mock client answers by prompt hash with per-run cycling") {
    std::string prompt = build_prompt(kItems, "handshake");
    std::string fixtures = std::string("{\"") + prompt_hash(prompt) +
                           "\": [\"1\", \"2\"], \"*\": \"3\"}";
    MockLlmClient client = MockLlmClient::from_json_text(fixtures);
    CHECK(client.complete(prompt, 0) == "1");
    CHECK(client.complete(prompt, 1) == "2");
    CHECK(client.complete(prompt, 2) == "1"); // cycles
    CHECK(client.complete("unknown prompt", 0) == "3"); // catch-all
    MockLlmClient no_catch = MockLlmClient::from_json_text("{\"abc\": \"1\"}");
    CHECK_THROWS_AS(no_catch.complete("unknown prompt", 0), LlmError);
}

TEST_CASE("mock fixture validation") {
    CHECK_THROWS_AS(MockLlmClient::from_json_text("not json"), ConfigError);
    CHECK_THROWS_AS(MockLlmClient::from_json_text("[1,2]"), ConfigError);
    CHECK_THROWS_AS(MockLlmClient::from_json_text("{\"*\": []}"), ConfigError);
    CHECK_THROWS_AS(MockLlmClient::from_json_text("{\"*\": 7}"), ConfigError);
    CHECK_THROWS_AS(MockLlmClient::from_file("/no/such/file.json"),
                    ConfigError);
}

TEST_CASE("degenerate inputs are rejected") {
    ScriptedClient client;
    client.responses = {"1"};
    CHECK_THROWS_AS(filter_properties({}, "d", client), StructureError);
    CHECK_THROWS_AS(filter_properties(kItems, "", client), StructureError);
    CHECK_THROWS_AS(filter_properties(kItems, "d", client, 0), ConfigError);
    CHECK_THROWS_AS(filter_properties(kItems, "d", client, 3, 0), ConfigError);
}

TEST_CASE("endpoint URLs must carry a scheme") {
    CHECK_THROWS_AS(HttpLlmClient("localhost:8080", {}), ConfigError);
    CHECK_NOTHROW(HttpLlmClient("http://localhost:8080", {}));
}
