#pragma once

#include "svagen/check.hpp"
#include "svagen/llm.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svagen {

struct RunConfig {
    std::string grammar_path;
    std::string signals_path;
    std::vector<std::string> diagram_paths; // >= 1
    std::string text_path;                  // empty = skip LLM stage
    std::string out_dir;

    int jobs = 1;
    uint64_t max_templates = 1000000;
    int tautology_margin = 2;
    bool dump_cnf = false;

    std::string llm_endpoint;   // HTTP client when set
    std::string llm_model = "o1";
    int llm_runs = 3;
    size_t llm_block_size = 100;
    std::string mock_fixtures;  // scripted client when set (wins over HTTP)
};

struct PropertyRecord {
    size_t candidate_index = 0;
    std::string sva;
    std::string nl;
    size_t template_index = 0;
    std::string derivation;
    std::vector<std::string> diagrams; // checked against
};

struct CheckReport {
    int schema_version = 1;
    std::string config_fingerprint;

    size_t n_templates = 0;
    size_t n_candidates = 0;
    size_t n_after_tautology = 0;
    size_t n_after_vacuity = 0;
    size_t n_checked = 0;
    size_t n_extracted = 0;
    size_t n_final = 0;
    bool llm_skipped = true;

    std::vector<PropertyRecord> final_properties;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms; // written to a separate file

    std::string to_json(bool include_timings = false) const;
};

// Runs grammar -> templates -> candidates -> tautology/vacuity pruning ->
// SAT filtering -> optional LLM filtering, writing properties.sva,
// properties.nl, report.json, timings.json and transcripts/ under out_dir.
// Timings live outside report.json so the report is byte-reproducible.
CheckReport run_pipeline(const RunConfig &cfg);

} // namespace svagen
