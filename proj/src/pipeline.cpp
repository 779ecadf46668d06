#include "svagen/pipeline.hpp"

#include "svagen/diagram.hpp"
#include "svagen/errors.hpp"
#include "svagen/grammar.hpp"
#include "svagen/instantiate.hpp"
#include "svagen/inventory.hpp"
#include "svagen/render.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace svagen {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

class StageClock {
public:
    explicit StageClock(std::map<std::string, double> &out) : out_(out) {}
    void lap(const std::string &stage) {
        auto now = std::chrono::steady_clock::now();
        out_[stage] =
            std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }

private:
    std::map<std::string, double> &out_;
    std::chrono::steady_clock::time_point last_ =
        std::chrono::steady_clock::now();
};

std::string fingerprint(const RunConfig &cfg, const std::string &grammar,
                        const std::string &signals,
                        const std::vector<std::string> &diagram_texts,
                        const std::string &description) {
    // Content-based and independent of worker count, so reports from
    // equivalent runs compare byte-for-byte.
    std::ostringstream ss;
    ss << grammar << '\x1f' << signals << '\x1f';
    for (const auto &d : diagram_texts)
        ss << d << '\x1f';
    ss << description << '\x1f' << cfg.max_templates << '\x1f'
       << cfg.tautology_margin << '\x1f' << cfg.llm_model << '\x1f'
       << cfg.llm_runs << '\x1f' << cfg.llm_block_size;
    return prompt_hash(ss.str());
}

ordered_json report_json(const CheckReport &r, bool include_timings) {
    ordered_json j;
    j["schema_version"] = r.schema_version;
    j["config_fingerprint"] = r.config_fingerprint;
    ordered_json counts;
    counts["templates"] = r.n_templates;
    counts["candidates"] = r.n_candidates;
    counts["after_tautology"] = r.n_after_tautology;
    counts["after_vacuity"] = r.n_after_vacuity;
    counts["checked"] = r.n_checked;
    counts["extracted"] = r.n_extracted;
    counts["final"] = r.n_final;
    j["counts"] = std::move(counts);
    j["llm_skipped"] = r.llm_skipped;
    ordered_json props = ordered_json::array();
    for (const auto &p : r.final_properties) {
        ordered_json e;
        e["candidate_index"] = p.candidate_index;
        e["sva"] = p.sva;
        e["nl"] = p.nl;
        e["template_index"] = p.template_index;
        e["derivation"] = p.derivation;
        e["diagrams"] = p.diagrams;
        props.push_back(std::move(e));
    }
    j["properties"] = std::move(props);
    j["warnings"] = r.warnings;
    if (include_timings)
        j["timings_ms"] = r.timings_ms;
    return j;
}

std::string listing(const std::vector<PropertyRecord> &props, bool nl) {
    std::ostringstream out;
    for (const auto &p : props)
        out << (nl ? p.nl : p.sva) << "\n";
    return out.str();
}

} // namespace

std::string CheckReport::to_json(bool include_timings) const {
    return report_json(*this, include_timings).dump(2) + "\n";
}

CheckReport run_pipeline(const RunConfig &cfg) {
    if (cfg.diagram_paths.empty())
        throw ConfigError("at least one diagram is required");
    if (cfg.llm_runs < 1)
        throw ConfigError("--llm-runs must be >= 1");

    CheckReport report;
    StageClock clock(report.timings_ms);

    std::string grammar_text = read_file(cfg.grammar_path);
    std::string signals_text = read_file(cfg.signals_path);
    std::vector<std::string> diagram_texts;
    for (const auto &p : cfg.diagram_paths)
        diagram_texts.push_back(read_file(p));
    std::string description =
        cfg.text_path.empty() ? std::string() : read_file(cfg.text_path);

    SignalInventory inv = parse_signals(signals_text);
    std::vector<TimingDiagram> diagrams;
    for (size_t i = 0; i < diagram_texts.size(); ++i) {
        TimingDiagram td = parse_diagram(diagram_texts[i], inv);
        if (td.name.empty())
            td.name = fs::path(cfg.diagram_paths[i]).stem().string();
        diagrams.push_back(std::move(td));
    }
    report.config_fingerprint =
        fingerprint(cfg, grammar_text, signals_text, diagram_texts,
                    description);
    clock.lap("parse_inputs");

    Grammar grammar = parse_grammar(grammar_text);
    std::vector<TemplateInfo> templates =
        enumerate_templates(grammar, cfg.max_templates);
    report.n_templates = templates.size();
    clock.lap("templates");

    std::vector<Candidate> candidates =
        generate_candidates(templates, inv, &report.warnings);
    report.n_candidates = candidates.size();
    clock.lap("candidates");

    fs::create_directories(cfg.out_dir);
    fs::path out(cfg.out_dir);

    CdclBackend backend;
    CheckOptions check_opts;
    check_opts.jobs = cfg.jobs;
    if (cfg.dump_cnf) {
        fs::create_directories(out / "cnf");
        check_opts.dump_cnf_dir = (out / "cnf").string();
    }

    // Pruning and checking track original candidate indices for lineage.
    std::vector<size_t> current(candidates.size());
    for (size_t i = 0; i < current.size(); ++i)
        current[i] = i;
    auto subset = [&](const std::vector<size_t> &keep) {
        std::vector<PropertyNode> props;
        std::vector<size_t> mapped;
        for (size_t k : keep) {
            props.push_back(candidates[current[k]].ast);
            mapped.push_back(current[k]);
        }
        current = std::move(mapped);
        return props;
    };

    std::vector<PropertyNode> props;
    for (size_t i : current)
        props.push_back(candidates[i].ast);

    props = subset(remove_tautologies(props, inv, backend,
                                      cfg.tautology_margin, cfg.jobs));
    report.n_after_tautology = props.size();
    clock.lap("tautology");

    props = subset(remove_vacuous(props, diagrams, inv, backend, cfg.jobs));
    report.n_after_vacuity = props.size();
    clock.lap("vacuity");

    FilterResult filtered =
        filter_candidates(props, diagrams, inv, backend, check_opts);
    props = subset(filtered.verified);
    report.n_checked = props.size();
    clock.lap("sat_filter");

    std::vector<std::string> diagram_names;
    for (const auto &td : diagrams)
        diagram_names.push_back(td.name);

    auto record_of = [&](size_t checked_pos) {
        PropertyRecord rec;
        rec.candidate_index = current[checked_pos];
        rec.sva = render_sva(props[checked_pos]);
        rec.nl = render_nl(props[checked_pos]);
        rec.template_index = candidates[rec.candidate_index].template_index;
        rec.derivation = templates[rec.template_index].derivation;
        rec.diagrams = diagram_names;
        return rec;
    };

    // Checked-set artifacts are written before the LLM stage so that an LLM
    // failure still leaves the formally filtered results on disk.
    std::vector<PropertyRecord> checked_records;
    for (size_t i = 0; i < props.size(); ++i)
        checked_records.push_back(record_of(i));
    write_file(out / "properties.sva", listing(checked_records, false));
    write_file(out / "properties.nl", listing(checked_records, true));

    if (cfg.text_path.empty()) {
        report.llm_skipped = true;
        report.n_extracted = report.n_final = props.size();
        report.final_properties = std::move(checked_records);
    } else {
        std::unique_ptr<LlmClient> client;
        if (!cfg.mock_fixtures.empty()) {
            client = std::make_unique<MockLlmClient>(
                MockLlmClient::from_file(cfg.mock_fixtures));
        } else if (!cfg.llm_endpoint.empty()) {
            LlmParams params;
            params.model = cfg.llm_model;
            client = std::make_unique<HttpLlmClient>(cfg.llm_endpoint, params);
        } else {
            throw ConfigError(
                "--text requires --llm-endpoint or --mock-fixtures");
        }

        std::vector<std::string> nl_items;
        for (const auto &rec : checked_records)
            nl_items.push_back(rec.nl);
        if (nl_items.empty())
            throw StructureError("no properties survived the SAT stage; "
                                 "nothing to extract");

        ExtractionResult ex =
            filter_properties(nl_items, description, *client, cfg.llm_runs,
                              cfg.llm_block_size);
        report.llm_skipped = false;
        report.n_extracted = report.n_final = ex.final_indices.size();
        for (size_t i : ex.final_indices)
            report.final_properties.push_back(checked_records[i]);
        for (const auto &h : ex.hallucinations)
            report.warnings.push_back("hallucinated selection dropped: " + h);
        for (const auto &w : ex.warnings)
            report.warnings.push_back(w);

        fs::create_directories(out / "transcripts");
        for (const auto &tr : ex.transcripts) {
            std::ostringstream body;
            body << tr.prompt << "\n--- response ---\n"
                 << (tr.failed ? "<request failed>" : tr.response) << "\n";
            write_file(out / "transcripts" /
                           ("block" + std::to_string(tr.block) + "_run" +
                            std::to_string(tr.run) + ".txt"),
                       body.str());
        }
        write_file(out / "properties.sva",
                   listing(report.final_properties, false));
        write_file(out / "properties.nl",
                   listing(report.final_properties, true));
    }
    clock.lap("llm_filter");

    write_file(out / "report.json", report.to_json());
    ordered_json timings;
    timings["timings_ms"] = report.timings_ms;
    write_file(out / "timings.json", timings.dump(2) + "\n");
    return report;
}

} // namespace svagen
