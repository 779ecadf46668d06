// svagen: grammar-driven SVA property generation and filtering.
//
// Exit codes: 0 success; 2 bad usage/config; 3 grammar errors (including the
// enumeration cap); 4 input parse errors (signals, diagrams, properties);
// 5 solver errors; 6 LLM errors; 7 malformed intermediate data; 1 anything
// else.

#include "svagen/ast_json.hpp"
#include "svagen/check.hpp"
#include "svagen/diagram.hpp"
#include "svagen/errors.hpp"
#include "svagen/grammar.hpp"
#include "svagen/instantiate.hpp"
#include "svagen/inventory.hpp"
#include "svagen/llm.hpp"
#include "svagen/pipeline.hpp"
#include "svagen/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using namespace svagen;
using nlohmann::ordered_json;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<PropertyNode> read_properties(const std::string &path,
                                          const SignalInventory *inv) {
    std::vector<PropertyNode> out;
    std::string text = read_file(path);
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        // '#' starts a comment, except inside '##k' delay tokens
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] != '#')
                continue;
            if (i + 1 < line.size() && line[i + 1] == '#') {
                ++i;
                continue;
            }
            line = line.substr(0, i);
            break;
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        out.push_back(parse_sva(line, inv));
    }
    if (out.empty())
        throw ConfigError("no properties in '" + path + "'");
    return out;
}

void print_properties(const std::vector<PropertyNode> &props,
                      const std::string &format, bool allow_holes) {
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto &p : props)
            arr.push_back(node_to_json(p));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    for (const auto &p : props)
        std::cout << (format == "nl" ? render_nl(p)
                                     : render_sva(p, std::nullopt, allow_holes))
                  << "\n";
}

struct CommonInputs {
    std::string grammar_path, signals_path, props_path;
    std::vector<std::string> diagram_paths;
};

std::vector<TimingDiagram> load_diagrams(
    const std::vector<std::string> &paths, const SignalInventory &inv) {
    std::vector<TimingDiagram> out;
    for (const auto &p : paths) {
        TimingDiagram td = parse_diagram(read_file(p), inv);
        if (td.name.empty()) {
            size_t slash = p.find_last_of('/');
            td.name = slash == std::string::npos ? p : p.substr(slash + 1);
        }
        out.push_back(std::move(td));
    }
    return out;
}

int dispatch(int argc, char **argv) {
    CLI::App app{"Grammar-driven SVA property generation, SAT filtering "
                 "against timing diagrams, and LLM-based extraction"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "sva";
    CommonInputs in;
    int jobs = 1, margin = 2, llm_runs = 3;
    uint64_t max_templates = 1000000;
    bool dump_cnf = false;
    std::string text_path, out_dir, llm_endpoint, llm_model = "o1",
                             mock_fixtures;
    size_t block_size = 100;

    auto add_format = [&](CLI::App *cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"sva", "nl", "json"}));
    };

    CLI::App *run = app.add_subcommand("run", "Full pipeline");
    run->add_option("--grammar", cfg.grammar_path)->required();
    run->add_option("--signals", cfg.signals_path)->required();
    run->add_option("--diagrams", cfg.diagram_paths, "Diagram file (repeatable)")
        ->required();
    run->add_option("--text", cfg.text_path, "Protocol description");
    run->add_option("--out", cfg.out_dir, "Output directory")->required();
    run->add_option("--jobs", cfg.jobs)->check(CLI::PositiveNumber);
    run->add_option("--llm-endpoint", cfg.llm_endpoint);
    run->add_option("--llm-model", cfg.llm_model);
    run->add_option("--llm-runs", cfg.llm_runs)->check(CLI::PositiveNumber);
    run->add_option("--llm-block-size", cfg.llm_block_size)
        ->check(CLI::PositiveNumber);
    run->add_option("--mock-fixtures", cfg.mock_fixtures);
    run->add_option("--max-templates", cfg.max_templates);
    run->add_option("--tautology-margin", cfg.tautology_margin)
        ->check(CLI::NonNegativeNumber);
    run->add_flag("--dump-cnf", cfg.dump_cnf);

    CLI::App *templates = app.add_subcommand(
        "templates", "Enumerate grammar templates");
    templates->add_option("--grammar", in.grammar_path)->required();
    templates->add_option("--max-templates", max_templates);
    add_format(templates);

    CLI::App *generate = app.add_subcommand(
        "generate", "Instantiate templates against a signal inventory");
    generate->add_option("--grammar", in.grammar_path)->required();
    generate->add_option("--signals", in.signals_path)->required();
    generate->add_option("--max-templates", max_templates);
    add_format(generate);

    CLI::App *check = app.add_subcommand(
        "check", "Formally filter properties against timing diagrams");
    check->add_option("--props", in.props_path, "Property file, one per line")
        ->required();
    check->add_option("--signals", in.signals_path)->required();
    check->add_option("--diagrams", in.diagram_paths)->required();
    check->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    check->add_option("--tautology-margin", margin)
        ->check(CLI::NonNegativeNumber);
    check->add_option("--dump-cnf", out_dir, "Directory for DIMACS dumps");
    add_format(check);

    CLI::App *filter = app.add_subcommand(
        "filter", "Extract properties matching a textual description");
    filter->add_option("--props", in.props_path)->required();
    filter->add_option("--signals", in.signals_path)->required();
    filter->add_option("--text", text_path)->required();
    filter->add_option("--llm-endpoint", llm_endpoint);
    filter->add_option("--llm-model", llm_model);
    filter->add_option("--llm-runs", llm_runs)->check(CLI::PositiveNumber);
    filter->add_option("--llm-block-size", block_size)
        ->check(CLI::PositiveNumber);
    filter->add_option("--mock-fixtures", mock_fixtures);
    add_format(filter);

    CLI::App *render = app.add_subcommand(
        "render", "Re-render a property file");
    render->add_option("--props", in.props_path)->required();
    render->add_option("--signals", in.signals_path,
                       "Optional inventory for name resolution");
    add_format(render);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) {
        CheckReport report = run_pipeline(cfg);
        std::cout << report.to_json();
        return 0;
    }

    if (templates->parsed()) {
        Grammar g = parse_grammar(read_file(in.grammar_path));
        std::vector<PropertyNode> props;
        for (auto &t : enumerate_templates(g, max_templates))
            props.push_back(std::move(t.ast));
        print_properties(props, format, true);
        return 0;
    }

    if (generate->parsed()) {
        Grammar g = parse_grammar(read_file(in.grammar_path));
        SignalInventory inv = parse_signals(read_file(in.signals_path));
        auto tmpls = enumerate_templates(g, max_templates);
        std::vector<PropertyNode> props;
        for (auto &c : generate_candidates(tmpls, inv))
            props.push_back(std::move(c.ast));
        print_properties(props, format, false);
        return 0;
    }

    if (check->parsed()) {
        SignalInventory inv = parse_signals(read_file(in.signals_path));
        std::vector<PropertyNode> props =
            read_properties(in.props_path, &inv);
        std::vector<TimingDiagram> diagrams =
            load_diagrams(in.diagram_paths, inv);
        CdclBackend backend;
        auto not_taut = remove_tautologies(props, inv, backend, margin, jobs);
        std::vector<PropertyNode> stage;
        for (size_t i : not_taut)
            stage.push_back(props[i]);
        auto not_vac = remove_vacuous(stage, diagrams, inv, backend, jobs);
        std::vector<PropertyNode> remaining;
        for (size_t i : not_vac)
            remaining.push_back(stage[i]);
        CheckOptions opts;
        opts.jobs = jobs;
        opts.dump_cnf_dir = out_dir;
        FilterResult res =
            filter_candidates(remaining, diagrams, inv, backend, opts);
        std::vector<PropertyNode> verified;
        for (size_t i : res.verified)
            verified.push_back(remaining[i]);
        std::cerr << props.size() << " candidates, "
                  << stage.size() << " after tautology pruning, "
                  << remaining.size() << " after vacuity pruning, "
                  << verified.size() << " verified\n";
        print_properties(verified, format, false);
        return 0;
    }

    if (filter->parsed()) {
        SignalInventory inv = parse_signals(read_file(in.signals_path));
        std::vector<PropertyNode> props =
            read_properties(in.props_path, &inv);
        std::vector<std::string> nl_items;
        for (const auto &p : props)
            nl_items.push_back(render_nl(p));

        std::unique_ptr<LlmClient> client;
        if (!mock_fixtures.empty()) {
            client = std::make_unique<MockLlmClient>(
                MockLlmClient::from_file(mock_fixtures));
        } else if (!llm_endpoint.empty()) {
            LlmParams params;
            params.model = llm_model;
            client = std::make_unique<HttpLlmClient>(llm_endpoint, params);
        } else {
            throw ConfigError("need --llm-endpoint or --mock-fixtures");
        }

        ExtractionResult ex = filter_properties(
            nl_items, read_file(text_path), *client, llm_runs, block_size);
        for (const auto &w : ex.warnings)
            std::cerr << "warning: " << w << "\n";
        for (const auto &h : ex.hallucinations)
            std::cerr << "hallucinated selection dropped: " << h << "\n";
        std::vector<PropertyNode> selected;
        for (size_t i : ex.final_indices)
            selected.push_back(props[i]);
        print_properties(selected, format, false);
        return 0;
    }

    if (render->parsed()) {
        SignalInventory inv;
        if (!in.signals_path.empty())
            inv = parse_signals(read_file(in.signals_path));
        std::vector<PropertyNode> props = read_properties(
            in.props_path, in.signals_path.empty() ? nullptr : &inv);
        print_properties(props, format, false);
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return dispatch(argc, argv);
    } catch (const svagen::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const svagen::CapExceededError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const svagen::GrammarError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const svagen::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const svagen::SolverError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const svagen::LlmError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const svagen::StructureError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 7;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
