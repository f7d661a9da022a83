#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/pipeline.hpp"
#include "wikitrends/synth_fixture.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace wikitrends;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

using StageFn = void (*)(const PipelineConfig&, const LanguageInputs&);

// Runs one per-language stage for every configured language (or the one
// selected with --lang).
void for_languages(const PipelineConfig& config, const std::string& only, StageFn fn) {
    bool matched = false;
    for (const LanguageInputs& lang : config.languages) {
        if (!only.empty() && lang.code != only) continue;
        matched = true;
        fn(config, lang);
    }
    if (!matched) throw ConfigError("--lang " + only + " is not in the config");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect trending topics from pageview series over a hyperlink graph"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string output_dir;
    std::string log_level = "warn";
    std::string only_lang;
    uint64_t seed = 0;
    app.add_option("--config", config_path, "Pipeline config JSON");
    app.add_option("--output", output_dir, "Override the config's output directory");
    CLI::Option* seed_opt = app.add_option("--seed", seed, "Override the config's seed");
    app.add_option("--log-level", log_level, "debug, info, warn or error")
        ->check(CLI::IsMember({"debug", "info", "warn", "error"}));
    app.add_option("--lang", only_lang, "Restrict a stage subcommand to one language");

    CLI::App* cmd_run = app.add_subcommand("run", "Every stage, alignment, manifest");
    CLI::App* cmd_ingest =
        app.add_subcommand("ingest", "Build the view matrix and filtered inputs");
    CLI::App* cmd_detect = app.add_subcommand("detect", "Detect per-page view bursts");
    CLI::App* cmd_cluster =
        app.add_subcommand("cluster", "Build the trend graph and its communities");
    CLI::App* cmd_keywords =
        app.add_subcommand("keywords", "Extract cluster keywords (and topics)");
    CLI::App* cmd_label = app.add_subcommand("label", "Label pages and clusters");
    CLI::App* cmd_trends = app.add_subcommand("trends", "Assemble and export trends");
    CLI::App* cmd_compare = app.add_subcommand("compare", "Align trends across languages");
    CLI::App* cmd_synth = app.add_subcommand("synth", "Write the bundled demo dataset");
    std::string synth_dir;
    cmd_synth->add_option("--dir", synth_dir, "Target directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    if (log_level == "debug")
        set_log_level(LogLevel::debug);
    else if (log_level == "info")
        set_log_level(LogLevel::info);
    else if (log_level == "error")
        set_log_level(LogLevel::error);
    else
        set_log_level(LogLevel::warn);

    try {
        if (cmd_synth->parsed()) {
            const auto config =
                write_demo_fixture(synth_dir, seed_opt->count() ? seed : 42);
            std::cout << config.string() << "\n";
            return kExitOk;
        }

        if (config_path.empty()) throw ConfigError("--config is required");
        PipelineConfig config = load_pipeline_config(config_path);
        if (!output_dir.empty()) config.output_dir = output_dir;
        if (seed_opt->count()) config.seed = seed;

        if (cmd_run->parsed()) {
            run_pipeline(config);
        } else if (cmd_ingest->parsed()) {
            for_languages(config, only_lang, run_ingest_stage);
        } else if (cmd_detect->parsed()) {
            for_languages(config, only_lang, run_detect_stage);
        } else if (cmd_cluster->parsed()) {
            for_languages(config, only_lang, run_cluster_stage);
        } else if (cmd_keywords->parsed()) {
            for_languages(config, only_lang, run_keywords_stage);
        } else if (cmd_label->parsed()) {
            for_languages(config, only_lang, run_label_stage);
        } else if (cmd_trends->parsed()) {
            for_languages(config, only_lang, run_trends_stage);
        } else if (cmd_compare->parsed()) {
            run_compare_stage(config);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        log_error(e.what());
        return kExitConfig;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitData;
    } catch (const std::exception& e) {
        log_error(e.what());
        return kExitInternal;
    }
}
