// SPDX-License-Identifier: Apache-2.0
// Command-line runner: experiments, corpus utilities, report generation,
// cassette verification.
#include "vultriad/corpus.hpp"
#include "vultriad/digest.hpp"
#include "vultriad/errors.hpp"
#include "vultriad/kvconfig.hpp"
#include "vultriad/metrics.hpp"
#include "vultriad/orchestrator.hpp"
#include "vultriad/report.hpp"
#include "vultriad/strings.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

namespace fs = std::filesystem;
using vultriad::kvconfig::KvConfig;
using json = nlohmann::json;

std::string env_or(const char* primary, const char* fallback, const std::string& dflt) {
    if (const char* v = std::getenv(primary); v && *v) return v;
    if (const char* v = std::getenv(fallback); v && *v) return v;
    return dflt;
}

struct RunOptions {
    std::string config_path;
    std::string corpus_path;
    std::string context_path;
    std::string out_dir = "out";
    std::string backend = "replay";
    std::string cassette;
    std::string mode = "mavul";
    std::string model_id;
    int rounds = -1;
    int max_steps = -1;
    long long seed = -1;
    long long sample_n = -1;
    int workers = -1;
    bool no_judge = false;
    long long stop_after = -1;
    long long tool_budget = -1;
    long long max_requests = -1;
    double max_cost = -1;
    int rate_limit_rpm = -1;
};

/// Resolution order: flag > config file > default.
struct Effective {
    vultriad::RunConfig cfg;
    std::string corpus_path, context_path, out_dir, backend, cassette, mode;
};

Effective resolve(const CLI::App* cmd, const RunOptions& opt) {
    KvConfig file;
    if (!opt.config_path.empty()) file = KvConfig::from_file(opt.config_path);

    auto given = [&](const char* flag) {
        const CLI::Option* option = cmd->get_option_no_throw(flag);
        return option != nullptr && option->count() > 0;
    };
    auto pick_str = [&](const char* flag, const std::string& flag_value, const char* key,
                        const std::string& dflt) {
        if (given(flag)) return flag_value;
        return file.get_or(key, dflt);
    };
    auto pick_int = [&](const char* flag, long long flag_value, const char* key, long long dflt) {
        if (given(flag)) return flag_value;
        return file.get_int_or(key, dflt);
    };

    Effective eff;
    eff.mode = pick_str("--mode", opt.mode, "mode", "mavul");
    eff.cfg.apply_mode(vultriad::mode_from_string(eff.mode));
    eff.cfg.model_id = pick_str("--model", opt.model_id, "model_id", eff.cfg.model_id);
    eff.cfg.max_rounds = static_cast<int>(pick_int("--rounds", opt.rounds, "rounds", 3));
    eff.cfg.max_internal_steps =
        static_cast<int>(pick_int("--max-steps", opt.max_steps, "max_steps", 10));
    eff.cfg.seed = static_cast<std::uint64_t>(pick_int("--seed", opt.seed, "seed", 0));
    eff.cfg.sample_n =
        static_cast<std::size_t>(pick_int("--sample-n", opt.sample_n, "sample_n", 0));
    eff.cfg.workers = static_cast<int>(pick_int("--workers", opt.workers, "workers", 1));
    eff.cfg.judge_enabled = given("--no-judge") ? !opt.no_judge : file.get_bool_or("judge", true);
    eff.cfg.stop_after_pairs =
        static_cast<std::size_t>(pick_int("--stop-after", opt.stop_after, "stop_after", 0));
    eff.cfg.tool_budget_tokens = static_cast<std::size_t>(
        pick_int("--tool-budget", opt.tool_budget, "tool_budget_tokens", 2048));
    eff.cfg.max_output_tokens =
        static_cast<int>(file.get_int_or("max_output_tokens", eff.cfg.max_output_tokens));
    eff.cfg.temperature = file.get_double_or("temperature", 0.0);
    eff.cfg.rate_limit_rpm = static_cast<int>(
        given("--rate-limit") ? opt.rate_limit_rpm : file.get_int_or("rate_limit_rpm", 0));
    eff.cfg.budgets.max_requests = static_cast<std::uint64_t>(
        pick_int("--max-requests", opt.max_requests, "max_requests", 0));
    eff.cfg.budgets.max_cost_usd =
        given("--max-cost") ? opt.max_cost : file.get_double_or("max_cost_usd", 0.0);

    eff.corpus_path = pick_str("--corpus", opt.corpus_path, "corpus", "");
    eff.context_path = pick_str("--context", opt.context_path, "context", "");
    eff.out_dir = pick_str("--out", opt.out_dir, "out", "out");
    eff.backend = pick_str("--backend", opt.backend, "backend", "replay");
    eff.cassette = pick_str("--cassette", opt.cassette, "cassette", "");
    return eff;
}

vultriad::llm::HttpOptions http_options(const vultriad::RunConfig& cfg) {
    vultriad::llm::HttpOptions http;
    http.base_url = env_or("VULTRIAD_BASE_URL", "OPENAI_BASE_URL", "https://api.openai.com/v1");
    http.api_key = env_or("VULTRIAD_API_KEY", "OPENAI_API_KEY", "");
    http.rate_limit_rpm = cfg.rate_limit_rpm;
    return http;
}

vultriad::orch::ExperimentSetup
build_setup(const Effective& eff, std::unique_ptr<vultriad::llm::Backend>& backend_holder) {
    if (eff.corpus_path.empty()) throw vultriad::ArgumentError("no corpus file given");
    if (eff.context_path.empty()) throw vultriad::ArgumentError("no context path given");
    eff.cfg.validate();

    vultriad::orch::ExperimentSetup setup;
    setup.pairs = vultriad::corpus::load_corpus(eff.corpus_path);
    setup.ctx = vultriad::context::load_context_set(eff.context_path);
    setup.cfg = eff.cfg;
    setup.out_dir = eff.out_dir;
    setup.backend_kind = eff.backend;
    setup.corpus_digest = vultriad::digest::sha256_file_hex(eff.corpus_path);
    if (fs::is_directory(eff.context_path)) {
        for (const auto& de : fs::directory_iterator(eff.context_path))
            if (de.path().extension() == ".json")
                setup.context_digests[de.path().filename().string()] =
                    vultriad::digest::sha256_file_hex(de.path().string());
    } else {
        setup.context_digests[fs::path(eff.context_path).filename().string()] =
            vultriad::digest::sha256_file_hex(eff.context_path);
    }
    if (!eff.cassette.empty() && fs::exists(eff.cassette))
        setup.cassette_digest = vultriad::digest::sha256_file_hex(eff.cassette);

    setup.config_echo = {{"corpus", eff.corpus_path},
                         {"context", eff.context_path},
                         {"out", eff.out_dir},
                         {"cassette", eff.cassette}};

    backend_holder =
        vultriad::llm::make_backend(eff.backend, eff.cassette, http_options(eff.cfg));
    setup.backend = backend_holder.get();
    return setup;
}

int cmd_run(const CLI::App* cmd, const RunOptions& opt) {
    const Effective eff = resolve(cmd, opt);
    std::unique_ptr<vultriad::llm::Backend> backend;
    vultriad::orch::ExperimentSetup setup = build_setup(eff, backend);

    vultriad::orch::ExperimentResult result = vultriad::orch::run_experiment(setup);

    std::cout << vultriad::report::format_run_report(eff.mode, result.judged, result.naive,
                                                     result.primary.error_rate);
    std::cout << "Pairs evaluated: " << result.pairs_evaluated
              << " (resumed: " << result.pairs_skipped_resume << ")\n";
    char cost[32];
    std::snprintf(cost, sizeof(cost), "%.4f", result.usage.estimated_cost_usd);
    std::cout << "Requests: " << result.usage.request_count
              << "  prompt tokens: " << result.usage.prompt_tokens
              << "  completion tokens: " << result.usage.completion_tokens
              << "  est. cost: $" << cost << "\n";
    std::cout << "Artifacts: " << eff.out_dir << "\n";

    if (result.status == vultriad::orch::RunStatus::budget_exhausted) {
        std::cerr << "budget exhausted; partial results persisted\n";
        return 2;
    }
    return 0;
}

int cmd_stats(const CLI::App* cmd, const RunOptions& opt) {
    const Effective eff = resolve(cmd, opt);
    if (eff.corpus_path.empty() || eff.context_path.empty())
        throw vultriad::ArgumentError("stats needs --corpus and --context");
    auto pairs = vultriad::corpus::load_corpus(eff.corpus_path);
    auto ctx = vultriad::context::load_context_set(eff.context_path);
    auto stats = vultriad::corpus::compute_stats(pairs, ctx);
    std::cout << vultriad::report::format_stats_block("Corpus statistics", stats);
    return 0;
}

int cmd_clean(const CLI::App* cmd, const RunOptions& opt) {
    const Effective eff = resolve(cmd, opt);
    if (eff.corpus_path.empty() || eff.context_path.empty())
        throw vultriad::ArgumentError("clean needs --corpus and --context");
    auto pairs = vultriad::corpus::load_corpus(eff.corpus_path);
    auto ctx = vultriad::context::load_context_set(eff.context_path);
    auto cleaned = vultriad::corpus::clean_corpus(pairs, ctx);

    fs::create_directories(eff.out_dir);
    vultriad::corpus::save_corpus(cleaned.kept, eff.out_dir + "/kept.jsonl");
    std::ofstream dropped(eff.out_dir + "/dropped.jsonl", std::ios::trunc);
    for (const auto& [pair_id, reason] : cleaned.dropped)
        dropped << json{{"pair_id", pair_id}, {"reason", vultriad::corpus::to_string(reason)}}
                       .dump()
                << '\n';
    std::cout << "kept " << cleaned.kept.size() << ", dropped " << cleaned.dropped.size()
              << " -> " << eff.out_dir << "\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& paths) {
    std::vector<vultriad::report::ComparisonRow> rows;
    for (const auto& arg : paths) {
        fs::path p(arg);
        fs::path metrics_path = fs::is_directory(p) ? p / "metrics.json" : p;
        std::ifstream in(metrics_path);
        if (!in) throw vultriad::IoError("cannot open " + metrics_path.string());
        json doc = json::parse(in);

        vultriad::report::ComparisonRow row;
        row.method = metrics_path.parent_path().filename().string();
        fs::path manifest_path = metrics_path.parent_path() / "manifest.json";
        if (std::ifstream m(manifest_path); m) {
            json manifest = json::parse(m, nullptr, false);
            if (!manifest.is_discarded())
                row.method = manifest.value("config", json::object()).value("mode", row.method);
        }

        auto load_summary = [](const json& block) {
            vultriad::metrics::MetricsSummary s;
            s.n_pairs = block.value("n_pairs", std::size_t{0});
            const json& pct = block.value("percentages", json::object());
            s.p_c = pct.value("p_c", 0.0);
            s.p_v = pct.value("p_v", 0.0);
            s.p_b = pct.value("p_b", 0.0);
            s.p_r = pct.value("p_r", 0.0);
            return s;
        };
        if (doc.contains("judged") && !doc.at("judged").is_null())
            row.judged = load_summary(doc.at("judged"));
        if (doc.contains("naive") && !doc.at("naive").is_null())
            row.naive = load_summary(doc.at("naive"));
        if (doc.contains("error_rate") && !doc.at("error_rate").is_null())
            row.error_rate = doc.at("error_rate").get<double>();
        rows.push_back(std::move(row));
    }
    std::cout << vultriad::report::format_comparison(rows);
    return 0;
}

int cmd_replay_verify(const CLI::App* cmd, const RunOptions& opt) {
    Effective eff = resolve(cmd, opt);
    if (eff.cassette.empty()) throw vultriad::ArgumentError("replay-verify needs --cassette");
    eff.backend = "replay";

    const fs::path tmp =
        fs::temp_directory_path() /
        ("vultriad-verify-" + vultriad::digest::sha256_file_hex(eff.cassette).substr(0, 12));
    fs::remove_all(tmp);
    eff.out_dir = tmp.string();

    std::unique_ptr<vultriad::llm::Backend> backend;
    vultriad::orch::ExperimentSetup setup = build_setup(eff, backend);
    try {
        vultriad::orch::ExperimentResult result = vultriad::orch::run_experiment(setup);
        std::cout << "replay verified: " << result.pairs_evaluated << " pairs, "
                  << result.usage.request_count << " requests\n";
    } catch (const vultriad::CassetteMissError& e) {
        std::cerr << "replay verification failed: " << e.what() << "\n";
        fs::remove_all(tmp);
        return 1;
    }
    fs::remove_all(tmp);
    return 0;
}

void add_common_options(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--config", opt.config_path, "key = value config file");
    cmd->add_option("--corpus", opt.corpus_path, "corpus JSONL file");
    cmd->add_option("--context", opt.context_path, "context store file or directory");
    cmd->add_option("--out", opt.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pairwise multi-agent vulnerability detection engine"};
    app.require_subcommand(1);

    RunOptions opt;

    CLI::App* run = app.add_subcommand("run", "run an experiment");
    add_common_options(run, opt);
    run->add_option("--mode", opt.mode, "mavul | cot | single-agent | no-context");
    run->add_option("--rounds", opt.rounds, "max negotiation rounds");
    run->add_option("--max-steps", opt.max_steps, "max analyst tool steps per round");
    run->add_option("--seed", opt.seed, "sampling seed");
    run->add_option("--sample-n", opt.sample_n, "sample size (0 = all)");
    run->add_option("--backend", opt.backend, "live | record | replay | scripted");
    run->add_option("--cassette", opt.cassette, "cassette path for record/replay/scripted");
    run->add_flag("--no-judge", opt.no_judge, "disable the evaluation judge");
    run->add_option("--workers", opt.workers, "concurrent pairs");
    run->add_option("--model", opt.model_id, "model identifier");
    run->add_option("--stop-after", opt.stop_after, "stop after N pairs (test hook)");
    run->add_option("--tool-budget", opt.tool_budget, "observation budget in tokens");
    run->add_option("--max-requests", opt.max_requests, "request budget (0 = unlimited)");
    run->add_option("--max-cost", opt.max_cost, "cost budget in USD (0 = unlimited)");
    run->add_option("--rate-limit", opt.rate_limit_rpm, "requests per minute (0 = unlimited)");

    CLI::App* stats = app.add_subcommand("stats", "print corpus statistics");
    add_common_options(stats, opt);

    CLI::App* clean = app.add_subcommand("clean", "clean a corpus, write kept + dropped ledger");
    add_common_options(clean, opt);

    std::vector<std::string> report_paths;
    CLI::App* report = app.add_subcommand("report", "merge run outputs into comparison tables");
    report->add_option("paths", report_paths, "out dirs or metrics.json files")->required();

    CLI::App* verify = app.add_subcommand("replay-verify", "dry-run an experiment from a cassette");
    add_common_options(verify, opt);
    verify->add_option("--mode", opt.mode, "mavul | cot | single-agent | no-context");
    verify->add_option("--rounds", opt.rounds, "max negotiation rounds");
    verify->add_option("--max-steps", opt.max_steps, "max analyst tool steps per round");
    verify->add_option("--seed", opt.seed, "sampling seed");
    verify->add_option("--sample-n", opt.sample_n, "sample size (0 = all)");
    verify->add_option("--cassette", opt.cassette, "cassette path");
    verify->add_flag("--no-judge", opt.no_judge, "disable the evaluation judge");
    verify->add_option("--tool-budget", opt.tool_budget, "observation budget in tokens");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run, opt);
        if (stats->parsed()) return cmd_stats(stats, opt);
        if (clean->parsed()) return cmd_clean(clean, opt);
        if (report->parsed()) return cmd_report(report_paths);
        if (verify->parsed()) return cmd_replay_verify(verify, opt);
    } catch (const vultriad::CassetteMissError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vultriad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
