// SPDX-License-Identifier: Apache-2.0
#include "vultriad/orchestrator.hpp"

#include "vultriad/errors.hpp"
#include "vultriad/report.hpp"
#include "vultriad/strings.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>

namespace vultriad::orch {

using nlohmann::json;

results::SideResult detect_function(SideContext sc, const corpus::FunctionRecord& fn,
                                    const context::ContextStore* store,
                                    const corpus::GroundTruth& truth) {
    results::SideResult result;
    result.side = sc.side;

    agents::AgentEnv env{sc.backend, sc.meter, sc.cfg, sc.events, sc.pair_id, sc.side, 1};
    agents::RoundHistory history;
    bool have_report = false;

    try {
        for (int round = 1; round <= sc.cfg.max_rounds; ++round) {
            env.round = round;
            agents::AnalystRoundResult round_result;
            try {
                round_result = agents::run_analyst_round(env, fn, store, history);
            } catch (const ContextWindowExceededError&) {
                // Compact prior rounds to (report, critique) and retry once.
                history.compacted = true;
                result.flags.insert(results::Flag::compacted);
                round_result = agents::run_analyst_round(env, fn, store, history);
            }
            have_report = true;
            result.rounds_used = round;
            result.final_report = round_result.report;
            if (round_result.format_failure) result.flags.insert(results::Flag::format_failure);

            if (!sc.cfg.architect_enabled) {
                result.consensus = true;
                break;
            }

            agents::ArchitectResult review = agents::run_architect(env, fn, round_result);
            if (review.format_failure) result.flags.insert(results::Flag::format_failure);
            if (review.critique.agreement) {
                result.consensus = true;
                break;
            }
            if (round == sc.cfg.max_rounds) break;  // last round's report stands

            history.rounds.push_back(agents::HistoryEntry{
                protocol::render_trajectory(round_result.trajectory),
                protocol::report_to_json(round_result.report), review.critique});
        }

        // The report is frozen before the judge ever sees it.
        if (sc.cfg.judge_enabled) {
            env.round = result.rounds_used;
            agents::JudgeResult verdict =
                agents::run_judge(env, result.final_report, truth, sc.side);
            if (verdict.format_failure) result.flags.insert(results::Flag::format_failure);
            result.judgment = verdict.judgment;
        }
    } catch (const BudgetExhaustedError&) {
        result.flags.insert(results::Flag::budget_exhausted);
        if (!have_report) {
            result.rounds_used = std::max(result.rounds_used, 1);
            result.final_report.is_vulnerable = false;
            result.final_report.vulnerability_type = "None";
            result.final_report.cwe_id = "N/A";
            result.final_report.explanation = agents::kFormatFailureExplanation;
            result.flags.insert(results::Flag::format_failure);
        }
    }
    return result;
}

PairResult detect_pair(llm::Backend& backend, llm::UsageMeter& meter, const RunConfig& cfg,
                       const corpus::PairRecord& pair, const context::ContextSet& ctx,
                       events::EventLog* events) {
    const context::ContextStore* store = ctx.resolve(pair.context_ref);

    PairResult result;
    result.pair_id = pair.pair_id;

    auto run_side = [&](results::Side side, const corpus::FunctionRecord& fn) {
        SideContext sc{backend, meter, cfg, events, pair.pair_id, side};
        try {
            return detect_function(sc, fn, store, pair.ground_truth);
        } catch (const CassetteMissError&) {
            throw;  // broken replay artifact: fail the run, not the pair
        } catch (const Error&) {
            results::SideResult failed;
            failed.side = side;
            failed.rounds_used = cfg.max_rounds;
            failed.final_report.explanation = agents::kFormatFailureExplanation;
            failed.flags.insert(results::Flag::format_failure);
            return failed;
        }
    };

    // Sides run sequentially and share nothing; ordering is fixed for
    // reproducible transcripts.
    result.pre = run_side(results::Side::pre_patch, pair.pre);
    result.post = run_side(results::Side::post_patch, pair.post);
    return result;
}

// ---------------------------------------------------------------------------
// Experiment pipeline

namespace {

namespace fs = std::filesystem;

struct PersistedPair {
    results::SideResult pre, post;
    bool has_pre = false, has_post = false;
    std::vector<metrics::PairOutcome> outcomes;
};

struct ResumeState {
    std::map<std::string, PersistedPair> by_pair;

    bool complete(const std::string& pair_id, bool judge_enabled) const {
        auto it = by_pair.find(pair_id);
        if (it == by_pair.end()) return false;
        const PersistedPair& p = it->second;
        if (!p.has_pre || !p.has_post) return false;
        bool has_naive = false, has_judged = false;
        for (const auto& o : p.outcomes) {
            has_naive |= o.eval_mode == metrics::EvalMode::naive;
            has_judged |= o.eval_mode == metrics::EvalMode::judged;
        }
        return has_naive && (!judge_enabled || has_judged);
    }
};

ResumeState load_resume_state(const std::string& results_path) {
    ResumeState state;
    std::ifstream in(results_path);
    if (!in) return state;
    std::string line;
    while (std::getline(in, line)) {
        if (strings::trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;  // tolerate a torn tail line
        const std::string type = j.value("type", "");
        const std::string pair_id = j.value("pair_id", "");
        if (pair_id.empty()) continue;
        if (type == "side_result") {
            results::SideResult side = results::side_result_from_json(j);
            PersistedPair& p = state.by_pair[pair_id];
            if (side.side == results::Side::pre_patch) {
                p.pre = std::move(side);
                p.has_pre = true;
            } else {
                p.post = std::move(side);
                p.has_post = true;
            }
        } else if (type == "pair_outcome") {
            state.by_pair[pair_id].outcomes.push_back(metrics::outcome_from_json(j));
        }
    }
    return state;
}

std::vector<metrics::PairOutcome> classify_pair(const std::string& pair_id,
                                                const corpus::GroundTruth& truth,
                                                const PairResult& result, bool judge_enabled) {
    std::vector<metrics::PairOutcome> outcomes;
    const auto pre_label = metrics::truth_label_for_side(truth, results::Side::pre_patch);
    const auto post_label = metrics::truth_label_for_side(truth, results::Side::post_patch);

    outcomes.push_back(metrics::make_outcome(
        pair_id, metrics::correctness(result.pre, pre_label, metrics::EvalMode::naive),
        metrics::correctness(result.post, post_label, metrics::EvalMode::naive),
        metrics::EvalMode::naive));
    if (judge_enabled) {
        outcomes.push_back(metrics::make_outcome(
            pair_id, metrics::correctness(result.pre, pre_label, metrics::EvalMode::judged),
            metrics::correctness(result.post, post_label, metrics::EvalMode::judged),
            metrics::EvalMode::judged));
    }
    return outcomes;
}

json manifest_json(const ExperimentSetup& setup, const corpus::CleanResult& cleaning,
                   std::size_t sampled) {
    const RunConfig& cfg = setup.cfg;
    json config{{"model_id", cfg.model_id},
                {"mode", to_string(cfg.mode())},
                {"max_rounds", cfg.max_rounds},
                {"max_internal_steps", cfg.max_internal_steps},
                {"tools_enabled", cfg.tools_enabled},
                {"architect_enabled", cfg.architect_enabled},
                {"judge_enabled", cfg.judge_enabled},
                {"seed", cfg.seed},
                {"sample_n", cfg.sample_n},
                {"temperature", cfg.temperature},
                {"max_output_tokens", cfg.max_output_tokens},
                {"tool_budget_tokens", cfg.tool_budget_tokens},
                {"workers", cfg.workers},
                {"rate_limit_rpm", cfg.rate_limit_rpm},
                {"max_requests", cfg.budgets.max_requests},
                {"max_cost_usd", cfg.budgets.max_cost_usd}};
    for (const auto& [k, v] : setup.config_echo) config[k] = v;

    json dropped = json::array();
    for (const auto& [pair_id, reason] : cleaning.dropped)
        dropped.push_back(json{{"pair_id", pair_id}, {"reason", corpus::to_string(reason)}});

    json prompts;
    for (bool tools : {true, false})
        prompts[protocol::template_version(protocol::TemplateId::analyst, tools)] =
            protocol::template_digest(protocol::TemplateId::analyst, tools);
    prompts[protocol::template_version(protocol::TemplateId::architect)] =
        protocol::template_digest(protocol::TemplateId::architect);
    prompts[protocol::template_version(protocol::TemplateId::judge)] =
        protocol::template_digest(protocol::TemplateId::judge);

    return json{{"config", config},
                {"backend", setup.backend_kind},
                {"corpus_digest", setup.corpus_digest},
                {"context_digests", setup.context_digests},
                {"cassette_digest", setup.cassette_digest},
                {"prompt_assets", prompts},
                {"cleaning", {{"kept", cleaning.kept.size()}, {"dropped", dropped}}},
                {"sampled_pairs", sampled}};
}

metrics::MetricsSummary summarize(std::vector<metrics::PairOutcome> outcomes,
                                  const std::map<std::string, std::size_t>& flag_counts) {
    std::sort(outcomes.begin(), outcomes.end(),
              [](const auto& a, const auto& b) { return a.pair_id < b.pair_id; });
    metrics::MetricsSummary summary = metrics::aggregate(outcomes);
    summary.flag_counts = flag_counts;
    return summary;
}

} // namespace

ExperimentResult run_experiment(const ExperimentSetup& setup) {
    if (!setup.backend) throw ArgumentError("experiment needs a backend");
    setup.cfg.validate();
    const RunConfig& cfg = setup.cfg;

    ExperimentResult res;

    // Clean, sample, fix processing order by pair_id.
    res.cleaning = corpus::clean_corpus(setup.pairs, setup.ctx);
    const std::size_t n =
        cfg.sample_n == 0 ? res.cleaning.kept.size() : std::min(cfg.sample_n,
                                                                res.cleaning.kept.size());
    if (cfg.sample_n > res.cleaning.kept.size())
        throw ArgumentError("sample_n exceeds cleaned corpus size");
    std::vector<corpus::PairRecord> selected =
        corpus::sample_corpus(res.cleaning.kept, n, cfg.seed);
    std::sort(selected.begin(), selected.end(),
              [](const auto& a, const auto& b) { return a.pair_id < b.pair_id; });

    fs::create_directories(setup.out_dir);
    const std::string results_path = setup.out_dir + "/results.jsonl";
    const std::string events_path = setup.out_dir + "/events.jsonl";

    {
        std::ofstream manifest(setup.out_dir + "/manifest.json", std::ios::trunc);
        if (!manifest) throw IoError("cannot write manifest under " + setup.out_dir);
        manifest << manifest_json(setup, res.cleaning, selected.size()).dump(2) << '\n';
    }

    const ResumeState resumed = load_resume_state(results_path);

    std::vector<const corpus::PairRecord*> todo;
    std::vector<metrics::PairOutcome> naive_outcomes, judged_outcomes;
    std::map<std::string, std::size_t> flag_counts;
    auto fold_side_flags = [&](const results::SideResult& side) {
        for (results::Flag flag : side.flags) ++flag_counts[results::to_string(flag)];
    };

    for (const auto& pair : selected) {
        if (resumed.complete(pair.pair_id, cfg.judge_enabled)) {
            const PersistedPair& p = resumed.by_pair.at(pair.pair_id);
            for (const auto& outcome : p.outcomes) {
                (outcome.eval_mode == metrics::EvalMode::naive ? naive_outcomes : judged_outcomes)
                    .push_back(outcome);
            }
            fold_side_flags(p.pre);
            fold_side_flags(p.post);
            ++res.pairs_skipped_resume;
        } else {
            todo.push_back(&pair);
        }
    }

    std::ofstream results_out(results_path, std::ios::app);
    std::ofstream events_out(events_path, std::ios::app);
    if (!results_out || !events_out)
        throw IoError("cannot open result sinks under " + setup.out_dir);

    struct PairWork {
        PairResult result;
        events::EventLog events;
        bool budget_exhausted = false;
    };

    llm::UsageMeter meter(cfg.cost_model, cfg.budgets);

    std::size_t evaluated_this_run = 0;
    bool budget_stop = false;
    std::size_t index = 0;
    while (index < todo.size()) {
        if (cfg.stop_after_pairs &&
            evaluated_this_run + res.pairs_skipped_resume >= cfg.stop_after_pairs) {
            res.status = RunStatus::partial;
            break;
        }
        if (budget_stop) {
            res.status = RunStatus::budget_exhausted;
            break;
        }

        // Chunked worker pool: a chunk runs concurrently, flushes in order.
        const std::size_t chunk =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), todo.size() - index);
        std::vector<std::future<PairWork>> futures;
        futures.reserve(chunk);
        for (std::size_t k = 0; k < chunk; ++k) {
            const corpus::PairRecord* pair = todo[index + k];
            futures.push_back(std::async(
                cfg.workers > 1 ? std::launch::async : std::launch::deferred, [&, pair]() {
                    PairWork work;
                    work.result = detect_pair(*setup.backend, meter, cfg, *pair, setup.ctx,
                                              &work.events);
                    work.budget_exhausted =
                        work.result.pre.flags.count(results::Flag::budget_exhausted) ||
                        work.result.post.flags.count(results::Flag::budget_exhausted);
                    return work;
                }));
        }

        for (std::size_t k = 0; k < chunk; ++k) {
            const corpus::PairRecord& pair = *todo[index + k];
            PairWork work = futures[k].get();

            if (work.budget_exhausted) {
                // Not persisted: a rerun with a fresh budget redoes the pair.
                budget_stop = true;
                break;
            }

            for (const auto& event : work.events.entries())
                events_out << events::to_json(event).dump() << '\n';

            results_out << results::side_result_to_json(pair.pair_id, work.result.pre).dump()
                        << '\n';
            results_out << results::side_result_to_json(pair.pair_id, work.result.post).dump()
                        << '\n';
            for (const auto& outcome :
                 classify_pair(pair.pair_id, pair.ground_truth, work.result, cfg.judge_enabled)) {
                results_out << metrics::outcome_to_json(outcome).dump() << '\n';
                (outcome.eval_mode == metrics::EvalMode::naive ? naive_outcomes : judged_outcomes)
                    .push_back(outcome);
            }
            fold_side_flags(work.result.pre);
            fold_side_flags(work.result.post);
            ++evaluated_this_run;
        }
        events_out.flush();
        results_out.flush();
        if (budget_stop) {
            res.status = RunStatus::budget_exhausted;
            break;
        }
        index += chunk;
    }

    res.pairs_evaluated = evaluated_this_run + res.pairs_skipped_resume;
    res.usage = meter.total();

    res.naive = summarize(naive_outcomes, flag_counts);
    if (cfg.judge_enabled) res.judged = summarize(judged_outcomes, flag_counts);

    std::optional<double> err;
    if (res.judged && !naive_outcomes.empty())
        err = metrics::error_rate(naive_outcomes, judged_outcomes);

    res.primary = res.judged ? *res.judged : *res.naive;
    res.primary.error_rate = err;

    json metrics_doc{{"eval_mode", cfg.judge_enabled ? "judged" : "naive"},
                     {"n_pairs", res.primary.n_pairs},
                     {"naive", metrics::summary_to_json(*res.naive)}};
    metrics_doc["judged"] = res.judged ? metrics::summary_to_json(*res.judged) : json();
    metrics_doc["error_rate"] = err ? json(*err) : json();
    {
        std::ofstream metrics_out(setup.out_dir + "/metrics.json", std::ios::trunc);
        metrics_out << metrics_doc.dump(2) << '\n';
    }
    {
        std::ofstream report_out(setup.out_dir + "/report.txt", std::ios::trunc);
        report_out << report::format_run_report(to_string(cfg.mode()), res.judged, res.naive, err);
    }
    return res;
}

} // namespace vultriad::orch
