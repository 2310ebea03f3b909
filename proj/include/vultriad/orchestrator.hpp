// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "vultriad/agents.hpp"
#include "vultriad/config.hpp"
#include "vultriad/context.hpp"
#include "vultriad/corpus.hpp"
#include "vultriad/events.hpp"
#include "vultriad/llm.hpp"
#include "vultriad/metrics.hpp"
#include "vultriad/results.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vultriad::orch {

/// Runtime wiring for one side of one pair.
struct SideContext {
    llm::Backend& backend;
    llm::UsageMeter& meter;
    const RunConfig& cfg;
    events::EventLog* events = nullptr;
    std::string pair_id;
    results::Side side = results::Side::pre_patch;
};

/// Multi-round negotiation for one function version: analyst round, then
/// architect critique until agreement or the round cap; judge once the
/// report is frozen. Budget exhaustion finalizes with a flag instead of
/// aborting.
results::SideResult detect_function(SideContext sc, const corpus::FunctionRecord& fn,
                                    const context::ContextStore* store,
                                    const corpus::GroundTruth& truth);

struct PairResult {
    std::string pair_id;
    results::SideResult pre;
    results::SideResult post;
};

/// Evaluates both sides independently; no state flows between them. A side
/// that fails with an agent-level error yields a flagged default report.
PairResult detect_pair(llm::Backend& backend, llm::UsageMeter& meter, const RunConfig& cfg,
                       const corpus::PairRecord& pair, const context::ContextSet& ctx,
                       events::EventLog* events = nullptr);

enum class RunStatus { completed, partial, budget_exhausted };

struct ExperimentSetup {
    std::vector<corpus::PairRecord> pairs;
    context::ContextSet ctx;
    RunConfig cfg;
    llm::Backend* backend = nullptr;
    std::string out_dir;

    // Provenance echoed into the manifest.
    std::string backend_kind;
    std::string corpus_digest;
    std::map<std::string, std::string> context_digests;
    std::string cassette_digest;
    std::map<std::string, std::string> config_echo;  // every effective config value
};

struct ExperimentResult {
    RunStatus status = RunStatus::completed;
    metrics::MetricsSummary primary;                  // judged when the judge is on
    std::optional<metrics::MetricsSummary> naive;     // always computed
    std::optional<metrics::MetricsSummary> judged;    // present when the judge is on
    llm::Usage usage;
    std::size_t pairs_evaluated = 0;
    std::size_t pairs_skipped_resume = 0;
    corpus::CleanResult cleaning;
};

/// Full pipeline: clean, sample, detect every pair, classify, aggregate.
/// All artifacts land under setup.out_dir (manifest.json, events.jsonl,
/// results.jsonl, metrics.json, report.txt). Pairs already present in
/// results.jsonl are skipped, so an interrupted run resumes losslessly.
ExperimentResult run_experiment(const ExperimentSetup& setup);

} // namespace vultriad::orch
