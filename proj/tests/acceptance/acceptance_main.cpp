// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one criterion per check, one PASS/FAIL line each, all
// offline. Exits nonzero if any criterion fails.
#include "vultriad/agents.hpp"
#include "vultriad/context.hpp"
#include "vultriad/corpus.hpp"
#include "vultriad/errors.hpp"
#include "vultriad/llm.hpp"
#include "vultriad/metrics.hpp"
#include "vultriad/orchestrator.hpp"
#include "vultriad/protocol.hpp"
#include "vultriad/strings.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace vultriad;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string source_dir() {
    return VULTRIAD_SOURCE_DIR;
}

std::string fixture(const std::string& rel) {
    return source_dir() + "/fixtures/" + rel;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing input: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Check {
    int number;
    std::string name;
    std::function<void()> body;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

template <typename T, typename U>
void require_eq(const T& got, const U& want, const std::string& what) {
    if (!(got == static_cast<T>(want))) {
        std::ostringstream os;
        os << what << " (got " << got << ", want " << want << ")";
        throw std::runtime_error(os.str());
    }
}

fs::path scratch_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("vultriad-acc-" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

RunConfig fixture_config(Mode mode) {
    RunConfig cfg;
    cfg.apply_mode(mode);
    cfg.model_id = "gpt-4o-2024-08-06";
    cfg.max_rounds = 3;
    cfg.max_internal_steps = 10;
    cfg.judge_enabled = true;
    cfg.seed = 7;
    cfg.tool_budget_tokens = 256;
    return cfg;
}

orch::ExperimentResult replay_fixture(const std::string& corpus_file,
                                      const std::string& cassette, Mode mode,
                                      const std::string& out_dir,
                                      std::size_t stop_after = 0) {
    orch::ExperimentSetup setup;
    setup.pairs = corpus::load_corpus(fixture(corpus_file));
    setup.ctx = context::load_context_set(fixture("context"));
    setup.cfg = fixture_config(mode);
    setup.cfg.stop_after_pairs = stop_after;
    llm::ReplayBackend backend(fixture(cassette));
    setup.backend = &backend;
    setup.backend_kind = "replay";
    setup.out_dir = out_dir;
    return orch::run_experiment(setup);
}

// ---------------------------------------------------------------------------

void criterion_metric_arithmetic() {
    struct Row {
        std::array<std::size_t, 4> counts;          // P_C, P_V, P_B, P_R out of 200
        std::array<const char*, 4> expected;        // one-decimal strings
    };
    // Five comparison rows and three round-cap rows; counts are the
    // published percentages times two.
    const std::vector<Row> rows = {
        {{3, 15, 48, 134}, {"1.5", "7.5", "24.0", "67.0"}},
        {{7, 0, 162, 31}, {"3.5", "0.0", "81.0", "15.5"}},
        {{27, 44, 86, 43}, {"13.5", "22.0", "43.0", "21.5"}},
        {{16, 18, 131, 35}, {"8.0", "9.0", "65.5", "17.5"}},
        {{35, 11, 87, 67}, {"17.5", "5.5", "43.5", "33.5"}},
        {{7, 0, 162, 31}, {"3.5", "0.0", "81.0", "15.5"}},
        {{20, 8, 88, 84}, {"10.0", "4.0", "44.0", "42.0"}},
        {{35, 11, 87, 67}, {"17.5", "5.5", "43.5", "33.5"}},
    };
    for (const auto& row : rows) {
        std::vector<metrics::PairOutcome> outcomes;
        std::size_t id = 0;
        auto add = [&](std::size_t n, bool pre, bool post) {
            for (std::size_t i = 0; i < n; ++i)
                outcomes.push_back(metrics::make_outcome("p" + std::to_string(id++), pre, post,
                                                         metrics::EvalMode::judged));
        };
        add(row.counts[0], true, true);
        add(row.counts[1], true, false);
        add(row.counts[2], false, true);
        add(row.counts[3], false, false);

        const auto summary = metrics::aggregate(outcomes);
        require_eq(summary.n_pairs, std::size_t{200}, "row must cover 200 pairs");
        require_eq(strings::one_decimal(summary.p_c), std::string(row.expected[0]), "P-C");
        require_eq(strings::one_decimal(summary.p_v), std::string(row.expected[1]), "P-V");
        require_eq(strings::one_decimal(summary.p_b), std::string(row.expected[2]), "P-B");
        require_eq(strings::one_decimal(summary.p_r), std::string(row.expected[3]), "P-R");
    }
}

void criterion_delta_consistency() {
    struct Row {
        std::array<std::size_t, 4> naive, judged;
        std::array<double, 4> delta;  // judged = naive + delta, per column
    };
    const std::vector<Row> rows = {
        {{12, 177, 4, 7}, {27, 44, 86, 43}, {+7.5, -66.5, +41.0, +18.0}},
        {{44, 76, 56, 24}, {16, 18, 131, 35}, {-14.0, -29.0, +37.5, +5.5}},
        {{48, 91, 41, 20}, {35, 11, 87, 67}, {-6.5, -40.0, +23.0, +23.5}},
    };
    auto build = [](const std::array<std::size_t, 4>& counts, metrics::EvalMode mode) {
        std::vector<metrics::PairOutcome> outcomes;
        std::size_t id = 0;
        auto add = [&](std::size_t n, bool pre, bool post) {
            for (std::size_t i = 0; i < n; ++i)
                outcomes.push_back(
                    metrics::make_outcome("p" + std::to_string(id++), pre, post, mode));
        };
        add(counts[0], true, true);
        add(counts[1], true, false);
        add(counts[2], false, true);
        add(counts[3], false, false);
        return metrics::aggregate(outcomes);
    };
    for (const auto& row : rows) {
        const auto naive = build(row.naive, metrics::EvalMode::naive);
        const auto judged = build(row.judged, metrics::EvalMode::judged);
        const std::array<double, 4> naive_pct{naive.p_c, naive.p_v, naive.p_b, naive.p_r};
        const std::array<double, 4> judged_pct{judged.p_c, judged.p_v, judged.p_b, judged.p_r};
        for (int i = 0; i < 4; ++i) {
            require(strings::one_decimal(naive_pct[i] + row.delta[i]) ==
                        strings::one_decimal(judged_pct[i]),
                    "naive + delta must equal judged exactly at one decimal");
        }
    }
}

void criterion_partition_property() {
    std::mt19937_64 rng(12345);
    std::vector<metrics::PairOutcome> outcomes;
    std::map<metrics::Category, std::size_t> tally;
    for (int i = 0; i < 10000; ++i) {
        const bool pre = rng() % 2, post = rng() % 2;
        outcomes.push_back(metrics::make_outcome("p" + std::to_string(i), pre, post,
                                                 metrics::EvalMode::judged));
        // Brute-force oracle, independent of classify().
        metrics::Category expected;
        if (pre && post) expected = metrics::Category::P_C;
        else if (pre) expected = metrics::Category::P_V;
        else if (post) expected = metrics::Category::P_B;
        else expected = metrics::Category::P_R;
        ++tally[expected];
        require(metrics::classify(pre, post) == expected, "classify must match brute force");
    }
    const auto summary = metrics::aggregate(outcomes);
    std::size_t total = 0;
    for (const auto& [category, count] : summary.counts) {
        require_eq(count, tally[category], "per-category count");
        total += count;
    }
    require_eq(total, outcomes.size(), "partition: counts must sum to n");

    auto rounded = [](double v) { return std::round(v * 10.0) / 10.0; };
    const double sum =
        rounded(summary.p_c) + rounded(summary.p_v) + rounded(summary.p_b) + rounded(summary.p_r);
    require(std::abs(sum - 100.0) <= 0.2, "one-decimal percentages must sum to 100 +/- 0.2");
}

void criterion_parser_conformance() {
    auto transcript = [&](const char* name) {
        return read_file(fixture(std::string("transcripts/appendix/") + name));
    };
    using protocol::ParseOutcome;

    // Round 1: three documented tool calls, then a non-vulnerable report.
    const std::array<std::pair<const char*, std::pair<const char*, const char*>>, 3> calls = {{
        {"r1_analyst_1.txt", {"get_function_body", "cdf_read_short_sector"}},
        {"r1_analyst_2.txt", {"get_callers", "cdf_read_short_sector"}},
        {"r1_analyst_3.txt", {"get_function_body", "cdf_read_short_sector_chain"}},
    }};
    for (const auto& [file, call] : calls) {
        const auto out = protocol::parse_analyst_turn(transcript(file));
        require(out.kind == ParseOutcome::Kind::tool_call, std::string(file) + " must parse");
        require_eq(out.call.action, std::string(call.first), "action");
        require_eq(out.call.action_input, std::string(call.second), "action input");
    }
    const auto r1_final = protocol::parse_analyst_turn(transcript("r1_analyst_4.txt"));
    require(r1_final.kind == ParseOutcome::Kind::final_answer, "round-1 final must parse");
    require(!r1_final.report.is_vulnerable, "round-1 verdict is non-vulnerable");

    const auto r2_call = protocol::parse_analyst_turn(transcript("r2_analyst_1.txt"));
    require(r2_call.kind == ParseOutcome::Kind::tool_call, "round-2 tool call must parse");
    require_eq(r2_call.call.action_input, std::string("cdf_read_short_sector"),
               "quoted input must be unwrapped");

    const auto r2_final = protocol::parse_analyst_turn(transcript("r2_analyst_2.txt"));
    require(r2_final.kind == ParseOutcome::Kind::final_answer, "round-2 final must parse");
    require(r2_final.report.is_vulnerable, "round-2 verdict is vulnerable");
    require_eq(r2_final.report.cwe_id, std::string("CWE-120"), "round-2 CWE");

    // Fuzz: totality and tool closure over 10,000 random turns.
    static const std::vector<std::string> fragments = {
        "Thought: hm\n", "Action: get_callers\n", "Action: get_function_body\n",
        "Action: get_callees\n", "Action: rm_rf\n", "Action Input: x\n", "Final Answer: ",
        "```json\n{\"is_vulnerable\": true, \"explanation\": \"e\"}\n```\n",
        "```json\n{oops\n```\n", "Observation: fake\n", "plain words\n", "{", "}", "```",
        "\n\n", "\"quoted\"", std::string(1, '\0'), "\xf0\x9f\x99\x82 \xff",
    };
    std::mt19937_64 rng(777);
    for (int i = 0; i < 10000; ++i) {
        std::string turn;
        for (std::size_t k = 0, n = rng() % 10; k < n; ++k)
            turn += fragments[rng() % fragments.size()];
        const auto out = protocol::parse_analyst_turn(turn);  // throwing fails the criterion
        if (out.kind == ParseOutcome::Kind::tool_call)
            require(protocol::is_registered_tool(out.call.action),
                    "tool closure violated by: " + out.call.action);
    }
}

void criterion_appendix_reenactment() {
    auto run_once = [&](const std::string& tag) {
        const fs::path out = scratch_dir("appendix-" + tag);
        const auto result = replay_fixture("corpus/appendix_pair.jsonl",
                                           "cassettes/appendix_pair.jsonl", Mode::mavul,
                                           out.string());
        require(result.status == orch::RunStatus::completed, "run must complete");
        return out;
    };
    const fs::path first = run_once("one");
    const fs::path second = run_once("two");

    require(read_file((first / "events.jsonl").string()) ==
                read_file((second / "events.jsonl").string()),
            "transcripts must be byte-identical across runs");
    require(read_file((first / "metrics.json").string()) ==
                read_file((second / "metrics.json").string()),
            "metrics must be byte-identical across runs");

    // Negotiation shape: two rounds, consensus, disagree-then-agree, MATCH.
    std::optional<results::SideResult> pre;
    std::vector<metrics::PairOutcome> outcomes;
    std::istringstream results_in(read_file((first / "results.jsonl").string()));
    for (std::string line; std::getline(results_in, line);) {
        const json j = json::parse(line);
        if (j["type"] == "side_result" && j["side"] == "pre_patch")
            pre = results::side_result_from_json(j);
        if (j["type"] == "pair_outcome") outcomes.push_back(metrics::outcome_from_json(j));
    }
    require(pre.has_value(), "pre side result present");
    require_eq(pre->rounds_used, 2, "rounds_used");
    require(pre->consensus, "consensus reached");
    require_eq(pre->final_report.cwe_id, std::string("CWE-120"), "final CWE");
    require(pre->judgment && pre->judgment->prediction == protocol::Verdict::match,
            "judge verdict is MATCH");

    std::map<int, bool> architect_agreement;
    std::istringstream events_in(read_file((first / "events.jsonl").string()));
    for (std::string line; std::getline(events_in, line);) {
        const json j = json::parse(line);
        if (j["role"] == "architect:assistant" && j["side"] == "pre_patch" &&
            j["parsed"].is_object() && j["parsed"].contains("agreement"))
            architect_agreement[j["round"].get<int>()] = j["parsed"]["agreement"].get<bool>();
    }
    require(architect_agreement.count(1) && architect_agreement.at(1) == false,
            "architect disagrees in round 1");
    require(architect_agreement.count(2) && architect_agreement.at(2) == true,
            "architect agrees in round 2");

    bool judged_pc = false;
    for (const auto& outcome : outcomes)
        if (outcome.eval_mode == metrics::EvalMode::judged)
            judged_pc = outcome.category == metrics::Category::P_C;
    require(judged_pc, "the pair classifies as P-C");
}

void criterion_round_cap() {
    const auto pairs = corpus::load_corpus(fixture("corpus/pairs.jsonl"));
    const auto& pair = pairs.front();

    for (int max_rounds : {1, 2, 3}) {
        llm::ScriptedBackend backend;
        llm::UsageMeter meter;
        RunConfig cfg = fixture_config(Mode::no_context);
        cfg.max_rounds = max_rounds;
        cfg.judge_enabled = false;
        for (int r = 1; r <= max_rounds; ++r) {
            backend.push_response(
                "Final Answer: ```json\n" +
                json{{"is_vulnerable", false}, {"explanation", "round " + std::to_string(r)}}
                    .dump() +
                "\n```");
            backend.push_response("{\"agreement\": false, \"feedback\": \"try again\"}");
        }
        orch::SideContext sc{backend, meter, cfg, nullptr, pair.pair_id,
                             results::Side::pre_patch};
        const auto side = orch::detect_function(sc, pair.pre, nullptr, pair.ground_truth);
        require_eq(side.rounds_used, max_rounds, "rounds_used equals the cap");
        require(!side.consensus, "no consensus under persistent disagreement");
        require_eq(side.final_report.explanation, "round " + std::to_string(max_rounds),
                   "last round's report stands");
        require_eq(backend.remaining(), std::size_t{0}, "script fully consumed");
    }

    // Architect disabled: exactly one analyst exchange.
    llm::ScriptedBackend backend;
    llm::UsageMeter meter;
    RunConfig cfg = fixture_config(Mode::cot);
    cfg.judge_enabled = false;
    backend.push_response("Final Answer: ```json\n{\"is_vulnerable\": false, "
                          "\"explanation\": \"single shot\"}\n```");
    events::EventLog log;
    orch::SideContext sc{backend, meter, cfg, &log, pair.pair_id, results::Side::pre_patch};
    const auto side = orch::detect_function(sc, pair.pre, nullptr, pair.ground_truth);
    require_eq(side.rounds_used, 1, "one round with architect off");
    require(side.consensus, "degenerate consensus");
    require_eq(meter.total().request_count, std::uint64_t{1}, "exactly one exchange");
}

void criterion_ground_truth_isolation() {
    const fs::path out = scratch_dir("isolation");
    replay_fixture("corpus/pairs.jsonl", "cassettes/mavul.jsonl", Mode::mavul, out.string());

    std::map<std::string, corpus::GroundTruth> truths;
    for (const auto& pair : corpus::load_corpus(fixture("corpus/pairs.jsonl")))
        truths[pair.pair_id] = pair.ground_truth;

    std::size_t scanned = 0;
    std::istringstream in(read_file((out / "events.jsonl").string()));
    for (std::string line; std::getline(in, line);) {
        const json j = json::parse(line);
        const std::string role = j["role"].get<std::string>();
        if (role.rfind("analyst:", 0) != 0 && role.rfind("architect:", 0) != 0) continue;
        const std::string text = j["raw_text"].get<std::string>();
        const auto& truth = truths.at(j["pair_id"].get<std::string>());
        ++scanned;

        require(!strings::contains(text, truth.cve_description),
                "cve_description leaked into an agent prompt");
        require(!strings::contains(text, truth.patch_diff),
                "patch_diff leaked into an agent prompt");
        require(!strings::contains(text, truth.commit_message),
                "commit_message leaked into an agent prompt");
        // Line-level scan for the prose fields (the diff shares lines with
        // the function source by construction, so it is checked whole).
        for (const auto& fragment : strings::split_lines(truth.cve_description))
            if (fragment.size() > 12)
                require(!strings::contains(text, fragment),
                        "cve_description line leaked into an agent prompt");
        for (const auto& fragment : strings::split_lines(truth.commit_message))
            if (fragment.size() > 12)
                require(!strings::contains(text, fragment),
                        "commit_message line leaked into an agent prompt");
    }
    require(scanned > 100, "expected to scan the full fixture transcript");
}

void criterion_error_rate_oracle() {
    auto outcome = [](const std::string& id, bool pre, bool post, metrics::EvalMode mode) {
        return metrics::make_outcome(id, pre, post, mode);
    };

    std::vector<metrics::PairOutcome> naive, judged;
    for (int i = 0; i < 10; ++i) {
        naive.push_back(outcome("p" + std::to_string(i), true, true,
                                metrics::EvalMode::naive));
        judged.push_back(outcome("p" + std::to_string(i), i >= 6, true,
                                 metrics::EvalMode::judged));  // 6 of 10 degrade
    }
    const auto rate = metrics::error_rate(naive, judged);
    require(rate.has_value(), "error rate defined");
    require_eq(strings::one_decimal(*rate), std::string("60.0"), "six-of-ten degradation");

    // Independent direct count.
    std::size_t denom = 0, degraded = 0;
    for (int i = 0; i < 10; ++i) {
        ++denom;
        if (i < 6) ++degraded;
    }
    require_eq(strings::one_decimal(100.0 * degraded / denom), std::string("60.0"),
               "direct count agrees");

    std::vector<metrics::PairOutcome> no_pc_naive, no_pc_judged;
    for (int i = 0; i < 4; ++i) {
        no_pc_naive.push_back(outcome("q" + std::to_string(i), false, true,
                                      metrics::EvalMode::naive));
        no_pc_judged.push_back(outcome("q" + std::to_string(i), true, true,
                                       metrics::EvalMode::judged));
    }
    require(!metrics::error_rate(no_pc_naive, no_pc_judged).has_value(),
            "zero denominator reports absent");
}

void criterion_corpus_pipeline() {
    // Cleaning drops exactly the planted defects.
    const auto dirty = corpus::load_corpus(fixture("corpus/pairs_dirty.jsonl"));
    const auto ctx = context::load_context_set(fixture("context"));
    const auto cleaned = corpus::clean_corpus(dirty, ctx);
    require_eq(cleaned.kept.size(), std::size_t{7}, "kept count");
    require_eq(cleaned.dropped.size(), std::size_t{3}, "dropped count");
    std::size_t dup = 0, missing = 0;
    for (const auto& [id, reason] : cleaned.dropped)
        (reason == corpus::DropReason::duplicate ? dup : missing) += 1;
    require_eq(dup, std::size_t{2}, "duplicate drops");
    require_eq(missing, std::size_t{1}, "missing-context drops");

    // Sampling: fixed seed reproduces; different seed diverges.
    std::vector<corpus::PairRecord> synthetic;
    for (int i = 0; i < 600; ++i) {
        corpus::PairRecord pair = dirty.front();
        pair.pair_id = "syn-" + std::to_string(i);
        synthetic.push_back(pair);
    }
    const auto a = corpus::sample_corpus(synthetic, 200, 7);
    const auto b = corpus::sample_corpus(synthetic, 200, 7);
    const auto c = corpus::sample_corpus(synthetic, 200, 8);
    require_eq(a.size(), std::size_t{200}, "sample size");
    std::set<std::string> ids_a, ids_b, ids_c;
    for (const auto& p : a) ids_a.insert(p.pair_id);
    for (const auto& p : b) ids_b.insert(p.pair_id);
    for (const auto& p : c) ids_c.insert(p.pair_id);
    require(ids_a == ids_b, "same seed, same selection");
    require(ids_a != ids_c, "different seed, different selection");
    require_eq(ids_a.size(), std::size_t{200}, "selection is without replacement");

    // Hand-computed stats: one 5-line caller, callees of 10 and 12 lines.
    context::ContextSet hand;
    context::ContextStore store;
    store.project_id = "alpha";
    auto body_of = [](std::size_t lines) {
        std::string body;
        for (std::size_t i = 0; i < lines; ++i) body += "x\n";
        return body;
    };
    store.entries["t"] = context::ContextEntry{"t", body_of(2), {"c1"}, {"e1", "e2"}};
    store.entries["c1"] = context::ContextEntry{"c1", body_of(5), {}, {"t"}};
    store.entries["e1"] = context::ContextEntry{"e1", body_of(10), {"t"}, {}};
    store.entries["e2"] = context::ContextEntry{"e2", body_of(12), {"t"}, {}};
    hand.stores["alpha"] = std::move(store);
    corpus::PairRecord pair = dirty.front();
    pair.pre.function_name = pair.post.function_name = "t";
    pair.pre.project_id = pair.post.project_id = "alpha";
    pair.context_ref = "alpha";
    const auto stats = corpus::compute_stats({pair}, hand);
    require_eq(stats.caller_count.max, 1.0, "caller count");
    require_eq(stats.callee_count.max, 2.0, "callee count");
    require_eq(stats.context_lines.max, 27.0, "context lines 5+10+12");

    // Randomized corpora: min <= avg <= max against brute force.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        context::ContextSet rand_ctx;
        context::ContextStore rand_store;
        rand_store.project_id = "alpha";
        std::vector<corpus::PairRecord> rand_pairs;
        std::vector<std::size_t> line_counts;
        const int n = 1 + static_cast<int>(rng() % 10);
        for (int i = 0; i < n; ++i) {
            const std::string name = "fn" + std::to_string(i);
            rand_store.entries[name] = context::ContextEntry{name, "b\n", {}, {}};
            corpus::PairRecord p = dirty.front();
            p.pair_id = "r" + std::to_string(i);
            std::string src;
            const std::size_t lines = 1 + rng() % 50;
            for (std::size_t l = 0; l < lines; ++l) src += "s\n";
            p.pre.source_code = src;
            p.pre.line_count = lines;
            p.post.source_code = src;
            p.post.line_count = lines;
            p.pre.function_name = p.post.function_name = name;
            p.context_ref = "alpha";
            rand_pairs.push_back(p);
            line_counts.push_back(lines);
        }
        rand_ctx.stores["alpha"] = std::move(rand_store);
        const auto s = corpus::compute_stats(rand_pairs, rand_ctx);
        const double min = *std::min_element(line_counts.begin(), line_counts.end());
        const double max = *std::max_element(line_counts.begin(), line_counts.end());
        double sum = 0;
        for (auto v : line_counts) sum += static_cast<double>(v);
        require(std::abs(s.lines.min - min) < 1e-9 && std::abs(s.lines.max - max) < 1e-9,
                "min/max against brute force");
        require(std::abs(s.lines.avg - sum / line_counts.size()) < 1e-9,
                "avg against brute force");
        require(s.lines.min <= s.lines.avg && s.lines.avg <= s.lines.max, "min <= avg <= max");
    }
}

void criterion_replay_resume() {
    const fs::path full = scratch_dir("resume-full");
    replay_fixture("corpus/pairs.jsonl", "cassettes/mavul.jsonl", Mode::mavul, full.string());

    const fs::path interrupted = scratch_dir("resume-split");
    for (std::size_t stop : {3, 7}) {
        const auto partial = replay_fixture("corpus/pairs.jsonl", "cassettes/mavul.jsonl",
                                            Mode::mavul, interrupted.string(), stop);
        require(partial.status == orch::RunStatus::partial, "interrupted run reports partial");
    }
    const auto resumed = replay_fixture("corpus/pairs.jsonl", "cassettes/mavul.jsonl",
                                        Mode::mavul, interrupted.string());
    require(resumed.status == orch::RunStatus::completed, "resume completes");
    require_eq(resumed.pairs_skipped_resume, std::size_t{7}, "resume skips persisted pairs");

    require(read_file((interrupted / "metrics.json").string()) ==
                read_file((full / "metrics.json").string()),
            "metrics.json byte-identical after interrupt and resume");
    require(read_file((interrupted / "results.jsonl").string()) ==
                read_file((full / "results.jsonl").string()),
            "results.jsonl byte-identical after interrupt and resume");
}

} // namespace

int main() {
    const std::vector<Check> checks = {
        {1, "metric arithmetic reproduction", criterion_metric_arithmetic},
        {2, "published delta consistency", criterion_delta_consistency},
        {3, "classification partition property", criterion_partition_property},
        {4, "ReAct parser conformance + fuzz", criterion_parser_conformance},
        {5, "end-to-end case-study reenactment", criterion_appendix_reenactment},
        {6, "round cap and consensus properties", criterion_round_cap},
        {7, "ground-truth isolation", criterion_ground_truth_isolation},
        {8, "error-rate oracle", criterion_error_rate_oracle},
        {9, "corpus pipeline", criterion_corpus_pipeline},
        {10, "replay determinism and resume", criterion_replay_resume},
    };

    int failures = 0;
    for (const auto& check : checks) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            check.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (error.empty()) {
            std::cout << "PASS  " << check.number << ". " << check.name << " (" << ms
                      << " ms)\n";
        } else {
            ++failures;
            std::cout << "FAIL  " << check.number << ". " << check.name << ": " << error
                      << "\n";
        }
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures == 0 ? 0 : 1;
}
