// SPDX-License-Identifier: Apache-2.0
// Regenerates the bundled fixture tree: corpus files, context stores, the
// reference transcripts, one cassette per run preset (recorded through the
// real pipeline against a scripted backend, so request digests always match
// replay), and golden run outputs. Run from the repository root:
//
//   ./build/vultriad-make-fixtures
//
// The generator self-checks every cassette by replaying it and asserting
// the intended outcome distribution.
#include "fixture_data.hpp"

#include "vultriad/context.hpp"
#include "vultriad/corpus.hpp"
#include "vultriad/errors.hpp"
#include "vultriad/llm.hpp"
#include "vultriad/metrics.hpp"
#include "vultriad/orchestrator.hpp"
#include "vultriad/strings.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

namespace {

namespace fs = std::filesystem;
namespace fx = fixture_data;
using nlohmann::json;
using vultriad::RunConfig;

void check(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error("fixture self-check failed: " + what);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    out << content;
    if (!out) throw vultriad::IoError("cannot write " + path.string());
}

// ---------------------------------------------------------------------------
// Corpus + context files

json pair_json(const fx::PairSpec& spec) {
    return json{{"pair_id", spec.pair_id},
                {"project_id", spec.project_id},
                {"function_name", spec.function_name},
                {"pre_code", spec.pre_code},
                {"post_code", spec.post_code},
                {"ground_truth",
                 {{"binary_label_pre", "vulnerable"},
                  {"cwe_ids", spec.cwe_ids},
                  {"cve_description", spec.cve_description},
                  {"patch_diff", spec.patch_diff},
                  {"commit_message", spec.commit_message}}},
                {"context_ref", spec.project_id}};
}

void write_corpus_files(const fs::path& root) {
    const auto pairs = fx::corpus_pairs();

    std::string main_corpus;
    for (const auto& spec : pairs) main_corpus += pair_json(spec).dump() + "\n";
    write_file(root / "corpus/pairs.jsonl", main_corpus);

    for (const auto& spec : pairs)
        if (spec.pair_id == "cdfio-0001")
            write_file(root / "corpus/appendix_pair.jsonl", pair_json(spec).dump() + "\n");

    // Ten records, three planted defects: two duplicates, one target whose
    // function is absent from its context store.
    std::string dirty;
    for (const auto& spec : pairs) {
        if (spec.pair_id >= "netmsg-0008") continue;  // keep the first seven
        dirty += pair_json(spec).dump() + "\n";
    }
    for (const auto& spec : pairs) {
        if (spec.pair_id == "cdfio-0001") {
            fx::PairSpec dup = spec;
            dup.pair_id = "cdfio-9001";
            dirty += pair_json(dup).dump() + "\n";
        }
        if (spec.pair_id == "imgdec-0003") {
            fx::PairSpec dup = spec;
            dup.pair_id = "imgdec-9002";
            dirty += pair_json(dup).dump() + "\n";
        }
    }
    fx::PairSpec missing = fx::corpus_pairs().back();
    missing.pair_id = "strfmt-9003";
    missing.function_name = "str_unknown_helper";
    missing.pre_code = "static int\nstr_unknown_helper(void)\n{\n\treturn 0;\n}\n";
    missing.post_code = "static int\nstr_unknown_helper(void)\n{\n\treturn 1;\n}\n";
    dirty += pair_json(missing).dump() + "\n";
    write_file(root / "corpus/pairs_dirty.jsonl", dirty);
}

void write_context_files(const fs::path& root) {
    for (const auto& project : fx::project_contexts()) {
        json functions = json::object();
        for (const auto& fn : project.functions)
            functions[fn.name] =
                json{{"body", fn.body}, {"callers", fn.callers}, {"callees", fn.callees}};
        write_file(root / ("context/" + project.project_id + ".json"),
                   json{{"project_id", project.project_id}, {"functions", functions}}.dump(2) +
                       "\n");
    }
}

void write_transcripts(const fs::path& root) {
    const fs::path dir = root / "transcripts/appendix";
    write_file(dir / "r1_analyst_1.txt", fx::kApxR1Analyst1);
    write_file(dir / "r1_analyst_2.txt", fx::kApxR1Analyst2);
    write_file(dir / "r1_analyst_3.txt", fx::kApxR1Analyst3);
    write_file(dir / "r1_analyst_4.txt", fx::kApxR1Analyst4);
    write_file(dir / "r1_architect.txt", fx::kApxR1Architect);
    write_file(dir / "r2_analyst_1.txt", fx::kApxR2Analyst1);
    write_file(dir / "r2_analyst_2.txt", fx::kApxR2Analyst2);
    write_file(dir / "r2_architect.txt", fx::kApxR2Architect);
    write_file(dir / "judge_pre.txt", fx::kApxJudgePre);
    write_file(dir / "post_analyst_1.txt", fx::kApxPostAnalyst1);
    write_file(dir / "post_analyst_2.txt", fx::kApxPostAnalyst2);
    write_file(dir / "post_architect.txt", fx::kApxPostArchitect);
    write_file(dir / "judge_post.txt", fx::kApxJudgePost);
}

void write_configs(const fs::path& root) {
    auto preset = [](const std::string& mode, const std::string& cassette) {
        std::string text;
        text += "# offline replay preset\n";
        text += "model_id = \"gpt-4o-2024-08-06\"\n";
        text += "mode = \"" + mode + "\"\n";
        text += "rounds = 3\n";
        text += "max_steps = 10\n";
        text += "seed = 7\n";
        text += "sample_n = 0\n";
        text += "temperature = 0.0\n";
        text += "backend = \"replay\"\n";
        text += "cassette = \"fixtures/cassettes/" + cassette + "\"\n";
        text += "corpus = \"fixtures/corpus/pairs.jsonl\"\n";
        text += "context = \"fixtures/context\"\n";
        text += "tool_budget_tokens = 256\n";
        text += "workers = 1\n";
        return text;
    };
    write_file(root / "configs/exp.toml", preset("mavul", "mavul.jsonl"));
    write_file(root / "configs/cot.toml", preset("cot", "cot.jsonl"));
    write_file(root / "configs/single_agent.toml", preset("single-agent", "single_agent.jsonl"));
    write_file(root / "configs/no_context.toml", preset("no-context", "no_context.jsonl"));

    std::string appendix = preset("mavul", "appendix_pair.jsonl");
    const std::string from = "fixtures/corpus/pairs.jsonl";
    appendix.replace(appendix.find(from), from.size(), "fixtures/corpus/appendix_pair.jsonl");
    write_file(root / "configs/appendix.toml", appendix);
}

// ---------------------------------------------------------------------------
// Scripted responses

std::string tool_turn(const std::string& thought, const std::string& action,
                      const std::string& input) {
    return "Thought: " + thought + "\n\nAction: " + action + "\nAction Input: " + input + "\n";
}

std::string final_turn(const std::string& thought, bool vulnerable, const std::string& type,
                       const std::string& cwe, const std::string& explanation) {
    json report{{"is_vulnerable", vulnerable},
                {"vulnerability_type", type},
                {"cwe_id", cwe},
                {"explanation", explanation}};
    return "Thought: " + thought + "\n\nFinal Answer: ```json\n" + report.dump(2) + "\n```\n";
}

std::string critique(bool agreement, const std::string& feedback) {
    return json{{"agreement", agreement}, {"feedback", feedback}}.dump(2) + "\n";
}

std::string judge_reply(bool match, const std::string& rationale) {
    return json{{"prediction", match ? "MATCH" : "MISMATCH"}, {"rationale", rationale}}.dump(2) +
           "\n";
}

struct Script {
    vultriad::llm::ScriptedBackend* backend;
    void push(const std::string& text) { backend->push_response(text); }
};

struct SideStory {
    std::string vuln_type;
    std::string cwe;
    std::string pre_explanation;
    std::string post_explanation;
};

const std::map<std::string, SideStory>& stories() {
    static const std::map<std::string, SideStory> map = {
        {"imgdec-0003",
         {"Buffer Overflow", "CWE-120",
          "img_palette_load multiplies the attacker-controlled color count by four and copies "
          "into a 768-byte stack array with no bound check, so 193 or more colors overflow "
          "the stack frame.",
          "The patched loader validates len, sizes the copy as ncolors * 3, and rejects "
          "palettes larger than the input, so the stack array can no longer overflow."}},
        {"imgdec-0004",
         {"Out-of-bounds Read", "CWE-125",
          "img_row_copy computes the source pointer from the row index without comparing it "
          "to ctx->height, so a caller-supplied row reads outside the decoded pixel buffer.",
          "The patched copy rejects negative rows and rows at or beyond ctx->height before "
          "touching the pixel buffer, removing the out-of-bounds read."}},
        {"imgdec-0005",
         {"Use After Free", "CWE-416",
          "img_free_ctx frees ctx->data and then invokes the completion callback with that "
          "freed pointer, so the callback operates on a dangling allocation.",
          "The patched teardown now invokes the completion callback before releasing "
          "ctx->data, so no freed pointer escapes to user code."}},
        {"netmsg-0006",
         {"NULL Pointer Dereference", "CWE-476",
          "msg_alloc_hdr can return NULL when the header pool is exhausted and "
          "msg_parse_header stores hdr->version without checking, so a remote peer that "
          "drains the pool triggers a NULL dereference.",
          "The patched parser returns early when msg_alloc_hdr yields NULL, so pool "
          "exhaustion no longer leads to a NULL dereference."}},
        {"netmsg-0007",
         {"Use After Free", "CWE-416",
          "msg_queue_pop calls msg_release on the dequeued message and then returns the "
          "released pointer, so every caller handles freed memory.",
          "The patched pop clears the link and transfers ownership to the caller without "
          "releasing, eliminating the use after free."}},
        {"netmsg-0008",
         {"Out-of-bounds Read", "CWE-125",
          "The checksum loop bound uses i <= len, so the final iteration reads one byte "
          "past the payload buffer on every verification.",
          "The loop bound is now i < len, keeping every access inside the payload buffer."}},
        {"strfmt-0009",
         {"Format String", "CWE-134",
          "str_expand forwards user-controlled percent sequences into a buffer that later "
          "reaches printf-style renderers, allowing format-string abuse.",
          "The patched expansion bounds the output index against the buffer size, so long "
          "inputs stop expanding instead of corrupting the stack."}},
        {"strfmt-0010",
         {"NULL Pointer Dereference", "CWE-476",
          "str_tok_next writes a terminator through the strchr result without a NULL check, "
          "so input with no remaining separator dereferences NULL.",
          "The patched tokenizer returns NULL when no separator remains, so the write only "
          "happens through a valid pointer."}},
    };
    return map;
}

// A miss: the analyst calls the vulnerable version safe; the judge catches
// it against ground truth.
void push_missed_pre(Script& s, const std::string& pair_id, bool architect,
                     const std::string& reasoning) {
    s.push(final_turn("The visible checks look sufficient.", false, "None", "N/A", reasoning));
    if (architect)
        s.push(critique(true, "The analysis is sound and complete. Nothing in the provided "
                              "code contradicts the stated guards."));
    s.push(judge_reply(false, "The agent classified the function as non-vulnerable, but the "
                              "ground truth documents a weakness the analysis for " +
                                  pair_id + " never reaches."));
}

void push_generic_post(Script& s, const std::string& pair_id, bool architect, bool judge) {
    const SideStory& story = stories().count(pair_id)
                                 ? stories().at(pair_id)
                                 : SideStory{"None", "N/A", "", "patched"};
    s.push(final_turn("The flagged operation is now guarded, so the earlier weakness no "
                      "longer applies.",
                      false, "None", "N/A", story.post_explanation));
    if (architect)
        s.push(critique(true, "The analysis is sound and complete. The patched code guards "
                              "the operation that previously made this function unsafe."));
    if (judge)
        s.push(judge_reply(true, "The agent correctly identified the function as "
                                 "non-vulnerable and provided a sound explanation consistent "
                                 "with the ground truth patch."));
}

void push_generic_vulnerable_pre(Script& s, const std::string& pair_id, bool architect,
                                 bool judge, bool judge_match) {
    const SideStory& story = stories().at(pair_id);
    s.push(final_turn("The evidence above pins the defect down.", true, story.vuln_type,
                      story.cwe, story.pre_explanation));
    if (architect)
        s.push(critique(true, "The analysis is sound and complete. The cited operation "
                              "lacks the guard the analyst describes and the conclusion "
                              "follows from the trace."));
    if (judge) {
        if (judge_match)
            s.push(judge_reply(true, "The agent identified the ground truth vulnerability "
                                     "and the reasoning matches the patched behavior."));
        else
            s.push(judge_reply(false, "The agent predicted the function to be vulnerable "
                                      "but misclassified the vulnerability type; the "
                                      "reported class does not match the ground truth."));
    }
}

// cdfio-0002: the analyst keeps missing the issue; the architect never
// agrees; the round cap fires.
void push_cdfio0002_pre(Script& s, bool architect, int rounds, bool judge) {
    const char* explanations[3] = {
        "cdf_read_property_info walks properties inside the declared section size and the "
        "stream was validated by its caller, so the computed pointers stay in bounds.",
        "Re-examining the offsets: the section header size bounds e, and q is derived from "
        "the same section, so the reads remain within the mapped stream.",
        "The property offsets come from the same validated section, and no write occurs; "
        "the loop only reads fields the caller already mapped."};
    const char* feedbacks[3] = {
        "The conclusion is premature. CDF_SECTION_DECLARED_SIZE comes from the file itself, "
        "so e can point far beyond the actual stream allocation; q is then dereferenced "
        "without any comparison against the stream end. The analyst must bound e by the "
        "real stream size and check q before each read.",
        "The revision still trusts the declared section size. Nothing compares e or q "
        "against CDF_STREAM_SIZE, so a crafted si_offset walks q past the allocation. The "
        "analyst must verify each property pointer against the stream end before reading.",
        "The reads are the problem: CDF_GETUINT32(q, 0) dereferences q before any bound "
        "check. The analyst keeps citing the caller, but the caller never validates the "
        "per-property offsets. Check q + 8 <= e derived from the true stream size."};
    for (int r = 0; r < rounds; ++r) {
        s.push(final_turn("The declared section bounds appear to cover the accesses.", false,
                          "None", "N/A", explanations[r]));
        if (architect) s.push(critique(false, feedbacks[r]));
    }
    if (judge)
        s.push(judge_reply(false, "The agent classified the function as non-vulnerable, but "
                                  "the ground truth documents an out-of-bounds read caused "
                                  "by trusting the declared section size."));
}

// ---------------------------------------------------------------------------
// Per-preset scripts. Responses are pushed in exactly the order the
// orchestrator consumes them: pairs sorted by id, pre side then post side.

void script_mavul(Script& s) {
    // cdfio-0001: the reference two-round negotiation.
    s.push(fx::kApxR1Analyst1);
    s.push(fx::kApxR1Analyst2);
    s.push(fx::kApxR1Analyst3);
    s.push(fx::kApxR1Analyst4);
    s.push(fx::kApxR1Architect);
    s.push(fx::kApxR2Analyst1);
    s.push(fx::kApxR2Analyst2);
    s.push(fx::kApxR2Architect);
    s.push(fx::kApxJudgePre);
    s.push(fx::kApxPostAnalyst1);
    s.push(fx::kApxPostAnalyst2);
    s.push(fx::kApxPostArchitect);
    s.push(fx::kApxJudgePost);

    // cdfio-0002: persistent disagreement until the round cap.
    push_cdfio0002_pre(s, true, 3, true);
    push_generic_post(s, "cdfio-0002", true, true);

    // imgdec-0003: malformed first turn, recovered by the corrective
    // re-prompt.
    s.push("The palette copy looks wrong to me, it overflows.\n");
    push_generic_vulnerable_pre(s, "imgdec-0003", true, true, true);
    push_generic_post(s, "imgdec-0003", true, true);

    // imgdec-0004: tries an unregistered tool first.
    s.push(tool_turn("I want to inspect the build system for sanitizer flags.", "run_shell",
                     "grep -r fsanitize ."));
    s.push(tool_turn("I should check how rows reach this function.", "get_callers",
                     "img_row_copy"));
    push_generic_vulnerable_pre(s, "imgdec-0004", true, true, true);
    push_generic_post(s, "imgdec-0004", true, true);

    // imgdec-0005: asks for a function the store does not have, reasons over
    // the error observation, then proceeds.
    s.push(tool_turn("The callback dispatch path may matter here.", "get_function_body",
                     "img_cb_dispatch"));
    s.push(tool_turn("That helper does not exist; the teardown path is what counts.",
                     "get_callers", "img_free_ctx"));
    push_generic_vulnerable_pre(s, "imgdec-0005", true, true, true);
    push_generic_post(s, "imgdec-0005", true, true);

    // netmsg-0006: pulls the long decode table and receives a truncated
    // observation.
    s.push(tool_turn("I need the callees to trace where the header length comes from.",
                     "get_callees", "msg_parse_header"));
    s.push(tool_turn("msg_decode_len drives the header length; I will read its body.",
                     "get_function_body", "msg_decode_len"));
    push_generic_vulnerable_pre(s, "netmsg-0006", true, true, true);
    push_generic_post(s, "netmsg-0006", true, true);

    // netmsg-0007: single tool call, first-round consensus.
    s.push(tool_turn("The caller's use of the returned message decides whether this is a "
                     "use after free.",
                     "get_callers", "msg_queue_pop"));
    push_generic_vulnerable_pre(s, "netmsg-0007", true, true, true);
    push_generic_post(s, "netmsg-0007", true, true);

    // netmsg-0008: direct answer, no tools.
    push_generic_vulnerable_pre(s, "netmsg-0008", true, true, true);
    push_generic_post(s, "netmsg-0008", true, true);

    // strfmt-0009: confidently wrong vulnerability class; the judge catches
    // it even though the binary label is right.
    s.push(tool_turn("Percent handling suggests a formatting sink; I will check the "
                     "callees.",
                     "get_callees", "str_expand"));
    push_generic_vulnerable_pre(s, "strfmt-0009", true, true, false);
    push_generic_post(s, "strfmt-0009", true, true);

    // strfmt-0010: correct on the pre side; false positive on the post side.
    s.push(tool_turn("Whether callers tolerate NULL determines severity here.",
                     "get_callers", "str_tok_next"));
    push_generic_vulnerable_pre(s, "strfmt-0010", true, true, true);
    s.push(final_turn("The separator handling still looks unsafe to me.", true,
                      "NULL Pointer Dereference", "CWE-476",
                      "Even with the added check, st->cur advances past p and later calls "
                      "can still pass NULL into strchr, so the dereference remains."));
    s.push(critique(true, "The analysis is sound and complete. The tokenizer state can "
                          "still surface a NULL current pointer to strchr."));
    s.push(judge_reply(false, "The agent claims the patched function still contains the "
                              "original NULL dereference, but the patch guards the strchr "
                              "result; this is a false positive."));
}

void script_cot(Script& s) {
    // cdfio-0001: without context the analyst trusts the visible checks.
    s.push(final_turn("Only the function body is available, and it contains an explicit "
                      "bounds check before the copy.",
                      false, "None", "N/A",
                      "The function validates pos against the sector table size before the "
                      "memcpy and asserts the sector size equals len, so the visible paths "
                      "appear guarded."));
    s.push(judge_reply(false, "The agent classified the function as non-vulnerable, but the "
                              "ground truth documents a buffer overflow behind the "
                              "assertion-only size check."));
    push_generic_post(s, "cdfio-0001", false, true);

    // cdfio-0002: missed.
    push_cdfio0002_pre(s, false, 1, true);
    push_generic_post(s, "cdfio-0002", false, true);

    // imgdec-0003: two malformed turns, default report, flagged.
    s.push("This looks overflowy but I cannot settle on a schema.\n");
    s.push("Still thinking about the palette math.\n");
    s.push(judge_reply(false, "The agent produced no usable analysis, so the prediction "
                              "cannot match the ground truth vulnerability."));
    push_generic_post(s, "imgdec-0003", false, true);

    // imgdec-0004: attempts a tool call in a tool-less configuration, then
    // answers from the code alone.
    s.push(tool_turn("I would like the caller list.", "get_callers", "img_row_copy"));
    push_generic_vulnerable_pre(s, "imgdec-0004", false, true, true);
    push_generic_post(s, "imgdec-0004", false, true);

    push_missed_pre(s, "imgdec-0005", false,
                    "The callback is only invoked when set, and free is paired with the "
                    "allocation; without the caller's lifecycle nothing proves a dangling "
                    "use.");
    push_generic_post(s, "imgdec-0005", false, true);

    push_missed_pre(s, "netmsg-0006", false,
                    "The length is validated before parsing and the allocator presumably "
                    "reports failure by convention; the body alone shows no unchecked "
                    "dereference path.");
    push_generic_post(s, "netmsg-0006", false, true);

    push_generic_vulnerable_pre(s, "netmsg-0007", false, true, true);
    push_generic_post(s, "netmsg-0007", false, true);

    push_generic_vulnerable_pre(s, "netmsg-0008", false, true, true);
    push_generic_post(s, "netmsg-0008", false, true);

    push_generic_vulnerable_pre(s, "strfmt-0009", false, true, false);
    push_generic_post(s, "strfmt-0009", false, true);

    push_generic_vulnerable_pre(s, "strfmt-0010", false, true, true);
    push_generic_post(s, "strfmt-0010", false, true);
}

void script_single_agent(Script& s) {
    // cdfio-0001: the first-round trajectory stands because nobody pushes
    // back.
    s.push(fx::kApxR1Analyst1);
    s.push(fx::kApxR1Analyst2);
    s.push(fx::kApxR1Analyst3);
    s.push(fx::kApxR1Analyst4);
    s.push(judge_reply(false, "The agent classified the function as non-vulnerable, but the "
                              "ground truth documents a buffer overflow behind the "
                              "assertion-only size check."));
    s.push(fx::kApxPostAnalyst1);
    s.push(fx::kApxPostAnalyst2);
    s.push(fx::kApxJudgePost);

    push_cdfio0002_pre(s, false, 1, true);
    push_generic_post(s, "cdfio-0002", false, true);

    s.push(tool_turn("I should check how palettes reach this loader.", "get_callers",
                     "img_palette_load"));
    push_generic_vulnerable_pre(s, "imgdec-0003", false, true, true);
    push_generic_post(s, "imgdec-0003", false, true);

    s.push(tool_turn("I should check how rows reach this function.", "get_callers",
                     "img_row_copy"));
    push_generic_vulnerable_pre(s, "imgdec-0004", false, true, true);
    push_generic_post(s, "imgdec-0004", false, true);

    s.push(tool_turn("The teardown path matters here.", "get_callers", "img_free_ctx"));
    push_missed_pre(s, "imgdec-0005", false,
                    "img_close only calls this once and clears the handle, so the teardown "
                    "sequence inside looks consistent; nothing flags the callback order.");
    push_generic_post(s, "imgdec-0005", false, true);

    s.push(tool_turn("The allocator behavior decides this one.", "get_callees",
                     "msg_parse_header"));
    push_missed_pre(s, "netmsg-0006", false,
                    "The callees list shows a dedicated allocator; absent its body I assume "
                    "it aborts on failure, so the header stores look reachable only with a "
                    "valid pointer.");
    push_generic_post(s, "netmsg-0006", false, true);

    push_generic_vulnerable_pre(s, "netmsg-0007", false, true, true);
    push_generic_post(s, "netmsg-0007", false, true);

    push_generic_vulnerable_pre(s, "netmsg-0008", false, true, true);
    push_generic_post(s, "netmsg-0008", false, true);

    push_generic_vulnerable_pre(s, "strfmt-0009", false, true, false);
    push_generic_post(s, "strfmt-0009", false, true);

    push_generic_vulnerable_pre(s, "strfmt-0010", false, true, true);
    push_generic_post(s, "strfmt-0010", false, true);
}

void script_no_context(Script& s) {
    // cdfio-0001: the architect's push-back alone recovers the miss.
    s.push(final_turn("The body shows a bounds check and an assertion on the size.", false,
                      "None", "N/A",
                      "The visible checks appear to guard the copy: pos is compared against "
                      "the table size and the assertion ties ss to len."));
    s.push(critique(false, "The conclusion leans on the assertion, but assertions can be "
                           "compiled out, leaving len unchecked against the destination. "
                           "The analyst must treat assert(ss == len) as absent and re-derive "
                           "the bounds of the memcpy from the remaining checks."));
    s.push(final_turn("Treating the assertion as absent changes the verdict.", true,
                      "Buffer Overflow", "CWE-120",
                      "Without the assertion there is no runtime relation between ss and "
                      "len, so the memcpy can write past the destination buffer; the "
                      "remaining check only constrains pos, not the copy length."));
    s.push(critique(true, "The analysis is sound and complete. With the assertion treated "
                          "as compiled out, the unvalidated copy length makes the overflow "
                          "real."));
    s.push(judge_reply(true, "The agent identified the buffer overflow that the ground "
                             "truth patch addresses; the class matches despite the more "
                             "specific identifier."));
    push_generic_post(s, "cdfio-0001", true, true);

    push_cdfio0002_pre(s, true, 3, true);
    push_generic_post(s, "cdfio-0002", true, true);

    s.push("The palette copy looks wrong to me, it overflows.\n");
    push_generic_vulnerable_pre(s, "imgdec-0003", true, true, true);
    push_generic_post(s, "imgdec-0003", true, true);

    push_generic_vulnerable_pre(s, "imgdec-0004", true, true, true);
    push_generic_post(s, "imgdec-0004", true, true);

    push_missed_pre(s, "imgdec-0005", true,
                    "Without the caller's lifecycle the callback-order concern stays "
                    "speculative; the visible pairing of allocation and free is coherent.");
    push_generic_post(s, "imgdec-0005", true, true);

    push_generic_vulnerable_pre(s, "netmsg-0006", true, true, true);
    push_generic_post(s, "netmsg-0006", true, true);

    push_generic_vulnerable_pre(s, "netmsg-0007", true, true, true);
    push_generic_post(s, "netmsg-0007", true, true);

    push_generic_vulnerable_pre(s, "netmsg-0008", true, true, true);
    push_generic_post(s, "netmsg-0008", true, true);

    push_generic_vulnerable_pre(s, "strfmt-0009", true, true, false);
    push_generic_post(s, "strfmt-0009", true, true);

    push_generic_vulnerable_pre(s, "strfmt-0010", true, true, true);
    s.push(final_turn("The separator handling still looks unsafe without caller context.",
                      true, "NULL Pointer Dereference", "CWE-476",
                      "Even with the added check, later calls can still hand strchr a NULL "
                      "current pointer, so the dereference appears to remain."));
    s.push(critique(true, "The analysis is sound and complete. The tokenizer state can "
                          "still surface a NULL current pointer to strchr."));
    s.push(judge_reply(false, "The agent claims the patched function still contains the "
                              "original NULL dereference, but the patch guards the strchr "
                              "result; this is a false positive."));
}

void script_appendix_only(Script& s) {
    s.push(fx::kApxR1Analyst1);
    s.push(fx::kApxR1Analyst2);
    s.push(fx::kApxR1Analyst3);
    s.push(fx::kApxR1Analyst4);
    s.push(fx::kApxR1Architect);
    s.push(fx::kApxR2Analyst1);
    s.push(fx::kApxR2Analyst2);
    s.push(fx::kApxR2Architect);
    s.push(fx::kApxJudgePre);
    s.push(fx::kApxPostAnalyst1);
    s.push(fx::kApxPostAnalyst2);
    s.push(fx::kApxPostArchitect);
    s.push(fx::kApxJudgePost);
}

// ---------------------------------------------------------------------------

RunConfig preset_config(vultriad::Mode mode) {
    RunConfig cfg;
    cfg.apply_mode(mode);
    cfg.model_id = "gpt-4o-2024-08-06";
    cfg.max_rounds = 3;
    cfg.max_internal_steps = 10;
    cfg.judge_enabled = true;
    cfg.seed = 7;
    cfg.tool_budget_tokens = 256;
    cfg.workers = 1;
    return cfg;
}

struct Expected {
    std::size_t p_c, p_v, p_b, p_r;
};

void build_preset(const fs::path& root, const std::string& name, vultriad::Mode mode,
                  const std::string& corpus_file, void (*script_fn)(Script&),
                  const Expected& judged_expected) {
    const fs::path cassette = root / ("cassettes/" + name + ".jsonl");
    fs::create_directories(cassette.parent_path());

    vultriad::orch::ExperimentSetup setup;
    setup.pairs = vultriad::corpus::load_corpus((root / corpus_file).string());
    setup.ctx = vultriad::context::load_context_set((root / "context").string());
    setup.cfg = preset_config(mode);
    setup.backend_kind = "record";

    // Record through the real pipeline so every digest in the cassette is
    // exactly what replay will ask for.
    auto scripted = std::make_unique<vultriad::llm::ScriptedBackend>();
    vultriad::llm::ScriptedBackend* scripted_raw = scripted.get();
    Script script{scripted_raw};
    script_fn(script);

    vultriad::llm::RecordBackend recorder(std::move(scripted), cassette.string());
    setup.backend = &recorder;
    const fs::path scratch = fs::temp_directory_path() / ("vultriad-fx-" + name);
    fs::remove_all(scratch);
    setup.out_dir = scratch.string();
    vultriad::orch::run_experiment(setup);
    check(scripted_raw->remaining() == 0, name + ": script fully consumed");
    fs::remove_all(scratch);

    // Replay the fresh cassette into the golden run directory and verify the
    // intended outcome distribution.
    vultriad::llm::ReplayBackend replay(cassette.string());
    setup.backend = &replay;
    setup.backend_kind = "replay";
    const fs::path golden = root / ("golden/runs/" + name);
    fs::remove_all(golden);
    setup.out_dir = golden.string();
    vultriad::orch::ExperimentResult result = vultriad::orch::run_experiment(setup);

    check(result.judged.has_value(), name + ": judged summary present");
    const auto& counts = result.judged->counts;
    check(counts.at(vultriad::metrics::Category::P_C) == judged_expected.p_c,
          name + ": P_C count");
    check(counts.at(vultriad::metrics::Category::P_V) == judged_expected.p_v,
          name + ": P_V count");
    check(counts.at(vultriad::metrics::Category::P_B) == judged_expected.p_b,
          name + ": P_B count");
    check(counts.at(vultriad::metrics::Category::P_R) == judged_expected.p_r,
          name + ": P_R count");
    std::cout << name << ": " << result.pairs_evaluated << " pairs, judged P-C "
              << vultriad::strings::one_decimal(result.judged->p_c) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    fs::path root = "fixtures";
    if (argc > 1) root = argv[1];

    try {
        write_corpus_files(root);
        write_context_files(root);
        write_transcripts(root);
        write_configs(root);

        build_preset(root, "mavul", vultriad::Mode::mavul, "corpus/pairs.jsonl", script_mavul,
                     Expected{7, 1, 2, 0});
        build_preset(root, "cot", vultriad::Mode::cot, "corpus/pairs.jsonl", script_cot,
                     Expected{4, 0, 6, 0});
        build_preset(root, "single_agent", vultriad::Mode::single_agent, "corpus/pairs.jsonl",
                     script_single_agent, Expected{5, 0, 5, 0});
        build_preset(root, "no_context", vultriad::Mode::no_context, "corpus/pairs.jsonl",
                     script_no_context, Expected{6, 1, 3, 0});
        build_preset(root, "appendix_pair", vultriad::Mode::mavul, "corpus/appendix_pair.jsonl",
                     script_appendix_only, Expected{1, 0, 0, 0});
    } catch (const std::exception& e) {
        std::cerr << "fixture generation failed: " << e.what() << "\n";
        return 1;
    }
    std::cout << "fixtures written under " << root.string() << "\n";
    return 0;
}
