// SPDX-License-Identifier: Apache-2.0
// Prompt template assets. The text blocks are versioned verbatim; rendering
// must stay byte-stable, so edit only by introducing a new version.
#include "vultriad/protocol.hpp"

#include "vultriad/digest.hpp"
#include "vultriad/errors.hpp"

namespace vultriad::protocol {

namespace {

const std::string kAnalystV1 = R"TMPL(You are an expert cybersecurity researcher specializing in static code analysis of C/C++ programs. Your task is to meticulously analyze a given function for security vulnerabilities. Your goal is to determine if the provided C/C++ function is vulnerable.

- CONSTRAINTS
1. You can ONLY use the tools provided in the 'TOOLS' section. Do not hallucinate or assume the existence of other tools.
2. Your reasoning (in the 'Thought' section) must be clear, explicit, and justify every action you take.
3. If you receive a 'Critique' from the Adjudicator, you must start a new analysis that directly addresses the feedback. Incorporate the critique into your reasoning.

- TOOLS
You have access to the following tools for code analysis:
1. get_function_body: Retrieves the full source code for a given function name
2. get_callers: Finds all functions that directly call the specified function
3. get_callees: Finds all functions that are directly called by the specified function

- OUTPUT FORMAT
Thought: you should always think about what to do
Action: the action to take, should be one of get_function_body, get_callers, get_callees
Action Input: the input to the action
Observation: the result of the action
... (this Thought/Action/Action Input/Observation can repeat N times)
Thought: I now know the final answer
Final Answer: output your final answer in a single JSON block. The JSON object must conform to the following schema:
```json
{
  "is_vulnerable": "<boolean>",
  "vulnerability_type": "<string>",
  "cwe_id": "<string>",
  "explanation": "<string, A detailed, step-by-step explanation of the vulnerability and its root cause. If not vulnerable, explain why the code is safe.>"
}
```

- CURRENT TASK
Function to Analyze:
{function_code}

History of Previous Attempts and Corresponding Adjudicator's Critiques (if any):
{history})TMPL";

// No-tools variant: identical except the TOOLS section is omitted.
const std::string kAnalystNoToolsV1 = R"TMPL(You are an expert cybersecurity researcher specializing in static code analysis of C/C++ programs. Your task is to meticulously analyze a given function for security vulnerabilities. Your goal is to determine if the provided C/C++ function is vulnerable.

- CONSTRAINTS
1. You can ONLY use the tools provided in the 'TOOLS' section. Do not hallucinate or assume the existence of other tools.
2. Your reasoning (in the 'Thought' section) must be clear, explicit, and justify every action you take.
3. If you receive a 'Critique' from the Adjudicator, you must start a new analysis that directly addresses the feedback. Incorporate the critique into your reasoning.

- OUTPUT FORMAT
Thought: you should always think about what to do
Thought: I now know the final answer
Final Answer: output your final answer in a single JSON block. The JSON object must conform to the following schema:
```json
{
  "is_vulnerable": "<boolean>",
  "vulnerability_type": "<string>",
  "cwe_id": "<string>",
  "explanation": "<string, A detailed, step-by-step explanation of the vulnerability and its root cause. If not vulnerable, explain why the code is safe.>"
}
```

- CURRENT TASK
Function to Analyze:
{function_code}

History of Previous Attempts and Corresponding Adjudicator's Critiques (if any):
{history})TMPL";

const std::string kArchitectV1 = R"TMPL(You are a senior security architect and a world-renowned expert in C/C++ vulnerabilities. Your role is to act as a neutral and objective Reflexion agent for the analysis provided by another analyst. Your goal is to either validate their findings or identify flaws in their reasoning.

- INPUT
You will receive the full analysis from another analyst, which includes:
1. The original function that was analyzed.
2. The complete Thought -> Action -> Observation trajectory of the analysis.
2. The final JSON assessment produced by the analyst.

- CRITIQUE CHECKLIST
If you agree, briefly state why the analyst's reasoning is sound.
If you disagree, you must provide a detailed counterargument. Your counterargument must:
1. Clearly state the flaw in the analyst's reasoning.
2. Cite specific evidence from the code, the analyst's trace, or established security principles (e.g., CWE definitions).
3. Explicitly state what the analyst must do to address your concerns and reach a consensus.

- OUTPUT FORMAT
You MUST output your critique in a single JSON block. The JSON object must conform to the following schema:
```json
{
  "agreement": "<boolean, true if you fully agree with the analyst's conclusion and reasoning, false otherwise>",
  "feedback": "<string, a detailed natural language explanation of your critique. If agreement is false, explain exactly what is wrong with the analysis and provide specific, policy-level advice on how to improve it. If agreement is true, state that the analysis is sound and complete.>"
}
```

- CURRENT TASK
Original Function to Analyze:
{function_code}

Analyst's Full Analysis to Review:
{analyst_full_analysis})TMPL";

const std::string kJudgeV1 = R"TMPL(You are an Evaluation Oracle, an automated system for judging the correctness of a vulnerability detection agent's prediction. Your goal is to compare an agent's final vulnerability analysis against a provided ground truth. You will determine if the agent's prediction is correct and provide a rationale for your judgment.

- INPUTS
You will be given two JSON objects:
1. Agent Output: The final analysis produced by the agent.
2. Ground Truth: The ground truth information.

- EVALUATION CRITERIA
Please note that the final analysis produced by the agent is generated based on the vulnerable (patched) version of the code, not the patched (vulnerable) one. If the agent identifies the ground truth vulnerability in the vulnerable (patched) code, regardless of whether it also identifies other vulnerabilities, return MATCH (MISMATCH). If the agent does not identify the ground truth vulnerability in the vulnerable (patched) code, even if it identifies other vulnerabilities, return MISMATCH (MATCH).

- OUTPUT FORMAT
You MUST output your evaluation in a single JSON block. The JSON object must conform to the following schema:
```json
{
    "prediction": "<string, 'MATCH' or "MISMATCH>",
    "rationale": "<string, A brief explanation for your judgment. For example, 'The agent correctly identified the function as vulnerable, but misclassified the vulnerability type. The agent identified a CWE-120, but the ground truth is CWE-787.' or 'The agent correctly identified the function as non-vulnerable and provided a sound explanation.'>"
}

- CURRENT TASK
Agent Output:
{agent_output}

Ground Truth:
{ground_truth})TMPL";

struct TemplateInfo {
    const std::string* text;
    const char* version;
    std::vector<std::string> placeholders;
};

const TemplateInfo& info_for(TemplateId id, bool tools_enabled) {
    static const TemplateInfo analyst{&kAnalystV1, "analyst_v1", {"function_code", "history"}};
    static const TemplateInfo analyst_no_tools{
        &kAnalystNoToolsV1, "analyst_no_tools_v1", {"function_code", "history"}};
    static const TemplateInfo architect{
        &kArchitectV1, "architect_v1", {"function_code", "analyst_full_analysis"}};
    static const TemplateInfo judge{&kJudgeV1, "judge_v1", {"agent_output", "ground_truth"}};
    switch (id) {
        case TemplateId::analyst: return tools_enabled ? analyst : analyst_no_tools;
        case TemplateId::architect: return architect;
        case TemplateId::judge: return judge;
    }
    return analyst;
}

void replace_all(std::string& text, const std::string& token, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(token, pos)) != std::string::npos) {
        text.replace(pos, token.size(), value);
        pos += value.size();
    }
}

} // namespace

const std::string& template_text(TemplateId id, bool tools_enabled) {
    return *info_for(id, tools_enabled).text;
}

std::string template_version(TemplateId id, bool tools_enabled) {
    return info_for(id, tools_enabled).version;
}

std::string template_digest(TemplateId id, bool tools_enabled) {
    return digest::sha256_hex(template_text(id, tools_enabled));
}

std::string render_prompt(TemplateId id, const std::map<std::string, std::string>& bindings,
                          bool tools_enabled) {
    const TemplateInfo& info = info_for(id, tools_enabled);
    std::string out = *info.text;
    for (const auto& name : info.placeholders) {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw MissingBindingError(name);
        replace_all(out, "{" + name + "}", it->second);
    }
    return out;
}

} // namespace vultriad::protocol
