// SPDX-License-Identifier: Apache-2.0
#include "vultriad/context.hpp"

#include "vultriad/errors.hpp"
#include "vultriad/strings.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>
#include <set>

#include "support.hpp"

using namespace vultriad;
using nlohmann::json;
using testsupport::TempDir;

TEST_CASE("bundled cdfio store serves the reference function") {
    const auto store = context::load_context(testsupport::fixture("context/cdfio.json"));

    const std::string body = context::get_function_body(store, "cdf_read_short_sector", 4096);
    CHECK(strings::contains(body, "CDF_SHORT_SEC_SIZE(h)"));
    CHECK(strings::contains(body, "size_t ss = CDF_SHORT_SEC_SIZE(h);"));

    const auto callers = context::get_callers(store, "cdf_read_short_sector");
    CHECK(callers == std::vector<std::string>{"cdf_read_short_sector_chain"});

    const auto callees = context::get_callees(store, "cdf_read_short_sector");
    CHECK(callees == std::vector<std::string>{"DPRINTF", "memcpy"});
}

TEST_CASE("unknown names raise UnknownFunction with the offending name") {
    const auto store = context::load_context(testsupport::fixture("context/cdfio.json"));
    try {
        context::get_function_body(store, "no_such_fn", 100);
        FAIL("expected UnknownFunctionError");
    } catch (const UnknownFunctionError& e) {
        CHECK(e.name() == "no_such_fn");
    }
    CHECK_THROWS_AS(context::get_callers(store, "nope"), UnknownFunctionError);
    CHECK_THROWS_AS(context::get_callees(store, "nope"), UnknownFunctionError);
}

TEST_CASE("leaf entries return empty lists, not errors") {
    context::ContextStore store;
    store.project_id = "p";
    store.entries["leaf"] = context::ContextEntry{"leaf", "x\n", {}, {}};
    CHECK(context::get_callers(store, "leaf").empty());
    CHECK(context::get_callees(store, "leaf").empty());
}

TEST_CASE("body truncation keeps whole lines and names the dropped count") {
    context::ContextStore store;
    store.project_id = "p";
    std::string body;
    for (int i = 0; i < 1000; ++i) body += "line_" + std::to_string(i) + "\n";
    store.entries["big"] = context::ContextEntry{"big", body, {}, {}};

    // 100 tokens = 400 chars. Lines are 7-10 chars (+1 newline join).
    const std::string out = context::get_function_body(store, "big", 100);
    CHECK(out.size() <= 400 + 64);  // prefix obeys the budget, marker rides on top
    REQUIRE(strings::contains(out, "...[truncated "));

    // Line arithmetic oracle: kept + dropped = total, prefix is literal.
    const auto lines = strings::split_lines(out);
    const std::string marker = lines.back();
    const std::size_t kept = lines.size() - 1;
    const std::size_t dropped = std::stoul(marker.substr(marker.find(' ') + 1));
    CHECK(kept + dropped == 1000);
    for (std::size_t i = 0; i < kept; ++i) CHECK(lines[i] == "line_" + std::to_string(i));

    SUBCASE("within budget passes through verbatim") {
        CHECK(context::get_function_body(store, "big", 1'000'000) == body);
    }
}

TEST_CASE("caller lists come back sorted and duplicate-free") {
    TempDir dir("ctx");
    json doc{{"project_id", "p"},
             {"functions",
              {{"f",
                {{"body", "b\n"},
                 {"callers", {"zeta", "alpha", "zeta", "midway"}},
                 {"callees", {"memcpy", "DPRINTF", "memcpy"}}}}}}};
    const std::string path = testsupport::write_temp(dir, "store.json", doc.dump());
    const auto store = context::load_context(path);
    CHECK(context::get_callers(store, "f") ==
          std::vector<std::string>{"alpha", "midway", "zeta"});
    CHECK(context::get_callees(store, "f") == std::vector<std::string>{"DPRINTF", "memcpy"});
}

TEST_CASE("caller/callee symmetry holds on closed synthetic stores") {
    // Build a random closed digraph, store both directions, then check the
    // adjacency transpose through the tool surface.
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        std::set<std::pair<int, int>> edges;
        for (int k = 0; k < n * 2; ++k) {
            int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
            if (a != b) edges.insert({a, b});
        }
        context::ContextStore store;
        store.project_id = "p";
        auto name = [](int i) { return "fn_" + std::to_string(i); };
        for (int i = 0; i < n; ++i)
            store.entries[name(i)] = context::ContextEntry{name(i), "b\n", {}, {}};
        for (const auto& [a, b] : edges) {
            store.entries[name(a)].callees.push_back(name(b));
            store.entries[name(b)].callers.push_back(name(a));
        }
        for (auto& [_, entry] : store.entries) {
            std::sort(entry.callers.begin(), entry.callers.end());
            std::sort(entry.callees.begin(), entry.callees.end());
        }

        for (int a = 0; a < n; ++a) {
            for (const auto& b : context::get_callees(store, name(a))) {
                const auto callers = context::get_callers(store, b);
                CHECK(std::find(callers.begin(), callers.end(), name(a)) != callers.end());
            }
        }
    }
}

TEST_CASE("load_context rejects malformed stores") {
    TempDir dir("ctx");
    SUBCASE("not JSON") {
        const std::string path = testsupport::write_temp(dir, "bad.json", "not json");
        CHECK_THROWS_AS(context::load_context(path), SchemaError);
    }
    SUBCASE("missing functions key") {
        const std::string path =
            testsupport::write_temp(dir, "nofn.json", json{{"project_id", "p"}}.dump());
        CHECK_THROWS_AS(context::load_context(path), SchemaError);
    }
    SUBCASE("empty body") {
        json doc{{"project_id", "p"}, {"functions", {{"f", {{"body", ""}}}}}};
        const std::string path = testsupport::write_temp(dir, "empty.json", doc.dump());
        CHECK_THROWS_AS(context::load_context(path), SchemaError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(context::load_context((dir.path() / "absent.json").string()), IoError);
    }
}

TEST_CASE("load_context_set keys stores by project and resolves functions") {
    const auto ctx = context::load_context_set(testsupport::fixture("context"));
    CHECK(ctx.stores.size() == 4);
    CHECK(ctx.resolve("cdfio") != nullptr);
    CHECK(ctx.resolve("unknown-project") == nullptr);
    CHECK(ctx.resolves_function("netmsg", "msg_checksum"));
    CHECK_FALSE(ctx.resolves_function("netmsg", "str_expand"));
}
