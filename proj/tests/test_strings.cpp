// SPDX-License-Identifier: Apache-2.0
#include "vultriad/strings.hpp"

#include <doctest.h>

using namespace vultriad;

TEST_CASE("count_lines follows newline-delimited semantics") {
    CHECK(strings::count_lines("") == 0);
    CHECK(strings::count_lines("a") == 1);
    CHECK(strings::count_lines("a\nb") == 2);
    CHECK(strings::count_lines("a\nb\n") == 2);
    CHECK(strings::count_lines("\n") == 1);
}

TEST_CASE("normalize_source strips line endings and trailing blanks") {
    CHECK(strings::normalize_source("a \r\nb\t\n\n\n") == "a\nb");
    CHECK(strings::normalize_source("x") == "x");
    CHECK(strings::normalize_source("int f() {\n  return 1;   \n}\n") ==
          "int f() {\n  return 1;\n}");
}

TEST_CASE("unquote strips one layer of quotes") {
    CHECK(strings::unquote("\"cdf_read_short_sector\"") == "cdf_read_short_sector");
    CHECK(strings::unquote("'name'") == "name");
    CHECK(strings::unquote("  plain  ") == "plain");
    CHECK(strings::unquote("\"unbalanced") == "\"unbalanced");
}

TEST_CASE("one_decimal formatting") {
    CHECK(strings::one_decimal(17.5) == "17.5");
    CHECK(strings::one_decimal(0.0) == "0.0");
    CHECK(strings::one_decimal(100.0) == "100.0");
    CHECK(strings::one_decimal(100.0 / 7.0) == "14.3");
}
