// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

namespace vultriad::digest {

/// SHA-256 of `data`, lowercase hex.
std::string sha256_hex(std::string_view data);

/// SHA-256 of a file's bytes, lowercase hex. Throws IoError.
std::string sha256_file_hex(const std::string& path);

} // namespace vultriad::digest
