// SPDX-License-Identifier: Apache-2.0
#include "vultriad/digest.hpp"

#include "vultriad/errors.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>

namespace vultriad::digest {

namespace {

std::string to_hex(const unsigned char* bytes, unsigned len) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[bytes[i] >> 4]);
        out.push_back(hex[bytes[i] & 0xF]);
    }
    return out;
}

} // namespace

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
    return to_hex(md.data(), len);
}

std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file for hashing: " + path);
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(contents);
}

} // namespace vultriad::digest
