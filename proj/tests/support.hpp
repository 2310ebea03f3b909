// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace testsupport {

inline std::string source_dir() {
    return VULTRIAD_SOURCE_DIR;
}

inline std::string fixture(const std::string& rel) {
    return source_dir() + "/fixtures/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing test input: " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("vultriad-test-" + tag + "-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string str() const { return path_.string(); }
    std::filesystem::path path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string write_temp(const TempDir& dir, const std::string& name,
                              const std::string& content) {
    const std::string path = (dir.path() / name).string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

} // namespace testsupport
