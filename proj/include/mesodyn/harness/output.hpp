#pragma once

// Deterministic text output: 17-significant-digit floats, '\n' line endings and a '#' metadata
// header on every file.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "mesodyn/errors.hpp"

namespace mesodyn::harness {

inline constexpr std::string_view kToolName = "mesodyn";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// %.17g, with negative zero written as 0.
inline std::string fmt(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt(std::size_t v) { return std::to_string(v); }

/// Shortest "%g" rendering, for names and labels.
inline std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Provenance lines written at the top of every output file.
struct FileHeader {
    std::string config_hash;
    std::string run_name;
    std::vector<std::string> notes;
};

/// Writes a file in binary mode so that line endings are exactly '\n' on every platform.
class TextFile {
public:
    TextFile(const std::filesystem::path& path, const FileHeader& header) : path_(path) {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_) throw ConfigError("cannot open output file " + path.string());
        line("# " + std::string(kToolName) + " " + std::string(kToolVersion));
        line("# config_hash fnv1a64:" + header.config_hash);
        line("# run " + header.run_name);
        for (const auto& n : header.notes) line("# " + n);
    }

    void line(std::string_view s) {
        out_ << s << '\n';
    }

    template <class... Cols>
    void row(const Cols&... cols) {
        std::string s;
        bool first = true;
        ((s += (first ? "" : ","), s += cell(cols), first = false), ...);
        line(s);
    }

    void close() {
        out_.close();
        if (!out_) throw ConfigError("failed writing " + path_.string());
    }

    const std::filesystem::path& path() const { return path_; }

private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(std::size_t v) { return fmt(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::filesystem::path path_;
    std::ofstream out_;
};

/// Two-column key,value report.
class Report {
public:
    void add(std::string key, double v) { entries_.emplace_back(std::move(key), fmt(v)); }
    void add(std::string key, std::size_t v) { entries_.emplace_back(std::move(key), fmt(v)); }
    void add(std::string key, std::string v) { entries_.emplace_back(std::move(key), std::move(v)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string get(const std::string& key) const {
        for (const auto& [k, v] : entries_)
            if (k == key) return v;
        throw UsageError("report has no key " + key);
    }

    void write(const std::filesystem::path& path, const FileHeader& header) const {
        TextFile f(path, header);
        f.line("key,value");
        for (const auto& [k, v] : entries_) f.row(k, v);
        f.close();
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace mesodyn::harness
