#include "critjac/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace critjac::cli {

namespace {

std::vector<std::string> split_colon(const std::string& s, std::size_t want) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    if (parts.size() != want)
        throw DomainError("expected " + std::to_string(want) +
                          " colon-separated fields in '" + s + "'");
    return parts;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw DomainError("not a finite number: '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw DomainError("not an integer: '" + s + "'");
    return v;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw DomainError("unknown output format '" + s + "' (csv or json)");
}

const char* to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

std::vector<double> Grid::points() const {
    if (count < 1) throw DomainError("grid count must be >= 1");
    std::vector<double> p(static_cast<std::size_t>(count));
    if (count == 1) {
        p[0] = lo;
        return p;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (long i = 0; i < count; ++i) p[static_cast<std::size_t>(i)] = lo + step * i;
    p.back() = hi;   // exact endpoint regardless of rounding
    return p;
}

Grid parse_grid(const std::string& spec) {
    const auto parts = split_colon(spec, 3);
    Grid g;
    g.lo = parse_double(parts[0]);
    g.hi = parse_double(parts[1]);
    g.count = parse_long(parts[2]);
    if (g.count < 1) throw DomainError("grid count must be >= 1 in '" + spec + "'");
    if (g.count == 1 && g.hi != g.lo)
        throw DomainError("grid with count 1 must have hi == lo in '" + spec + "'");
    if (g.count > 1 && !(g.hi > g.lo))
        throw DomainError("grid needs hi > lo in '" + spec + "'");
    return g;
}

std::pair<long, long> parse_index_window(const std::string& spec) {
    const auto parts = split_colon(spec, 2);
    const long lo = parse_long(parts[0]);
    const long hi = parse_long(parts[1]);
    if (lo < 1 || hi < lo)
        throw DomainError("index window needs 1 <= lo <= hi in '" + spec + "'");
    return {lo, hi};
}

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw DomainError("fmt_double: conversion failed");
    return std::string(buf, ptr);
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path() && !target.parent_path().empty())
        fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

int env_thread_cap() {
    const char* raw = std::getenv("CRITJAC_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    long v = 0;
    const char* last = raw;
    while (*last != '\0') ++last;
    auto [ptr, ec] = std::from_chars(raw, last, v);
    if (ec != std::errc{} || ptr != last) return 1;
    if (v < 1) return 1;
    if (v > 256) return 256;
    return static_cast<int>(v);
}

}  // namespace critjac::cli
