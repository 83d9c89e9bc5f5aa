#pragma once

#include "utaylor/universal.hpp"

#include <cstdint>
#include <string>

namespace utaylor {

inline constexpr const char* kSeriesMagic = "utaylor-series";
inline constexpr int kSeriesFormatVersion = 1;

// 64-bit FNV-1a, rendered as 16 hex digits.
std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

// Exact text for doubles ("%a"); read back with strtod.
std::string hex_double(double x);
double parse_double(const std::string& s);

/// Schedules as JSON text. Numbers may be written as decimals, hex floats or
/// rationals "p/q", either as JSON strings or plain JSON numbers; complex
/// values are [re, im] pairs. A document of the form
/// {"preset": "disc" | "strip", "steps": N, ...} starts from a shipped
/// schedule and applies the remaining keys as overrides.
Schedule parse_schedule(const std::string& text);
Schedule load_schedule(const std::string& path);
// Canonical form: every number as an exact hex float.
std::string schedule_to_text(const Schedule& s);
std::string schedule_hash(const Schedule& s);

/// Series artifact: a magic line "utaylor-series v1" followed by a JSON
/// document holding the run config, the schedule, the blocks (coefficients as
/// hex-float pairs) and the step certificates.
struct SeriesArtifact {
    UniversalSeries series;
    std::string schedule_text;
    // Canonical run configuration (JSON text) and its hash.
    std::string config_text;
    std::string config_hash;
    std::uint64_t seed = 0;
};

std::string artifact_to_text(const SeriesArtifact& a);
// IoError on a bad magic line, version or malformed payload.
SeriesArtifact artifact_from_text(const std::string& text);
void save_artifact(const SeriesArtifact& a, const std::string& path);
SeriesArtifact load_artifact(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace utaylor
