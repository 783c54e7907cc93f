#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "sumeta/error.hpp"

namespace sumeta {

// Shortest decimal representation that parses back to the same double.
// All numeric output goes through this so reports are byte-stable across
// runs and platforms.
inline std::string dtos(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Parses a full decimal literal; rejects trailing garbage and non-finite
// values (score files must hold finite reals).
inline double parse_finite_double(std::string_view text, const std::string& context) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        raise(ErrorCode::MalformedRecord, context + ": bad decimal literal '" + std::string(text) + "'");
    if (!std::isfinite(v))
        raise(ErrorCode::NonFiniteScore, context + ": non-finite score '" + std::string(text) + "'");
    return v;
}

// Identifiers for documents, systems, workers, SCUs and metrics.
inline bool valid_id(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

inline void require_valid_id(std::string_view id, const std::string& context) {
    if (!valid_id(id))
        raise(ErrorCode::MalformedRecord,
              context + ": id '" + std::string(id) + "' does not match [A-Za-z0-9_.-]+");
}

} // namespace sumeta
