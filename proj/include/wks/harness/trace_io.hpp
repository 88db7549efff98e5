#pragma once

// Line-delimited JSON traces: one record per request with fields
// t, sigma, ell and, for engine runs, positions and kinds (server 1 first).

#include "wks/errors.hpp"
#include "wks/rsp_engine.hpp"

#include <json.hpp>

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace wks::harness {

struct TraceRecord {
    std::size_t t = 0;
    Point sigma = 0;
    int ell = 0;
    std::vector<Point> positions;
    std::vector<std::string> kinds;
};

inline TraceRecord to_record(const StepOutcome& step) {
    TraceRecord r{step.t, step.sigma, step.ell, {}, {}};
    for (const auto& lo : step.levels) {
        r.positions.push_back(lo.position);
        r.kinds.emplace_back(to_string(lo.kind));
    }
    return r;
}

inline std::string to_json_line(const TraceRecord& r) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["sigma"] = r.sigma;
    j["ell"] = r.ell;
    if (!r.positions.empty()) {
        j["positions"] = r.positions;
        j["kinds"] = r.kinds;
    }
    return j.dump();
}

inline void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

inline std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            TraceRecord r;
            r.t = j.at("t").get<std::size_t>();
            r.sigma = j.at("sigma").get<Point>();
            r.ell = j.at("ell").get<int>();
            if (j.contains("positions")) r.positions = j["positions"].get<std::vector<Point>>();
            if (j.contains("kinds")) r.kinds = j["kinds"].get<std::vector<std::string>>();
            if (!out.empty() && r.t <= out.back().t) throw InvalidArgument("t is not increasing");
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw InvalidArgument("trace line " + std::to_string(lineno) + ": " + e.what());
        } catch (const InvalidArgument& e) {
            throw InvalidArgument("trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

/// Requests as whitespace-separated point indices; '#' starts a comment.
inline RequestSequence read_requests(std::istream& in) {
    RequestSequence out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (std::isspace(static_cast<unsigned char>(line[pos])) || line[pos] == ',') {
                ++pos;
                continue;
            }
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(line.substr(pos), &used);
            } catch (const std::exception&) {
                throw InvalidArgument("requests: cannot parse '" + line.substr(pos) + "'");
            }
            if (v < 0) throw InvalidArgument("requests: negative point index");
            out.push_back(static_cast<Point>(v));
            pos += used;
        }
    }
    return out;
}

}  // namespace wks::harness
