#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace wks::harness {

struct Summary {
    std::size_t n = 0;
    double mean = 0;
    double stddev = 0;  // sample standard deviation
    double ci95 = 0;    // normal-approximation half width
    double min = 0;
    double max = 0;
};

inline Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    s.min = s.max = xs[0];
    double sum = 0;
    for (double x : xs) {
        sum += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = sum / static_cast<double>(s.n);
    if (s.n > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
        s.ci95 = 1.96 * s.stddev / std::sqrt(static_cast<double>(s.n));
    }
    return s;
}

/// Fixed formatting so identical runs produce identical bytes.
inline std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

inline std::string summary_csv_header() { return "metric,n,mean,stddev,ci95_low,ci95_high,min,max"; }

inline std::string summary_csv_row(const std::string& metric, const Summary& s) {
    return metric + "," + std::to_string(s.n) + "," + fmt(s.mean) + "," + fmt(s.stddev) + "," + fmt(s.mean - s.ci95) +
           "," + fmt(s.mean + s.ci95) + "," + fmt(s.min) + "," + fmt(s.max);
}

}  // namespace wks::harness
