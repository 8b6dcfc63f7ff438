#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "rr/rr_engine.hpp"

namespace acc {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

struct Outcome {
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

inline rr::Model curve(uint32_t p, const std::string& s) { return rr::CurveModel::make(rr::parse_bipoly(p, s)); }

inline std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Every expanded element lies in L(D) and t^{d_i+1} b_i does not.
inline void membership_and_maximality(const rr::PlaceTable& tab, const rr::Divisor& D, const rr::CompressedBasis& cb,
                                      Outcome& o, const std::string& tag) {
    for (auto& b : rr::expand_basis(cb)) o.check(rr::contains(tab, D, b).member, tag + ": expanded element in L(D)");
    uint32_t p = tab.model()->p;
    for (size_t i = 0; i < cb.b.size(); ++i)
        o.check(!rr::contains(tab, D, cb.b[i].scaled(rr::RatFunc::t_power(p, cb.d[i] + 1))).member,
                tag + ": t^(d_" + std::to_string(i) + "+1) b_" + std::to_string(i) + " outside L(D)");
}

// One corpus curve with its hand-derived genus (-1 when none is claimed).
struct CorpusCurve {
    uint32_t p;
    const char* f;
    int genus;
    bool singular;
};

const std::vector<CorpusCurve>& corpus();

std::vector<Outcome> corpus_criteria();  // 4, 5, 6
Outcome oracle_criterion();              // 7
Outcome benchmark_criterion();           // 8

}  // namespace acc
