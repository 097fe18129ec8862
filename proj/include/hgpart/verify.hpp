#pragma once

// The eleven acceptance criteria, each checked against an independent
// brute-force oracle. Shared by the acceptance binary and `hgpart verify`.

#include <functional>
#include <string>
#include <vector>

namespace hgpart::verify {

struct Options {
    bool quick = false;  // reduced scale for the sweep-based and exhaustive criteria
    int jobs = 1;
};

struct Result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriteria = 11;

/// Runs one criterion (1..11). Exceptions are caught and reported as failures.
Result run_criterion(int id, const Options& options);

/// Runs every criterion in order, calling on_result after each one.
std::vector<Result> run_all(const Options& options, const std::function<void(const Result&)>& on_result = {});

/// "[PASS] 3 m_solve residue bound: ... (0.4 s)"
std::string format(const Result& result);

}  // namespace hgpart::verify
