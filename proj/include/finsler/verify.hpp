// SPDX-License-Identifier: MIT
/**
 * @file verify.hpp
 * @brief Batch verification suites.
 *
 * Every sample is a pure function of (options, index), so the OpenMP batch
 * and the serial reference produce identical reports.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "finsler/domains.hpp"

namespace finsler {

enum class Suite { Invariance, Pseudoconvexity, KahlerBerwald, CurvatureOracle, Bounds };

const char* to_string(Suite suite);
Suite suite_from_string(const std::string& s);

struct SuiteOptions {
    Suite suite = Suite::Invariance;
    DomainSpec spec;
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = -1.0; ///< negative: suite default
    double fd_step = 1e-4;
    int jobs = 0;      ///< 0: OpenMP default
};

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;     ///< measured quantity
    double threshold = 0.0; ///< bound it is compared against
    double margin = 0.0;    ///< positive iff passing
    std::string digest;     ///< inputs digest of the sample
    int sample = -1;        ///< sample index, -1 for batch-level checks
};

struct VerificationReport {
    std::string suite;
    DomainSpec spec;
    int samples = 0;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::map<std::string, double> tolerances;
    std::map<std::string, double> summary;
    std::vector<std::string> notes;

    bool all_pass() const;
    int failures() const;
};

double default_tolerance(Suite suite);

/// Parallel batch (OpenMP when available).
VerificationReport run_suite(const SuiteOptions& opts);
/// Serial reference path with identical output.
VerificationReport run_suite_serial(const SuiteOptions& opts);

/// FNV-1a digest of a spec, matrices and a seed, as 16 hex digits.
std::string inputs_digest(const DomainSpec& spec, const std::vector<CMat>& mats, std::uint64_t seed);

} // namespace finsler
