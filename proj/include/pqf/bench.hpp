#pragma once

// Batch benchmarking over random angles and a list of precisions.

#include "pqf/protocol.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pqf {

struct BenchRow {
    std::size_t index = 0; ///< position in the (angle, eps) input order
    Basis basis = Basis::T;
    std::string theta;
    std::string eps;
    bool ok = false;
    std::string error;
    double expected_cost = 0;
    double cost_variance = 0;
    double p_success = 0;
    long L_r = 0;
    long L1 = 0;
    long round_cost = 0;
    long fallback_cost = 0;
    long candidates_tried = 0;
    long fallback_candidates = 0;
    long pslq_iterations = 0;
    double z_abs = 0;
    double max_distance = 0; ///< largest verified branch distance
    double wall_time = 0;
};

/// n angles drawn uniformly from (0, pi/2).
std::vector<Real> bench_angles(long n, std::uint64_t seed);

struct BenchOptions {
    Basis basis = Basis::T;
    long rounds = 1;
    ProtocolConfig protocol;
    unsigned jobs = 0; ///< 0: hardware concurrency
};

/// One row per (eps, angle), ordered eps-major. Failures become rows with ok = false.
std::vector<BenchRow> run_bench(const std::vector<Real> &angles, const std::vector<std::string> &eps_list,
                                const BenchOptions &opt,
                                const std::function<void(const BenchRow &)> &progress = {});

/// y ~ a x + c log_b(x) + d with x = log_b(1/eps), by least squares.
struct CostFit {
    double a = 0, c = 0, d = 0;
    double rms = 0;
};
CostFit fit_cost_law(const std::vector<double> &x, const std::vector<double> &y, double base);

/// Logarithm base of the cost law: 2 for T and pi/12, 5 for V.
double cost_log_base(Basis b);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow &r);

} // namespace pqf
