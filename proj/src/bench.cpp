#include "pqf/bench.hpp"

#include "pqf/config.hpp"
#include "pqf/errors.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace pqf {

std::vector<Real> bench_angles(long n, std::uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<Real> out;
    const Real half_pi = Real::pi() / Real(2L);
    for (long i = 0; i < n; ++i) {
        double u = g.uniform();
        while (u == 0.0) {
            u = g.uniform();
        }
        out.push_back(Real(u) * half_pi);
    }
    return out;
}

namespace {

BenchRow run_one(const Real &theta, const std::string &eps_text, const BenchOptions &opt) {
    BenchRow row;
    row.basis = opt.basis;
    row.theta = theta.str(20);
    row.eps = eps_text;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Real eps = parse_eps(eps_text);
        PqfProtocol P = build_pqf(theta, eps, opt.rounds, opt.basis, opt.protocol);
        row.ok = true;
        row.expected_cost = P.expected_cost.to_double();
        row.cost_variance = P.cost_variance.to_double();
        row.fallback_cost = P.fallback.cost();
        row.fallback_candidates = P.fallback_candidates;
        row.max_distance = verify_protocol(P).to_double();
        if (!P.rounds.empty()) {
            const Round &r = P.rounds.front();
            row.p_success = r.p_success.to_double();
            row.L_r = r.unitary.L;
            row.L1 = r.stats.L1;
            row.round_cost = r.cost;
            row.candidates_tried = r.stats.candidates_tried;
            row.pslq_iterations = r.stats.pslq_iterations;
            row.z_abs = r.stats.z_abs.to_double();
        }
    } catch (const std::exception &e) {
        row.ok = false;
        row.error = e.what();
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

} // namespace

std::vector<BenchRow> run_bench(const std::vector<Real> &angles, const std::vector<std::string> &eps_list,
                                const BenchOptions &opt, const std::function<void(const BenchRow &)> &progress) {
    const std::size_t total = angles.size() * eps_list.size();
    std::vector<BenchRow> rows(total);
    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next++;
            if (idx >= total) {
                return;
            }
            BenchRow r = run_one(angles[idx % angles.size()], eps_list[idx / angles.size()], opt);
            r.index = idx;
            if (progress) {
                const std::lock_guard<std::mutex> lock(report);
                progress(r);
            }
            rows[idx] = std::move(r);
        }
    };
    unsigned jobs = opt.jobs != 0 ? opt.jobs : std::max(1U, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return rows;
}

CostFit fit_cost_law(const std::vector<double> &x, const std::vector<double> &y, double base) {
    if (x.size() != y.size() || x.size() < 3) {
        throw InvalidInput("cost fit needs at least three points");
    }
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        A(i, 0) = xi;
        A(i, 1) = std::log(xi) / std::log(base);
        A(i, 2) = 1.0;
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector3d s = A.colPivHouseholderQr().solve(b);
    CostFit f{s(0), s(1), s(2), 0};
    f.rms = std::sqrt((A * s - b).squaredNorm() / static_cast<double>(n));
    return f;
}

double cost_log_base(Basis b) { return b == Basis::V ? 5.0 : 2.0; }

std::string bench_csv_header() {
    return "index,basis,theta,eps,ok,expected_cost,cost_variance,p_success,L_r,L1,round_cost,fallback_cost,"
           "candidates_tried,fallback_candidates,pslq_iterations,z_abs,max_distance,wall_time,error";
}

std::string bench_csv_row(const BenchRow &r) {
    std::ostringstream os;
    os.precision(10);
    std::string err = r.error;
    for (char &ch : err) {
        if (ch == ',' || ch == '\n') {
            ch = ';';
        }
    }
    os << r.index << ',' << basis_name(r.basis) << ',' << r.theta << ',' << r.eps << ',' << (r.ok ? 1 : 0) << ','
       << r.expected_cost << ',' << r.cost_variance << ',' << r.p_success << ',' << r.L_r << ',' << r.L1 << ','
       << r.round_cost << ',' << r.fallback_cost << ',' << r.candidates_tried << ',' << r.fallback_candidates << ','
       << r.pslq_iterations << ',' << r.z_abs << ',' << r.max_distance << ',' << r.wall_time << ',' << err;
    return os.str();
}

} // namespace pqf
