// pqf: synthesize, benchmark and simulate probabilistic circuits with fallback.

#include "pqf/bench.hpp"
#include "pqf/config.hpp"
#include "pqf/errors.hpp"
#include "pqf/protocol.hpp"
#include "pqf/selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using nlohmann::ordered_json;
using namespace pqf;

namespace {

constexpr const char *kVersion = "0.1.0";

enum Exit { kOk = 0, kInvalid = 2, kAssumption = 3, kPrecision = 4, kVerification = 5, kInternal = 6 };

bool log_enabled() {
    const char *v = std::getenv("PQF_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

ProtocolConfig protocol_config(const Config &c) {
    ProtocolConfig p;
    p.precision_bits = c.precision_bits;
    p.modifier.budget_per_l1 = c.candidate_budget;
    p.modifier.factor.rho_budget = c.factor_budget;
    p.fallback.factor.rho_budget = c.factor_budget;
    p.fallback.seed = c.seed;
    return p;
}

ordered_json protocol_json(const PqfProtocol &P, const Config &c) {
    ordered_json j;
    j["basis"] = basis_name(P.basis);
    j["theta"] = c.theta ? c.theta->text : P.theta.str(30);
    j["theta_radians"] = P.theta.str(30);
    j["eps"] = c.eps_text;
    j["seed"] = c.seed;
    ordered_json rounds = ordered_json::array();
    for (const auto &r : P.rounds) {
        rounds.push_back({{"L", r.unitary.L},
                          {"p_success", r.p_success.to_double()},
                          {"failure_phase", r.failure_phase.str(20)},
                          {"cost", r.cost},
                          {"cnot_count", 2},
                          {"circuit", r.circuit.str()}});
    }
    j["rounds"] = rounds;
    j["fallback"] = {{"cost", P.fallback.cost()}, {"circuit", P.fallback.str()}};
    j["expected_cost"] = P.expected_cost.to_double();
    j["cost_variance"] = P.cost_variance.to_double();
    j["prefix_gate"] = P.prefix_gate;
    return j;
}

std::vector<std::string> default_eps_list() { return {"1e-10", "1e-15", "1e-20", "1e-25"}; }

int cmd_synth(const Config &c) {
    const Angle theta = *c.theta;
    const PqfProtocol P = build_pqf(theta.value, c.eps(), c.rounds, c.basis, protocol_config(c),
                                    exact_root_power(theta, basis_ring(c.basis)));
    const ordered_json j = protocol_json(P, c);
    if (c.format == OutputFormat::Csv) {
        std::cout << "basis,theta,eps,rounds,expected_cost,cost_variance,fallback_cost\n"
                  << basis_name(P.basis) << ',' << theta.text << ',' << c.eps_text << ',' << P.rounds.size() << ','
                  << j["expected_cost"] << ',' << j["cost_variance"] << ',' << P.fallback.cost() << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
    return kOk;
}

int cmd_bench(const Config &c, const std::string &out_path) {
    const std::vector<std::string> eps_list = c.eps_list.empty() ? default_eps_list() : c.eps_list;
    BenchOptions opt;
    opt.basis = c.basis;
    opt.rounds = c.rounds;
    opt.protocol = protocol_config(c);
    const std::vector<Real> angles = bench_angles(c.angles, c.seed);
    const bool verbose = log_enabled();
    const auto rows = run_bench(angles, eps_list, opt, [&](const BenchRow &r) {
        if (verbose) {
            std::cerr << "[pqf] " << r.index << " eps=" << r.eps << (r.ok ? " ok" : " FAILED: " + r.error) << '\n';
        }
    });

    std::ostringstream csv;
    csv << "# pqf " << kVersion << " bench basis=" << basis_name(c.basis) << " angles=" << c.angles
        << " rounds=" << c.rounds << " seed=" << c.seed << '\n';
    csv << bench_csv_header() << '\n';
    for (const auto &r : rows) {
        csv << bench_csv_row(r) << '\n';
    }

    // mean expected cost per eps and the cost-law fit
    const double base = cost_log_base(c.basis);
    std::vector<double> xs, ys;
    ordered_json summary = ordered_json::array();
    for (const auto &e : eps_list) {
        double sum = 0;
        long n = 0, failed = 0;
        for (const auto &r : rows) {
            if (r.eps != e) {
                continue;
            }
            if (r.ok) {
                sum += r.expected_cost;
                ++n;
            } else {
                ++failed;
            }
        }
        const double x = -std::log(parse_eps(e).to_double()) / std::log(base);
        if (n > 0) {
            xs.push_back(x);
            ys.push_back(sum / static_cast<double>(n));
        }
        summary.push_back({{"eps", e}, {"mean_expected_cost", n > 0 ? sum / static_cast<double>(n) : 0.0},
                           {"targets", n}, {"failures", failed}});
    }
    ordered_json fit = nullptr;
    if (xs.size() >= 3) {
        const CostFit f = fit_cost_law(xs, ys, base);
        fit = {{"a", f.a}, {"c", f.c}, {"d", f.d}, {"rms", f.rms}, {"log_base", base}};
    }
    if (c.format == OutputFormat::Csv) {
        if (out_path.empty()) {
            std::cout << csv.str();
        } else {
            std::ofstream(out_path) << csv.str();
        }
        std::cerr << ordered_json{{"per_eps", summary}, {"fit", fit}}.dump(2) << '\n';
    } else {
        if (!out_path.empty()) {
            std::ofstream(out_path) << csv.str();
        }
        std::cout << ordered_json{{"basis", basis_name(c.basis)}, {"per_eps", summary}, {"fit", fit}}.dump(2) << '\n';
    }
    return kOk;
}

int cmd_simulate(const Config &c, const std::string &protocol_path, long trials) {
    ordered_json j;
    {
        std::ifstream in(protocol_path);
        if (!in) {
            throw InvalidInput("cannot open protocol file '" + protocol_path + "'");
        }
        try {
            in >> j;
        } catch (const std::exception &e) {
            throw InvalidInput(std::string("protocol file is not valid JSON: ") + e.what());
        }
    }
    Basis basis;
    Angle theta;
    Real eps;
    std::vector<std::string> circuits;
    std::string fallback;
    try {
        basis = basis_from_name(j.at("basis").get<std::string>());
        theta = parse_angle(j.at("theta").get<std::string>());
        eps = parse_eps(j.at("eps").get<std::string>());
        for (const auto &r : j.at("rounds")) {
            circuits.push_back(r.at("circuit").get<std::string>());
        }
        fallback = j.at("fallback").at("circuit").get<std::string>();
    } catch (const nlohmann::json::exception &e) {
        throw InvalidInput(std::string("malformed protocol file: ") + e.what());
    }
    PqfProtocol P = protocol_from_circuits(basis, theta.value, eps, circuits, fallback);
    // recorded metadata has to agree with the re-derived protocol
    for (std::size_t i = 0; i < P.rounds.size(); ++i) {
        const auto &r = j["rounds"][i];
        if (r.contains("cost") && r["cost"].get<long>() != P.rounds[i].cost) {
            throw VerificationFailure("round " + std::to_string(i + 1) + " cost differs from its circuit");
        }
    }
    const SimReport s = simulate(P, trials, c.seed);
    ordered_json out;
    out["trials"] = s.trials;
    out["seed"] = s.seed;
    ordered_json freq = ordered_json::array();
    for (std::size_t i = 0; i < s.round_successes.size(); ++i) {
        const double f = static_cast<double>(s.round_successes[i]) / static_cast<double>(s.trials);
        freq.push_back({{"round", i + 1}, {"successes", s.round_successes[i]}, {"frequency", f},
                        {"p_success", P.rounds[i].p_success.to_double()}});
    }
    out["round_successes"] = freq;
    out["fallback_runs"] = s.fallback_runs;
    out["mean_cost"] = s.mean_cost.to_double();
    out["cost_variance"] = s.cost_variance.to_double();
    out["expected_cost"] = P.expected_cost.to_double();
    out["expected_variance"] = P.cost_variance.to_double();
    out["mean_ci95"] = {(s.mean_cost - Real(1.96) * s.mean_stderr).to_double(),
                        (s.mean_cost + Real(1.96) * s.mean_stderr).to_double()};
    out["max_segments"] = s.max_segments;
    out["max_distance"] = s.max_distance.to_double();
    std::cout << out.dump(2) << '\n';
    return kOk;
}

int cmd_selftest() {
    bool all = true;
    for (const auto &r : run_selftest()) {
        std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.ok;
    }
    std::cout << (all ? "selftest passed" : "selftest FAILED") << '\n';
    return all ? kOk : kVerification;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Probabilistic quantum circuits with fallback"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Config cfg;
    std::string basis = "t", theta, format = "json", out_path, protocol_path;
    long trials = 100000;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--basis", basis, "Gate set: t, pi12 or v")->check(CLI::IsMember({"t", "pi12", "v"}));
        sub->add_option("--eps", cfg.eps_text, "Target precision");
        sub->add_option("--rounds", cfg.rounds, "Probabilistic rounds before the fallback");
        sub->add_option("--seed", cfg.seed, "Seed for every random choice");
        sub->add_option("--precision-bits", cfg.precision_bits, "Working precision (0: automatic)");
        sub->add_option("--candidate-budget", cfg.candidate_budget, "Modifier candidates per unit of L1");
        sub->add_option("--factor-budget", cfg.factor_budget, "Pollard-rho iterations per norm equation");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path, "Write CSV rows to this file");
    };

    CLI::App *synth = app.add_subcommand("synth", "Compile one axial rotation");
    common(synth);
    synth->add_option("--theta", theta, "Angle: radians, pi/N or a*pi/b")->required();

    CLI::App *bench = app.add_subcommand("bench", "Benchmark over random angles");
    common(bench);
    bench->add_option("--angles", cfg.angles, "Number of random angles in (0, pi/2)");
    bench->add_option("--eps-list", cfg.eps_list, "Precisions, e.g. 1e-10 1e-15")->delimiter(',');

    CLI::App *sim = app.add_subcommand("simulate", "Monte-Carlo run of a protocol file");
    common(sim);
    sim->add_option("--protocol", protocol_path, "Protocol JSON produced by synth")->required();
    sim->add_option("--trials", trials, "Number of trajectories");

    CLI::App *self = app.add_subcommand("selftest", "Run the oracle suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        cfg.basis = basis_from_name(basis);
        cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        if (!theta.empty()) {
            cfg.theta = parse_angle(theta);
        }
        cfg.validate();
        if (*synth) {
            return cmd_synth(cfg);
        }
        if (*bench) {
            return cmd_bench(cfg, out_path);
        }
        if (*sim) {
            if (trials < 1) {
                throw InvalidInput("--trials must be positive");
            }
            return cmd_simulate(cfg, protocol_path, trials);
        }
        if (*self) {
            return cmd_selftest();
        }
    } catch (const InvalidInput &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const PreconditionViolated &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const AssumptionFailure &e) {
        std::cerr << "assumption failure: " << e.what() << '\n';
        return kAssumption;
    } catch (const PrecisionExhausted &e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const IterationCap &e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kPrecision;
    } catch (const VerificationFailure &e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return kVerification;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kOk;
}
