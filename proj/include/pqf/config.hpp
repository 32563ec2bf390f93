#pragma once

// Run configuration shared by the library front ends and the command-line tool.

#include "pqf/exact.hpp"
#include "pqf/real.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pqf {

/// An angle in radians; pi_multiple is set when the input was an exact rational multiple of pi.
struct Angle {
    Real value;
    std::optional<mpq_class> pi_multiple;
    std::string text;
};

/// Accepts "pi", "-pi/8", "3*pi/4", "3pi/4", "0.25" (radians). Throws InvalidInput.
Angle parse_angle(const std::string &s);

/// Parses a positive decimal like "1e-15". Throws InvalidInput.
Real parse_eps(const std::string &s);

enum class OutputFormat { Json, Csv };

struct Config {
    Basis basis = Basis::T;
    std::optional<Angle> theta;
    std::string eps_text = "1e-10";
    long rounds = 1;
    long precision_bits = 0; ///< 0: derived from eps
    long candidate_budget = 64;
    long factor_budget = 1L << 16;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Json;
    long angles = 100;
    std::vector<std::string> eps_list;

    /// Throws InvalidInput with an actionable message.
    void validate() const;
    Real eps() const { return parse_eps(eps_text); }
};

/// Exact short-circuit: j with theta = 2 pi j / m, when theta is a rational multiple of pi.
std::optional<long> exact_root_power(const Angle &theta, RingOrder m);

/// SplitMix64 generator (counter based, bit-reproducible everywhere).
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform();

  private:
    std::uint64_t state_;
};

} // namespace pqf
