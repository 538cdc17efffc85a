#ifndef FKG_GENERATORS_HPP_
#define FKG_GENERATORS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "fkg/lattice.hpp"

namespace fkg {

// Deterministic, platform-independent stream; std:: distributions are
// implementation-defined and would break byte-identical reports.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform-ish in [0, n)

    // Independent stream for trial `index`; results do not depend on the
    // order in which trials are run.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t state_;
};

enum class MeasureMode { pairwise_potential, uniform, explicit_table };
enum class FunctionMode { increment_sum, indicator_mixture, explicit_table };

struct InstanceGenConfig {
    LatticeShape shape;
    std::uint64_t seed = 0;
    MeasureMode measure_mode = MeasureMode::pairwise_potential;
    FunctionMode function_mode = FunctionMode::increment_sum;
    // numerators of generated rationals stay <= value_bound (denominators <= 3)
    int value_bound = 10;
    // shift functions below zero (they stay increasing); used by the
    // negative controls that probe outside the nonnegativity hypothesis
    bool allow_negative_functions = false;
    std::optional<LatticeMeasure> explicit_measure;
    std::vector<LatticeFunction> explicit_functions;
};

struct Instance {
    LatticeMeasure measure;
    std::vector<LatticeFunction> functions;
};

// Pairwise-potential measures mu(x) ~ prod_i s_i(x_i) * prod_{i<j} z_ij^(x_i x_j)
// with z_ij >= 1 are MTP2 by supermodularity of x_i*x_j; increment-sum
// functions accumulate nonnegative increments along covers, so they are
// increasing and nonnegative. Both guarantees are re-verified post hoc here.
Instance generate_instance(const InstanceGenConfig& cfg, int nfunctions);

LatticeMeasure generate_measure(SplitMix64& rng, const InstanceGenConfig& cfg);
LatticeFunction generate_function(SplitMix64& rng, const InstanceGenConfig& cfg);

}  // namespace fkg

#endif  // FKG_GENERATORS_HPP_
