#ifndef FKG_JSON_IO_HPP_
#define FKG_JSON_IO_HPP_

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "fkg/apps.hpp"
#include "fkg/certificates.hpp"
#include "fkg/cumulants.hpp"
#include "fkg/lattice.hpp"
#include "fkg/verify.hpp"

namespace fkg {

using json = nlohmann::json;

// Parse failure with the JSON-pointer-ish location of the offending value,
// e.g. "weights[2]".
class parse_error : public std::runtime_error {
public:
    parse_error(std::string where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// Instance format: {"shape":[2,2], "weights":["1/2","1/8","1/8","1/4"]},
// rationals as "p/q" strings in lowest terms ("p" for integers); functions
// use "values" with the same mixed-radix layout (coordinate 0 least
// significant). Negative weights and malformed rationals are rejected with
// the offending position.
json measure_to_json(const LatticeMeasure& mu);
LatticeMeasure measure_from_json(const json& j);
json function_to_json(const LatticeFunction& f);
LatticeFunction function_from_json(const json& j);

// {"m":3, "kind":"conjugate", "coeffs":[{"lambda":[3],"c":2}, ...]}
json spec_to_json(const CumulantSpec& spec);
CumulantSpec spec_from_json(const json& j);

// Partitions as integer arrays; splits as arrays of sorted integer arrays.
json partition_to_json(const Partition& lambda);
json split_to_json(const BlockSplit& split);

json certificate_to_json(const Certificate& cert);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json matrix_to_json(const RationalMatrix& M);
RationalMatrix matrix_from_json(const json& j);

json family_to_json(const FamilyOfSubsets& fam);
FamilyOfSubsets family_from_json(const json& j);

Rational rational_from_json(const json& j, const std::string& where);
std::vector<Rational> rational_vector_from_json(const json& j, const std::string& where);

}  // namespace fkg

#endif  // FKG_JSON_IO_HPP_
