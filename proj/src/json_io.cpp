#include "fkg/json_io.hpp"

namespace fkg {

Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return Rational(static_cast<long>(j.get<long long>()));
    }
    if (!j.is_string())
        throw parse_error(where, "expected a rational as a \"p/q\" string");
    const auto text = j.get<std::string>();
    const auto r = parse_rational(text);
    if (!r)
        throw parse_error(where, "malformed rational \"" + text + "\"");
    return *r;
}

std::vector<Rational> rational_vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array())
        throw parse_error(where, "expected an array");
    std::vector<Rational> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

namespace {

LatticeShape shape_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw parse_error(where, "expected a nonempty array of chain lengths");
    std::vector<int> lens;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        if (!e.is_number_integer())
            throw parse_error(where + "[" + std::to_string(i) + "]", "expected an integer");
        const int len = e.get<int>();
        if (len < 2)
            throw parse_error(where + "[" + std::to_string(i) + "]", "chain length must be >= 2");
        lens.push_back(len);
    }
    try {
        return LatticeShape(std::move(lens));
    } catch (const std::invalid_argument& e) {
        throw parse_error(where, e.what());
    }
}

json rationals_to_json(const std::vector<Rational>& values) {
    json arr = json::array();
    for (const Rational& v : values) arr.push_back(to_string(v));
    return arr;
}

}  // namespace

json measure_to_json(const LatticeMeasure& mu) {
    return json{{"shape", mu.shape().chain_lengths()}, {"weights", rationals_to_json(mu.weights())}};
}

LatticeMeasure measure_from_json(const json& j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("weights"))
        throw parse_error("measure", "expected {\"shape\":[...], \"weights\":[...]}");
    const LatticeShape shape = shape_from_json(j["shape"], "shape");
    const auto weights = rational_vector_from_json(j["weights"], "weights");
    if (weights.size() != shape.size())
        throw parse_error("weights", "expected " + std::to_string(shape.size()) + " entries");
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] < 0)
            throw parse_error("weights[" + std::to_string(i) + "]", "negative weight");
    return LatticeMeasure(shape, weights);
}

json function_to_json(const LatticeFunction& f) {
    return json{{"shape", f.shape().chain_lengths()}, {"values", rationals_to_json(f.values())}};
}

LatticeFunction function_from_json(const json& j) {
    if (!j.is_object() || !j.contains("shape") || !j.contains("values"))
        throw parse_error("function", "expected {\"shape\":[...], \"values\":[...]}");
    const LatticeShape shape = shape_from_json(j["shape"], "shape");
    const auto values = rational_vector_from_json(j["values"], "values");
    if (values.size() != shape.size())
        throw parse_error("values", "expected " + std::to_string(shape.size()) + " entries");
    return LatticeFunction(shape, values);
}

json spec_to_json(const CumulantSpec& spec) {
    json coeffs = json::array();
    for (const auto& [lambda, c] : spec.coefficients()) {
        json value;
        if (c.fits_slong_p())
            value = c.get_si();
        else
            value = to_string(c);
        coeffs.push_back(json{{"lambda", lambda.parts()}, {"c", value}});
    }
    return json{{"m", spec.m()}, {"kind", to_string(spec.kind())}, {"coeffs", coeffs}};
}

CumulantSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("kind"))
        throw parse_error("spec", "expected {\"m\":..., \"kind\":...}");
    const int m = j["m"].get<int>();
    const auto kind = j["kind"].get<std::string>();
    if (kind == "cumulant") return CumulantSpec::cumulant(m);
    if (kind == "conjugate") return CumulantSpec::conjugate(m);
    if (kind != "custom")
        throw parse_error("spec.kind", "expected cumulant, conjugate or custom");
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error("spec.coeffs", "custom kind needs a coefficient array");
    std::map<Partition, Integer> coeffs;
    for (std::size_t i = 0; i < j["coeffs"].size(); ++i) {
        const auto& entry = j["coeffs"][i];
        const std::string where = "spec.coeffs[" + std::to_string(i) + "]";
        if (!entry.is_object() || !entry.contains("lambda") || !entry.contains("c"))
            throw parse_error(where, "expected {\"lambda\":[...], \"c\":...}");
        std::vector<int> parts;
        for (const auto& p : entry["lambda"]) parts.push_back(p.get<int>());
        const Rational c = rational_from_json(entry["c"], where + ".c");
        if (c.get_den() != 1)
            throw parse_error(where + ".c", "coefficients must be integers");
        try {
            coeffs.emplace(Partition(std::move(parts)), Integer(c.get_num()));
        } catch (const std::invalid_argument& e) {
            throw parse_error(where + ".lambda", e.what());
        }
    }
    try {
        return CumulantSpec::custom(m, std::move(coeffs));
    } catch (const std::invalid_argument& e) {
        throw parse_error("spec", e.what());
    }
}

json partition_to_json(const Partition& lambda) {
    return json(lambda.parts());
}

json split_to_json(const BlockSplit& split) {
    return json(split.blocks_as_sorted_lists());
}

json certificate_to_json(const Certificate& cert) {
    json offending = json::array();
    for (const auto& [exp, coeff] : cert.offending)
        offending.push_back(json{{"exponents", exp}, {"coefficient", to_string(coeff)}});
    return json{{"spec", cert.spec_id},      {"m", cert.m},
                {"pass", cert.pass},         {"monomials", cert.monomial_count},
                {"offending", offending},    {"text", cert.text}};
}

json witness_to_json(const Witness& w) {
    json functions = json::array();
    for (const LatticeFunction& f : w.functions) functions.push_back(function_to_json(f));
    return json{{"kind", "witness"},
                {"claim", w.claim},
                {"spec", spec_to_json(w.spec)},
                {"measure", measure_to_json(w.measure)},
                {"functions", functions},
                {"value", to_string(w.value)},
                {"trial", w.trial},
                {"seed", std::to_string(w.seed)}};
}

Witness witness_from_json(const json& j) {
    if (!j.is_object() || !j.contains("spec") || !j.contains("measure") || !j.contains("functions") ||
        !j.contains("value"))
        throw parse_error("witness", "expected spec, measure, functions and value");
    Witness w{j.value("claim", std::string{}),
              spec_from_json(j["spec"]),
              measure_from_json(j["measure"]),
              {},
              rational_from_json(j["value"], "witness.value"),
              j.value("trial", std::uint64_t{0}),
              0};
    if (j.contains("seed")) {
        const auto& s = j["seed"];
        w.seed = s.is_string() ? std::stoull(s.get<std::string>()) : s.get<std::uint64_t>();
    }
    if (!j["functions"].is_array())
        throw parse_error("witness.functions", "expected an array");
    for (const auto& f : j["functions"]) w.functions.push_back(function_from_json(f));
    return w;
}

json matrix_to_json(const RationalMatrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.n(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.n(); ++j) row.push_back(to_string(M.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw parse_error("matrix", "expected a nonempty array of rows");
    const int n = static_cast<int>(j.size());
    std::vector<Rational> entries;
    entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const std::string where = "matrix[" + std::to_string(i) + "]";
        if (!j[static_cast<std::size_t>(i)].is_array() ||
            static_cast<int>(j[static_cast<std::size_t>(i)].size()) != n)
            throw parse_error(where, "expected a row of " + std::to_string(n) + " entries");
        for (int k = 0; k < n; ++k)
            entries.push_back(rational_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                                                 where + "[" + std::to_string(k) + "]"));
    }
    return RationalMatrix(n, std::move(entries));
}

namespace {

std::uint32_t subset_from_json(const json& j, int n, const std::string& where) {
    if (!j.is_array())
        throw parse_error(where, "expected a subset as an array of coordinates");
    std::uint32_t mask = 0;
    for (const auto& e : j) {
        const int i = e.get<int>();
        if (i < 0 || i >= n)
            throw parse_error(where, "element out of range");
        mask |= std::uint32_t{1} << i;
    }
    return mask;
}

}  // namespace

json family_to_json(const FamilyOfSubsets& fam) {
    json members = json::array();
    for (std::uint32_t m : fam.members()) {
        json subset = json::array();
        for (int i = 0; i < fam.n(); ++i)
            if ((m >> i) & 1u) subset.push_back(i);
        members.push_back(subset);
    }
    const char* tag = fam.tag() == FamilyOfSubsets::Closure::up
                          ? "up"
                          : fam.tag() == FamilyOfSubsets::Closure::down ? "down" : "none";
    return json{{"n", fam.n()}, {"members", members}, {"closure", tag}};
}

FamilyOfSubsets family_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("members") || !j.contains("closure"))
        throw parse_error("family", "expected {\"n\":..., \"members\":[...], \"closure\":...}");
    const int n = j["n"].get<int>();
    const auto tag_text = j["closure"].get<std::string>();
    FamilyOfSubsets::Closure tag;
    if (tag_text == "up")
        tag = FamilyOfSubsets::Closure::up;
    else if (tag_text == "down")
        tag = FamilyOfSubsets::Closure::down;
    else if (tag_text == "none")
        tag = FamilyOfSubsets::Closure::none;
    else
        throw parse_error("family.closure", "expected up, down or none");
    std::vector<std::uint32_t> members;
    for (std::size_t i = 0; i < j["members"].size(); ++i)
        members.push_back(
            subset_from_json(j["members"][i], n, "family.members[" + std::to_string(i) + "]"));
    try {
        return FamilyOfSubsets(n, std::move(members), tag);
    } catch (const std::invalid_argument& e) {
        throw parse_error("family", e.what());
    }
}

}  // namespace fkg
