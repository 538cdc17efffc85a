#ifndef FKG_REPORT_HPP_
#define FKG_REPORT_HPP_

#include <string>
#include <vector>

#include "fkg/json_io.hpp"

namespace fkg {

enum class Outcome { pass, violation, inconclusive, error };

std::string to_string(Outcome o);

// One verified statement inside a report.
struct CheckLine {
    std::string label;   // e.g. "kappa'_3 >= 0 over 1000 MTP2 instances"
    std::string detail;  // e.g. "0 violations, min value 3/256"
    Outcome status = Outcome::pass;
};

// Deterministic command result. Timing is kept out of the serialized forms
// unless explicitly requested, so identical runs emit identical bytes.
struct Report {
    std::string command;
    json config = json::object();
    Outcome outcome = Outcome::pass;
    std::vector<CheckLine> checks;
    json payload = json::object();
    double elapsed_ms = 0.0;

    void add_check(CheckLine line);
    // worst status across checks: error > violation > inconclusive > pass
    void settle_outcome();

    std::string to_text(bool with_timing = false) const;
    json to_json(bool with_timing = false) const;

    // 0 = pass/inconclusive, 1 = violation or witness found, 2 = error
    int exit_code() const;
};

}  // namespace fkg

#endif  // FKG_REPORT_HPP_
