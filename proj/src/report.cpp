#include "fkg/report.hpp"

#include <sstream>

namespace fkg {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::violation: return "violation";
        case Outcome::inconclusive: return "inconclusive";
        case Outcome::error: return "error";
    }
    return "?";
}

void Report::add_check(CheckLine line) {
    checks.push_back(std::move(line));
}

void Report::settle_outcome() {
    Outcome worst = Outcome::pass;
    auto rank = [](Outcome o) {
        switch (o) {
            case Outcome::pass: return 0;
            case Outcome::inconclusive: return 1;
            case Outcome::violation: return 2;
            case Outcome::error: return 3;
        }
        return 3;
    };
    for (const CheckLine& c : checks)
        if (rank(c.status) > rank(worst)) worst = c.status;
    outcome = worst;
}

std::string Report::to_text(bool with_timing) const {
    std::ostringstream os;
    os << "fkg " << command << '\n';
    if (!config.empty()) os << "  config: " << config.dump() << '\n';
    for (const CheckLine& c : checks) {
        os << "  " << c.label << ": ";
        std::string status = to_string(c.status);
        for (char& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << status;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << '\n';
    }
    std::string overall = to_string(outcome);
    for (char& ch : overall) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "  outcome: " << overall << '\n';
    if (with_timing) os << "  elapsed_ms: " << elapsed_ms << '\n';
    return os.str();
}

json Report::to_json(bool with_timing) const {
    json checks_json = json::array();
    for (const CheckLine& c : checks)
        checks_json.push_back(
            json{{"label", c.label}, {"detail", c.detail}, {"status", to_string(c.status)}});
    json out{{"command", command},
             {"config", config},
             {"outcome", to_string(outcome)},
             {"checks", checks_json},
             {"payload", payload}};
    if (with_timing) out["elapsed_ms"] = elapsed_ms;
    return out;
}

int Report::exit_code() const {
    switch (outcome) {
        case Outcome::pass:
        case Outcome::inconclusive: return 0;
        case Outcome::violation: return 1;
        case Outcome::error: return 2;
    }
    return 2;
}

}  // namespace fkg
