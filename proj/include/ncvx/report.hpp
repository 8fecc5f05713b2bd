// report.hpp — structured outcome of a verification run, with a fixed-order
// JSON serialization (17 significant digits) for reproducibility audits.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ncvx {

struct Outcome {
    std::string name;
    double value = 0.0;
    double bound = 0.0;   // the threshold the value was held against
    bool pass = false;
};

enum class Status { Pass, Fail, Error };

const char* to_string(Status s);

struct VerificationReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // flat, insertion order
    std::vector<Outcome> outcomes;
    std::uint64_t seed = 0;
    double elapsed_s = 0.0;
    Status status = Status::Pass;

    void add_param(const std::string& key, const std::string& value);
    void add_param(const std::string& key, double value);
    void add_param(const std::string& key, std::int64_t value);

    /// Records an outcome and folds its pass flag into the status.
    void check(const std::string& name, double value, double bound, bool pass);

    bool passed() const { return status == Status::Pass; }

    /// Status recomputed from outcomes (pass iff every outcome passes),
    /// unless an error was recorded.
    void finalize();

    std::string to_json() const;

    /// Table form: one line per outcome.
    std::string to_table() const;
};

/// Doubles rendered with 17 significant digits, round-trip exact.
std::string format_double(double v);

}  // namespace ncvx
