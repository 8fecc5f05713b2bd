#include "ncvx/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace ncvx {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Error: return "error";
    }
    return "error";
}

void VerificationReport::add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
}

void VerificationReport::add_param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
}

void VerificationReport::add_param(const std::string& key, std::int64_t value) {
    params.emplace_back(key, std::to_string(value));
}

void VerificationReport::check(const std::string& name, double value, double bound, bool pass) {
    outcomes.push_back({name, value, bound, pass});
    if (!pass && status == Status::Pass) status = Status::Fail;
}

void VerificationReport::finalize() {
    if (status == Status::Error) return;
    status = Status::Pass;
    for (const Outcome& o : outcomes) {
        if (!o.pass) {
            status = Status::Fail;
            return;
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string VerificationReport::to_json() const {
    std::ostringstream os;
    os << "{\n";
    os << "  \"command\": \"" << json_escape(command) << "\",\n";
    os << "  \"params\": {";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) os << ", ";
        os << "\"" << json_escape(params[i].first) << "\": \""
           << json_escape(params[i].second) << "\"";
    }
    os << "},\n";
    os << "  \"outcomes\": [\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Outcome& o = outcomes[i];
        os << "    {\"name\": \"" << json_escape(o.name) << "\", \"value\": "
           << format_double(o.value) << ", \"bound\": " << format_double(o.bound)
           << ", \"pass\": " << (o.pass ? "true" : "false") << "}";
        if (i + 1 < outcomes.size()) os << ",";
        os << "\n";
    }
    os << "  ],\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"elapsed_s\": " << format_double(elapsed_s) << ",\n";
    os << "  \"status\": \"" << to_string(status) << "\"\n";
    os << "}\n";
    return os.str();
}

std::string VerificationReport::to_table() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    for (const auto& [k, v] : params) os << "   " << k << " = " << v << "\n";
    for (const Outcome& o : outcomes) {
        os << (o.pass ? "  [ok]   " : "  [FAIL] ") << o.name
           << "  value=" << format_double(o.value)
           << "  bound=" << format_double(o.bound) << "\n";
    }
    os << "  status: " << to_string(status) << "  (elapsed " << elapsed_s << " s)\n";
    return os.str();
}

}  // namespace ncvx
