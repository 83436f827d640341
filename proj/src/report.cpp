#include "espd/report.hpp"

#include <sstream>
#include <stdexcept>

#include "espd/design.hpp"
#include "json.hpp"

namespace espd {

std::string tool_version() { return "0.1.0"; }

void ReportDocument::add_value(const std::string& id, const std::string& computed) {
    checks.push_back({id, "", computed, true, ""});
}

void ReportDocument::add_check(const std::string& id, const std::string& expected,
                               const std::string& computed, const std::string& origin) {
    checks.push_back({id, expected, computed, expected == computed, origin});
}

bool ReportDocument::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ReportDocument::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = tool;
    j["version"] = version;
    j["command"] = command;
    j["field"] = field_record;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["expected"] = c.expected;
        jc["computed"] = c.computed;
        jc["pass"] = c.pass;
        jc["origin"] = c.origin;
        j["checks"].push_back(jc);
    }
    j["all_pass"] = all_pass();
    nlohmann::ordered_json jt;
    for (const auto& [name, ms] : timings_ms) jt[name] = ms;
    j["timings_ms"] = jt;
    return j.dump(2);
}

std::string ReportDocument::to_csv() const {
    std::ostringstream os;
    os << "id,expected,computed,pass,origin\n";
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += "\"\"";
            out += ch;
        }
        return out + "\"";
    };
    for (const auto& c : checks)
        os << quote(c.id) << ',' << quote(c.expected) << ',' << quote(c.computed) << ','
           << (c.pass ? "true" : "false") << ',' << quote(c.origin) << '\n';
    return os.str();
}

std::string ReportDocument::to_text() const {
    std::ostringstream os;
    os << tool << " " << version << " — " << command << "\n";
    os << "field: " << field_record << "\n";
    for (const auto& c : checks) {
        os << (c.pass ? "[pass] " : "[FAIL] ") << c.id << ": " << c.computed;
        if (!c.expected.empty()) os << " (expected " << c.expected << "; " << c.origin << ")";
        os << "\n";
    }
    os << (all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    for (const auto& [name, ms] : timings_ms) os << "time " << name << ": " << ms << " ms\n";
    return os.str();
}

std::string ReportDocument::render(const std::string& format) const {
    if (format == "json") return to_json();
    if (format == "csv") return to_csv();
    if (format == "text") return to_text();
    throw std::invalid_argument("ReportDocument::render: unknown format " + format);
}

namespace reference {

namespace {

// Exact weight distributions of the [17,11,5] code over GF(16), its
// [17,6,11] dual, and the [33,6,27] dual over GF(32), indexed by weight.
const std::vector<std::uint64_t> kPrimal16 = {
    1, 0, 0, 0, 0, 1020, 0, 224400, 3730650, 55370700, 669519840, 6378704640,
    47857084200, 276083558100, 1183224112800, 3549668972400, 6655630071165,
    5872614694500};

const std::vector<std::uint64_t> kDual16 = {
    1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 12240, 35700, 244800, 1203600, 3292560,
    6398715, 5589600};

const std::vector<std::uint64_t> kDual32 = {
    1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    0, 0, 1014816, 1268520, 20296320, 64609952, 210132384, 399584823, 376835008};

}  // namespace

const std::vector<std::uint64_t>* dual_distribution(unsigned m) {
    if (m == 4) return &kDual16;
    if (m == 5) return &kDual32;
    return nullptr;
}

const std::vector<std::uint64_t>* primal_distribution(unsigned m) {
    if (m == 4) return &kPrimal16;
    return nullptr;
}

std::uint64_t steiner_block_count(std::uint32_t q) { return binomial(q + 1, 3) / 10; }

std::uint64_t b63_block_count(unsigned m, std::uint32_t q) {
    if (m % 2 == 0) {
        const unsigned __int128 n =
            (unsigned __int128)(q - 4) * (q - 4) * binomial(q + 1, 3) / 120;
        if (n > UINT64_MAX) throw std::overflow_error("b63_block_count: overflow");
        return std::uint64_t(n);
    }
    return (std::uint64_t(q - 8) * binomial(q + 1, 4)) / 30;
}

std::uint64_t b63_b1_block_count(std::uint32_t q) {
    // 3-(q+1, 6, (q-4)(q-16)/6) design identity: b = lambda * C(q+1,3) / C(6,3)
    return lambda_b1_t3(q) * binomial(q + 1, 3) / 20;
}

std::uint64_t b63_b0_block_count(std::uint32_t q) {
    return steiner_block_count(q) * (q - 4);
}

std::uint64_t lambda_full_t4(std::uint32_t q) { return (q - 8) / 2; }
std::uint64_t lambda_full_t3(std::uint32_t q) { return std::uint64_t(q - 4) * (q - 4) / 6; }
std::uint64_t lambda_b0_t3(std::uint32_t q) { return 2 * std::uint64_t(q - 4); }
std::uint64_t lambda_b1_t3(std::uint32_t q) {
    return std::uint64_t(q - 4) * (q - 16) / 6;
}
std::uint64_t lambda_dual_min_t4(std::uint32_t q) {
    return (q - 8) * binomial(q - 5, 4) / 30;
}
std::uint64_t lambda_dual_min_t3(std::uint32_t q) {
    const unsigned __int128 n =
        (unsigned __int128)(q - 4) * (q - 4) * binomial(q - 5, 3) / 120;
    if (n > UINT64_MAX) throw std::overflow_error("lambda_dual_min_t3: overflow");
    return std::uint64_t(n);
}

}  // namespace reference

}  // namespace espd
