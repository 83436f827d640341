#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace espd {

/// One expected-vs-computed comparison. Checks with no expected value (pure
/// measurements) pass by definition and carry an empty `expected`.
struct CheckRecord {
    std::string id;
    std::string expected;
    std::string computed;
    bool pass = true;
    std::string origin;  // formula or table the expected value comes from
};

struct ReportDocument {
    std::string tool = "espdesign";
    std::string version;
    std::string command;
    std::string field_record;
    std::vector<CheckRecord> checks;
    std::vector<std::pair<std::string, double>> timings_ms;

    void add(CheckRecord rec) { checks.push_back(std::move(rec)); }
    void add_value(const std::string& id, const std::string& computed);
    void add_check(const std::string& id, const std::string& expected,
                   const std::string& computed, const std::string& origin);
    bool all_pass() const;

    std::string to_json() const;
    std::string to_csv() const;
    std::string to_text() const;
    std::string render(const std::string& format) const;
};

std::string tool_version();

/// Reference values for the desk-scale instances: the exact weight
/// distributions of the length-17 and length-33 codes, and the closed-form
/// block counts and design parameters. Origin strings identify the formula
/// or table each value comes from.
namespace reference {

constexpr int kTableVersion = 1;

/// Dual code weight distribution A_0..A_{q+1}; nullptr when not tabulated.
const std::vector<std::uint64_t>* dual_distribution(unsigned m);
/// Primal distribution; tabulated for m = 4 only.
const std::vector<std::uint64_t>* primal_distribution(unsigned m);

std::uint64_t steiner_block_count(std::uint32_t q);        // C(q+1,3)/10, m even
std::uint64_t b63_block_count(unsigned m, std::uint32_t q);
std::uint64_t b63_b1_block_count(std::uint32_t q);         // m even
std::uint64_t b63_b0_block_count(std::uint32_t q);         // m even

std::uint64_t lambda_full_t4(std::uint32_t q);   // (q-8)/2, m odd
std::uint64_t lambda_full_t3(std::uint32_t q);   // (q-4)^2/6, m even
std::uint64_t lambda_b0_t3(std::uint32_t q);     // 2(q-4), m even
std::uint64_t lambda_b1_t3(std::uint32_t q);     // (q-4)(q-16)/6, m even
std::uint64_t lambda_dual_min_t4(std::uint32_t q);  // (q-8)/30 * C(q-5,4), m odd
std::uint64_t lambda_dual_min_t3(std::uint32_t q);  // (q-4)^2/120 * C(q-5,3), m even

}  // namespace reference

}  // namespace espd
