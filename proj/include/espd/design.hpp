#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "espd/blocks.hpp"

namespace espd {

/// Points 0..v-1 with uniform size-k blocks, stored flat like BlockFamily.
/// Designs here are simple: no repeated blocks.
struct IncidenceStructure {
    std::uint32_t v = 0;
    std::uint32_t k = 0;
    std::vector<std::uint32_t> flat;

    std::size_t count() const { return k == 0 ? 0 : flat.size() / k; }
    std::span<const std::uint32_t> block(std::size_t i) const {
        return {flat.data() + i * k, k};
    }
};

IncidenceStructure structure_from_family(const BlockFamily& fam);

struct DesignReport {
    unsigned t = 0;
    std::uint32_t v = 0;
    std::uint32_t k = 0;
    std::uint64_t b = 0;
    std::uint64_t coverage_min = 0;
    std::uint64_t coverage_max = 0;
    std::optional<std::uint64_t> lambda;  // set when coverage_min == coverage_max
    bool is_design = false;
    bool is_steiner = false;
};

/// Exact binomial coefficient, throwing on uint64 overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct VerifyOptions {
    unsigned threads = 1;
    std::uint64_t budget = 1'000'000'000;  // max size of the coverage table
};

/// Counts, for every t-subset of the point set, the number of blocks
/// containing it (dense table indexed by colexicographic rank) and reports
/// the min/max coverage. The structure is a t-design iff they agree.
DesignReport verify_design(const IncidenceStructure& s, unsigned t,
                           const VerifyOptions& opt = {});

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool is_integer() const { return den == 1; }
    bool operator==(const Rational&) const = default;
};

/// lambda_s = lambda * C(v-s, t-s) / C(k-s, t-s): the s-design parameter
/// any t-(v,k,lambda) design automatically carries, as an exact rational.
Rational lambda_s(unsigned t, std::uint32_t v, std::uint32_t k, std::uint64_t lambda,
                  unsigned s);

/// Replaces every block by its complement in the point set.
IncidenceStructure complement_design(const IncidenceStructure& s);

/// JSON object with stable keys t, v, k, b, coverage_min, coverage_max,
/// lambda, is_design, is_steiner.
std::string design_report_json(const DesignReport& r);

}  // namespace espd
