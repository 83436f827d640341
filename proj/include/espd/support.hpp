#pragma once

#include <cstdint>
#include <optional>

#include "espd/code.hpp"
#include "espd/design.hpp"

namespace espd {

/// Supports of all weight-w codewords as an incidence structure on the
/// points 0..q, under the labeling point i <-> gamma^i. w in {5, 6} runs the
/// low-weight enumeration; w = q-5 walks the sigma_{6,3} blocks and takes
/// complements (the dual minimum-weight supports).
IncidenceStructure support_design(const LinearCode& code, unsigned w,
                                  const ScanOptions& opt = {});

/// The same supports in block-family form, so they can be written in the
/// family file format and diffed against enumerated families.
BlockFamily support_family(const LinearCode& code, unsigned w,
                           const ScanOptions& opt = {});

struct MatchVerdict {
    bool equal = false;
    std::uint64_t only_in_first = 0;
    std::uint64_t only_in_second = 0;
};

/// Set equality of two block lists over the same point set.
MatchVerdict match_structures(const IncidenceStructure& s1, const IncidenceStructure& s2);

/// Number of codewords whose support is exactly the given set (one
/// GF(q)-line minus zero when the kernel is all-nonzero, else 0).
std::uint64_t codewords_on_support(const LinearCode& code,
                                   std::span<const std::uint32_t> support);

struct SupportDesignMap {
    unsigned w = 0;
    IncidenceStructure supports;
    MatchVerdict verdict;                       // against the supplied family
    std::optional<std::uint64_t> codewords_per_support;  // set when uniform
};

/// Extracts the weight-w support design and compares it, block for block,
/// with the given family under the natural labeling.
SupportDesignMap link_supports(const LinearCode& code, unsigned w,
                               const BlockFamily& family, const ScanOptions& opt = {});

}  // namespace espd
