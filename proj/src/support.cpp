#include "espd/support.hpp"

#include <algorithm>

namespace espd {

IncidenceStructure support_design(const LinearCode& code, unsigned w,
                                  const ScanOptions& opt) {
    const Field& f = code.f();
    if (w == code.n - 6) {
        const B63Families fams = enumerate_b63(f, opt);
        IncidenceStructure s = structure_from_family(fams.full);
        return complement_design(s);
    }
    if (w > 6) throw std::invalid_argument("support_design: w must be 5, 6 or q-5");
    LowWeightOptions lw;
    lw.threads = opt.threads;
    lw.budget = opt.budget;
    const LowWeightResult res = enumerate_low_weight(code, w, lw);
    return structure_from_family(res.supports);
}

BlockFamily support_family(const LinearCode& code, unsigned w, const ScanOptions& opt) {
    const IncidenceStructure s = support_design(code, w, opt);
    BlockFamily fam;
    fam.q = code.f().q();
    fam.k = w;
    fam.ell = (w == 5) ? 2 : (w == 6) ? 3 : 0;
    fam.tag = FamilyTag::Full;
    fam.flat = s.flat;
    return fam;
}

MatchVerdict match_structures(const IncidenceStructure& s1, const IncidenceStructure& s2) {
    if (s1.v != s2.v) throw std::invalid_argument("match_structures: different point sets");
    MatchVerdict v;
    if (s1.k != s2.k) {
        v.only_in_first = s1.count();
        v.only_in_second = s2.count();
        return v;
    }
    std::size_t i = 0, j = 0;
    while (i < s1.count() && j < s2.count()) {
        const auto a = s1.block(i);
        const auto b = s2.block(j);
        if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) {
            ++v.only_in_first;
            ++i;
        } else if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
            ++v.only_in_second;
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    v.only_in_first += s1.count() - i;
    v.only_in_second += s2.count() - j;
    v.equal = (v.only_in_first == 0 && v.only_in_second == 0);
    return v;
}

std::uint64_t codewords_on_support(const LinearCode& code,
                                   std::span<const std::uint32_t> support) {
    const Field& f = code.f();
    const MMatrix m = m_matrix(f, support);
    if (m_rank(f, m) == m.cols) return 0;
    const std::vector<gfe> x = subfield_kernel_solution(f, m);
    if (std::find(x.begin(), x.end(), 0) != x.end()) return 0;
    return f.q() - 1;
}

SupportDesignMap link_supports(const LinearCode& code, unsigned w,
                               const BlockFamily& family, const ScanOptions& opt) {
    SupportDesignMap map;
    map.w = w;
    map.supports = support_design(code, w, opt);
    map.verdict = match_structures(map.supports, structure_from_family(family));
    bool uniform = true;
    std::uint64_t per = 0;
    for (std::size_t i = 0; i < map.supports.count() && uniform; ++i) {
        const std::uint64_t c = (w == code.n - 6)
                                    ? std::uint64_t(code.f().q() - 1)
                                    : codewords_on_support(code, map.supports.block(i));
        if (i == 0)
            per = c;
        else
            uniform = (c == per);
    }
    if (uniform && map.supports.count() > 0) map.codewords_per_support = per;
    return map;
}

}  // namespace espd
