#include "espd/design.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

namespace espd {

IncidenceStructure structure_from_family(const BlockFamily& fam) {
    IncidenceStructure s;
    s.v = fam.q + 1;
    s.k = fam.k;
    s.flat = fam.flat;
    return s;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (r > UINT64_MAX / num) throw std::overflow_error("binomial: overflow");
        r = r * num / i;
    }
    return r;
}

namespace {

// Colexicographic rank of a sorted t-subset: sum of C(s_i, i+1).
struct ColexRanker {
    std::vector<std::uint64_t> table;  // table[p * t + i] = C(p, i+1)
    unsigned t;
    explicit ColexRanker(std::uint32_t v, unsigned t_) : t(t_) {
        table.resize(std::size_t(v) * t);
        for (std::uint32_t p = 0; p < v; ++p)
            for (unsigned i = 0; i < t; ++i) table[std::size_t(p) * t + i] = binomial(p, i + 1);
    }
    std::uint64_t rank_term(std::uint32_t point, unsigned pos) const {
        return table[std::size_t(point) * t + pos];
    }
};

// Adds +1 at the rank of every t-subset of the given block.
void accumulate_block(const ColexRanker& ranker, std::span<const std::uint32_t> block,
                      unsigned t, std::vector<std::uint64_t>& cover) {
    const unsigned k = unsigned(block.size());
    std::vector<unsigned> idx(t);
    std::vector<std::uint64_t> partial(t + 1, 0);
    unsigned level = 0;
    idx[0] = 0;
    while (true) {
        if (idx[level] > k - (t - level)) {
            if (level == 0) break;
            --level;
            ++idx[level];
            continue;
        }
        partial[level + 1] = partial[level] + ranker.rank_term(block[idx[level]], level);
        if (level + 1 == t) {
            ++cover[partial[t]];
            ++idx[level];
        } else {
            ++level;
            idx[level] = idx[level - 1] + 1;
        }
    }
}

}  // namespace

DesignReport verify_design(const IncidenceStructure& s, unsigned t,
                           const VerifyOptions& opt) {
    if (s.count() == 0) throw std::invalid_argument("verify_design: empty block set");
    if (t < 1 || t >= s.k || s.k > s.v)
        throw std::invalid_argument("verify_design: need 1 <= t < k <= v");
    for (std::size_t i = 0; i < s.count(); ++i) {
        const auto b = s.block(i);
        for (unsigned j = 0; j < s.k; ++j) {
            if (b[j] >= s.v) throw std::invalid_argument("verify_design: point out of range");
            if (j > 0 && b[j] <= b[j - 1])
                throw std::invalid_argument("verify_design: block not strictly increasing");
        }
        // designs here are simple; block lists arrive sorted
        if (i > 0 && std::equal(b.begin(), b.end(), s.block(i - 1).begin()))
            throw std::invalid_argument("verify_design: repeated block");
    }
    const std::uint64_t tables = binomial(s.v, t);
    if (tables > opt.budget) throw BudgetExceeded("verify_design: table exceeds budget");

    const ColexRanker ranker(s.v, t);
    const unsigned nthreads = std::max(1u, opt.threads);
    std::vector<std::uint64_t> cover(tables, 0);
    if (nthreads == 1) {
        for (std::size_t i = 0; i < s.count(); ++i)
            accumulate_block(ranker, s.block(i), t, cover);
    } else {
        std::vector<std::vector<std::uint64_t>> local(nthreads);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nthreads; ++w) {
            pool.emplace_back([&, w]() {
                local[w].assign(tables, 0);
                for (std::size_t i = w; i < s.count(); i += nthreads)
                    accumulate_block(ranker, s.block(i), t, local[w]);
            });
        }
        for (auto& th : pool) th.join();
        for (unsigned w = 0; w < nthreads; ++w)
            for (std::uint64_t r = 0; r < tables; ++r) cover[r] += local[w][r];
    }

    DesignReport rep;
    rep.t = t;
    rep.v = s.v;
    rep.k = s.k;
    rep.b = s.count();
    const auto [mn, mx] = std::minmax_element(cover.begin(), cover.end());
    rep.coverage_min = *mn;
    rep.coverage_max = *mx;
    rep.is_design = (rep.coverage_min == rep.coverage_max);
    if (rep.is_design) {
        rep.lambda = rep.coverage_min;
        rep.is_steiner = (t >= 2 && rep.coverage_min == 1);
        // b * C(k,t) = lambda * C(v,t) must hold for any design
        if (rep.b * binomial(s.k, t) != *rep.lambda * tables)
            throw std::logic_error("verify_design: block-count identity violated");
    }
    return rep;
}

Rational lambda_s(unsigned t, std::uint32_t v, std::uint32_t k, std::uint64_t lambda,
                  unsigned s) {
    if (s > t) throw std::invalid_argument("lambda_s: need s <= t");
    Rational r;
    r.num = std::int64_t(lambda * binomial(v - s, t - s));
    r.den = std::int64_t(binomial(k - s, t - s));
    const std::int64_t g = std::gcd(r.num, r.den);
    r.num /= g;
    r.den /= g;
    return r;
}

IncidenceStructure complement_design(const IncidenceStructure& s) {
    IncidenceStructure out;
    out.v = s.v;
    out.k = s.v - s.k;
    out.flat.reserve(s.count() * out.k);
    std::vector<bool> in(s.v);
    for (std::size_t i = 0; i < s.count(); ++i) {
        std::fill(in.begin(), in.end(), false);
        for (std::uint32_t p : s.block(i)) in[p] = true;
        for (std::uint32_t p = 0; p < s.v; ++p)
            if (!in[p]) out.flat.push_back(p);
    }
    sort_unique_blocks(out.flat, out.k);
    return out;
}

std::string design_report_json(const DesignReport& r) {
    std::ostringstream os;
    os << "{\"t\":" << r.t << ",\"v\":" << r.v << ",\"k\":" << r.k << ",\"b\":" << r.b
       << ",\"coverage_min\":" << r.coverage_min << ",\"coverage_max\":" << r.coverage_max
       << ",\"lambda\":";
    if (r.lambda)
        os << *r.lambda;
    else
        os << "null";
    os << ",\"is_design\":" << (r.is_design ? "true" : "false")
       << ",\"is_steiner\":" << (r.is_steiner ? "true" : "false") << "}";
    return os.str();
}

}  // namespace espd
