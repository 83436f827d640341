#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "espd/field.hpp"

namespace espd {

enum class FamilyTag { Full, B0, B1 };

std::string to_string(FamilyTag tag);
FamilyTag family_tag_from_string(const std::string& s);

/// A family of k-subsets of U_{q+1}. Blocks are stored flat, k exponents per
/// block, strictly increasing within a block and lexicographically sorted
/// across blocks.
struct BlockFamily {
    std::uint32_t q = 0;
    std::uint32_t k = 0;
    std::uint32_t ell = 0;
    FamilyTag tag = FamilyTag::Full;
    std::vector<std::uint32_t> flat;

    std::size_t count() const { return k == 0 ? 0 : flat.size() / k; }
    std::span<const std::uint32_t> block(std::size_t i) const {
        return {flat.data() + i * k, k};
    }
    void push(std::span<const std::uint32_t> exps) {
        flat.insert(flat.end(), exps.begin(), exps.end());
    }
    bool same_blocks(const BlockFamily& other) const {
        return k == other.k && flat == other.flat;
    }
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScanOptions {
    unsigned threads = 1;
    std::uint64_t budget = 1'000'000'000;  // max number of k-subsets
    // When nonempty, only subsets whose smallest exponent is listed are
    // visited (used for chunked cross-checks at large q).
    std::vector<std::uint32_t> first_exponents;
};

/// Number of k-subsets of an n-set, saturating at uint64 max.
std::uint64_t subset_count(std::uint64_t n, std::uint64_t k);

/// Elementary symmetric polynomial sigma_{k,ell} of the given values
/// (repeats allowed), via the product expansion prod (1 + v_i T).
gfe esp(const Field& f, std::span<const gfe> values, unsigned ell);

/// sigma_{k,ell} of the unit points gamma^e for the given exponents.
gfe esp_units(const Field& f, std::span<const std::uint32_t> exps, unsigned ell);

namespace detail {

// Depth-first walk over k-subsets of {lo..q} extending a fixed prefix, in
// lexicographic order, carrying sigma_{d,0..lmax} of the chosen prefix.
// visit(exps, sigma, out) may append anything block-shaped to out.
template <class Visit>
void subset_walk(const Field& f, unsigned k, unsigned lmax, std::uint32_t* exps,
                 gfe* sig, unsigned depth, std::uint32_t lo, Visit&& visit,
                 std::vector<std::uint32_t>& out) {
    const std::uint32_t q = f.q();
    const unsigned cols = lmax + 1;
    const gfe* prev = sig + depth * cols;
    gfe* next = sig + (depth + 1) * cols;
    const std::uint32_t hi = q - (k - 1 - depth);
    for (std::uint32_t e = lo; e <= hi; ++e) {
        exps[depth] = e;
        const gfe u = f.unit(e);
        next[0] = 1;
        const unsigned jmax = std::min(lmax, depth + 1);
        for (unsigned j = jmax; j >= 1; --j) next[j] = prev[j] ^ f.mul(u, prev[j - 1]);
        for (unsigned j = jmax + 1; j <= lmax; ++j) next[j] = 0;
        if (depth + 1 == k) {
            visit(std::span<const std::uint32_t>(exps, k),
                  std::span<const gfe>(next, cols), out);
        } else {
            subset_walk(f, k, lmax, exps, sig, depth + 1, e + 1, visit, out);
        }
    }
}

}  // namespace detail

/// Visits every k-subset of U_{q+1} exponents in lexicographic order,
/// handing the visitor the subset and its sigma_{k,0..lmax} row. Work is
/// split by smallest exponent across threads; outputs are concatenated in
/// exponent order, so the result does not depend on the thread count.
template <class Visit>
std::vector<std::uint32_t> scan_subsets(const Field& f, unsigned k, unsigned lmax,
                                        Visit&& visit, const ScanOptions& opt = {}) {
    const std::uint32_t q = f.q();
    if (k == 0 || k > q + 1) throw std::invalid_argument("scan_subsets: bad k");
    if (subset_count(q + 1, k) > opt.budget)
        throw BudgetExceeded("scan_subsets: subset count exceeds budget of " +
                             std::to_string(opt.budget));

    std::vector<std::uint32_t> firsts = opt.first_exponents;
    if (firsts.empty()) {
        firsts.resize(q + 2 - k);
        for (std::uint32_t e = 0; e + k <= q + 1; ++e) firsts[e] = e;
    }

    std::vector<std::vector<std::uint32_t>> per_first(firsts.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        try {
            std::vector<std::uint32_t> exps(k);
            std::vector<gfe> sig((k + 1) * (lmax + 1), 0);
            sig[0] = 1;
            for (;;) {
                const std::size_t idx = next.fetch_add(1);
                if (idx >= firsts.size()) break;
                const std::uint32_t e0 = firsts[idx];
                auto& out = per_first[idx];
                exps[0] = e0;
                const gfe u = f.unit(e0);
                gfe* row1 = sig.data() + (lmax + 1);
                row1[0] = 1;
                if (lmax >= 1) row1[1] = u;
                for (unsigned j = 2; j <= lmax; ++j) row1[j] = 0;
                if (k == 1) {
                    visit(std::span<const std::uint32_t>(exps.data(), 1),
                          std::span<const gfe>(row1, lmax + 1), out);
                } else {
                    detail::subset_walk(f, k, lmax, exps.data(), sig.data(), 1, e0 + 1,
                                        visit, out);
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    const unsigned nthreads = std::max(1u, opt.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::size_t total = 0;
    for (const auto& v : per_first) total += v.size();
    std::vector<std::uint32_t> flat;
    flat.reserve(total);
    for (const auto& v : per_first) flat.insert(flat.end(), v.begin(), v.end());
    return flat;
}

/// All k-subsets of U_{q+1} with sigma_{k,ell} = 0, by direct scan.
BlockFamily enumerate_blocks_bruteforce(const Field& f, unsigned k, unsigned ell,
                                        const ScanOptions& opt = {});

struct QuadPairResult {
    gfe a = 0;
    gfe b = 0;
    std::array<unit_exp, 2> roots{};  // sorted
};

/// For m even and a 3-subset, the two further unit points completing it to a
/// block with sigma_{5,2} = 0, via the quadratic u^2 + au + b.
QuadPairResult quad_pair(const Field& f, unit_exp u1, unit_exp u2, unit_exp u3);

/// The Steiner family: all 5-subsets with sigma_{5,2} = 0 (m even),
/// constructed from 3-subsets via quad_pair and deduplicated.
BlockFamily enumerate_steiner_blocks(const Field& f, const ScanOptions& opt = {});

/// The sixth point sigma_{5,3}/sigma_{5,2} completing a 5-subset to a zero of
/// sigma_{6,3}. Rejects sigma_{5,2} = 0.
unit_exp completion(const Field& f, std::span<const unit_exp> five);

/// The nine unit points that a fifth point must avoid for the completion of
/// {u1..u4, u5} to yield a valid 6-block: the four ratio points
/// (sigma43 + u_i sigma42)/(sigma42 + u_i sigma41), the u_i themselves, and
/// sqrt(sigma43/sigma41).
std::vector<unit_exp> forbidden_set(const Field& f, std::span<const unit_exp> four);

/// The five non-trivial members of forbidden_set (ratio points and the
/// square root), without the u_i.
std::vector<unit_exp> completion_exception_points(const Field& f,
                                                  std::span<const unit_exp> four);

/// B0 if some 5-subset of the block has sigma_{5,2} = 0, else B1.
/// The block must satisfy sigma_{6,3} = 0.
FamilyTag classify_block(const Field& f, std::span<const std::uint32_t> six);

struct B63Families {
    BlockFamily full;  // tag Full
    BlockFamily b0;    // blocks containing a sigma_{5,2}-zero 5-subset
    BlockFamily b1;    // the rest
};

/// Constructive enumeration of all 6-subsets with sigma_{6,3} = 0.
/// m odd: completion over 5-subsets (sigma_{5,2} never vanishes), emitting
/// each block from the 5-subset lacking its largest exponent; b0 is empty.
/// m even: b0 as Steiner-block extensions, b1 by completion plus
/// classification; full is their merge.
B63Families enumerate_b63(const Field& f, const ScanOptions& opt = {});

/// Sorts blocks lexicographically and drops duplicates.
void sort_unique_blocks(std::vector<std::uint32_t>& flat, unsigned k);

/// Family file format: header "q,k,ell,tag,count", then one CSV line of
/// exponents per block in lexicographic order.
std::string write_family(const BlockFamily& fam);
void write_family_file(const BlockFamily& fam, const std::string& path);
BlockFamily read_family(const std::string& text);
BlockFamily read_family_file(const std::string& path);

}  // namespace espd
