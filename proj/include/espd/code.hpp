#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "espd/blocks.hpp"
#include "espd/field.hpp"

namespace espd {

using bigint = boost::multiprecision::cpp_int;

/// Polynomial over GF(q), coefficients low degree first, all passing the
/// subfield test. Normalized: the leading coefficient is nonzero (the zero
/// polynomial has no coefficients).
struct PolyGFq {
    std::vector<gfe> c;
    bool is_zero() const { return c.empty(); }
    unsigned degree() const { return c.empty() ? 0 : unsigned(c.size() - 1); }
};

PolyGFq poly_mul(const Field& f, const PolyGFq& a, const PolyGFq& b);
std::pair<PolyGFq, PolyGFq> poly_divmod(const Field& f, const PolyGFq& num,
                                        const PolyGFq& den);
gfe poly_eval(const Field& f, const PolyGFq& p, gfe x);

/// q-cyclotomic cosets modulo n, sorted by leader; requires gcd(n, q) = 1.
std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint64_t n,
                                                          std::uint64_t q);

/// Minimal polynomial of beta^i over GF(q) for i in {1,2,3}, where
/// beta = gamma^{-1}: the quadratic x^2 + (beta^i + beta^{-i})x + 1.
PolyGFq minimal_poly(const Field& f, unsigned i);

/// Generator polynomial g1*g2*g3 of the narrow-sense BCH code of length q+1
/// and designed distance 4; degree 6, divides x^n - 1.
PolyGFq bch_generator(const Field& f);

using Codeword = std::vector<gfe>;  // length n over GF(q)

/// The BCH code of length n = q+1 with parity checks gamma^{r i} for
/// r in {-3,-2,-1,1,2,3}.
struct LinearCode {
    const Field* field = nullptr;
    std::uint32_t n = 0;
    std::uint32_t dim = 0;
    PolyGFq gen;
    static constexpr std::array<int, 6> row_powers{-3, -2, -1, 1, 2, 3};
    std::vector<gfe> H;  // 6 x n row-major

    const Field& f() const { return *field; }
    gfe h(unsigned row, std::uint32_t col) const { return H[row * n + col]; }
};

/// Builds the code and runs construction self-checks (generator degree and
/// divisibility, zero syndrome of the generator word).
LinearCode build_code(const Field& f);

std::array<gfe, 6> syndrome(const LinearCode& code, std::span<const gfe> word);
bool in_code(const LinearCode& code, std::span<const gfe> word);
unsigned hamming_weight(std::span<const gfe> word);

/// message(x) * g(x) as a codeword; message has up to dim coefficients.
Codeword codeword_from_message(const LinearCode& code, std::span<const gfe> message);

/// The 6 x L matrix with rows u_j^r, r in {-3,-2,-1,1,2,3}, for unit points
/// u_j = gamma^{e_j}. A nonzero GF(q)-solution of M x = 0 exists iff
/// rank(M) < L.
struct MMatrix {
    std::vector<int> powers;  // row tags, subset of {-3,-2,-1,1,2,3}
    unsigned cols = 0;
    std::vector<gfe> a;       // row-major

    gfe at(unsigned r, unsigned c) const { return a[r * cols + c]; }
    /// Submatrix with the rows carrying the listed power tags removed.
    MMatrix dropped(std::span<const int> remove_powers) const;
};

MMatrix m_matrix(const Field& f, std::span<const std::uint32_t> exps);
unsigned m_rank(const Field& f, const MMatrix& m);
gfe m_det(const Field& f, const MMatrix& m);  // square matrices only

/// A nonzero x in GF(q)^L with M x = 0, obtained from a GF(q^2) kernel
/// vector by scaling with alpha and adding the Frobenius image. Rejects
/// full-rank matrices.
std::vector<gfe> subfield_kernel_solution(const Field& f, const MMatrix& m);

struct LowWeightOptions {
    unsigned threads = 1;
    std::uint64_t budget = 1'000'000'000;
    bool collect_codewords = false;
};

struct LowWeightResult {
    unsigned w = 0;
    BlockFamily supports;             // the distinct weight-w supports
    std::uint64_t codeword_count = 0;  // A_w
    std::vector<Codeword> codewords;   // one representative per support, on request
};

/// All weight-w codewords for w <= 6, up to scalars. Support candidates come
/// from the elementary-symmetric-polynomial criteria (sigma_{5,2} = 0 for
/// w = 5, sigma_{6,3} = 0 for w = 6); ranks are confirmed by Gaussian
/// elimination and solutions lifted through the Frobenius symmetrization.
LowWeightResult enumerate_low_weight(const LinearCode& code, unsigned w,
                                     const LowWeightOptions& opt = {});

/// The dual codeword (Tr_{q^2/q}(a gamma^i + b gamma^{2i} + c gamma^{3i}))_i.
Codeword dual_codeword(const LinearCode& code, gfe a, gfe b, gfe c);

/// The coefficient triple {tau, tau*s61, tau*s62} / sqrt(s66), ordered for
/// dual_codeword, whose codeword has weight exactly q-5 and vanishes
/// precisely on the given sigma_{6,3}-zero block. tau must be a nonzero
/// subfield element.
std::array<gfe, 3> dual_min_weight_coeffs(const LinearCode& code,
                                          std::span<const std::uint32_t> block,
                                          gfe tau);

enum class DualEnumMode {
    TraceFull,     // iterate all q^6 coefficient triples
    TraceReduced,  // one representative per GF(q)^* scalar class, weight q-1
};

/// Exact weight distribution of the dual code by evaluating the trace
/// representation on all of U_{q+1}. Deterministic for any thread count.
std::vector<std::uint64_t> dual_weight_distribution(const LinearCode& code,
                                                    DualEnumMode mode,
                                                    unsigned threads = 1,
                                                    std::uint64_t budget = 4'000'000'000);

/// The entries of the dual distribution that follow from the block counts
/// alone: A_0 = 1, A_i = 0 for 1 <= i <= q-6, and A_{q-5} = (q-1) * b63.
/// Unknown entries are -1.
std::vector<std::int64_t> dual_distribution_from_supports(const LinearCode& code,
                                                          std::uint64_t b63_count);

/// MacWilliams identity via Krawtchouk sums in exact big-integer arithmetic;
/// input is the distribution of an [n,k] code over GF(q). Throws if any
/// transformed count fails to be a nonnegative integer.
std::vector<bigint> macwilliams_transform(std::span<const bigint> dist, unsigned n,
                                          unsigned k, std::uint64_t q);
std::vector<bigint> macwilliams_transform(std::span<const std::uint64_t> dist,
                                          unsigned n, unsigned k, std::uint64_t q);

/// CSV dump of codewords, one row per word, entries as hex field elements.
/// The leading comment line carries the field record for reproducibility.
std::string codewords_csv(const LinearCode& code, std::span<const Codeword> words);

enum class MdsClass { MDS, NMDS, AMDS, Neither };
std::string to_string(MdsClass c);

/// MDS: d = n-k+1. AMDS: d = n-k. NMDS: both the code and its dual are AMDS.
MdsClass classify_mds(unsigned n, unsigned k, unsigned d, unsigned d_dual);

struct AMReport {
    unsigned t = 0;
    unsigned d = 0;
    unsigned d_dual = 0;
    unsigned w = 0;       // largest w <= v with w - floor((w+q-2)/(q-1)) < d
    unsigned w_dual = 0;  // the analogue for the dual distance
    unsigned s = 0;       // nonzero dual weights in [1, v-t]
    bool hypothesis_holds = false;  // t < d and s <= d - t
};

AMReport assmus_mattson_check(std::span<const bigint> dist, std::span<const bigint> dual_dist,
                              unsigned t, std::uint64_t q);
AMReport assmus_mattson_check(std::span<const std::uint64_t> dist,
                              std::span<const std::uint64_t> dual_dist, unsigned t,
                              std::uint64_t q);

struct NmdsPairingReport {
    MdsClass classification = MdsClass::Neither;
    std::uint64_t min_weight_count = 0;       // A_d of the code
    std::uint64_t dual_min_weight_count = 0;  // A_{d_dual} of the dual
    bool counts_equal = false;
    unsigned samples = 0;
    unsigned samples_with_unique_disjoint = 0;
    bool uniqueness_holds = false;
};

/// For an NMDS instance: checks that the code and its dual have the same
/// number of minimum-weight codewords (enumeration vs. trace distribution),
/// then verifies on sampled minimum-weight codewords that exactly one dual
/// minimum-weight support is disjoint, by scanning all dual supports.
NmdsPairingReport nmds_pairing_check(const LinearCode& code, unsigned sample_size,
                                     std::uint64_t seed = 0x5eed,
                                     unsigned threads = 1);

}  // namespace espd
