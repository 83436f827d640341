#include "espd/code.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace espd {

PolyGFq poly_mul(const Field& f, const PolyGFq& a, const PolyGFq& b) {
    if (a.is_zero() || b.is_zero()) return {};
    PolyGFq r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] ^= f.mul(a.c[i], b.c[j]);
    return r;
}

std::pair<PolyGFq, PolyGFq> poly_divmod(const Field& f, const PolyGFq& num,
                                        const PolyGFq& den) {
    if (den.is_zero()) throw std::domain_error("poly_divmod: division by zero");
    PolyGFq rem = num, quo;
    if (num.c.size() < den.c.size()) return {quo, rem};
    quo.c.assign(num.c.size() - den.c.size() + 1, 0);
    const gfe lead_inv = f.inv(den.c.back());
    for (std::size_t i = num.c.size(); i-- >= den.c.size();) {
        const gfe factor = f.mul(rem.c[i], lead_inv);
        if (factor != 0) {
            quo.c[i - den.c.size() + 1] = factor;
            for (std::size_t j = 0; j < den.c.size(); ++j)
                rem.c[i - den.c.size() + 1 + j] ^= f.mul(factor, den.c[j]);
        }
        if (i == den.c.size() - 1) break;
    }
    while (!rem.c.empty() && rem.c.back() == 0) rem.c.pop_back();
    while (!quo.c.empty() && quo.c.back() == 0) quo.c.pop_back();
    return {quo, rem};
}

gfe poly_eval(const Field& f, const PolyGFq& p, gfe x) {
    gfe acc = 0;
    for (std::size_t i = p.c.size(); i-- > 0;) acc = f.mul(acc, x) ^ p.c[i];
    return acc;
}

std::vector<std::vector<std::uint32_t>> cyclotomic_cosets(std::uint64_t n,
                                                          std::uint64_t q) {
    if (n == 0 || std::gcd(n, q) != 1)
        throw std::invalid_argument("cyclotomic_cosets: need gcd(n, q) = 1");
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::uint32_t>> cosets;
    for (std::uint64_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> coset;
        std::uint64_t x = s;
        do {
            seen[x] = true;
            coset.push_back(std::uint32_t(x));
            x = (x * (q % n)) % n;
        } while (x != s);
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

PolyGFq minimal_poly(const Field& f, unsigned i) {
    if (i < 1 || i > 3) throw std::invalid_argument("minimal_poly: i must be in {1,2,3}");
    // beta = gamma^{-1}, so beta^i + beta^{-i} = gamma^i + gamma^{-i}.
    const gfe gi = f.unit(i);
    const gfe mid = gi ^ f.inv(gi);
    PolyGFq p;
    p.c = {1, mid, 1};
    for (gfe c : p.c)
        if (!f.in_subfield(c)) throw std::logic_error("minimal_poly: coefficient not in GF(q)");
    return p;
}

PolyGFq bch_generator(const Field& f) {
    const PolyGFq g1 = minimal_poly(f, 1);
    const PolyGFq g2 = minimal_poly(f, 2);
    const PolyGFq g3 = minimal_poly(f, 3);
    if (g1.c == g2.c || g1.c == g3.c || g2.c == g3.c)
        throw std::logic_error("bch_generator: minimal polynomials not distinct");
    return poly_mul(f, poly_mul(f, g1, g2), g3);
}

LinearCode build_code(const Field& f) {
    LinearCode code;
    code.field = &f;
    code.n = f.q() + 1;
    code.dim = code.n - 6;
    code.gen = bch_generator(f);
    if (code.gen.degree() != 6) throw std::logic_error("build_code: generator degree != 6");

    code.H.resize(6 * std::size_t(code.n));
    for (unsigned r = 0; r < 6; ++r) {
        const int p = LinearCode::row_powers[r];
        for (std::uint32_t i = 0; i < code.n; ++i) {
            const std::uint32_t e = std::uint32_t((std::int64_t(p) * i % code.n + code.n) % code.n);
            code.H[r * code.n + i] = f.unit(e);
        }
    }

    // g must divide x^n - 1 (over GF(2^m), x^n - 1 = x^n + 1).
    PolyGFq xn1;
    xn1.c.assign(code.n + 1, 0);
    xn1.c[0] = 1;
    xn1.c[code.n] = 1;
    const auto [quo, rem] = poly_divmod(f, xn1, code.gen);
    if (!rem.is_zero()) throw std::logic_error("build_code: generator does not divide x^n - 1");

    // g(beta^j) = 0 for j in {+-1, +-2, +-3}, with beta = gamma^{-1}.
    for (int j : LinearCode::row_powers) {
        const std::uint32_t e = std::uint32_t(((-std::int64_t(j)) % code.n + code.n) % code.n);
        if (poly_eval(f, code.gen, f.unit(e)) != 0)
            throw std::logic_error("build_code: generator misses a required root");
    }

    Codeword gword(code.n, 0);
    std::copy(code.gen.c.begin(), code.gen.c.end(), gword.begin());
    if (!in_code(code, gword)) throw std::logic_error("build_code: generator word fails parity check");
    return code;
}

std::array<gfe, 6> syndrome(const LinearCode& code, std::span<const gfe> word) {
    if (word.size() != code.n) throw std::invalid_argument("syndrome: wrong length");
    const Field& f = code.f();
    std::array<gfe, 6> s{};
    for (unsigned r = 0; r < 6; ++r) {
        gfe acc = 0;
        for (std::uint32_t i = 0; i < code.n; ++i)
            if (word[i] != 0) acc ^= f.mul(word[i], code.h(r, i));
        s[r] = acc;
    }
    return s;
}

bool in_code(const LinearCode& code, std::span<const gfe> word) {
    const auto s = syndrome(code, word);
    return std::all_of(s.begin(), s.end(), [](gfe x) { return x == 0; });
}

unsigned hamming_weight(std::span<const gfe> word) {
    return unsigned(std::count_if(word.begin(), word.end(), [](gfe x) { return x != 0; }));
}

Codeword codeword_from_message(const LinearCode& code, std::span<const gfe> message) {
    if (message.size() > code.dim)
        throw std::invalid_argument("codeword_from_message: message too long");
    const Field& f = code.f();
    Codeword cw(code.n, 0);
    for (std::size_t i = 0; i < message.size(); ++i)
        for (std::size_t j = 0; j < code.gen.c.size(); ++j)
            cw[i + j] ^= f.mul(message[i], code.gen.c[j]);
    return cw;
}

MMatrix MMatrix::dropped(std::span<const int> remove_powers) const {
    MMatrix out;
    out.cols = cols;
    for (std::size_t r = 0; r < powers.size(); ++r) {
        if (std::find(remove_powers.begin(), remove_powers.end(), powers[r]) !=
            remove_powers.end())
            continue;
        out.powers.push_back(powers[r]);
        out.a.insert(out.a.end(), a.begin() + r * cols, a.begin() + (r + 1) * cols);
    }
    return out;
}

MMatrix m_matrix(const Field& f, std::span<const std::uint32_t> exps) {
    MMatrix m;
    m.cols = unsigned(exps.size());
    m.powers.assign(LinearCode::row_powers.begin(), LinearCode::row_powers.end());
    m.a.resize(6 * m.cols);
    const std::uint32_t n = f.unit_order();
    for (unsigned r = 0; r < 6; ++r) {
        const int p = LinearCode::row_powers[r];
        for (unsigned j = 0; j < m.cols; ++j) {
            const std::uint64_t e = std::uint64_t((std::int64_t(p) * exps[j] % n + n) % n);
            m.a[r * m.cols + j] = f.unit(std::uint32_t(e));
        }
    }
    return m;
}

namespace {

// Row echelon reduction in place; returns rank and records pivot columns.
unsigned echelon(const Field& f, std::vector<gfe>& a, unsigned rows, unsigned cols,
                 std::vector<unsigned>* pivots = nullptr) {
    unsigned rank = 0;
    for (unsigned col = 0; col < cols && rank < rows; ++col) {
        unsigned sel = rank;
        while (sel < rows && a[sel * cols + col] == 0) ++sel;
        if (sel == rows) continue;
        for (unsigned c = 0; c < cols; ++c) std::swap(a[rank * cols + c], a[sel * cols + c]);
        const gfe inv = f.inv(a[rank * cols + col]);
        for (unsigned c = col; c < cols; ++c) a[rank * cols + c] = f.mul(a[rank * cols + c], inv);
        for (unsigned r = 0; r < rows; ++r) {
            if (r == rank) continue;
            const gfe factor = a[r * cols + col];
            if (factor == 0) continue;
            for (unsigned c = col; c < cols; ++c)
                a[r * cols + c] ^= f.mul(factor, a[rank * cols + c]);
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

}  // namespace

unsigned m_rank(const Field& f, const MMatrix& m) {
    std::vector<gfe> a = m.a;
    return echelon(f, a, unsigned(m.powers.size()), m.cols);
}

gfe m_det(const Field& f, const MMatrix& m) {
    const unsigned n = unsigned(m.powers.size());
    if (n != m.cols) throw std::invalid_argument("m_det: matrix not square");
    std::vector<gfe> a = m.a;
    gfe det = 1;
    for (unsigned col = 0; col < n; ++col) {
        unsigned sel = col;
        while (sel < n && a[sel * n + col] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col)
            for (unsigned c = 0; c < n; ++c) std::swap(a[col * n + c], a[sel * n + c]);
        const gfe pivot = a[col * n + col];
        det = f.mul(det, pivot);
        const gfe inv = f.inv(pivot);
        for (unsigned r = col + 1; r < n; ++r) {
            const gfe factor = f.mul(a[r * n + col], inv);
            if (factor == 0) continue;
            for (unsigned c = col; c < n; ++c) a[r * n + c] ^= f.mul(factor, a[col * n + c]);
        }
    }
    return det;  // char 2: no sign from row swaps
}

std::vector<gfe> subfield_kernel_solution(const Field& f, const MMatrix& m) {
    const unsigned rows = unsigned(m.powers.size());
    const unsigned cols = m.cols;
    std::vector<gfe> a = m.a;
    std::vector<unsigned> pivots;
    const unsigned rank = echelon(f, a, rows, cols, &pivots);
    if (rank >= cols) throw std::domain_error("subfield_kernel_solution: full column rank");

    // kernel vector for the first free column
    unsigned free_col = 0;
    while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
    std::vector<gfe> x(cols, 0);
    x[free_col] = 1;
    for (unsigned r = 0; r < rank; ++r) x[pivots[r]] = a[r * cols + free_col];

    auto check = [&](std::span<const gfe> v) {
        for (unsigned r = 0; r < rows; ++r) {
            gfe acc = 0;
            for (unsigned c = 0; c < cols; ++c) acc ^= f.mul(m.a[r * cols + c], v[c]);
            if (acc != 0) return false;
        }
        return true;
    };
    if (!check(x)) throw std::logic_error("subfield_kernel_solution: kernel check failed");

    // Scale by alpha over a nonzero coordinate and symmetrize with Frobenius.
    // The scaled coordinate becomes alpha, whose trace to GF(q) is nonzero,
    // so the first normalization already succeeds; the loop mirrors the
    // fallback rule all the same.
    for (unsigned i0 = 0; i0 < cols; ++i0) {
        if (x[i0] == 0) continue;
        const gfe scale = f.mul(f.alpha(), f.inv(x[i0]));
        std::vector<gfe> sym(cols);
        bool nonzero = false;
        for (unsigned c = 0; c < cols; ++c) {
            const gfe xc = f.mul(scale, x[c]);
            sym[c] = xc ^ f.frobenius_q(xc);
            nonzero |= (sym[c] != 0);
        }
        if (!nonzero) continue;
        for (gfe v : sym)
            if (!f.in_subfield(v))
                throw std::logic_error("subfield_kernel_solution: coordinate not in GF(q)");
        if (!check(sym)) throw std::logic_error("subfield_kernel_solution: solution check failed");
        return sym;
    }
    throw std::logic_error("subfield_kernel_solution: symmetrization failed");
}

LowWeightResult enumerate_low_weight(const LinearCode& code, unsigned w,
                                     const LowWeightOptions& opt) {
    if (w < 1 || w > 6) throw std::invalid_argument("enumerate_low_weight: w must be in 1..6");
    const Field& f = code.f();
    ScanOptions scan;
    scan.threads = opt.threads;
    scan.budget = opt.budget;

    // Candidate supports. For w = 5 and 6 the vanishing of sigma_{5,2} or
    // sigma_{6,3} is exact; for w = 4 it is necessary (rank(M4) < 4 forces
    // sigma_{4,1} = 0); for smaller w we rank-test every subset.
    std::vector<std::uint32_t> cand;
    if (w >= 4) {
        const unsigned ell = w - 3;
        cand = scan_subsets(
            f, w, ell,
            [ell](std::span<const std::uint32_t> exps, std::span<const gfe> sig,
                  std::vector<std::uint32_t>& out) {
                if (sig[ell] == 0) out.insert(out.end(), exps.begin(), exps.end());
            },
            scan);
    } else {
        cand = scan_subsets(
            f, w, 0,
            [&f, w](std::span<const std::uint32_t> exps, std::span<const gfe>,
                    std::vector<std::uint32_t>& out) {
                if (m_rank(f, m_matrix(f, exps)) < w)
                    out.insert(out.end(), exps.begin(), exps.end());
            },
            scan);
    }

    LowWeightResult res;
    res.w = w;
    res.supports.q = f.q();
    res.supports.k = w;
    res.supports.ell = (w >= 4) ? (w - 3) : 0;
    res.supports.tag = FamilyTag::Full;

    const std::size_t ncand = cand.size() / w;
    for (std::size_t i = 0; i < ncand; ++i) {
        const std::span<const std::uint32_t> exps(cand.data() + i * w, w);
        const MMatrix m = m_matrix(f, exps);
        const unsigned rank = m_rank(f, m);
        if (rank == w) continue;  // w = 4: sigma_{4,1} = 0 alone is not sufficient
        if (rank != w - 1)
            throw std::logic_error("enumerate_low_weight: unexpected kernel dimension");
        const std::vector<gfe> x = subfield_kernel_solution(f, m);
        if (std::find(x.begin(), x.end(), 0) != x.end()) continue;  // smaller support
        res.supports.push(exps);
        if (opt.collect_codewords) {
            Codeword cw(code.n, 0);
            for (unsigned j = 0; j < w; ++j) cw[exps[j]] = x[j];
            res.codewords.push_back(std::move(cw));
        }
    }
    res.codeword_count = res.supports.count() * std::uint64_t(f.q() - 1);
    return res;
}

Codeword dual_codeword(const LinearCode& code, gfe a, gfe b, gfe c) {
    const Field& f = code.f();
    Codeword cw(code.n);
    for (std::uint32_t i = 0; i < code.n; ++i) {
        const gfe u = f.unit(i);
        const gfe u2 = f.mul(u, u);
        const gfe val = f.mul(a, u) ^ f.mul(b, u2) ^ f.mul(c, f.mul(u2, u));
        cw[i] = f.trace_to_subfield(val);
    }
    return cw;
}

std::array<gfe, 3> dual_min_weight_coeffs(const LinearCode& code,
                                          std::span<const std::uint32_t> block,
                                          gfe tau) {
    const Field& f = code.f();
    if (block.size() != 6 || esp_units(f, block, 3) != 0)
        throw std::invalid_argument("dual_min_weight_coeffs: not a sigma_{6,3}-zero block");
    if (tau == 0 || !f.in_subfield(tau))
        throw std::invalid_argument("dual_min_weight_coeffs: tau must be in GF(q)*");
    const gfe s1 = esp_units(f, block, 1);
    const gfe s2 = esp_units(f, block, 2);
    const gfe s6 = esp_units(f, block, 6);
    // The codeword entry at gamma^i is Tr(a gamma^i + b gamma^{2i} + c gamma^{3i});
    // matching coefficients against tau * prod (u + u_j) / sqrt(sigma_{6,6})
    // puts the bare tau/sqrt(sigma_{6,6}) on the cubic slot.
    const gfe base = f.mul(tau, f.inv(f.sqrt(s6)));
    return {f.mul(base, s2), f.mul(base, s1), base};
}

namespace {

struct TraceKernel {
    const Field* f;
    std::uint32_t n = 0;
    std::uint64_t order = 0;
    std::uint32_t log_zero = 0;  // 2 * order
    std::vector<gfe> alog;       // size 3*order, zero beyond 2*order
    std::vector<std::uint8_t> trace_zero;
    std::vector<std::uint32_t> lp1, lp2, lp3;  // logs of gamma^{ri}

    explicit TraceKernel(const LinearCode& code) : f(code.field), n(code.n) {
        order = f->mul_order();
        log_zero = std::uint32_t(2 * order);
        const auto exp = f->exp_table();
        alog.assign(3 * order, 0);
        std::copy(exp.begin(), exp.end(), alog.begin());
        trace_zero.resize(f->size());
        for (std::uint64_t v = 0; v < f->size(); ++v)
            trace_zero[v] = (f->trace_to_subfield(gfe(v)) == 0) ? 1 : 0;
        const std::uint64_t lg = f->log_table()[f->gamma()];
        lp1.resize(n);
        lp2.resize(n);
        lp3.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            lp1[i] = std::uint32_t((lg * i) % order);
            lp2[i] = std::uint32_t((lg * 2 * i) % order);
            lp3[i] = std::uint32_t((lg * 3 * i) % order);
        }
    }

    unsigned weight(const gfe* ab, std::uint32_t lc) const {
        unsigned zeros = 0;
        for (std::uint32_t i = 0; i < n; ++i) zeros += trace_zero[ab[i] ^ alog[lc + lp3[i]]];
        return n - zeros;
    }
};

}  // namespace

std::vector<std::uint64_t> dual_weight_distribution(const LinearCode& code,
                                                    DualEnumMode mode, unsigned threads,
                                                    std::uint64_t budget) {
    const Field& f = code.f();
    if (!f.has_tables())
        throw std::runtime_error("dual_weight_distribution: field too large for table scan");
    const std::uint32_t q = f.q();
    const std::uint64_t order = f.mul_order();
    const std::uint64_t q2 = order + 1;

    std::uint64_t reps;
    if (mode == DualEnumMode::TraceFull) {
        reps = q2 * q2 * q2;
    } else {
        reps = std::uint64_t(q + 1) * (std::uint64_t(q) * q * q * q + std::uint64_t(q) * q + 1);
    }
    if (reps > budget / code.n)
        throw BudgetExceeded("dual_weight_distribution: work exceeds budget");

    const TraceKernel kern(code);
    const std::uint32_t n = code.n;
    const std::uint64_t bump = (mode == DualEnumMode::TraceFull) ? 1 : (q - 1);

    // Outer index: log of a (with the zero sentinel where a = 0 is allowed).
    std::vector<std::uint32_t> outer;
    if (mode == DualEnumMode::TraceFull) {
        outer.push_back(kern.log_zero);
        for (std::uint64_t la = 0; la < order; ++la) outer.push_back(std::uint32_t(la));
    } else {
        // canonical scalar-class representatives: log of the first nonzero
        // coordinate lies in [0, q]
        for (std::uint32_t la = 0; la <= q; ++la) outer.push_back(la);
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::vector<std::uint64_t>> local(std::max(1u, threads));
    auto worker = [&](unsigned widx) {
        auto& hist = local[widx];
        hist.assign(n + 1, 0);
        std::vector<gfe> arow(n), abrow(n);
        std::vector<std::uint32_t> lbs, lcs;
        lbs.push_back(kern.log_zero);
        for (std::uint64_t lb = 0; lb < order; ++lb) lbs.push_back(std::uint32_t(lb));
        lcs = lbs;
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= outer.size()) break;
            const std::uint32_t la = outer[idx];
            for (std::uint32_t i = 0; i < n; ++i) arow[i] = kern.alog[la + kern.lp1[i]];
            for (const std::uint32_t lb : lbs) {
                for (std::uint32_t i = 0; i < n; ++i)
                    abrow[i] = arow[i] ^ kern.alog[lb + kern.lp2[i]];
                for (const std::uint32_t lc : lcs)
                    hist[kern.weight(abrow.data(), lc)] += bump;
            }
        }
    };

    const unsigned nthreads = std::max(1u, threads);
    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> hist(n + 1, 0);
    for (const auto& h : local)
        if (!h.empty())
            for (std::uint32_t i = 0; i <= n; ++i) hist[i] += h[i];

    if (mode == DualEnumMode::TraceReduced) {
        // a = 0 classes: b canonical; then a = b = 0 with c canonical.
        std::vector<gfe> abrow(n);
        for (std::uint32_t lb = 0; lb <= q; ++lb) {
            for (std::uint32_t i = 0; i < n; ++i) abrow[i] = kern.alog[lb + kern.lp2[i]];
            for (std::uint32_t lc = 0; lc < order; ++lc)
                hist[kern.weight(abrow.data(), lc)] += bump;
            hist[kern.weight(abrow.data(), kern.log_zero)] += bump;
        }
        std::fill(abrow.begin(), abrow.end(), 0);
        for (std::uint32_t lc = 0; lc <= q; ++lc)
            hist[kern.weight(abrow.data(), lc)] += bump;
        hist[0] += 1;  // zero codeword
    }

    std::uint64_t total = 0;
    for (auto v : hist) total += v;
    std::uint64_t expect = 1;
    for (int i = 0; i < 6; ++i) expect *= q;
    if (total != expect)
        throw std::logic_error("dual_weight_distribution: counts do not sum to q^6");
    return hist;
}

std::vector<std::int64_t> dual_distribution_from_supports(const LinearCode& code,
                                                          std::uint64_t b63_count) {
    const std::uint32_t q = code.f().q();
    std::vector<std::int64_t> out(code.n + 1, -1);
    out[0] = 1;
    for (std::uint32_t i = 1; i + 6 <= q; ++i) out[i] = 0;  // i <= q - 6
    out[q - 5] = std::int64_t(b63_count * (q - 1));
    return out;
}

std::vector<bigint> macwilliams_transform(std::span<const bigint> dist, unsigned n,
                                          unsigned k, std::uint64_t q) {
    if (dist.size() != n + 1) throw std::invalid_argument("macwilliams_transform: bad length");
    std::vector<std::vector<bigint>> binom(n + 1, std::vector<bigint>(n + 1, 0));
    for (unsigned i = 0; i <= n; ++i) {
        binom[i][0] = 1;
        for (unsigned j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    std::vector<bigint> qm1pow(n + 1);
    qm1pow[0] = 1;
    for (unsigned j = 1; j <= n; ++j) qm1pow[j] = qm1pow[j - 1] * (q - 1);
    bigint size = 1;
    for (unsigned i = 0; i < k; ++i) size *= q;

    std::vector<bigint> out(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        bigint acc = 0;
        for (unsigned i = 0; i <= n; ++i) {
            if (dist[i] == 0) continue;
            // Krawtchouk K_j(i) = sum_s (-1)^s C(i,s) C(n-i, j-s) (q-1)^{j-s}
            bigint kr = 0;
            for (unsigned s = 0; s <= j; ++s) {
                if (s > i || j - s > n - i) continue;
                const bigint term = binom[i][s] * binom[n - i][j - s] * qm1pow[j - s];
                if (s % 2 == 0)
                    kr += term;
                else
                    kr -= term;
            }
            acc += dist[i] * kr;
        }
        if (acc % size != 0 || acc < 0)
            throw std::invalid_argument("macwilliams_transform: non-integer count");
        out[j] = acc / size;
    }
    return out;
}

std::vector<bigint> macwilliams_transform(std::span<const std::uint64_t> dist, unsigned n,
                                          unsigned k, std::uint64_t q) {
    std::vector<bigint> big(dist.begin(), dist.end());
    return macwilliams_transform(std::span<const bigint>(big), n, k, q);
}

std::string codewords_csv(const LinearCode& code, std::span<const Codeword> words) {
    std::ostringstream os;
    os << "# " << code.f().spec_record() << " n=" << code.n << "\n";
    os << std::hex;
    for (const auto& w : words) {
        if (w.size() != code.n) throw std::invalid_argument("codewords_csv: wrong length");
        for (std::uint32_t i = 0; i < code.n; ++i) os << (i ? "," : "") << w[i];
        os << "\n";
    }
    return os.str();
}

std::string to_string(MdsClass c) {
    switch (c) {
        case MdsClass::MDS: return "MDS";
        case MdsClass::NMDS: return "NMDS";
        case MdsClass::AMDS: return "AMDS";
        case MdsClass::Neither: return "neither";
    }
    throw std::logic_error("to_string: bad MdsClass");
}

MdsClass classify_mds(unsigned n, unsigned k, unsigned d, unsigned d_dual) {
    if (k == 0 || k >= n) throw std::invalid_argument("classify_mds: bad parameters");
    if (d == n - k + 1) return MdsClass::MDS;
    if (d == n - k) return (d_dual == k) ? MdsClass::NMDS : MdsClass::AMDS;
    return MdsClass::Neither;
}

namespace {

unsigned min_distance_of(std::span<const bigint> dist) {
    for (unsigned i = 1; i < dist.size(); ++i)
        if (dist[i] != 0) return i;
    throw std::invalid_argument("min_distance_of: all-zero distribution");
}

unsigned am_w(unsigned v, unsigned d, std::uint64_t q) {
    for (unsigned w = v;; --w) {
        if (w - (w + q - 2) / (q - 1) < d) return w;
        if (w == 0) throw std::logic_error("am_w: no admissible w");
    }
}

}  // namespace

AMReport assmus_mattson_check(std::span<const bigint> dist, std::span<const bigint> dual_dist,
                              unsigned t, std::uint64_t q) {
    if (dist.size() != dual_dist.size())
        throw std::invalid_argument("assmus_mattson_check: length mismatch");
    const unsigned v = unsigned(dist.size() - 1);
    AMReport rep;
    rep.t = t;
    rep.d = min_distance_of(dist);
    rep.d_dual = min_distance_of(dual_dist);
    rep.w = am_w(v, rep.d, q);
    rep.w_dual = am_w(v, rep.d_dual, q);
    rep.s = 0;
    for (unsigned i = 1; i + t <= v; ++i)
        if (dual_dist[i] != 0) ++rep.s;
    rep.hypothesis_holds = (t < rep.d) && (rep.s <= rep.d - t);
    return rep;
}

AMReport assmus_mattson_check(std::span<const std::uint64_t> dist,
                              std::span<const std::uint64_t> dual_dist, unsigned t,
                              std::uint64_t q) {
    std::vector<bigint> a(dist.begin(), dist.end());
    std::vector<bigint> b(dual_dist.begin(), dual_dist.end());
    return assmus_mattson_check(std::span<const bigint>(a), std::span<const bigint>(b), t, q);
}

NmdsPairingReport nmds_pairing_check(const LinearCode& code, unsigned sample_size,
                                     std::uint64_t seed, unsigned threads) {
    NmdsPairingReport rep;

    // d from the low-weight scans; the BCH bound already gives d >= 4.
    LowWeightOptions lw;
    lw.threads = threads;
    unsigned d = 0;
    LowWeightResult min_words;
    for (unsigned w = 4; w <= 6; ++w) {
        min_words = enumerate_low_weight(code, w, lw);
        if (min_words.codeword_count > 0) {
            d = w;
            break;
        }
    }
    if (d == 0) throw std::logic_error("nmds_pairing_check: no codeword of weight <= 6");

    const auto dual_dist = dual_weight_distribution(code, DualEnumMode::TraceReduced, threads);
    unsigned d_dual = 0;
    for (unsigned i = 1; i < dual_dist.size(); ++i)
        if (dual_dist[i] != 0) {
            d_dual = i;
            break;
        }

    rep.classification = classify_mds(code.n, code.dim, d, d_dual);
    if (rep.classification != MdsClass::NMDS)
        throw std::invalid_argument("nmds_pairing_check: code is not NMDS");

    rep.min_weight_count = min_words.codeword_count;
    rep.dual_min_weight_count = dual_dist[d_dual];
    rep.counts_equal = (rep.min_weight_count == rep.dual_min_weight_count);

    // Dual minimum-weight supports are the complements of the sigma_{6,3}
    // blocks; a sampled weight-6 codeword must meet all of them except
    // exactly one.
    const auto& supports = min_words.supports;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, supports.count() - 1);
    rep.samples = sample_size;
    rep.samples_with_unique_disjoint = 0;
    for (unsigned s = 0; s < sample_size; ++s) {
        const auto blk = supports.block(pick(rng));
        std::uint64_t disjoint = 0;
        for (std::size_t i = 0; i < supports.count(); ++i) {
            // disjoint from the complement of block i <=> contained in block i
            const auto other = supports.block(i);
            if (std::includes(other.begin(), other.end(), blk.begin(), blk.end())) ++disjoint;
        }
        if (disjoint == 1) ++rep.samples_with_unique_disjoint;
    }
    rep.uniqueness_holds = (rep.samples_with_unique_disjoint == rep.samples);
    return rep;
}

}  // namespace espd
