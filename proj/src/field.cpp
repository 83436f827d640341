#include "espd/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace espd {
namespace {

constexpr std::uint32_t kNoUnit = 0xffffffffu;
constexpr gfe kNoRoot = 0xffffffffu;

// Carry-less product of two GF(2) polynomials, degrees <= 31.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    while (b != 0) {
        r ^= a * (b & 1);
        a <<= 1;
        b >>= 1;
    }
    return r;
}

unsigned bit_degree(std::uint64_t p) {
    unsigned d = 0;
    while (p >> (d + 1)) ++d;
    return d;
}

std::uint64_t poly_mod(std::uint64_t x, std::uint64_t p) {
    const unsigned dp = bit_degree(p);
    while (x >> dp) {
        const unsigned dx = bit_degree(x);
        x ^= p << (dx - dp);
    }
    return x;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return poly_mod(clmul(a, b), p);
}

// x^(2^k) mod p by repeated squaring.
std::uint64_t poly_sqr_iter(std::uint64_t x, unsigned k, std::uint64_t p) {
    for (unsigned i = 0; i < k; ++i) x = poly_mulmod(x, x, p);
    return x;
}

std::uint64_t poly_powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e != 0) {
        if (e & 1) r = poly_mulmod(r, base, p);
        base = poly_mulmod(base, base, p);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_irreducible(std::uint64_t p, unsigned deg) {
    if ((p & 1) == 0) return false;  // divisible by x
    if (poly_sqr_iter(2, deg, p) != 2) return false;
    for (std::uint64_t r : prime_factors(deg)) {
        if (poly_sqr_iter(2, deg / unsigned(r), p) == 2) return false;
    }
    return true;
}

bool is_primitive(std::uint64_t p, unsigned deg) {
    if (!is_irreducible(p, deg)) return false;
    const std::uint64_t n = (std::uint64_t(1) << deg) - 1;
    for (std::uint64_t r : prime_factors(n)) {
        if (poly_powmod(2, n / r, p) == 1) return false;
    }
    return true;
}

}  // namespace

std::uint64_t least_primitive_polynomial(unsigned degree) {
    if (degree < 2 || degree > 32)
        throw std::invalid_argument("least_primitive_polynomial: degree out of range");
    const std::uint64_t top = std::uint64_t(1) << degree;
    for (std::uint64_t cand = top | 1; cand < (top << 1); cand += 2) {
        if (is_primitive(cand, degree)) return cand;
    }
    throw std::logic_error("least_primitive_polynomial: none found");  // unreachable
}

std::uint64_t polynomial_root_order(std::uint64_t poly, unsigned degree) {
    const std::uint64_t n = (std::uint64_t(1) << degree) - 1;
    if (poly_powmod(2, n, poly) != 1) return 0;
    std::uint64_t order = n;
    for (std::uint64_t r : prime_factors(n)) {
        while (order % r == 0 && poly_powmod(2, order / r, poly) == 1) order /= r;
    }
    return order;
}

Field::Field(unsigned m) {
    if (m < kMinM || m > kMaxM) throw std::invalid_argument("Field: m must be in [4, 16]");
    build(m, least_primitive_polynomial(2 * m));
}

Field::Field(unsigned m, std::uint64_t reduction_poly) {
    if (m < kMinM || m > kMaxM) throw std::invalid_argument("Field: m must be in [4, 16]");
    if (bit_degree(reduction_poly) != 2 * m)
        throw std::invalid_argument("Field: reduction polynomial has wrong degree");
    if (!is_primitive(reduction_poly, 2 * m))
        throw std::invalid_argument("Field: reduction polynomial is not primitive");
    build(m, reduction_poly);
}

void Field::build(unsigned m, std::uint64_t poly) {
    m_ = m;
    q_ = std::uint32_t(1) << m;
    order_ = (std::uint64_t(1) << (2 * m)) - 1;
    poly_ = poly;
    has_tables_ = (2 * m <= 16);

    if (has_tables_) {
        const std::size_t n = std::size_t(order_);
        const std::size_t field_size = n + 1;
        exp_.resize(2 * n);
        log_.assign(field_size, std::uint32_t(2 * n));
        gfe x = 1;
        for (std::size_t i = 0; i < n; ++i) {
            exp_[i] = x;
            log_[x] = std::uint32_t(i);
            x <<= 1;
            if (x & (std::uint32_t(1) << (2 * m))) x ^= gfe(poly);
        }
        if (x != 1) throw std::logic_error("Field: primitivity self-check failed");
        std::copy(exp_.begin(), exp_.begin() + n, exp_.begin() + n);

        frob_.resize(field_size);
        sqrt_.resize(field_size);
        frob_[0] = 0;
        sqrt_[0] = 0;
        for (std::size_t v = 1; v < field_size; ++v) {
            const std::uint64_t lg = log_[v];
            frob_[v] = exp_[(lg << m) % order_];
            sqrt_[v] = exp_[(lg * ((order_ + 1) / 2)) % order_];
        }

        as_root_.assign(field_size, kNoRoot);
        for (std::size_t y = 0; y < field_size; ++y) {
            const gfe c = mul(gfe(y), gfe(y)) ^ gfe(y);
            if (as_root_[c] == kNoRoot) as_root_[c] = gfe(y);
        }
    }

    gamma_ = pow(alpha(), (long long)q_ * (q_ - 1));

    // gamma must have exact order q+1.
    units_.resize(q_ + 1);
    gfe g = 1;
    for (std::uint32_t e = 0; e <= q_; ++e) {
        if (e > 0 && g == 1) throw std::logic_error("Field: gamma order self-check failed");
        units_[e] = g;
        g = mul(g, gamma_);
    }
    if (g != 1) throw std::logic_error("Field: gamma order self-check failed");

    if (has_tables_) {
        unit_exp_lut_.assign(std::size_t(order_) + 1, kNoUnit);
        for (std::uint32_t e = 0; e <= q_; ++e) unit_exp_lut_[units_[e]] = e;
    } else {
        unit_exp_map_.reserve(q_ + 1);
        for (std::uint32_t e = 0; e <= q_; ++e) unit_exp_map_.emplace(units_[e], e);
    }
}

gfe Field::mul_generic(gfe a, gfe b) const {
    std::uint64_t prod = clmul(a, b);
    return gfe(poly_mod(prod, poly_));
}

gfe Field::inv(gfe a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    if (has_tables_) return exp_[order_ - log_[a]];
    return pow(a, (long long)order_ - 1);
}

gfe Field::pow(gfe a, long long e) const {
    const long long n = (long long)order_;
    long long r = e % n;
    if (r < 0) r += n;
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("Field::pow: negative power of zero");
        return 0;
    }
    if (has_tables_) return exp_[(std::uint64_t(log_[a]) * std::uint64_t(r)) % order_];
    gfe base = a, out = 1;
    std::uint64_t k = std::uint64_t(r);
    while (k != 0) {
        if (k & 1) out = mul_generic(out, base);
        base = mul_generic(base, base);
        k >>= 1;
    }
    return out;
}

gfe Field::pow_2k(gfe a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a = mul(a, a);
    return a;
}

int Field::subfield_trace_bit(gfe a) const {
    if (!in_subfield(a)) throw std::domain_error("subfield_trace_bit: not in GF(q)");
    gfe acc = 0, x = a;
    for (unsigned i = 0; i < m_; ++i) {
        acc ^= x;
        x = mul(x, x);
    }
    if (acc > 1) throw std::logic_error("subfield_trace_bit: trace not in GF(2)");
    return int(acc);
}

unit_exp Field::unit_exp_of(gfe u) const {
    if (has_tables_) {
        if (u <= order_ && unit_exp_lut_[u] != kNoUnit) return unit_exp_lut_[u];
    } else {
        auto it = unit_exp_map_.find(u);
        if (it != unit_exp_map_.end()) return it->second;
    }
    throw std::domain_error("unit_exp_of: value not in U_{q+1}");
}

std::optional<gfe> Field::artin_schreier_root(gfe c) const {
    if (has_tables_) {
        const gfe y = as_root_[c];
        if (y == kNoRoot) return std::nullopt;
        return y;
    }
    return artin_schreier_solve_generic(c);
}

std::optional<gfe> Field::artin_schreier_solve_generic(gfe c) const {
    // Solve the GF(2)-linear system y^2 + y = c by elimination on the bit basis.
    const unsigned n = 2 * m_;
    std::vector<std::uint64_t> rows(n, 0);  // row i: equation for bit i, bit j = coeff of y_j
    for (unsigned j = 0; j < n; ++j) {
        const gfe img = mul(gfe(1) << j, gfe(1) << j) ^ (gfe(1) << j);
        for (unsigned i = 0; i < n; ++i)
            if ((img >> i) & 1) rows[i] |= std::uint64_t(1) << j;
    }
    std::vector<int> rhs(n);
    for (unsigned i = 0; i < n; ++i) rhs[i] = int((c >> i) & 1);

    std::vector<int> pivot_col(n, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
        unsigned sel = rank;
        while (sel < n && !((rows[sel] >> col) & 1)) ++sel;
        if (sel == n) continue;
        std::swap(rows[rank], rows[sel]);
        std::swap(rhs[rank], rhs[sel]);
        for (unsigned i = 0; i < n; ++i) {
            if (i != rank && ((rows[i] >> col) & 1)) {
                rows[i] ^= rows[rank];
                rhs[i] ^= rhs[rank];
            }
        }
        pivot_col[rank] = int(col);
        ++rank;
    }
    for (unsigned i = rank; i < n; ++i)
        if (rhs[i]) return std::nullopt;
    gfe y = 0;
    for (unsigned i = 0; i < rank; ++i)
        if (rhs[i]) y |= gfe(1) << pivot_col[i];
    return y;
}

QuadraticRoots Field::solve_quadratic(gfe a, gfe b) const {
    QuadraticRoots out;
    auto tag = [&](gfe v) {
        QuadraticRoot r;
        r.value = v;
        r.in_subfield = in_subfield(v);
        r.in_unit_circle = in_unit_circle(v);
        return r;
    };
    if (a == 0) {
        out.double_root = true;
        out.roots.push_back(tag(sqrt(b)));
        return out;
    }
    const gfe c = mul(b, inv(sqr(a)));
    const auto y = artin_schreier_root(c);
    if (!y) return out;
    const gfe r1 = mul(a, *y);
    const gfe r2 = r1 ^ a;
    out.roots.push_back(tag(std::min(r1, r2)));
    out.roots.push_back(tag(std::max(r1, r2)));
    return out;
}

std::vector<unit_exp> Field::solve_quadratic_unit(gfe a, gfe b) const {
    if (a == 0 || b == 0)
        throw std::invalid_argument("solve_quadratic_unit: coefficients must be nonzero");
    const QuadraticRoots qr = solve_quadratic(a, b);
    std::vector<unit_exp> exps;
    for (const auto& r : qr.roots)
        if (r.in_unit_circle) exps.push_back(unit_exp_of(r.value));
    std::sort(exps.begin(), exps.end());
    return exps;
}

std::string Field::spec_record() const {
    std::ostringstream os;
    os << "m=" << m_ << " poly=0x" << std::hex << poly_;
    return os.str();
}

Field Field::from_spec_record(const std::string& record) {
    unsigned m = 0;
    std::uint64_t poly = 0;
    const auto mpos = record.find("m=");
    const auto ppos = record.find("poly=0x");
    if (mpos == std::string::npos || ppos == std::string::npos)
        throw std::invalid_argument("Field::from_spec_record: malformed record");
    m = unsigned(std::stoul(record.substr(mpos + 2)));
    const std::string hex = record.substr(ppos + 7);
    auto res = std::from_chars(hex.data(), hex.data() + hex.size(), poly, 16);
    if (res.ec != std::errc()) throw std::invalid_argument("Field::from_spec_record: bad poly");
    return Field(m, poly);
}

}  // namespace espd
