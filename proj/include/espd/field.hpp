#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace espd {

/// Element of GF(2^{2m}) in polynomial basis; bit i holds the coefficient of x^i.
using gfe = std::uint32_t;

/// Exponent e standing for the unit-circle point gamma^e, with 0 <= e <= q.
using unit_exp = std::uint32_t;

struct QuadraticRoot {
    gfe value = 0;
    bool in_subfield = false;     // lies in GF(q)
    bool in_unit_circle = false;  // lies in U_{q+1}
};

/// Roots in GF(q^2) of T^2 + aT + b. Either empty (both roots in the quartic
/// extension), a single double root (a = 0), or two distinct roots.
struct QuadraticRoots {
    std::vector<QuadraticRoot> roots;
    bool double_root = false;
};

/// GF(2^{2m}) together with its subfield GF(q), q = 2^m, and the unit circle
/// U_{q+1} = {u : u^{q+1} = 1}, the order-(q+1) subgroup of GF(q^2)^*.
///
/// The reduction polynomial is the lexicographically least primitive
/// polynomial of degree 2m over GF(2), so a given m always produces the same
/// field. alpha is the residue class of x (a generator of GF(q^2)^*) and
/// gamma = beta^{-1} with beta = alpha^{q-1} generates U_{q+1}.
///
/// Instances are immutable after construction and safe to share across
/// threads; all operations are pure. Multiplication uses log/antilog tables
/// when 2m <= 16 and carry-less multiplication otherwise.
class Field {
public:
    static constexpr unsigned kMinM = 4;
    static constexpr unsigned kMaxM = 16;

    explicit Field(unsigned m);
    Field(unsigned m, std::uint64_t reduction_poly);

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;
    Field(Field&&) = default;
    Field& operator=(Field&&) = default;

    unsigned m() const { return m_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t unit_order() const { return q_ + 1; }
    std::uint64_t size() const { return std::uint64_t(1) << (2 * m_); }
    std::uint64_t mul_order() const { return order_; }  // q^2 - 1
    std::uint64_t reduction_poly() const { return poly_; }
    gfe alpha() const { return 2; }
    gfe gamma() const { return gamma_; }

    static gfe add(gfe a, gfe b) { return a ^ b; }

    gfe mul(gfe a, gfe b) const {
        if (has_tables_) {
            if (a == 0 || b == 0) return 0;
            return exp_[log_[a] + log_[b]];
        }
        return mul_generic(a, b);
    }

    gfe sqr(gfe a) const { return mul(a, a); }

    /// Multiplicative inverse; inverting zero is a domain error.
    gfe inv(gfe a) const;

    gfe div(gfe a, gfe b) const { return mul(a, inv(b)); }

    /// a^e with e taken modulo the group order (a != 0 required for e < 0).
    gfe pow(gfe a, long long e) const;

    /// Frobenius x -> x^q. Applying it twice is the identity.
    gfe frobenius_q(gfe a) const {
        if (has_tables_) return frob_[a];
        return pow_2k(a, m_);
    }

    /// The unique square root; squaring is a bijection in characteristic 2.
    gfe sqrt(gfe a) const {
        if (has_tables_) return sqrt_[a];
        return pow_2k(a, 2 * m_ - 1);
    }

    /// Tr_{q^2/q}(x) = x + x^q, onto GF(q).
    gfe trace_to_subfield(gfe a) const { return a ^ frobenius_q(a); }

    /// Absolute trace Tr_{q/2} of a subfield element, as 0 or 1.
    /// Rejects arguments outside GF(q).
    int subfield_trace_bit(gfe a) const;

    bool in_subfield(gfe a) const { return frobenius_q(a) == a; }

    bool in_unit_circle(gfe a) const {
        return a != 0 && mul(a, frobenius_q(a)) == 1;
    }

    /// gamma^e for 0 <= e <= q.
    gfe unit(unit_exp e) const { return units_[e]; }

    /// Inverse of unit(); rejects values outside U_{q+1}.
    unit_exp unit_exp_of(gfe u) const;

    /// Roots of T^2 + aT + b in GF(q^2), each tagged by location.
    QuadraticRoots solve_quadratic(gfe a, gfe b) const;

    /// Roots of T^2 + aT + b lying in U_{q+1}, as sorted exponents.
    /// Requires a != 0 and b != 0.
    std::vector<unit_exp> solve_quadratic_unit(gfe a, gfe b) const;

    /// Solves y^2 + y = c; no solution exists when the absolute trace of c
    /// over GF(2) is 1. The second solution is the returned one plus 1.
    std::optional<gfe> artin_schreier_root(gfe c) const;

    bool has_tables() const { return has_tables_; }

    /// Discrete logs base alpha; log_table()[0] equals 2 * mul_order() by
    /// convention and exp_table() has 2 * mul_order() entries (one full
    /// wrap), which lets scan kernels fold index sums without reducing.
    std::span<const std::uint32_t> log_table() const { return log_; }
    std::span<const gfe> exp_table() const { return exp_; }

    /// One-line reproducibility record, e.g. "m=4 poly=0x11d".
    std::string spec_record() const;
    static Field from_spec_record(const std::string& record);

private:
    void build(unsigned m, std::uint64_t poly);
    gfe mul_generic(gfe a, gfe b) const;
    gfe pow_2k(gfe a, unsigned k) const;  // a^(2^k)
    std::optional<gfe> artin_schreier_solve_generic(gfe c) const;

    unsigned m_ = 0;
    std::uint32_t q_ = 0;
    std::uint64_t order_ = 0;  // 2^{2m} - 1
    std::uint64_t poly_ = 0;
    gfe gamma_ = 0;
    bool has_tables_ = false;

    std::vector<gfe> exp_;            // size 2 * order_
    std::vector<std::uint32_t> log_;  // size 2^{2m}
    std::vector<gfe> frob_;
    std::vector<gfe> sqrt_;
    std::vector<gfe> as_root_;        // y^2 + y = c solutions, sentinel if none
    std::vector<std::uint32_t> unit_exp_lut_;
    std::unordered_map<gfe, unit_exp> unit_exp_map_;  // only without tables
    std::vector<gfe> units_;          // gamma^0 .. gamma^q
};

/// Least primitive polynomial of the given degree over GF(2), as the bit
/// vector with bit i = coefficient of x^i.
std::uint64_t least_primitive_polynomial(unsigned degree);

/// Multiplicative order of x modulo the given polynomial (degree <= 32).
/// Returns 0 when x is not invertible.
std::uint64_t polynomial_root_order(std::uint64_t poly, unsigned degree);

}  // namespace espd
