#include "espd/blocks.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace espd {

std::string to_string(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::Full: return "FULL";
        case FamilyTag::B0: return "B0";
        case FamilyTag::B1: return "B1";
    }
    throw std::logic_error("to_string: bad FamilyTag");
}

FamilyTag family_tag_from_string(const std::string& s) {
    if (s == "FULL") return FamilyTag::Full;
    if (s == "B0") return FamilyTag::B0;
    if (s == "B1") return FamilyTag::B1;
    throw std::invalid_argument("family_tag_from_string: " + s);
}

std::uint64_t subset_count(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (r > UINT64_MAX / num) return UINT64_MAX;
        r = r * num / i;
    }
    return r;
}

gfe esp(const Field& f, std::span<const gfe> values, unsigned ell) {
    if (ell > values.size()) throw std::invalid_argument("esp: ell out of range");
    std::vector<gfe> c(ell + 1, 0);
    c[0] = 1;
    unsigned used = 0;
    for (gfe v : values) {
        ++used;
        const unsigned top = std::min<unsigned>(ell, used);
        for (unsigned j = top; j >= 1; --j) c[j] ^= f.mul(v, c[j - 1]);
    }
    return c[ell];
}

gfe esp_units(const Field& f, std::span<const std::uint32_t> exps, unsigned ell) {
    std::vector<gfe> vals(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) vals[i] = f.unit(exps[i]);
    return esp(f, vals, ell);
}

BlockFamily enumerate_blocks_bruteforce(const Field& f, unsigned k, unsigned ell,
                                        const ScanOptions& opt) {
    if (ell > k) throw std::invalid_argument("enumerate_blocks_bruteforce: ell > k");
    BlockFamily fam;
    fam.q = f.q();
    fam.k = k;
    fam.ell = ell;
    fam.tag = FamilyTag::Full;
    fam.flat = scan_subsets(
        f, k, ell,
        [ell](std::span<const std::uint32_t> exps, std::span<const gfe> sig,
              std::vector<std::uint32_t>& out) {
            if (sig[ell] == 0) out.insert(out.end(), exps.begin(), exps.end());
        },
        opt);
    return fam;
}

QuadPairResult quad_pair(const Field& f, unit_exp e1, unit_exp e2, unit_exp e3) {
    if (f.m() % 2 != 0) throw std::invalid_argument("quad_pair: requires even m");
    if (e1 == e2 || e2 == e3 || e1 == e3)
        throw std::invalid_argument("quad_pair: points must be distinct");
    const gfe u1 = f.unit(e1), u2 = f.unit(e2), u3 = f.unit(e3);
    const gfe s1 = u1 ^ u2 ^ u3;
    const gfe s2 = f.mul(u1, u2) ^ f.mul(u2, u3) ^ f.mul(u3, u1);
    const gfe s3 = f.mul(f.mul(u1, u2), u3);
    const gfe den = f.sqr(s1) ^ s2;
    const gfe num_a = f.mul(s1, s2) ^ s3;
    const gfe num_b = f.sqr(s2) ^ f.mul(s1, s3);
    if (den == 0 || num_a == 0 || num_b == 0)
        throw std::logic_error("quad_pair: vanishing symmetric-function combination");

    QuadPairResult r;
    const gfe dinv = f.inv(den);
    r.a = f.mul(num_a, dinv);
    r.b = f.mul(num_b, dinv);
    const auto roots = f.solve_quadratic_unit(r.a, r.b);
    if (roots.size() != 2) throw std::logic_error("quad_pair: expected two unit roots");
    if (roots[0] == e1 || roots[0] == e2 || roots[0] == e3 || roots[1] == e1 ||
        roots[1] == e2 || roots[1] == e3)
        throw std::logic_error("quad_pair: root collides with input point");
    r.roots = {roots[0], roots[1]};
    return r;
}

void sort_unique_blocks(std::vector<std::uint32_t>& flat, unsigned k) {
    const std::size_t n = flat.size() / k;
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(flat.begin() + std::size_t(a) * k,
                                            flat.begin() + std::size_t(a) * k + k,
                                            flat.begin() + std::size_t(b) * k,
                                            flat.begin() + std::size_t(b) * k + k);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<std::uint32_t> out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto* b = flat.data() + std::size_t(idx[i]) * k;
        if (i > 0 && std::equal(b, b + k, out.end() - k)) continue;
        out.insert(out.end(), b, b + k);
    }
    flat = std::move(out);
}

BlockFamily enumerate_steiner_blocks(const Field& f, const ScanOptions& opt) {
    if (f.m() % 2 != 0)
        throw std::invalid_argument("enumerate_steiner_blocks: requires even m");
    const std::uint32_t q = f.q();
    if (subset_count(q + 1, 3) > opt.budget)
        throw BudgetExceeded("enumerate_steiner_blocks: budget exceeded");

    BlockFamily fam;
    fam.q = q;
    fam.k = 5;
    fam.ell = 2;
    fam.tag = FamilyTag::Full;
    std::vector<std::uint32_t> flat;
    std::array<std::uint32_t, 5> blk;
    for (unit_exp a = 0; a + 2 <= q; ++a)
        for (unit_exp b = a + 1; b + 1 <= q; ++b)
            for (unit_exp c = b + 1; c <= q; ++c) {
                const QuadPairResult r = quad_pair(f, a, b, c);
                blk = {a, b, c, r.roots[0], r.roots[1]};
                std::sort(blk.begin(), blk.end());
                flat.insert(flat.end(), blk.begin(), blk.end());
            }
    sort_unique_blocks(flat, 5);
    fam.flat = std::move(flat);
    return fam;
}

unit_exp completion(const Field& f, std::span<const unit_exp> five) {
    if (five.size() != 5) throw std::invalid_argument("completion: need 5 points");
    const gfe s52 = esp_units(f, five, 2);
    if (s52 == 0) throw std::domain_error("completion: sigma_{5,2} vanishes");
    const gfe s53 = esp_units(f, five, 3);
    return f.unit_exp_of(f.div(s53, s52));
}

std::vector<unit_exp> completion_exception_points(const Field& f,
                                                  std::span<const unit_exp> four) {
    if (four.size() != 4)
        throw std::invalid_argument("completion_exception_points: need 4 points");
    std::array<gfe, 4> u;
    for (int i = 0; i < 4; ++i) u[i] = f.unit(four[i]);
    const gfe s1 = u[0] ^ u[1] ^ u[2] ^ u[3];
    gfe s2 = 0, s3 = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s2 ^= f.mul(u[i], u[j]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int l = j + 1; l < 4; ++l) s3 ^= f.mul(f.mul(u[i], u[j]), u[l]);
    if (s1 == 0 || s3 == 0)
        throw std::logic_error("completion_exception_points: sigma_{4,1} or sigma_{4,3} vanishes");

    std::vector<unit_exp> pts;
    pts.reserve(5);
    for (int i = 0; i < 4; ++i) {
        const gfe den = s2 ^ f.mul(u[i], s1);
        if (den == 0)
            throw std::logic_error("completion_exception_points: vanishing denominator");
        pts.push_back(f.unit_exp_of(f.div(s3 ^ f.mul(u[i], s2), den)));
    }
    pts.push_back(f.unit_exp_of(f.sqrt(f.div(s3, s1))));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<unit_exp> forbidden_set(const Field& f, std::span<const unit_exp> four) {
    std::vector<unit_exp> s = completion_exception_points(f, four);
    s.insert(s.end(), four.begin(), four.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

FamilyTag classify_block(const Field& f, std::span<const std::uint32_t> six) {
    if (six.size() != 6) throw std::invalid_argument("classify_block: need 6 points");
    if (esp_units(f, six, 3) != 0)
        throw std::invalid_argument("classify_block: sigma_{6,3} != 0");
    unsigned zeros = 0;
    std::array<std::uint32_t, 5> sub;
    for (int skip = 0; skip < 6; ++skip) {
        int w = 0;
        for (int i = 0; i < 6; ++i)
            if (i != skip) sub[w++] = six[i];
        if (esp_units(f, sub, 2) == 0) ++zeros;
    }
    if (zeros > 1) throw std::logic_error("classify_block: several Steiner 5-subsets");
    return zeros ? FamilyTag::B0 : FamilyTag::B1;
}

namespace {

// sigma_{5,2} of block-minus-one-point from the block's sigma_{6,1}, sigma_{6,2}:
// sigma_{5,2} = s62 + b*s61 + b^2 for removed point b.
inline gfe drop_point_sigma52(const Field& f, gfe s61, gfe s62, gfe b) {
    return s62 ^ f.mul(b, s61) ^ f.sqr(b);
}

}  // namespace

B63Families enumerate_b63(const Field& f, const ScanOptions& opt) {
    const std::uint32_t q = f.q();
    B63Families out;
    out.full.q = out.b0.q = out.b1.q = q;
    out.full.k = out.b0.k = out.b1.k = 6;
    out.full.ell = out.b0.ell = out.b1.ell = 3;
    out.full.tag = FamilyTag::Full;
    out.b0.tag = FamilyTag::B0;
    out.b1.tag = FamilyTag::B1;

    if (f.m() % 2 == 1) {
        // sigma_{5,2} never vanishes; each block completes from all six of its
        // 5-subsets, so keeping only u6 == max(block) emits each block once,
        // already in lexicographic order.
        out.full.flat = scan_subsets(
            f, 5, 3,
            [&f](std::span<const std::uint32_t> exps, std::span<const gfe> sig,
                 std::vector<std::uint32_t>& res) {
                const gfe s52 = sig[2];
                if (s52 == 0) throw std::logic_error("enumerate_b63: sigma_{5,2}=0 at odd m");
                const gfe v6 = f.div(sig[3], s52);
                if (!f.in_unit_circle(v6)) return;
                const unit_exp e6 = f.unit_exp_of(v6);
                if (e6 <= exps[4]) return;
                res.insert(res.end(), exps.begin(), exps.end());
                res.push_back(e6);
            },
            opt);
        out.b1.flat = out.full.flat;
        return out;
    }

    // m even: the B0 blocks are exactly the Steiner blocks extended by one
    // extra point (sigma_{5,3} vanishes along with sigma_{5,2}, so any
    // extension keeps sigma_{6,3} = 0), each arising from a unique Steiner
    // 5-subset.
    const BlockFamily steiner = enumerate_steiner_blocks(f, opt);
    std::vector<std::uint32_t> b0flat;
    b0flat.reserve(steiner.count() * (q - 4) * 6);
    std::array<std::uint32_t, 6> blk;
    for (std::size_t i = 0; i < steiner.count(); ++i) {
        const auto s = steiner.block(i);
        for (std::uint32_t x = 0; x <= q; ++x) {
            if (std::find(s.begin(), s.end(), x) != s.end()) continue;
            std::copy(s.begin(), s.end(), blk.begin());
            blk[5] = x;
            std::sort(blk.begin(), blk.end());
            b0flat.insert(b0flat.end(), blk.begin(), blk.end());
        }
    }
    sort_unique_blocks(b0flat, 6);
    out.b0.flat = std::move(b0flat);

    // B1 blocks by completion; all six 5-subsets of a B1 block have
    // sigma_{5,2} != 0, so the max-exponent rule again emits each exactly
    // once. Completions that land on a B0 block are filtered out.
    out.b1.flat = scan_subsets(
        f, 5, 3,
        [&f](std::span<const std::uint32_t> exps, std::span<const gfe> sig,
             std::vector<std::uint32_t>& res) {
            const gfe s52 = sig[2];
            if (s52 == 0) return;
            const gfe v6 = f.div(sig[3], s52);
            if (!f.in_unit_circle(v6)) return;
            const unit_exp e6 = f.unit_exp_of(v6);
            if (e6 <= exps[4]) return;
            const gfe s61 = sig[1] ^ v6;
            const gfe s62 = s52 ^ f.mul(v6, sig[1]);
            for (int i = 0; i < 5; ++i)
                if (drop_point_sigma52(f, s61, s62, f.unit(exps[i])) == 0) return;
            res.insert(res.end(), exps.begin(), exps.end());
            res.push_back(e6);
        },
        opt);

    out.full.flat.resize(out.b0.flat.size() + out.b1.flat.size());
    // merge the two sorted block lists
    {
        const unsigned k = 6;
        const auto& a = out.b0.flat;
        const auto& b = out.b1.flat;
        auto& m = out.full.flat;
        std::size_t ia = 0, ib = 0, im = 0;
        auto copy_from = [&](const std::vector<std::uint32_t>& src, std::size_t& i) {
            std::copy(src.begin() + i, src.begin() + i + k, m.begin() + im);
            i += k;
            im += k;
        };
        while (ia < a.size() && ib < b.size()) {
            const bool a_first = std::lexicographical_compare(
                a.begin() + ia, a.begin() + ia + k, b.begin() + ib, b.begin() + ib + k);
            copy_from(a_first ? a : b, a_first ? ia : ib);
        }
        while (ia < a.size()) copy_from(a, ia);
        while (ib < b.size()) copy_from(b, ib);
    }
    return out;
}

std::string write_family(const BlockFamily& fam) {
    std::ostringstream os;
    os << fam.q << ',' << fam.k << ',' << fam.ell << ',' << to_string(fam.tag) << ','
       << fam.count() << '\n';
    for (std::size_t i = 0; i < fam.count(); ++i) {
        const auto b = fam.block(i);
        for (std::size_t j = 0; j < b.size(); ++j) os << (j ? "," : "") << b[j];
        os << '\n';
    }
    return os.str();
}

void write_family_file(const BlockFamily& fam, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_family_file: cannot open " + path);
    f << write_family(fam);
}

BlockFamily read_family(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("read_family: empty input");
    BlockFamily fam;
    std::size_t expected = 0;
    {
        std::istringstream hs(line);
        std::string part;
        std::getline(hs, part, ',');
        fam.q = std::uint32_t(std::stoul(part));
        std::getline(hs, part, ',');
        fam.k = std::uint32_t(std::stoul(part));
        std::getline(hs, part, ',');
        fam.ell = std::uint32_t(std::stoul(part));
        std::getline(hs, part, ',');
        fam.tag = family_tag_from_string(part);
        std::getline(hs, part, ',');
        expected = std::stoull(part);
    }
    fam.flat.reserve(expected * fam.k);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string part;
        unsigned seen = 0;
        while (std::getline(ls, part, ',')) {
            fam.flat.push_back(std::uint32_t(std::stoul(part)));
            ++seen;
        }
        if (seen != fam.k) throw std::invalid_argument("read_family: bad block width");
    }
    if (fam.count() != expected) throw std::invalid_argument("read_family: count mismatch");
    return fam;
}

BlockFamily read_family_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_family_file: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return read_family(ss.str());
}

}  // namespace espd
