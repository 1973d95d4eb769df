#include "cmair/rs.hpp"

#include <algorithm>

#include "cmair/errors.hpp"

namespace cmair {

RsCode::RsCode(int q, int n, int t) : gf_(q), n_(n), t_(t) {
    if (t < 1) throw config_error("RS correction capability must be >= 1");
    if (n > q - 1) throw config_error("RS length exceeds q-1");
    if (2 * t >= n) throw config_error("RS needs 2t < n");
    k_ = n - 2 * t;
    // g(x) = prod (x - alpha^j), built up one root at a time
    genpoly_.assign(1, 1);
    for (int j = 1; j <= 2 * t; ++j) {
        const std::uint8_t root = gf_.alpha_pow(j);
        std::vector<std::uint8_t> next(genpoly_.size() + 1, 0);
        for (std::size_t i = 0; i < genpoly_.size(); ++i) {
            next[i + 1] ^= genpoly_[i];
            next[i] ^= gf_.mul(genpoly_[i], root);
        }
        genpoly_ = std::move(next);
    }
}

std::vector<std::uint8_t> RsCode::syndromes(const Word& r) const {
    std::vector<std::uint8_t> s(2 * t_, 0);
    for (int j = 1; j <= 2 * t_; ++j) {
        const std::uint8_t a = gf_.alpha_pow(j);
        std::uint8_t acc = 0;
        // Horner over r(x) = sum r_i x^i
        for (int i = n_ - 1; i >= 0; --i) acc = gf_.add(gf_.mul(acc, a), r[i]);
        s[j - 1] = acc;
    }
    return s;
}

bool RsCode::is_codeword(const Word& r) const {
    const auto s = syndromes(r);
    return std::all_of(s.begin(), s.end(), [](std::uint8_t v) { return v == 0; });
}

std::uint64_t RsCode::pack(const Word& w) {
    std::uint64_t p = 0;
    for (std::size_t i = 0; i < w.size(); ++i) p |= static_cast<std::uint64_t>(w[i]) << (4 * i);
    return p;
}

std::unordered_set<std::uint64_t> RsCode::codeword_set() const {
    if (q() > 16 || n_ > 15) throw config_error("codeword enumeration limited to q <= 16, n <= 15");
    std::uint64_t count = 1;
    for (int i = 0; i < k_; ++i) count *= static_cast<std::uint64_t>(q());
    std::unordered_set<std::uint64_t> set;
    set.reserve(count * 2);
    Word msg(k_, 0), cw(n_, 0);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t v = idx;
        for (int i = 0; i < k_; ++i) {
            msg[i] = static_cast<std::uint8_t>(v % q());
            v /= q();
        }
        std::fill(cw.begin(), cw.end(), 0);
        for (int i = 0; i < k_; ++i) {
            if (msg[i] == 0) continue;
            for (std::size_t g = 0; g < genpoly_.size(); ++g)
                cw[i + g] ^= gf_.mul(msg[i], genpoly_[g]);
        }
        set.insert(pack(cw));
    }
    return set;
}

std::optional<Word> RsCode::decode_bdd_ball(const Word& r,
                                            const std::unordered_set<std::uint64_t>* set) const {
    auto member = [&](const Word& w) {
        return set ? set->count(pack(w)) != 0 : is_codeword(w);
    };
    if (member(r)) return r;
    // radius-e shells, e = 1..t: choose e positions and any differing values
    std::vector<int> pos(t_);
    Word cand = r;
    for (int e = 1; e <= t_; ++e) {
        for (int i = 0; i < e; ++i) pos[i] = i;
        for (;;) {
            // odometer over replacement values at the chosen positions
            std::vector<int> val(e, 0);
            for (;;) {
                bool skip = false;
                for (int i = 0; i < e; ++i) {
                    if (val[i] == r[pos[i]]) { skip = true; break; }
                }
                if (!skip) {
                    for (int i = 0; i < e; ++i) cand[pos[i]] = static_cast<std::uint8_t>(val[i]);
                    if (member(cand)) return cand;
                    for (int i = 0; i < e; ++i) cand[pos[i]] = r[pos[i]];
                }
                int d = e - 1;
                while (d >= 0 && ++val[d] == q()) val[d--] = 0;
                if (d < 0) break;
            }
            int d = e - 1;
            while (d >= 0 && pos[d] == n_ - e + d) --d;
            if (d < 0) break;
            ++pos[d];
            for (int i = d + 1; i < e; ++i) pos[i] = pos[i - 1] + 1;
        }
    }
    return std::nullopt;
}

std::optional<Word> RsCode::decode_bdd_algebraic(const Word& r) const {
    const auto synd = syndromes(r);
    if (std::all_of(synd.begin(), synd.end(), [](std::uint8_t v) { return v == 0; })) return r;

    // Berlekamp-Massey over GF(q): minimal LFSR for the syndrome sequence.
    std::vector<std::uint8_t> cpoly{1}, bpoly{1};
    int len = 0, shift = 1;
    std::uint8_t b = 1;
    for (int it = 0; it < 2 * t_; ++it) {
        std::uint8_t d = synd[it];
        for (int i = 1; i <= len && i < static_cast<int>(cpoly.size()); ++i)
            d ^= gf_.mul(cpoly[i], synd[it - i]);
        if (d == 0) {
            ++shift;
        } else if (2 * len <= it) {
            const auto tpoly = cpoly;
            const std::uint8_t coef = gf_.div(d, b);
            if (cpoly.size() < bpoly.size() + shift) cpoly.resize(bpoly.size() + shift, 0);
            for (std::size_t i = 0; i < bpoly.size(); ++i)
                cpoly[i + shift] ^= gf_.mul(coef, bpoly[i]);
            len = it + 1 - len;
            bpoly = tpoly;
            b = d;
            shift = 1;
        } else {
            const std::uint8_t coef = gf_.div(d, b);
            if (cpoly.size() < bpoly.size() + shift) cpoly.resize(bpoly.size() + shift, 0);
            for (std::size_t i = 0; i < bpoly.size(); ++i)
                cpoly[i + shift] ^= gf_.mul(coef, bpoly[i]);
            ++shift;
        }
    }
    if (len == 0 || len > t_) return std::nullopt;

    // Chien search restricted to valid (possibly shortened) positions.
    std::vector<int> err_pos;
    for (int p = 0; p < n_ && static_cast<int>(err_pos.size()) <= len; ++p) {
        const std::uint8_t xinv = gf_.alpha_pow(-p);
        std::uint8_t acc = 0;
        for (int i = static_cast<int>(cpoly.size()) - 1; i >= 0; --i)
            acc = gf_.add(gf_.mul(acc, xinv), cpoly[i]);
        if (acc == 0) err_pos.push_back(p);
    }
    if (static_cast<int>(err_pos.size()) != len) return std::nullopt;

    // Error values from S_j = sum_l e_l X_l^j, j = 1..len (Gaussian elimination).
    const int nu = len;
    std::vector<std::vector<std::uint8_t>> a(nu, std::vector<std::uint8_t>(nu + 1, 0));
    for (int j = 0; j < nu; ++j) {
        for (int l = 0; l < nu; ++l) a[j][l] = gf_.alpha_pow(err_pos[l] * (j + 1));
        a[j][nu] = synd[j];
    }
    for (int col = 0; col < nu; ++col) {
        int pivot = -1;
        for (int row = col; row < nu; ++row)
            if (a[row][col] != 0) { pivot = row; break; }
        if (pivot < 0) return std::nullopt;
        std::swap(a[col], a[pivot]);
        const std::uint8_t inv = gf_.inv(a[col][col]);
        for (int x = col; x <= nu; ++x) a[col][x] = gf_.mul(a[col][x], inv);
        for (int row = 0; row < nu; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const std::uint8_t f = a[row][col];
            for (int x = col; x <= nu; ++x) a[row][x] ^= gf_.mul(f, a[col][x]);
        }
    }
    Word decoded = r;
    for (int l = 0; l < nu; ++l) {
        if (a[l][nu] == 0) return std::nullopt;  // zero error magnitude: spurious locator
        decoded[err_pos[l]] ^= a[l][nu];
    }
    // Final contract check: the output must be a codeword within distance t.
    if (!is_codeword(decoded)) return std::nullopt;
    return decoded;
}

}  // namespace cmair
