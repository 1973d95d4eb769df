#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "cmair/gf.hpp"

namespace cmair {

using Word = std::vector<std::uint8_t>;

// Reed-Solomon code over GF(q) with generator polynomial
// g(x) = prod_{j=1..2t} (x - alpha^j); supports shortened lengths n <= q-1.
// Built for the verification oracle: correctness over speed.
class RsCode {
  public:
    RsCode(int q, int n, int t);

    int q() const { return gf_.q(); }
    int n() const { return n_; }
    int k() const { return k_; }
    int t() const { return t_; }
    const GaloisField& field() const { return gf_; }

    // S_j = r(alpha^j) for j = 1..2t.
    std::vector<std::uint8_t> syndromes(const Word& r) const;
    bool is_codeword(const Word& r) const;

    // All q^k codewords, each packed 4 bits per symbol (requires q <= 16 and
    // n <= 15). Used as the membership table of the set-based decoder.
    std::unordered_set<std::uint64_t> codeword_set() const;
    static std::uint64_t pack(const Word& w);

    // True bounded-distance decoding, two independent routes. Both return
    // the decoded codeword iff one lies within Hamming distance t of r, and
    // nothing otherwise (the caller keeps r unchanged on failure).
    //
    // Ball search: enumerate every word within distance t, test membership
    // against the codeword set (or the zero-syndrome test when absent).
    std::optional<Word> decode_bdd_ball(const Word& r,
                                        const std::unordered_set<std::uint64_t>* set = nullptr) const;
    // Algebraic: Berlekamp-Massey, Chien search over the n valid positions,
    // error values from the syndrome linear system, full recheck.
    std::optional<Word> decode_bdd_algebraic(const Word& r) const;

  private:
    GaloisField gf_;
    int n_ = 0;
    int k_ = 0;
    int t_ = 0;
    std::vector<std::uint8_t> genpoly_;  // genpoly_[i] is the coefficient of x^i
};

}  // namespace cmair
