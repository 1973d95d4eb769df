#pragma once

#include <cstdint>
#include <vector>

namespace cmair {

// GF(2^m) arithmetic over log/antilog tables, m in [2, 8]. The primitive
// polynomial is fixed per field size so that every table, codeword set and
// recorded fixture is reproducible:
//   GF(4): x^2+x+1        GF(8): x^3+x+1       GF(16): x^4+x+1
//   GF(32): x^5+x^2+1     GF(64): x^6+x+1      GF(128): x^7+x^3+1
//   GF(256): x^8+x^4+x^3+x^2+1
class GaloisField {
  public:
    explicit GaloisField(int q);

    int q() const { return q_; }
    int m() const { return m_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return a ^ b; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    std::uint8_t div(std::uint8_t a, std::uint8_t b) const;
    std::uint8_t inv(std::uint8_t a) const;
    // alpha^e for any integer exponent (alpha = primitive element).
    std::uint8_t alpha_pow(int e) const;
    int log_alpha(std::uint8_t a) const;  // discrete log, a != 0

  private:
    int q_ = 0;
    int m_ = 0;
    std::vector<std::uint8_t> exp_;  // doubled table so mul avoids a modulo
    std::vector<int> log_;
};

}  // namespace cmair
