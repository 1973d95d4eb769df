#include "cmair/gf.hpp"

#include "cmair/errors.hpp"

namespace cmair {

namespace {

int primitive_poly(int q) {
    switch (q) {
        case 4: return 0x7;
        case 8: return 0xB;
        case 16: return 0x13;
        case 32: return 0x25;
        case 64: return 0x43;
        case 128: return 0x89;
        case 256: return 0x11D;
        default: throw config_error("unsupported field size " + std::to_string(q));
    }
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
    const int poly = primitive_poly(q);
    m_ = 0;
    while ((1 << m_) < q) ++m_;
    exp_.assign(2 * (q - 1), 0);
    log_.assign(q, 0);
    int x = 1;
    for (int i = 0; i < q - 1; ++i) {
        exp_[i] = static_cast<std::uint8_t>(x);
        log_[x] = i;
        x <<= 1;
        if (x & q) x ^= poly;
    }
    for (int i = 0; i < q - 1; ++i) exp_[q - 1 + i] = exp_[i];
}

std::uint8_t GaloisField::div(std::uint8_t a, std::uint8_t b) const {
    if (b == 0) throw config_error("division by zero in GF arithmetic");
    if (a == 0) return 0;
    return exp_[log_[a] - log_[b] + (q_ - 1)];
}

std::uint8_t GaloisField::inv(std::uint8_t a) const { return div(1, a); }

std::uint8_t GaloisField::alpha_pow(int e) const {
    const int n = q_ - 1;
    int r = e % n;
    if (r < 0) r += n;
    return exp_[r];
}

int GaloisField::log_alpha(std::uint8_t a) const {
    if (a == 0) throw config_error("discrete log of zero");
    return log_[a];
}

}  // namespace cmair
