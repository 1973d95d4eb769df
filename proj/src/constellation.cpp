#include "cmair/constellation.hpp"

#include <cmath>

#include "cmair/errors.hpp"

namespace cmair {

namespace {

int bits_for_order(int order) {
    switch (order) {
        case 4: return 2;
        case 16: return 4;
        case 64: return 6;
        case 256: return 8;
        default:
            throw config_error("unsupported QAM order " + std::to_string(order) +
                               "; accepted orders are 4, 16, 64, 256");
    }
}

}  // namespace

double Constellation::axis_level(int u) const {
    const int ma = axis_size();
    // Per-axis mean square is (ma^2 - 1)/3; two axes share the unit symbol energy.
    const double scale = 1.0 / std::sqrt(2.0 * (static_cast<double>(ma) * ma - 1.0) / 3.0);
    return (2.0 * u - (ma - 1)) * scale;
}

double Constellation::axis_step() const { return axis_level(1) - axis_level(0); }

Constellation build_square_qam(int order, Labeling labeling) {
    (void)labeling;  // only Gray is defined
    Constellation c;
    c.order = order;
    c.bits_per_symbol = bits_for_order(order);
    const int ma = c.axis_size();
    const int half_bits = c.bits_per_axis();
    c.points.resize(order);
    c.labels.resize(order);
    for (int ui = 0; ui < ma; ++ui) {
        for (int uq = 0; uq < ma; ++uq) {
            const int k = ui * ma + uq;
            c.points[k] = std::complex<double>(c.axis_level(ui), c.axis_level(uq));
            c.labels[k] = (gray_code(ui) << half_bits) | gray_code(uq);
        }
    }
    return c;
}

int bit_of_label(const Constellation& c, int symbol_index, int level) {
    if (symbol_index < 0 || symbol_index >= c.order)
        throw config_error("symbol index out of range");
    if (level < 0 || level >= c.bits_per_symbol)
        throw config_error("bit level out of range");
    return (c.labels[symbol_index] >> (c.bits_per_symbol - 1 - level)) & 1u;
}

}  // namespace cmair
