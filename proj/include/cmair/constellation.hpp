#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace cmair {

enum class Labeling { gray };

// Square QAM alphabet with unit average energy and a deterministic bit
// labeling. Point k corresponds to (I index, Q index) = (k / sqrt(M),
// k % sqrt(M)) over the ascending per-axis amplitude grids; its label packs
// the per-axis binary-reflected Gray codes, I-axis bits first, so bit level 0
// is the most significant I bit. Immutable once built.
struct Constellation {
    int order = 0;            // M
    int bits_per_symbol = 0;  // m = log2 M
    Eigen::VectorXcd points;
    std::vector<std::uint32_t> labels;  // labels[k] holds the m-bit label of point k

    int axis_size() const { return 1 << (bits_per_symbol / 2); }
    int bits_per_axis() const { return bits_per_symbol / 2; }
    // Per-axis amplitude of level u (shared by I and Q).
    double axis_level(int u) const;
    // Spacing between adjacent per-axis amplitudes.
    double axis_step() const;
};

// Builds an M-point square QAM, M in {4, 16, 64, 256}.
Constellation build_square_qam(int order, Labeling labeling = Labeling::gray);

// Bit b_level of the label of the indexed point; level 0 is the first
// (most significant) label bit.
int bit_of_label(const Constellation& c, int symbol_index, int level);

// Binary-reflected Gray code of a per-axis level index.
inline std::uint32_t gray_code(std::uint32_t u) { return u ^ (u >> 1); }

}  // namespace cmair
