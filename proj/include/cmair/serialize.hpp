#pragma once

#include <json.hpp>

#include "cmair/constellation.hpp"

namespace cmair {

// Points and labels as a JSON fixture: points as [re, im] pairs in index
// order, labels as zero-padded bit strings (level 0 first).
inline nlohmann::ordered_json constellation_to_json(const Constellation& c) {
    nlohmann::ordered_json doc;
    doc["order"] = c.order;
    doc["bits_per_symbol"] = c.bits_per_symbol;
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (int k = 0; k < c.order; ++k) {
        points.push_back({c.points[k].real(), c.points[k].imag()});
        std::string bits(c.bits_per_symbol, '0');
        for (int level = 0; level < c.bits_per_symbol; ++level)
            bits[level] = bit_of_label(c, k, level) ? '1' : '0';
        labels.push_back(bits);
    }
    doc["points"] = points;
    doc["labels"] = labels;
    return doc;
}

}  // namespace cmair
