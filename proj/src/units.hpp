#pragma once

#include <stdexcept>

namespace qnb {

// Natural units by default: hbar = mass = 1.
struct Units {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(mass > 0.0))
            throw std::invalid_argument("units: hbar and mass must be positive");
    }
};

} // namespace qnb
