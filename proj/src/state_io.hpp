#pragma once

#include <string>

#include "potential.hpp"
#include "state.hpp"

namespace qnb {

// States persist as CSV bundles: a directory holding one CSV per factor, each
// carrying its constants and the potential description as '# key = value'
// metadata ahead of the column header. Numbers are written at full round-trip
// precision, so save -> load reproduces every sample and constant exactly.
//
//   1D bundle:       state.csv              (+ potential.csv when tabulated)
//   central bundle:  radial.csv, polar.csv  (+ potential.csv when tabulated)

// Names used in bundle metadata and in config files; parsers throw ConfigError
// on anything unrecognized.
std::string to_string(AzimuthalParity parity);
std::string to_string(AzimuthalMode mode);
AzimuthalParity parse_parity(const std::string& text);
AzimuthalMode parse_mode(const std::string& text);

enum class BundleKind { one_dimensional, central };

// Identify which bundle layout a directory holds; ConfigError when neither.
BundleKind probe_bundle(const std::string& dir);

void save_state_1d(const StationaryState1D& state, const Potential1D& potential,
                   const std::string& dir);

struct Loaded1D {
    StationaryState1D state;
    Potential1D potential;
};
Loaded1D load_state_1d(const std::string& dir);

void save_central_state(const SeparableCentralState& state, const CentralPotential& potential,
                        const std::string& dir);

struct LoadedCentral {
    SeparableCentralState state;
    CentralPotential potential;
};
LoadedCentral load_central_state(const std::string& dir);

} // namespace qnb
