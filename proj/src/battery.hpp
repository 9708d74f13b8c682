#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qnb {

// One verdict of the reproduction battery: a claim about the physics, the
// measured numbers against their stated bounds, and whether they held.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct BatteryResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
};

// Runs the full reproduction battery — spectra, separation-constant tables,
// continuity and operator-ratio reports, rest-point checks, winding and
// scale-invariance probes — and writes one CSV table per claim under out_dir
// (created if needed). The seed only feeds the rest-check sample draws; every
// number in the artifacts is deterministic for a fixed seed.
BatteryResult run_acceptance_battery(const std::string& out_dir, std::uint64_t seed);

// "[PASS] 3. <name>: <detail>" — one line per criterion plus a summary line.
std::string format_battery_report(const BatteryResult& result);

} // namespace qnb
