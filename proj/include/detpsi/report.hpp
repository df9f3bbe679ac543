#pragma once
// JSON/TSV serialization for verification reports and scenarios, plus the
// small file helpers used by the command-line driver.
//
// A report document has three top-level parts:
//   - "config": machine-readable run parameters; feeding them back into the
//     driver reproduces the run exactly,
//   - "verdicts": the deterministic section (suite, config echo, seed,
//     verdict counts, one row per check), byte-identical across reruns with
//     the same seed,
//   - "timing": wall-clock data, kept outside the verdict section so that
//     determinism comparisons ignore it.
// Monomial primes serialize as sorted variable-index lists.

#include "detpsi/scenario.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace detpsi {

// Everything a run needs; embedding this in the report makes the run
// reproducible from the report alone.
struct RunConfig {
    std::string subcommand;
    RingSpec ring;
    std::uint64_t seed = 1;
    unsigned count = 0;                          // sample count for the sampling suites
    std::vector<std::vector<unsigned>> primes;   // sorted variable-index lists
    unsigned max_resample = 200;
    unsigned n = 2;                              // scenario slot count
    std::vector<unsigned> degs;                  // scenario place degrees
    std::string scenario_file;                   // set when a scenario was loaded
    unsigned jobs = 1;
    bool verbose = false;
};

// canonical two-space-indented JSON for the verdict section alone; the
// determinism guarantee is on these bytes
std::string verdict_section_json(const VerificationReport& rep);

// full report document (config + verdicts + timing)
std::string report_document_json(const RunConfig& cfg, const VerificationReport& rep,
                                 double elapsed_seconds);

// one tab-separated row per check, after a header row; tabs/newlines in
// details are escaped
std::string report_tsv(const VerificationReport& rep);

struct LoadedReport {
    RunConfig config;
    VerificationReport report;
    double elapsed_seconds = 0;
};
// parses a report document; throws detpsi::error on malformed input
LoadedReport report_from_json(const std::string& text);

// scenario documents carry the ring spec, generation parameters, and the
// full sampled data (ideals, complexes, connecting columns) as entry strings
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);

// write via a sibling temporary file and rename, so readers never observe a
// half-written report
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);  // throws detpsi::error when unreadable

}  // namespace detpsi
