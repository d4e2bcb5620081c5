#pragma once

#include <string>
#include <vector>

#include "partdet/inequalities.hpp"

namespace partdet {

/// One rerun of a fixed, recorded instance. matches_recorded compares the
/// fresh verdicts against the frozen numbers; the CLI exits 0 only when
/// every rerun item still matches.
struct ReproResult {
    std::string item;
    std::vector<Verdict> verdicts;
    std::vector<std::string> lines;  // human-readable summary, one per finding
    bool matches_recorded = true;
    nlohmann::json to_json() const;
};

/// Item names accepted by run_repro, excluding the aggregate "all".
std::vector<std::string> repro_items();

/// Runs one item ("all" reruns the whole registry). UnknownItem otherwise.
std::vector<ReproResult> run_repro(const std::string& item);

}  // namespace partdet
