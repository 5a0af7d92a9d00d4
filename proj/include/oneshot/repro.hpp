#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oneshot {

/// One published constant or claim against the value this library computes.
/// verdict: "match", "mismatch", "flagged" (known discrepancy, kept visible),
/// "consistent" (a weaker claim that the computation satisfies), "info"
/// (no published value) or "unavailable" (inputs not shipped).
struct ReproRow {
    std::string id;
    std::string quantity;
    std::optional<double> published;
    std::optional<double> computed;
    std::string verdict;
    std::string note;
};

struct ReproOptions {
    std::uint64_t seed = 20240601;
    std::int64_t drift_draws = 1'000'000;  // per grid point of the drift fit
    int workers = 0;
};

std::vector<ReproRow> run_repro(const ReproOptions& opts = {});

/// Header id,quantity,published,computed,verdict,note; 9 significant digits.
std::string repro_csv(const std::vector<ReproRow>& rows);

}  // namespace oneshot
