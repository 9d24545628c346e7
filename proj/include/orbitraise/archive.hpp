// Self-describing solution archive: config echo + value function + policy,
// checksummed so that truncation or corruption never yields a partial result.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "orbitraise/config.hpp"

namespace orbitraise {

struct ConvergenceReport {
    std::string engine;
    int iterations = 0;
    double residual = 0.0;
    double wall_seconds = 0.0;
    bool converged = false;
};

/**
 * On-disk layout (little-endian):
 *   magic "ORAISEVF" (8) | u32 version | u64 header length
 *   header: JSON {"config": <canonical config>, "report": {...}}
 *   u64 n | n x f64 values | n x u32 policy indices | u32 CRC-32
 * The checksum covers every preceding byte; n must equal the grid size of
 * the echoed config.
 */
struct SolutionArchive {
    std::uint32_t version = 1;
    ProblemConfig config;
    std::vector<double> values;
    std::vector<std::uint32_t> policy;
    ConvergenceReport report;
};

/// Throws IoError on filesystem failures.
void save_solution(const SolutionArchive& archive, const std::filesystem::path& path);

/// Throws IoError when unreadable, ArchiveError with a precise diagnosis on
/// bad magic/version, truncation, checksum mismatch or grid-N inconsistency.
SolutionArchive load_solution(const std::filesystem::path& path);

}  // namespace orbitraise
