#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/depth.hpp"
#include "modinv/error.hpp"
#include "modinv/invariants.hpp"
#include "modinv/theorems.hpp"

namespace modinv {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportFormatVersion = 1;
inline constexpr int kCacheFormatVersion = 1;

enum ExitCode : int { exit_pass = 0, exit_theorem_fail = 1, exit_capacity = 2, exit_input_error = 3 };

struct LiftingSpec {
    Matrix subspace;  // spanning rows
    std::vector<Polynomial> sequence;
};

/// Comodule identities on C inside V^P. Without explicit elements, every basis element of F[V]^P
/// of degree 1..degree is checked.
struct CoactionSpec {
    Matrix subspace;
    std::vector<Polynomial> elements;
    int degree = 0;
};

/// Known task names, in pipeline order.
const std::vector<std::string>& scenario_tasks();

struct Scenario {
    std::string name;
    std::int64_t p = 2;
    std::size_t n = 0;
    std::vector<Matrix> generators;  // as written, entries reduced mod p
    std::optional<int> cutoff;
    std::uint64_t seed = kDefaultSeed;
    GradingConvention grading = GradingConvention::algebraic;
    std::vector<std::string> tasks;  // deduplicated, pipeline order
    std::vector<std::size_t> carlson_s;
    std::vector<LiftingSpec> lifting;
    std::vector<Matrix> stabilizer;
    std::vector<CoactionSpec> coaction;
    std::size_t piece_cap = kDefaultPieceCap;
    std::size_t subspace_cap = kDefaultCarlsonSubspaceCap;
};

/// Parses and validates YAML scenario text. Errors are InputError "source:line:col: field: message".
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);
/// Checks the invariants a hand-built scenario must satisfy (throws InputError).
void validate_scenario(Scenario& s);

struct RunOptions {
    std::optional<std::filesystem::path> cache_dir;
    bool timings = false;
    std::ostream* log = nullptr;  // cache warnings and progress
};

struct Report {
    std::string json;  // ends with a newline
    int exit_code = exit_pass;
};

Report run_scenario(const Scenario& s, const RunOptions& options = {});
/// Parse errors become an input-error report with exit code 3.
Report run_scenario(const std::filesystem::path& path, const RunOptions& options = {});

/// Errors take precedence: capacity 2, internal inconsistency 1, anything else 3; otherwise 1 if any
/// verdict failed, else 0.
int exit_code_for(const std::vector<VerdictStatus>& statuses, std::optional<Error::Kind> error);

/// Report with no results for an error raised before the pipeline starts.
Report error_report(const Error& e, const std::string& phase);

/// Cache key: syntactic, over the generator list exactly as written.
struct CacheKey {
    std::int64_t p;
    std::size_t n;
    std::uint64_t generator_hash;
    int degree;
    int version = kCacheFormatVersion;

    std::string file_name() const;
};

std::uint64_t generator_hash(std::int64_t p, std::size_t n, const std::vector<Matrix>& generators);
CacheKey cache_key(std::int64_t p, std::size_t n, const std::vector<Matrix>& generators, int degree);

/// Writes the ring's pieces through key.degree via a temporary file and a rename.
void cache_store(const std::filesystem::path& dir, const CacheKey& key, const InvariantRing& ring);
/// Miss on absent or stale-version entries; corrupt entries are reported to `log` and missed.
std::optional<InvariantRing> cache_load(const std::filesystem::path& dir, const CacheKey& key, const GroupPtr& group,
                                        std::ostream* log = nullptr, std::size_t piece_cap = kDefaultPieceCap);
/// Highest-degree usable entry for the generator list, if any.
std::optional<InvariantRing> cache_load_best(const std::filesystem::path& dir, std::int64_t p, std::size_t n,
                                             const std::vector<Matrix>& generators, const GroupPtr& group,
                                             std::ostream* log = nullptr, std::size_t piece_cap = kDefaultPieceCap);

}  // namespace modinv
