#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mcbnc::cli {

inline constexpr const char* kToolVersion = "1.0.0";

struct SynthOptions {
    std::size_t n = 0;
    std::size_t r = 0;
    std::uint64_t seed = 0;
    std::filesystem::path out;
    std::string prefix = "synth";
    std::optional<int> max_parents;
    std::optional<int> max_children;
    std::optional<int> max_edges;
    std::optional<int> perturbations;
};

struct FuseOptions {
    std::vector<std::filesystem::path> inputs;
    std::optional<std::filesystem::path> ordering;
    std::filesystem::path out;
};

struct ConsensusOptions {
    std::vector<std::filesystem::path> inputs;
    std::optional<std::string> theta;  // exact text, e.g. "0.5" or "1/3"
    bool trajectory = false;
    int k_max = 10;
    std::optional<std::filesystem::path> ordering;
    std::optional<std::filesystem::path> gold;
    std::filesystem::path out;
};

struct SelectThetaOptions {
    std::filesystem::path trajectory;
    std::vector<std::filesystem::path> inputs;
    std::optional<std::filesystem::path> gold;
    std::filesystem::path out;
};

struct MetricsOptions {
    std::filesystem::path reference;
    std::vector<std::filesystem::path> others;
    std::string format = "csv";
};

/// Each command writes its files into `out` only once everything has been
/// computed; if writing fails midway, the files already written are removed.
/// Errors surface as exceptions.
void cmd_synth(const SynthOptions& opt, std::ostream& log);
void cmd_fuse(const FuseOptions& opt, std::ostream& log);
void cmd_consensus(const ConsensusOptions& opt, std::ostream& log);
void cmd_select_theta(const SelectThetaOptions& opt, std::ostream& out);
void cmd_metrics(const MetricsOptions& opt, std::ostream& out);

/// Replays the command recorded in a manifest. Relative paths in the manifest
/// resolve against the manifest's directory; outputs go to `out` if given,
/// otherwise next to the manifest.
void cmd_rerun(const std::filesystem::path& manifest, const std::optional<std::filesystem::path>& out,
               std::ostream& log);

/// Full command line front end. Returns the process exit code: 0 on success,
/// 1 on input, structural or I/O errors, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcbnc::cli
