#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbspart/model_problems.hpp"
#include "cbspart/partitioner.hpp"
#include "cbspart/schwarz.hpp"
#include "cbspart/sparse_matrix.hpp"

namespace cbspart {

/// End-to-end run configuration; defaults follow the standard experiment
/// setup (loadBalance 0.8, PCG tolerance 1e-8, eigensolver tolerance 1e-4,
/// IC drop tolerance 1e-3, shift 0.1).
struct RunConfig {
    PartitionMethod method = PartitionMethod::Cbs;
    int max_size = 0;  // 0 = floor(n / 20)
    double load_balance = 0.8;
    int candidates = 32;
    int overlap = 0;
    double pcg_tol = 1e-8;
    int pcg_max_iter = 5000;
    double eig_tol = 1e-4;
    int eig_max_iter = 500;
    double ic_droptol = 1e-3;
    double sigma = 0.1;
    std::uint64_t seed = 42;
    std::vector<std::uint64_t> solve_seeds = {42, 43, 44, 45};

    PartitionConfig partition_config(int n) const;
    std::vector<std::string> echo_lines() const;  // resolved config, one per line
};

struct BenchRow {
    std::string matrix;
    int n = 0;
    std::string method;
    int subdomains = 0;
    int overlap = 0;
    double mean_iterations = 0.0;
    bool converged = true;  // all seeds converged
    double seconds = 0.0;
    std::vector<int> per_seed_iterations;
};

/// Diagonal-scales the system, partitions it, optionally expands overlap,
/// builds the AS preconditioner and runs PCG once per solve seed with random
/// unit-norm right-hand sides and random initial guesses.
struct PipelineResult {
    PartitionResult partition;
    std::vector<VertexSet> solve_subdomains;  // after overlap expansion
    BenchRow row;
};

PipelineResult run_pcg_as(const SparseSymMatrix& a_raw, const std::string& name,
                          const RunConfig& config);

/// Model problems by CLI name: square-jump-ab, square-jump-a, checker-ab,
/// checker-a.
DiffusionSpec model_by_name(const std::string& name, int grid = 20);
const std::vector<std::string>& model_names();

// --- serialization -------------------------------------------------------

/// Partition text format: '#'-prefixed config echo, then one line per
/// subdomain with space-separated 0-based vertex indices.
std::string format_partition(const std::vector<VertexSet>& subdomains,
                             const std::vector<std::string>& header);
std::vector<VertexSet> parse_partition(const std::string& text);
void write_partition_file(const std::string& path, const std::vector<VertexSet>& subdomains,
                          const std::vector<std::string>& header);
std::vector<VertexSet> read_partition_file(const std::string& path);

/// JSON step log with embedded config echo.
std::string format_step_log(const PartitionResult& result, const RunConfig& config);

/// CSV with '#'-prefixed config echo, header row
/// matrix,n,method,s,overlap,iterations,converged,seconds.
std::string format_bench_csv(const std::vector<BenchRow>& rows,
                             const std::vector<std::string>& header, bool with_timing);

/// Grid map CSV: x,y,subdomain,in_jump.
std::string format_grid_csv(const std::vector<GridPoint>& points,
                            const std::vector<std::string>& header);

}  // namespace cbspart
