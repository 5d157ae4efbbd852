#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbspart/graph.hpp"
#include "cbspart/lobpcg.hpp"
#include "cbspart/sparse_matrix.hpp"
#include "cbspart/vertex_set.hpp"

namespace cbspart {

enum class PartitionMethod { Cbs, Rsb, MinCut, MCut };

/// Thrown by bipartition_step when the eigensolver fails to converge.
struct EigensolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PartitionMethod partition_method_from_string(const std::string& s);
const char* to_string(PartitionMethod m);

struct PartitionConfig {
    PartitionMethod method = PartitionMethod::Cbs;
    int max_size = 0;            // recursion threshold; must be >= 1
    double load_balance = 0.8;   // in (0, 1]
    int candidates = 32;         // l, thresholds per sweep
    EigOptions eig;
    std::uint64_t seed = 42;

    void validate() const;
};

struct Bipartition {
    VertexSet i_set;
    VertexSet j_set;
};

struct SweepCandidate {
    int split_pos = 0;    // |I| at this threshold
    double objective = 0.0;
};

struct StepLog {
    int index = 0;
    int set_size = 0;
    int min_vertex = 0;            // smallest global vertex of the set
    std::string method;
    bool fallback = false;         // uniform weights -> Fiedler split
    bool degenerate = false;       // no usable split direction
    double eig_value = 0.0;
    int eig_iterations = 0;
    bool eig_converged = false;
    double eig_residual = 0.0;
    int i_size = 0;
    int j_size = 0;
    double objective = 0.0;        // chosen candidate's objective
    std::string objective_kind;    // gamma_tilde / gamma_bar / gamma_hat / cut
    std::int64_t cut = 0;
    double w_cut = 0.0;
    bool disconnected_split = false;  // chosen candidate has zero cut
    std::vector<SweepCandidate> candidates;
    std::vector<int> component_sizes;
};

struct PartitionResult {
    std::vector<VertexSet> subdomains;
    std::vector<StepLog> steps;
    bool top_level_disconnected = false;
    std::vector<int> indivisible;  // subdomain indices left above max_size
};

/// Carries the work done before an eigensolver failure aborted the recursion.
struct PartitionAborted : std::runtime_error {
    PartitionAborted(const std::string& what, PartitionResult partial_result)
        : std::runtime_error(what), partial(std::move(partial_result)) {}
    PartitionResult partial;
};

/// Converts an eigenvector into a bipartition: the m smallest and m largest
/// components (m from loadBalance) are forced into I and J, then l candidate
/// thresholds over the middle positions are swept and scored with the
/// method's objective; the candidate with the smallest objective wins, ties
/// broken toward better balance and then the lower threshold.
/// `objective` selects the sweep score; Rsb scores the plain edge cut.
/// Throws std::domain_error when all vector components coincide.
Bipartition split_from_vector(const Eigen::VectorXd& v, const Graph& g, double load_balance,
                              int candidates, PartitionMethod objective,
                              StepLog* log = nullptr);

/// One step of the recursive algorithm on a connected weighted graph:
/// uniform weights fall back to a Fiedler split, otherwise the method's
/// eigenproblem is solved and the split refined into connected components.
/// Vertex sets are in local graph indices.
std::vector<VertexSet> bipartition_step(const Graph& g, const PartitionConfig& config,
                                        StepLog& log);

/// Recursive partitioning of G(A) with CBS edge weights assigned once on the
/// full matrix. Components no larger than max_size stop the recursion;
/// disconnected top-level inputs are partitioned per component and flagged.
PartitionResult recursive_partition(const SparseSymMatrix& a, const PartitionConfig& config);

/// Same, over a prebuilt weighted graph.
PartitionResult recursive_partition(const Graph& g, const PartitionConfig& config);

}  // namespace cbspart
