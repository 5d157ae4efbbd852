#include "cbspart/partitioner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cbspart/laplacian.hpp"

namespace cbspart {

PartitionMethod partition_method_from_string(const std::string& s) {
    if (s == "cbs") return PartitionMethod::Cbs;
    if (s == "rsb" || s == "standard") return PartitionMethod::Rsb;
    if (s == "mincut") return PartitionMethod::MinCut;
    if (s == "mcut") return PartitionMethod::MCut;
    throw std::invalid_argument("unknown partition method: " + s);
}

const char* to_string(PartitionMethod m) {
    switch (m) {
        case PartitionMethod::Cbs: return "cbs";
        case PartitionMethod::Rsb: return "rsb";
        case PartitionMethod::MinCut: return "mincut";
        case PartitionMethod::MCut: return "mcut";
    }
    return "?";
}

void PartitionConfig::validate() const {
    if (max_size < 1) throw std::invalid_argument("PartitionConfig: maxSize must be >= 1");
    if (!(load_balance > 0.0) || load_balance > 1.0)
        throw std::invalid_argument("PartitionConfig: loadBalance must lie in (0, 1]");
    if (candidates < 1) throw std::invalid_argument("PartitionConfig: l must be >= 1");
}

namespace {

const char* objective_name(PartitionMethod m, bool fallback) {
    if (fallback || m == PartitionMethod::Rsb) return "cut";
    switch (m) {
        case PartitionMethod::Cbs: return "gamma_tilde";
        case PartitionMethod::MinCut: return "gamma_bar";
        case PartitionMethod::MCut: return "gamma_hat";
        default: return "cut";
    }
}

EigProblemKind problem_kind(PartitionMethod m) {
    switch (m) {
        case PartitionMethod::Cbs: return EigProblemKind::CbsRatio;
        case PartitionMethod::Rsb: return EigProblemKind::Fiedler;
        case PartitionMethod::MinCut: return EigProblemKind::MinCut;
        case PartitionMethod::MCut: return EigProblemKind::MCut;
    }
    return EigProblemKind::Fiedler;
}

struct SweepState {
    std::int64_t cut = 0;
    double w_cut = 0.0;
    double w_in_i = 0.0;
    double w_in_j = 0.0;
};

double sweep_objective(PartitionMethod objective, const SweepState& st, int i_size, int j_size,
                       int n) {
    switch (objective) {
        case PartitionMethod::Cbs:
            return st.cut == 0 ? 0.0 : st.w_cut / static_cast<double>(st.cut);
        case PartitionMethod::Rsb:
            return static_cast<double>(st.cut);
        case PartitionMethod::MinCut:
            return st.w_cut / (static_cast<double>(i_size) * static_cast<double>(j_size));
        case PartitionMethod::MCut: {
            if (st.w_cut == 0.0) return 0.0;
            if (st.w_in_i <= 0.0 || st.w_in_j <= 0.0)
                return std::numeric_limits<double>::infinity();
            return (st.w_cut / st.w_in_j + st.w_cut / st.w_in_i) / static_cast<double>(n);
        }
    }
    return 0.0;
}

}  // namespace

Bipartition split_from_vector(const Eigen::VectorXd& v, const Graph& g, double load_balance,
                              int candidates, PartitionMethod objective, StepLog* log) {
    const int n = g.n();
    if (n < 2 || v.size() != n)
        throw std::invalid_argument("split_from_vector: need n >= 2 matching components");
    if (!(load_balance > 0.0) || load_balance > 1.0)
        throw std::invalid_argument("split_from_vector: loadBalance must lie in (0, 1]");
    if (candidates < 1) throw std::invalid_argument("split_from_vector: l must be >= 1");

    double spread = v.maxCoeff() - v.minCoeff();
    if (!(spread > (std::abs(v.maxCoeff()) + std::abs(v.minCoeff())) * 1e-14))
        throw std::domain_error("split_from_vector: all components equal, no split direction");

    // Sort ascending; equal components ordered by vertex index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return v(a) < v(b); });

    int m = static_cast<int>(std::ceil(load_balance * n / (1.0 + load_balance)));
    m = std::min(m, n / 2);
    m = std::max(m, 1);

    // l thresholds spread evenly across the middle n - 2m sorted positions;
    // fully balanced splits (middle = 0) leave the single forced candidate.
    const int middle = n - 2 * m;
    std::vector<int> split_positions;
    if (middle == 0) {
        split_positions.push_back(m);
    } else {
        const int l = std::max(1, std::min(candidates, middle));
        for (int k = 1; k <= l; ++k) {
            int s = m + static_cast<int>(std::lround(k * static_cast<double>(middle) / (l + 1)));
            s = std::clamp(s, m, n - m);
            if (split_positions.empty() || split_positions.back() != s)
                split_positions.push_back(s);
        }
    }

    // Incremental sweep: grow I one sorted position at a time, scoring at
    // the candidate positions.
    std::vector<char> in_i(n, 0);
    for (int k = 0; k < m; ++k) in_i[order[k]] = 1;
    SweepState st;
    for (int u = 0; u < n; ++u) st.w_in_j += g.diag_abs(u);
    for (int k = 0; k < m; ++k) {
        st.w_in_j -= g.diag_abs(order[k]);
        st.w_in_i += g.diag_abs(order[k]);
    }
    g.for_each_edge([&](int a, int b, double w) {
        if (in_i[a] != in_i[b]) {
            ++st.cut;
            st.w_cut += w;
        } else if (in_i[a]) {
            st.w_in_i += 2.0 * w;
        } else {
            st.w_in_j += 2.0 * w;
        }
    });

    int best_pos = -1;
    double best_obj = 0.0;
    SweepState best_state;
    std::size_t next_candidate = 0;
    auto consider = [&](int pos) {
        double obj = sweep_objective(objective, st, pos, n - pos, n);
        if (log) log->candidates.push_back({pos, obj});
        bool better = best_pos < 0 || obj < best_obj;
        if (!better && obj == best_obj)
            better = std::abs(2 * pos - n) < std::abs(2 * best_pos - n);
        if (better) {
            best_pos = pos;
            best_obj = obj;
            best_state = st;
        }
    };

    for (int s = m; s <= n - m; ++s) {
        if (s > m) {
            int u = order[s - 1];  // moves from J to I
            in_i[u] = 1;
            st.w_in_i += g.diag_abs(u);
            st.w_in_j -= g.diag_abs(u);
            auto nbr = g.neighbors(u);
            auto nw = g.neighbor_weights(u);
            for (std::size_t p = 0; p < nbr.size(); ++p) {
                if (in_i[nbr[p]]) {
                    --st.cut;
                    st.w_cut -= nw[p];
                    st.w_in_i += 2.0 * nw[p];
                } else {
                    ++st.cut;
                    st.w_cut += nw[p];
                    st.w_in_j -= 2.0 * nw[p];
                }
            }
        }
        if (next_candidate < split_positions.size() && split_positions[next_candidate] == s) {
            consider(s);
            ++next_candidate;
        }
    }

    Bipartition bp;
    bp.i_set.assign(order.begin(), order.begin() + best_pos);
    bp.j_set.assign(order.begin() + best_pos, order.end());
    std::sort(bp.i_set.begin(), bp.i_set.end());
    std::sort(bp.j_set.begin(), bp.j_set.end());
    if (log) {
        log->i_size = best_pos;
        log->j_size = n - best_pos;
        log->objective = best_obj;
        log->cut = best_state.cut;
        log->w_cut = best_state.w_cut;
        log->disconnected_split = best_state.cut == 0;
    }
    return bp;
}

std::vector<VertexSet> bipartition_step(const Graph& g, const PartitionConfig& config,
                                        StepLog& log) {
    config.validate();
    if (g.n() < 2) throw std::invalid_argument("bipartition_step: need at least 2 vertices");
    log.set_size = g.n();
    log.method = to_string(config.method);

    bool fallback = false;
    EigProblemKind kind = problem_kind(config.method);
    if (config.method != PartitionMethod::Rsb && uniform_weights(g)) {
        fallback = true;
        kind = EigProblemKind::Fiedler;
    }
    log.fallback = fallback;

    GraphLaplacians lap = build_laplacians(g);
    EigResult eig = lobpcg_smallest(kind, lap, config.eig);
    log.eig_value = eig.value;
    log.eig_iterations = eig.iterations;
    log.eig_converged = eig.converged;
    log.eig_residual = eig.residual_norm;
    if (!eig.converged)
        throw EigensolverFailure("eigensolver did not converge within " +
                                 std::to_string(config.eig.max_iter) + " iterations (residual " +
                                 std::to_string(eig.residual_norm) + ")");

    PartitionMethod objective =
        fallback ? PartitionMethod::Rsb : config.method;
    Bipartition bp = split_from_vector(eig.vector, g, config.load_balance, config.candidates,
                                       objective, &log);
    log.objective_kind = objective_name(config.method, fallback);

    std::vector<VertexSet> out = connected_components(g, bp.i_set);
    std::vector<VertexSet> right = connected_components(g, bp.j_set);
    out.insert(out.end(), std::make_move_iterator(right.begin()),
               std::make_move_iterator(right.end()));
    std::sort(out.begin(), out.end(),
              [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
    for (const auto& c : out) log.component_sizes.push_back(static_cast<int>(c.size()));
    return out;
}

PartitionResult recursive_partition(const SparseSymMatrix& a, const PartitionConfig& config) {
    return recursive_partition(cbs_weights(a), config);
}

PartitionResult recursive_partition(const Graph& g, const PartitionConfig& config) {
    config.validate();
    PartitionResult result;

    VertexSet all(g.n());
    std::iota(all.begin(), all.end(), 0);
    std::vector<VertexSet> roots = connected_components(g, all);
    result.top_level_disconnected = roots.size() > 1;

    std::deque<VertexSet> work(std::make_move_iterator(roots.begin()),
                               std::make_move_iterator(roots.end()));
    std::vector<std::pair<VertexSet, bool>> finished;  // (set, indivisible)
    int step_index = 0;
    while (!work.empty()) {
        VertexSet current = std::move(work.front());
        work.pop_front();
        if (static_cast<int>(current.size()) <= config.max_size) {
            finished.emplace_back(std::move(current), false);
            continue;
        }

        Graph sub = g.induced(current);
        StepLog log;
        log.index = step_index;
        log.min_vertex = current.front();
        PartitionConfig step_config = config;
        // Distinct deterministic eigensolver seed per step.
        step_config.eig.seed = config.seed + static_cast<std::uint64_t>(step_index);

        std::vector<VertexSet> pieces;
        try {
            pieces = bipartition_step(sub, step_config, log);
        } catch (const std::domain_error&) {
            log.degenerate = true;
            result.steps.push_back(std::move(log));
            ++step_index;
            finished.emplace_back(std::move(current), true);
            continue;
        } catch (const EigensolverFailure& e) {
            result.steps.push_back(std::move(log));
            for (auto& [set, indiv] : finished) result.subdomains.push_back(std::move(set));
            result.subdomains.push_back(std::move(current));
            while (!work.empty()) {
                result.subdomains.push_back(std::move(work.front()));
                work.pop_front();
            }
            throw PartitionAborted(e.what(), std::move(result));
        }
        result.steps.push_back(std::move(log));
        ++step_index;

        for (auto& piece : pieces) {
            VertexSet global(piece.size());
            for (std::size_t k = 0; k < piece.size(); ++k) global[k] = current[piece[k]];
            work.push_back(std::move(global));
        }
    }

    std::sort(finished.begin(), finished.end(),
              [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
    for (auto& [set, indiv] : finished) {
        if (indiv) result.indivisible.push_back(static_cast<int>(result.subdomains.size()));
        result.subdomains.push_back(std::move(set));
    }
    return result;
}

}  // namespace cbspart
