#include "cbspart/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "cbspart/laplacian.hpp"

namespace cbspart {

PartitionConfig RunConfig::partition_config(int n) const {
    PartitionConfig pc;
    pc.method = method;
    pc.max_size = max_size > 0 ? max_size : std::max(1, n / 20);
    pc.load_balance = load_balance;
    pc.candidates = candidates;
    pc.eig.tol = eig_tol;
    pc.eig.max_iter = eig_max_iter;
    pc.eig.ic_droptol = ic_droptol;
    pc.eig.sigma = sigma;
    pc.eig.seed = seed;
    pc.seed = seed;
    return pc;
}

std::vector<std::string> RunConfig::echo_lines() const {
    std::ostringstream seeds;
    for (std::size_t i = 0; i < solve_seeds.size(); ++i)
        seeds << (i ? "," : "") << solve_seeds[i];
    std::vector<std::string> lines;
    auto add = [&](const std::string& k, const std::string& v) { lines.push_back(k + "=" + v); };
    add("method", to_string(method));
    add("max_size", max_size > 0 ? std::to_string(max_size) : "auto(n/20)");
    add("load_balance", std::to_string(load_balance));
    add("candidates", std::to_string(candidates));
    add("overlap", std::to_string(overlap));
    add("pcg_tol", std::to_string(pcg_tol));
    add("pcg_max_iter", std::to_string(pcg_max_iter));
    add("eig_tol", std::to_string(eig_tol));
    add("eig_max_iter", std::to_string(eig_max_iter));
    add("ic_droptol", std::to_string(ic_droptol));
    add("sigma", std::to_string(sigma));
    add("seed", std::to_string(seed));
    add("solve_seeds", seeds.str());
    return lines;
}

PipelineResult run_pcg_as(const SparseSymMatrix& a_raw, const std::string& name,
                          const RunConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    auto [a, scale] = diag_scale(a_raw);
    Graph weights = cbs_weights(a);

    PipelineResult out;
    out.partition = recursive_partition(weights, config.partition_config(a.n()));
    out.solve_subdomains = config.overlap > 0
                               ? expand_overlap(out.partition.subdomains, weights, config.overlap)
                               : out.partition.subdomains;

    auto as = std::make_shared<AdditiveSchwarz>(a, out.solve_subdomains);
    PrecondFn prec = as_preconditioner(as);

    out.row.matrix = name;
    out.row.n = a.n();
    out.row.method = to_string(config.method);
    out.row.subdomains = static_cast<int>(out.partition.subdomains.size());
    out.row.overlap = config.overlap;
    double total_iters = 0.0;
    for (std::uint64_t s : config.solve_seeds) {
        std::mt19937_64 rng(s);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        Eigen::VectorXd b(a.n()), x0(a.n());
        for (int i = 0; i < a.n(); ++i) b(i) = unif(rng);
        b /= b.norm();  // random right-hand side of unit norm
        for (int i = 0; i < a.n(); ++i) x0(i) = unif(rng);

        PcgOptions popt;
        popt.tol = config.pcg_tol;
        popt.max_iter = config.pcg_max_iter;
        popt.x0 = &x0;
        SolveReport rep = pcg(a, b, prec, popt);
        out.row.per_seed_iterations.push_back(rep.iterations);
        out.row.converged = out.row.converged && rep.converged;
        total_iters += rep.iterations;
    }
    out.row.mean_iterations = total_iters / static_cast<double>(config.solve_seeds.size());
    out.row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

DiffusionSpec model_by_name(const std::string& name, int grid) {
    DiffusionSpec spec;
    spec.grid = grid;
    if (name == "square-jump-ab") {
        spec.geometry = JumpGeometry::SquareJump;
    } else if (name == "square-jump-a") {
        spec.geometry = JumpGeometry::SquareJump;
        spec.jump_b = 1.0;
    } else if (name == "checker-ab") {
        spec.geometry = JumpGeometry::Checkerboard5x5;
    } else if (name == "checker-a") {
        spec.geometry = JumpGeometry::Checkerboard5x5;
        spec.jump_b = 1.0;
    } else if (name == "constant") {
        spec.geometry = JumpGeometry::SquareJump;
        spec.jump_a = 1.0;
        spec.jump_b = 1.0;
    } else {
        throw std::invalid_argument("unknown model: " + name);
    }
    return spec;
}

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names = {"square-jump-ab", "square-jump-a",
                                                   "checker-ab", "checker-a", "constant"};
    return names;
}

std::string format_partition(const std::vector<VertexSet>& subdomains,
                             const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& line : header) out << "# " << line << "\n";
    for (const auto& sub : subdomains) {
        for (std::size_t k = 0; k < sub.size(); ++k) out << (k ? " " : "") << sub[k];
        out << "\n";
    }
    return out.str();
}

std::vector<VertexSet> parse_partition(const std::string& text) {
    std::vector<VertexSet> subdomains;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        VertexSet sub;
        std::istringstream ls(line);
        int v;
        while (ls >> v) sub.push_back(v);
        if (!sub.empty()) subdomains.push_back(std::move(sub));
    }
    return subdomains;
}

void write_partition_file(const std::string& path, const std::vector<VertexSet>& subdomains,
                          const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write partition file: " + path);
    out << format_partition(subdomains, header);
}

std::vector<VertexSet> read_partition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_partition(buf.str());
}

std::string format_step_log(const PartitionResult& result, const RunConfig& config) {
    nlohmann::json j;
    nlohmann::json cfg;
    for (const auto& line : config.echo_lines()) {
        auto eq = line.find('=');
        cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
    j["config"] = cfg;
    j["top_level_disconnected"] = result.top_level_disconnected;
    j["subdomain_count"] = result.subdomains.size();
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& s : result.subdomains) sizes.push_back(s.size());
    j["subdomain_sizes"] = sizes;
    j["indivisible"] = result.indivisible;
    j["mcut_within_set_sums_include_diagonal"] = true;

    nlohmann::json steps = nlohmann::json::array();
    for (const auto& st : result.steps) {
        nlohmann::json s;
        s["index"] = st.index;
        s["set_size"] = st.set_size;
        s["min_vertex"] = st.min_vertex;
        s["method"] = st.method;
        s["fallback"] = st.fallback;
        s["degenerate"] = st.degenerate;
        if (!st.degenerate) {
            s["eig"] = {{"value", st.eig_value},
                        {"iterations", st.eig_iterations},
                        {"converged", st.eig_converged},
                        {"residual", st.eig_residual}};
            s["split"] = {{"i_size", st.i_size},
                          {"j_size", st.j_size},
                          {"objective", st.objective},
                          {"objective_kind", st.objective_kind},
                          {"cut", st.cut},
                          {"w_cut", st.w_cut},
                          {"disconnected_split", st.disconnected_split}};
            nlohmann::json cands = nlohmann::json::array();
            for (const auto& c : st.candidates)
                cands.push_back({{"split_pos", c.split_pos}, {"objective", c.objective}});
            s["candidates"] = cands;
            s["component_sizes"] = st.component_sizes;
        }
        steps.push_back(std::move(s));
    }
    j["steps"] = steps;
    return j.dump(2) + "\n";
}

std::string format_bench_csv(const std::vector<BenchRow>& rows,
                             const std::vector<std::string>& header, bool with_timing) {
    std::ostringstream out;
    for (const auto& line : header) out << "# " << line << "\n";
    out << "matrix,n,method,s,overlap,iterations,converged,seconds\n";
    out.setf(std::ios::fixed);
    for (const auto& r : rows) {
        out.precision(2);
        out << r.matrix << "," << r.n << "," << r.method << "," << r.subdomains << ","
            << r.overlap << "," << r.mean_iterations << "," << (r.converged ? 1 : 0) << ",";
        out.precision(3);
        out << (with_timing ? r.seconds : 0.0) << "\n";
    }
    return out.str();
}

std::string format_grid_csv(const std::vector<GridPoint>& points,
                            const std::vector<std::string>& header) {
    std::ostringstream out;
    for (const auto& line : header) out << "# " << line << "\n";
    out << "x,y,subdomain,in_jump\n";
    out.precision(17);
    for (const auto& p : points)
        out << p.x << "," << p.y << "," << p.subdomain << "," << (p.in_jump ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace cbspart
