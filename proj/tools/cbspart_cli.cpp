// Command-line front end: model-problem generation, coefficient-aware
// partitioning, PCG-AS solves and benchmark tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cbspart/laplacian.hpp"
#include "cbspart/matrix_market.hpp"
#include "cbspart/model_problems.hpp"
#include "cbspart/partitioner.hpp"
#include "cbspart/pipeline.hpp"
#include "cbspart/schwarz.hpp"
#include "cbspart/sparse_matrix.hpp"

namespace {

using namespace cbspart;

constexpr int kExitBadFile = 2;
constexpr int kExitNotSpd = 3;
constexpr int kExitEigFailure = 4;

struct InputSpec {
    std::string matrix_path;
    std::string model;
    int grid = 20;
    double jump_a = 100.0;
    double jump_b = -1.0;  // -1 = model default

    void add_options(CLI::App* cmd) {
        auto* mtx = cmd->add_option("--matrix", matrix_path, "Matrix Market file (symmetric SPD)");
        auto* mdl = cmd->add_option("--model", model, "model problem name")
                        ->check(CLI::IsMember(model_names()));
        cmd->add_option("--grid", grid, "interior grid points per side")->needs(mdl);
        cmd->add_option("--jump-a", jump_a, "jump value for a(x,y)")->needs(mdl);
        cmd->add_option("--jump-b", jump_b, "jump value for b(x,y)")->needs(mdl);
        mtx->excludes(mdl);
        cmd->callback([this, mtx, mdl]() {
            if (mtx->count() == 0 && mdl->count() == 0)
                throw CLI::ValidationError("either --matrix or --model is required");
        });
    }

    DiffusionSpec diffusion_spec() const {
        DiffusionSpec spec = model_by_name(model, grid);
        if (model != "constant") {
            spec.jump_a = jump_a;
            if (spec.jump_b != 1.0) spec.jump_b = jump_b > 0 ? jump_b : jump_a;
            else if (jump_b > 0) spec.jump_b = jump_b;
        }
        return spec;
    }

    SparseSymMatrix load(std::string& name) const {
        if (!model.empty()) {
            name = model;
            return fd_diffusion(diffusion_spec());
        }
        name = matrix_path;
        auto slash = name.find_last_of('/');
        if (slash != std::string::npos) name = name.substr(slash + 1);
        auto dot = name.rfind(".mtx");
        if (dot != std::string::npos) name = name.substr(0, dot);
        return read_matrix_market(matrix_path);
    }

    std::vector<std::string> echo_lines() const {
        std::vector<std::string> lines;
        if (!model.empty()) {
            lines.push_back("model=" + model);
            lines.push_back("grid=" + std::to_string(grid));
            DiffusionSpec spec = diffusion_spec();
            lines.push_back("jump_a=" + std::to_string(spec.jump_a));
            lines.push_back("jump_b=" + std::to_string(spec.jump_b));
        } else {
            lines.push_back("matrix=" + matrix_path);
        }
        return lines;
    }
};

std::uint64_t env_seed_or(std::uint64_t fallback) {
    const char* env = std::getenv("CBSPART_SEED");
    if (!env) return fallback;
    return std::strtoull(env, nullptr, 10);
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
    std::vector<std::uint64_t> seeds;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (!tok.empty()) seeds.push_back(std::strtoull(tok.c_str(), nullptr, 10));
    if (seeds.empty()) throw CLI::ValidationError("--seeds: no seeds given");
    return seeds;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << text;
}

int classify_error(const std::exception& e, bool during_load) {
    if (dynamic_cast<const NotSpdError*>(&e)) return kExitNotSpd;
    if (dynamic_cast<const PartitionAborted*>(&e) || dynamic_cast<const EigensolverFailure*>(&e))
        return kExitEigFailure;
    return during_load ? kExitBadFile : 1;
}

int cmd_gen(const InputSpec& input, const std::string& out_path) {
    DiffusionSpec spec = input.diffusion_spec();
    SparseSymMatrix a = fd_diffusion(spec);
    std::vector<std::string> comments = input.echo_lines();
    comments.insert(comments.begin(), "generated by cbspart gen");
    write_matrix_market(out_path, a, comments);
    std::cout << "wrote " << out_path << " (n=" << a.n() << ", nnz=" << a.nnz() << ")\n";
    return 0;
}

int cmd_partition(const InputSpec& input, RunConfig config, const std::string& out_prefix,
                  bool grid_csv) {
    std::string name;
    SparseSymMatrix a;
    try {
        a = input.load(name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e, true);
    }

    std::vector<std::string> header = input.echo_lines();
    auto cfg_lines = config.echo_lines();
    header.insert(header.end(), cfg_lines.begin(), cfg_lines.end());

    PartitionResult result;
    int exit_code = 0;
    try {
        result = recursive_partition(a, config.partition_config(a.n()));
    } catch (const PartitionAborted& e) {
        std::cerr << "error: " << e.what() << "\n";
        result = e.partial;
        exit_code = kExitEigFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e, false);
    }

    write_text(out_prefix + ".partition", format_partition(result.subdomains, header));
    write_text(out_prefix + ".steps.json", format_step_log(result, config));
    if (grid_csv) {
        if (input.model.empty()) {
            std::cerr << "error: --grid-csv requires --model input\n";
            return 1;
        }
        write_text(out_prefix + ".grid.csv",
                   format_grid_csv(grid_plot_data(result.subdomains, input.diffusion_spec()),
                                   header));
    }
    if (result.top_level_disconnected)
        std::cout << "note: input graph is disconnected; components partitioned independently\n";
    std::cout << "partitioned " << name << " (n=" << a.n() << ") into "
              << result.subdomains.size() << " subdomains ("
              << result.steps.size() << " bipartition steps)\n";
    return exit_code;
}

int cmd_solve(const InputSpec& input, RunConfig config, const std::string& partition_file,
              const std::string& out_path, bool with_timing) {
    std::string name;
    SparseSymMatrix a;
    try {
        a = input.load(name);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e, true);
    }

    std::vector<std::string> header = input.echo_lines();
    auto cfg_lines = config.echo_lines();
    header.insert(header.end(), cfg_lines.begin(), cfg_lines.end());

    try {
        BenchRow row;
        if (!partition_file.empty()) {
            auto subdomains = read_partition_file(partition_file);
            auto [scaled, scale] = diag_scale(a);
            Graph weights = cbs_weights(scaled);
            auto solve_sets = config.overlap > 0
                                  ? expand_overlap(subdomains, weights, config.overlap)
                                  : subdomains;
            auto as = std::make_shared<AdditiveSchwarz>(scaled, solve_sets);
            row.matrix = name;
            row.n = a.n();
            row.method = "file";
            row.subdomains = static_cast<int>(subdomains.size());
            row.overlap = config.overlap;
            double total = 0.0;
            for (std::uint64_t s : config.solve_seeds) {
                std::mt19937_64 rng(s);
                std::uniform_real_distribution<double> unif(-1.0, 1.0);
                Eigen::VectorXd b(a.n()), x0(a.n());
                for (int i = 0; i < a.n(); ++i) b(i) = unif(rng);
                b /= b.norm();
                for (int i = 0; i < a.n(); ++i) x0(i) = unif(rng);
                PcgOptions popt;
                popt.tol = config.pcg_tol;
                popt.max_iter = config.pcg_max_iter;
                popt.x0 = &x0;
                SolveReport rep = pcg(scaled, b, as_preconditioner(as), popt);
                row.per_seed_iterations.push_back(rep.iterations);
                row.converged = row.converged && rep.converged;
                total += rep.iterations;
            }
            row.mean_iterations = total / config.solve_seeds.size();
        } else {
            row = run_pcg_as(a, name, config).row;
        }
        write_text(out_path, format_bench_csv({row}, header, with_timing));
        std::cout << name << ": mean " << row.mean_iterations << " PCG iterations over "
                  << config.solve_seeds.size() << " seed(s), " << row.subdomains
                  << " subdomains, overlap " << row.overlap
                  << (row.converged ? "" : " [NOT CONVERGED]") << "\n";
        return row.converged ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e, false);
    }
}

int cmd_bench(const std::string& manifest_path, const std::vector<std::string>& models, int grid,
              const std::vector<std::string>& methods, RunConfig base, const std::string& out_path,
              bool with_timing) {
    struct Item {
        std::string name;
        SparseSymMatrix a;
    };
    std::vector<Item> items;
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) {
            std::cerr << "error: cannot open manifest " << manifest_path << "\n";
            return kExitBadFile;
        }
        nlohmann::json manifest = nlohmann::json::parse(in);
        for (const auto& entry : manifest) {
            std::string file = entry.at("file").get<std::string>();
            std::string name = entry.value("name", file);
            try {
                items.push_back({name, read_matrix_market(file)});
            } catch (const std::exception& e) {
                std::cerr << "skipping " << name << ": " << e.what() << "\n";
            }
        }
    }
    for (const auto& m : models) items.push_back({m, fd_diffusion(model_by_name(m, grid))});
    if (items.empty()) {
        std::cerr << "error: nothing to benchmark\n";
        return kExitBadFile;
    }

    std::vector<std::string> header = base.echo_lines();
    header.insert(header.begin(), "cbspart bench");
    std::vector<BenchRow> rows;
    for (const auto& item : items) {
        for (const auto& method : methods) {
            RunConfig config = base;
            config.method = partition_method_from_string(method);
            try {
                rows.push_back(run_pcg_as(item.a, item.name, config).row);
                const auto& r = rows.back();
                std::cout << r.matrix << " n=" << r.n << " method=" << r.method
                          << " s=" << r.subdomains << " overlap=" << r.overlap
                          << " iterations=" << r.mean_iterations
                          << (r.converged ? "" : " [NOT CONVERGED]") << "\n";
            } catch (const std::exception& e) {
                std::cerr << "row failed (" << item.name << ", " << method << "): " << e.what()
                          << "\n";
            }
        }
    }
    write_text(out_path, format_bench_csv(rows, header, with_timing));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

void add_partition_options(CLI::App* cmd, RunConfig& config, std::string& method) {
    cmd->add_option("--method", method, "cbs | rsb | mincut | mcut")
        ->check(CLI::IsMember({"cbs", "rsb", "mincut", "mcut", "standard"}));
    cmd->add_option("--max-size", config.max_size, "recursion threshold (0 = n/20)");
    cmd->add_option("--load-balance", config.load_balance, "balance lower bound in (0,1]");
    cmd->add_option("--candidates", config.candidates, "threshold candidates per sweep");
    cmd->add_option("--eig-tol", config.eig_tol, "LOBPCG residual tolerance");
    cmd->add_option("--eig-max-iter", config.eig_max_iter, "LOBPCG iteration cap");
    cmd->add_option("--ic-droptol", config.ic_droptol, "IC drop tolerance");
    cmd->add_option("--sigma", config.sigma, "IC shift");
    cmd->add_option("--seed", config.seed, "partitioner / eigensolver seed");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coefficient-aware graph partitioning and additive Schwarz benchmarking"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a model-problem matrix");
    InputSpec gen_input;
    std::string gen_out = "model.mtx";
    gen->add_option("--model", gen_input.model, "model problem name")
        ->required()
        ->check(CLI::IsMember(model_names()));
    gen->add_option("--grid", gen_input.grid, "interior grid points per side");
    gen->add_option("--jump-a", gen_input.jump_a, "jump value for a(x,y)");
    gen->add_option("--jump-b", gen_input.jump_b, "jump value for b(x,y)");
    gen->add_option("-o,--output", gen_out, "output .mtx path");

    // partition
    auto* part = app.add_subcommand("partition", "recursively partition a matrix");
    InputSpec part_input;
    RunConfig part_config;
    std::string part_method = "cbs";
    std::string part_out = "out";
    bool part_grid_csv = false;
    part_input.add_options(part);
    add_partition_options(part, part_config, part_method);
    part->add_option("-o,--output", part_out, "output prefix (.partition, .steps.json)");
    part->add_flag("--grid-csv", part_grid_csv, "also write <prefix>.grid.csv (model input)");

    // solve
    auto* solve = app.add_subcommand("solve", "run PCG with the AS preconditioner");
    InputSpec solve_input;
    RunConfig solve_config;
    std::string solve_method = "cbs";
    std::string solve_partition_file;
    std::string solve_out = "solve.csv";
    std::string solve_seeds = "42";
    bool solve_no_timing = false;
    solve_input.add_options(solve);
    add_partition_options(solve, solve_config, solve_method);
    solve->add_option("--partition-file", solve_partition_file,
                      "use an existing .partition file instead of partitioning");
    solve->add_option("--overlap", solve_config.overlap, "overlap layers");
    solve->add_option("--tol", solve_config.pcg_tol, "PCG relative residual tolerance");
    solve->add_option("--maxit", solve_config.pcg_max_iter, "PCG iteration cap");
    solve->add_option("--seeds", solve_seeds, "comma-separated solve seeds");
    solve->add_option("-o,--output", solve_out, "output CSV path");
    solve->add_flag("--no-timing", solve_no_timing, "zero the seconds column");

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark methods over matrices/models");
    std::string bench_manifest;
    std::vector<std::string> bench_models;
    int bench_grid = 20;
    std::vector<std::string> bench_methods = {"cbs", "mincut", "mcut", "rsb"};
    RunConfig bench_config;
    std::string bench_out = "out.bench.csv";
    std::string bench_seeds = "42,43,44,45";
    bool bench_no_timing = false;
    bench->add_option("--manifest", bench_manifest, "JSON list of {name, file} matrices");
    bench->add_option("--models", bench_models, "model problem names")
        ->check(CLI::IsMember(model_names()));
    bench->add_option("--grid", bench_grid, "grid for model problems");
    bench->add_option("--methods", bench_methods, "partitioning methods to compare");
    bench->add_option("--max-size", bench_config.max_size, "recursion threshold (0 = n/20)");
    bench->add_option("--load-balance", bench_config.load_balance, "balance lower bound");
    bench->add_option("--overlap", bench_config.overlap, "overlap layers");
    bench->add_option("--tol", bench_config.pcg_tol, "PCG relative residual tolerance");
    bench->add_option("--maxit", bench_config.pcg_max_iter, "PCG iteration cap");
    bench->add_option("--eig-tol", bench_config.eig_tol, "LOBPCG residual tolerance");
    bench->add_option("--ic-droptol", bench_config.ic_droptol, "IC drop tolerance");
    bench->add_option("--sigma", bench_config.sigma, "IC shift");
    bench->add_option("--seed", bench_config.seed, "partitioner seed");
    bench->add_option("--seeds", bench_seeds, "comma-separated solve seeds");
    bench->add_option("-o,--output", bench_out, "output CSV path");
    bench->add_flag("--no-timing", bench_no_timing, "zero the seconds column");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_input, gen_out);
        if (part->parsed()) {
            part_config.method = partition_method_from_string(part_method);
            part_config.seed = env_seed_or(part_config.seed);
            return cmd_partition(part_input, part_config, part_out, part_grid_csv);
        }
        if (solve->parsed()) {
            solve_config.method = partition_method_from_string(solve_method);
            solve_config.seed = env_seed_or(solve_config.seed);
            solve_config.solve_seeds = parse_seeds(solve_seeds);
            return cmd_solve(solve_input, solve_config, solve_partition_file, solve_out,
                             !solve_no_timing);
        }
        if (bench->parsed()) {
            bench_config.seed = env_seed_or(bench_config.seed);
            bench_config.solve_seeds = parse_seeds(bench_seeds);
            return cmd_bench(bench_manifest, bench_models, bench_grid, bench_methods,
                             bench_config, bench_out, !bench_no_timing);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
