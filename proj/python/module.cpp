// Python bindings for the partitioning toolkit: matrix ingestion, CBS
// metrics, spectral partitioning and the PCG-AS solve pipeline.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cbspart/cbs_metrics.hpp"
#include "cbspart/laplacian.hpp"
#include "cbspart/lobpcg.hpp"
#include "cbspart/matrix_market.hpp"
#include "cbspart/model_problems.hpp"
#include "cbspart/partitioner.hpp"
#include "cbspart/pipeline.hpp"
#include "cbspart/schwarz.hpp"
#include "cbspart/sparse_matrix.hpp"

namespace py = pybind11;
using namespace cbspart;

namespace {

SparseSymMatrix matrix_from_coo(int n, const std::vector<int>& rows,
                                const std::vector<int>& cols,
                                const std::vector<double>& values) {
    if (rows.size() != cols.size() || rows.size() != values.size())
        throw std::invalid_argument("rows, cols and values must have equal length");
    std::vector<Triplet> t(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) t[k] = {rows[k], cols[k], values[k]};
    return SparseSymMatrix::from_triplets(n, t);
}

py::tuple matrix_to_coo(const SparseSymMatrix& a) {
    std::vector<int> rows, cols;
    std::vector<double> values;
    for (int i = 0; i < a.n(); ++i) {
        auto c = a.row_cols(i);
        auto v = a.row_values(i);
        for (std::size_t p = 0; p < c.size(); ++p) {
            rows.push_back(i);
            cols.push_back(c[p]);
            values.push_back(v[p]);
        }
    }
    return py::make_tuple(rows, cols, values);
}

DiffusionSpec spec_from_args(const std::string& model, int grid, double jump_a, double jump_b) {
    DiffusionSpec spec = model_by_name(model, grid);
    if (model != "constant") {
        if (jump_a > 0) {
            spec.jump_a = jump_a;
            if (spec.jump_b != 1.0) spec.jump_b = jump_a;
        }
        if (jump_b > 0) spec.jump_b = jump_b;
    }
    return spec;
}

RunConfig run_config_from_kwargs(const std::string& method, int max_size, double load_balance,
                                 int overlap, double pcg_tol, int pcg_max_iter, double eig_tol,
                                 double ic_droptol, double sigma, std::uint64_t seed,
                                 const std::vector<std::uint64_t>& solve_seeds) {
    RunConfig config;
    config.method = partition_method_from_string(method);
    config.max_size = max_size;
    config.load_balance = load_balance;
    config.overlap = overlap;
    config.pcg_tol = pcg_tol;
    config.pcg_max_iter = pcg_max_iter;
    config.eig_tol = eig_tol;
    config.ic_droptol = ic_droptol;
    config.sigma = sigma;
    config.seed = seed;
    if (!solve_seeds.empty()) config.solve_seeds = solve_seeds;
    return config;
}

}  // namespace

PYBIND11_MODULE(_cbspart, m) {
    m.doc() = "Coefficient-aware spectral graph partitioning for additive Schwarz "
              "preconditioning of sparse SPD systems.";

    py::register_exception<NotSpdError>(m, "NotSpdError", PyExc_ValueError);

    py::class_<SparseSymMatrix>(m, "SparseSymMatrix")
        .def_static("from_coo", &matrix_from_coo, py::arg("n"), py::arg("rows"), py::arg("cols"),
                    py::arg("values"),
                    "Build from symmetric COO triplets (both triangles or one; "
                    "duplicates are summed, asymmetry beyond 1e-12 is rejected).")
        .def_property_readonly("n", &SparseSymMatrix::n)
        .def_property_readonly("nnz", &SparseSymMatrix::nnz)
        .def("coeff", &SparseSymMatrix::coeff, py::arg("i"), py::arg("j"))
        .def("diag", &SparseSymMatrix::diag, py::arg("i"))
        .def("to_coo", &matrix_to_coo, "Returns (rows, cols, values) of all stored entries.")
        .def("to_dense", &SparseSymMatrix::to_dense)
        .def("matvec",
             [](const SparseSymMatrix& a, const Eigen::VectorXd& x) { return a.matvec(x); })
        .def("__repr__", [](const SparseSymMatrix& a) {
            return "<SparseSymMatrix n=" + std::to_string(a.n()) +
                   " nnz=" + std::to_string(a.nnz()) + ">";
        });

    m.def("read_matrix_market",
          [](const std::string& path) { return read_matrix_market(path); }, py::arg("path"));
    m.def("write_matrix_market",
          [](const std::string& path, const SparseSymMatrix& a) {
              write_matrix_market(path, a);
          },
          py::arg("path"), py::arg("matrix"));

    m.def("fd_diffusion",
          [](const std::string& model, int grid, double jump_a, double jump_b) {
              return fd_diffusion(spec_from_args(model, grid, jump_a, jump_b));
          },
          py::arg("model"), py::arg("grid") = 20, py::arg("jump_a") = -1.0,
          py::arg("jump_b") = -1.0,
          "2D diffusion model problem; model is one of square-jump-ab, square-jump-a, "
          "checker-ab, checker-a, constant.");

    m.def("diag_scale", [](const SparseSymMatrix& a) { return diag_scale(a); }, py::arg("matrix"),
          "Returns (FAF, diag(F)) with F = diag(1/sqrt(a_ii)).");
    m.def("submatrix", &submatrix, py::arg("matrix"), py::arg("subset"));
    m.def("symmetric_permute", &symmetric_permute, py::arg("matrix"), py::arg("perm"));
    m.def("connected_components",
          [](const SparseSymMatrix& a, const VertexSet& subset) {
              return connected_components(Graph::from_matrix_pattern(a), subset);
          },
          py::arg("matrix"), py::arg("subset"));

    m.def("cbs_exact",
          [](const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
             int dense_limit) { return cbs_exact(a, i_set, j_set, dense_limit); },
          py::arg("matrix"), py::arg("i_set"), py::arg("j_set"), py::arg("dense_limit") = 2000);
    m.def("gamma_tilde",
          [](const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set) {
              return gamma_tilde(cbs_weights(a), i_set, j_set);
          },
          py::arg("matrix"), py::arg("i_set"), py::arg("j_set"));
    m.def("gamma_bar",
          [](const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set) {
              return gamma_bar(cbs_weights(a), i_set, j_set);
          },
          py::arg("matrix"), py::arg("i_set"), py::arg("j_set"));
    m.def("gamma_hat",
          [](const SparseSymMatrix& a, const VertexSet& i_set, const VertexSet& j_set,
             bool include_diagonal) { return gamma_hat(a, i_set, j_set, include_diagonal); },
          py::arg("matrix"), py::arg("i_set"), py::arg("j_set"),
          py::arg("include_diagonal") = true);
    m.def("cond_bound", &cond_bound, py::arg("gamma"));

    m.def("lobpcg_smallest",
          [](const SparseSymMatrix& a, const std::string& kind, double tol, int max_iter,
             double sigma, double ic_droptol, std::uint64_t seed) {
              GraphLaplacians lap = build_laplacians(cbs_weights(a));
              EigOptions opt;
              opt.tol = tol;
              opt.max_iter = max_iter;
              opt.sigma = sigma;
              opt.ic_droptol = ic_droptol;
              opt.seed = seed;
              EigProblemKind k;
              if (kind == "cbs_ratio") k = EigProblemKind::CbsRatio;
              else if (kind == "fiedler") k = EigProblemKind::Fiedler;
              else if (kind == "mincut") k = EigProblemKind::MinCut;
              else if (kind == "mcut") k = EigProblemKind::MCut;
              else throw std::invalid_argument("unknown eigenproblem kind: " + kind);
              EigResult r = lobpcg_smallest(k, lap, opt);
              py::dict d;
              d["value"] = r.value;
              d["vector"] = r.vector;
              d["residual_norm"] = r.residual_norm;
              d["iterations"] = r.iterations;
              d["converged"] = r.converged;
              return d;
          },
          py::arg("matrix"), py::arg("kind"), py::arg("tol") = 1e-4, py::arg("max_iter") = 500,
          py::arg("sigma") = 0.1, py::arg("ic_droptol") = 1e-3, py::arg("seed") = 42,
          "Smallest eigenpair of the spectral problem derived from the CBS-weighted "
          "adjacency graph of the matrix (kind: cbs_ratio | fiedler | mincut | mcut).");

    m.def("partition",
          [](const SparseSymMatrix& a, const std::string& method, int max_size,
             double load_balance, int candidates, double eig_tol, std::uint64_t seed) {
              PartitionConfig pc;
              pc.method = partition_method_from_string(method);
              pc.max_size = max_size > 0 ? max_size : std::max(1, a.n() / 20);
              pc.load_balance = load_balance;
              pc.candidates = candidates;
              pc.eig.tol = eig_tol;
              pc.eig.seed = seed;
              pc.seed = seed;
              PartitionResult r = recursive_partition(a, pc);
              py::dict d;
              d["subdomains"] = r.subdomains;
              d["top_level_disconnected"] = r.top_level_disconnected;
              d["indivisible"] = r.indivisible;
              py::list steps;
              for (const auto& st : r.steps) {
                  py::dict s;
                  s["set_size"] = st.set_size;
                  s["fallback"] = st.fallback;
                  s["degenerate"] = st.degenerate;
                  s["objective"] = st.objective;
                  s["objective_kind"] = st.objective_kind;
                  s["component_sizes"] = st.component_sizes;
                  steps.append(std::move(s));
              }
              d["steps"] = steps;
              return d;
          },
          py::arg("matrix"), py::arg("method") = "cbs", py::arg("max_size") = 0,
          py::arg("load_balance") = 0.8, py::arg("candidates") = 32, py::arg("eig_tol") = 1e-4,
          py::arg("seed") = 42,
          "Recursive coefficient-aware partitioning; returns subdomains and a step log.");

    m.def("expand_overlap",
          [](const SparseSymMatrix& a, const std::vector<VertexSet>& subdomains, int layers) {
              return expand_overlap(subdomains, Graph::from_matrix_pattern(a), layers);
          },
          py::arg("matrix"), py::arg("subdomains"), py::arg("layers"));

    m.def("solve",
          [](const SparseSymMatrix& a, const std::string& method, int max_size,
             double load_balance, int overlap, double pcg_tol, int pcg_max_iter, double eig_tol,
             double ic_droptol, double sigma, std::uint64_t seed,
             const std::vector<std::uint64_t>& solve_seeds) {
              RunConfig config =
                  run_config_from_kwargs(method, max_size, load_balance, overlap, pcg_tol,
                                         pcg_max_iter, eig_tol, ic_droptol, sigma, seed,
                                         solve_seeds);
              PipelineResult r = run_pcg_as(a, "matrix", config);
              py::dict d;
              d["method"] = r.row.method;
              d["n"] = r.row.n;
              d["subdomains"] = r.row.subdomains;
              d["overlap"] = r.row.overlap;
              d["mean_iterations"] = r.row.mean_iterations;
              d["per_seed_iterations"] = r.row.per_seed_iterations;
              d["converged"] = r.row.converged;
              d["partition"] = r.partition.subdomains;
              return d;
          },
          py::arg("matrix"), py::arg("method") = "cbs", py::arg("max_size") = 0,
          py::arg("load_balance") = 0.8, py::arg("overlap") = 0, py::arg("pcg_tol") = 1e-8,
          py::arg("pcg_max_iter") = 5000, py::arg("eig_tol") = 1e-4,
          py::arg("ic_droptol") = 1e-3, py::arg("sigma") = 0.1, py::arg("seed") = 42,
          py::arg("solve_seeds") = std::vector<std::uint64_t>{42, 43, 44, 45},
          "Diagonal-scale, partition, build the AS preconditioner and run PCG per seed "
          "with random unit-norm right-hand sides.");
}
