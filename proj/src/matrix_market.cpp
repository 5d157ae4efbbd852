#include "cbspart/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cbspart {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

SparseSymMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return read_matrix_market(in, path);
}

SparseSymMatrix read_matrix_market(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0)
        throw std::runtime_error(name + ": missing %%MatrixMarket header");
    std::istringstream hs(lower(header.substr(14)));
    std::string object, format, field, symmetry;
    hs >> object >> format >> field >> symmetry;
    if (object != "matrix" || format != "coordinate")
        throw std::runtime_error(name + ": only coordinate matrices are supported");
    if (field != "real" && field != "integer")
        throw std::runtime_error(name + ": only real/integer values are supported");
    if (symmetry != "symmetric")
        throw std::runtime_error(name + ": header must declare symmetric storage");

    std::string line;
    long long rows = 0, cols = 0, entries = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> rows >> cols >> entries))
            throw std::runtime_error(name + ": malformed size line");
        break;
    }
    if (rows <= 0 || rows != cols)
        throw std::runtime_error(name + ": matrix must be square and nonempty");

    int n = static_cast<int>(rows);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(entries) * 2);
    std::set<std::pair<int, int>> seen;
    long long read = 0;
    while (read < entries && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        long long i1 = 0, j1 = 0;
        double v = 0.0;
        if (!(ls >> i1 >> j1 >> v))
            throw std::runtime_error(name + ": malformed entry line: " + line);
        if (i1 < 1 || i1 > n || j1 < 1 || j1 > n)
            throw std::runtime_error(name + ": entry index out of range");
        int i = static_cast<int>(i1) - 1, j = static_cast<int>(j1) - 1;
        if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
            throw std::runtime_error(name + ": duplicate entry at (" + std::to_string(i1) +
                                     "," + std::to_string(j1) + ")");
        t.push_back({i, j, v});
        if (i != j) t.push_back({j, i, v});
        ++read;
    }
    if (read != entries) throw std::runtime_error(name + ": truncated entry list");

    SparseSymMatrix a = SparseSymMatrix::from_triplets(n, t);
    for (int i = 0; i < n; ++i) {
        if (!a.has_diag_entry(i))
            throw NotSpdError(name + ": missing diagonal entry at row " +
                              std::to_string(i + 1));
        if (a.diag(i) <= 0.0)
            throw NotSpdError(name + ": nonpositive diagonal at row " +
                                     std::to_string(i + 1) + " (matrix not SPD)");
    }
    return a;
}

void write_matrix_market(const std::string& path, const SparseSymMatrix& a,
                         const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    for (const auto& c : comments) out << "% " << c << "\n";
    std::int64_t lower_nnz = 0;
    for (int i = 0; i < a.n(); ++i)
        for (int j : a.row_cols(i))
            if (j <= i) ++lower_nnz;
    out << a.n() << " " << a.n() << " " << lower_nnz << "\n";
    out.precision(17);
    for (int i = 0; i < a.n(); ++i) {
        auto cols = a.row_cols(i);
        auto vals = a.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p)
            if (cols[p] <= i) out << i + 1 << " " << cols[p] + 1 << " " << vals[p] << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace cbspart
