#include "hystrd/grid.hpp"

#include "hystrd/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hystrd {

namespace {

void require_length(const Grid1D& grid, std::size_t n, const char* what) {
    if (n != grid.n_cells) {
        throw DimensionError(std::string(what) + ": expected length " + std::to_string(grid.n_cells) +
                             ", got " + std::to_string(n));
    }
}

} // namespace

Grid1D build_grid(std::size_t n_cells) {
    if (n_cells < 2) {
        throw InvalidGrid("grid needs at least 2 cells, got " + std::to_string(n_cells));
    }
    Grid1D grid;
    grid.n_cells = n_cells;
    grid.h = 1.0 / static_cast<double>(n_cells);
    grid.cell_centers.resize(n_cells);
    for (std::size_t j = 0; j < n_cells; ++j) {
        grid.cell_centers[j] = (static_cast<double>(j) + 0.5) * grid.h;
    }
    return grid;
}

std::vector<double> laplacian_apply(const Grid1D& grid, std::span<const double> field) {
    require_length(grid, field.size(), "laplacian_apply");
    const std::size_t n = grid.n_cells;
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double left = j == 0 ? field[0] : field[j - 1];
        const double right = j + 1 == n ? field[n - 1] : field[j + 1];
        out[j] = (left - 2.0 * field[j] + right) * inv_h2;
    }
    return out;
}

SpectralBasis eigenpairs(const Grid1D& grid, std::size_t K) {
    if (K < 1 || K > grid.n_cells) {
        throw InvalidArgument("eigenpairs: K must lie in [1, " + std::to_string(grid.n_cells) +
                              "], got " + std::to_string(K));
    }
    const double pi = std::numbers::pi;
    SpectralBasis basis;
    basis.eigenvalues.resize(K);
    basis.eigenvectors.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double s = std::sin(static_cast<double>(k) * pi * grid.h / 2.0);
        basis.eigenvalues[k] = 4.0 / (grid.h * grid.h) * s * s;

        auto& v = basis.eigenvectors[k];
        v.resize(grid.n_cells);
        double norm2 = 0.0;
        for (std::size_t j = 0; j < grid.n_cells; ++j) {
            v[j] = std::cos(static_cast<double>(k) * pi * grid.cell_centers[j]);
            norm2 += v[j] * v[j];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) {
            x *= inv;
        }
    }
    return basis;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw DimensionError("solve_tridiagonal: band and rhs lengths differ");
    }
    if (n == 0) {
        return {};
    }
    std::vector<double> c_star(n);
    std::vector<double> x(n);
    c_star[0] = upper[0] / diag[0];
    x[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c_star[i - 1];
        c_star[i] = upper[i] / m;
        x[i] = (rhs[i] - lower[i] * x[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= c_star[i] * x[i + 1];
    }
    return x;
}

void implicit_diffusion_solve(const Grid1D& grid, double D, double dt, std::span<double> field,
                              std::vector<double>& scratch) {
    require_length(grid, field.size(), "implicit_diffusion_step");
    if (D < 0.0 || !(dt > 0.0)) {
        throw InvalidArgument("implicit_diffusion_step: need D >= 0 and dt > 0");
    }
    const std::size_t n = grid.n_cells;
    const double r = dt * D / (grid.h * grid.h);
    if (r == 0.0) {
        return;
    }
    // Constant off-diagonals -r; diagonal 1+2r in the interior, 1+r in the two mirror cells.
    scratch.resize(n);
    auto diag_at = [&](std::size_t j) { return (j == 0 || j + 1 == n) ? 1.0 + r : 1.0 + 2.0 * r; };

    double m = diag_at(0);
    scratch[0] = -r / m;
    field[0] /= m;
    for (std::size_t j = 1; j < n; ++j) {
        m = diag_at(j) + r * scratch[j - 1];
        scratch[j] = -r / m;
        field[j] = (field[j] + r * field[j - 1]) / m;
    }
    for (std::size_t j = n - 1; j-- > 0;) {
        field[j] -= scratch[j] * field[j + 1];
    }
}

std::vector<double> implicit_diffusion_step(const Grid1D& grid, double D, double dt,
                                            std::span<const double> rhs) {
    std::vector<double> v(rhs.begin(), rhs.end());
    std::vector<double> scratch;
    implicit_diffusion_solve(grid, D, dt, v, scratch);
    return v;
}

double mass_integral(const Grid1D& grid, std::span<const double> field) {
    require_length(grid, field.size(), "mass_integral");
    double sum = 0.0;
    for (double x : field) {
        sum += x;
    }
    return grid.h * sum;
}

double l2_norm(const Grid1D& grid, std::span<const double> field) {
    require_length(grid, field.size(), "l2_norm");
    double sum = 0.0;
    for (double x : field) {
        sum += x * x;
    }
    return std::sqrt(grid.h * sum);
}

double mode_coefficient(const SpectralBasis& basis, std::span<const double> field, std::size_t k) {
    if (k >= basis.size()) {
        throw IndexError("mode_coefficient: index " + std::to_string(k) + " outside basis of size " +
                         std::to_string(basis.size()));
    }
    const auto& v = basis.eigenvectors[k];
    if (v.size() != field.size()) {
        throw DimensionError("mode_coefficient: field length does not match basis");
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        dot += v[j] * field[j];
    }
    return dot;
}

std::vector<double> synthesize(const SpectralBasis& basis,
                               std::span<const std::pair<std::size_t, double>> modes, double scale) {
    if (basis.size() == 0) {
        throw InvalidArgument("synthesize: empty basis");
    }
    std::vector<double> out(basis.eigenvectors[0].size(), 0.0);
    for (const auto& [k, coeff] : modes) {
        if (k >= basis.size()) {
            throw IndexError("synthesize: mode " + std::to_string(k) + " outside basis");
        }
        const auto& v = basis.eigenvectors[k];
        for (std::size_t j = 0; j < out.size(); ++j) {
            out[j] += coeff * scale * v[j];
        }
    }
    return out;
}

} // namespace hystrd
