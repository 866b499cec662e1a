#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hystrd {

/// Uniform cell-centred grid on (0,1). Cell j has centre (j + 1/2) h.
struct Grid1D {
    std::size_t n_cells = 0;
    double h = 0.0;
    std::vector<double> cell_centers;
};

/// Discrete Neumann eigenpairs of the 3-point Laplacian, ordered by eigenvalue.
/// eigenvectors[k] has unit Euclidean norm and entries proportional to cos(k pi x_j).
struct SpectralBasis {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;

    std::size_t size() const noexcept { return eigenvalues.size(); }
};

Grid1D build_grid(std::size_t n_cells);

/// Applies the discrete Laplacian with mirror-ghost Neumann closure.
std::vector<double> laplacian_apply(const Grid1D& grid, std::span<const double> field);

/// Closed-form eigenpairs: lambda_k = (4/h^2) sin^2(k pi h / 2), k = 0..K-1.
SpectralBasis eigenpairs(const Grid1D& grid, std::size_t K);

/// Solves (I - dt D Lap_h) v = rhs. Sum of entries is preserved.
std::vector<double> implicit_diffusion_step(const Grid1D& grid, double D, double dt,
                                            std::span<const double> rhs);

/// In-place variant used by the time steppers; `scratch` is resized as needed.
void implicit_diffusion_solve(const Grid1D& grid, double D, double dt, std::span<double> field,
                              std::vector<double>& scratch);

/// Midpoint quadrature h * sum(field).
double mass_integral(const Grid1D& grid, std::span<const double> field);

/// Unweighted dot product of `field` with unit eigenvector k (no h factor).
double mode_coefficient(const SpectralBasis& basis, std::span<const double> field, std::size_t k);

/// Discrete L^2(0,1) norm sqrt(h * sum f_j^2).
double l2_norm(const Grid1D& grid, std::span<const double> field);

/// Synthesises sum_k coeff_k * scale * eigenvector_k for (index, coefficient) pairs.
/// With scale = 1/sqrt(h) the eigenvectors become L^2(0,1)-normalised, so the constant
/// mode with coefficient N integrates to N.
std::vector<double> synthesize(const SpectralBasis& basis,
                               std::span<const std::pair<std::size_t, double>> modes,
                               double scale = 1.0);

/// Tridiagonal Thomas elimination. `lower[0]` and `upper[n-1]` are ignored.
/// Requires a non-singular system that needs no pivoting (e.g. diagonally dominant).
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

} // namespace hystrd
