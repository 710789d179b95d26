#pragma once

// Data-parallel inner loops. Each kernel has a straightforward serial
// version, kept as the reference the OpenMP version is tested and
// benchmarked against. The library itself calls the omp:: versions.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lsd/matrix.hpp"
#include "lsd/stieltjes.hpp"

namespace lsd::kernels {

/// Fills out[row] for every row; rows must be independent.
using RowFill = std::function<void(std::size_t row, std::span<double> out)>;

namespace serial {

/// 2 pi f at lambda_j = 2 pi (j + offset) / out.size().
void filter_profile(std::span<const double> coeffs, double offset, std::span<double> out);

/// Naive (1/n) X X^T, every entry computed independently.
Matrix covariance(const Matrix& x);

void fill_rows(Matrix& m, const RowFill& fill);

/// Solves at each x in order, warm starting from the previous solution.
void solve_sweep(const StieltjesOperator& op, std::span<const double> xs,
                 const SolverConfig& cfg, std::span<Solution> out);

void map_indices(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace serial

namespace omp {

void filter_profile(std::span<const double> coeffs, double offset, std::span<double> out);

/// Upper triangle by rows with dynamic scheduling, then mirrored.
Matrix covariance(const Matrix& x);

void fill_rows(Matrix& m, const RowFill& fill);

/// Splits xs into one contiguous chunk per thread; warm starts are chained
/// inside a chunk only. The first exception (by x order) is rethrown.
void solve_sweep(const StieltjesOperator& op, std::span<const double> xs,
                 const SolverConfig& cfg, std::span<Solution> out);

void map_indices(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace omp

}  // namespace lsd::kernels
