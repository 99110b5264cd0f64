#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace bdrep {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Tolerance ladder.
inline constexpr double kValidateTol = 1e-12;
inline constexpr double kResidualTol = 1e-9;
inline constexpr double kSubspaceTol = 1e-8;

/// Orthonormal basis for the column span of M (numerical rank at `tol`
/// relative to the largest singular value).
Mat orthonormal_basis(const Mat& M, double tol = 1e-10);

/// Orthonormal basis of the null space of M.
Mat null_space(const Mat& M, double tol = 1e-10);

/// Orthonormal basis of the orthogonal complement of span(Q) in C^n,
/// Q assumed orthonormal.
Mat orthogonal_complement(const Mat& Q, int n);

Mat hermitian_part(const Mat& M);
double min_eigenvalue(const Mat& hermitian);

/// Positive square root and inverse square root of a Hermitian PD matrix.
Mat sqrtm_psd(const Mat& hermitian);
Mat inv_sqrtm_pd(const Mat& hermitian);

double max_abs(const Mat& M);

Mat random_matrix(std::mt19937_64& rng, int rows, int cols);
Mat random_unitary(std::mt19937_64& rng, int n);
Vec random_vector(std::mt19937_64& rng, int n);

}  // namespace bdrep
