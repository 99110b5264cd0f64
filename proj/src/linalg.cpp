#include "linalg.hpp"

#include <algorithm>
#include <cmath>

namespace bdrep {

Mat orthonormal_basis(const Mat& M, double tol) {
    if (M.cols() == 0 || M.rows() == 0) return Mat(M.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    const double top = s.size() > 0 ? s(0) : 0.0;
    if (top <= 0.0) return Mat(M.rows(), 0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > tol * top) ++r;
    return svd.matrixU().leftCols(r);
}

Mat null_space(const Mat& M, double tol) {
    const auto n = M.cols();
    if (n == 0) return Mat(0, 0);
    if (M.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double top = s.size() > 0 ? s(0) : 0.0;
    Eigen::Index r = 0;
    if (top > 0.0)
        while (r < s.size() && s(r) > tol * top) ++r;
    return svd.matrixV().rightCols(n - r);
}

Mat orthogonal_complement(const Mat& Q, int n) {
    if (Q.cols() == 0) return Mat::Identity(n, n);
    Mat P = Mat::Identity(n, n) - Q * Q.adjoint();
    return orthonormal_basis(P, 1e-8);
}

Mat hermitian_part(const Mat& M) { return (M + M.adjoint()) * 0.5; }

double min_eigenvalue(const Mat& h) {
    if (h.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Mat sqrtm_psd(const Mat& h) {
    if (h.rows() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat inv_sqrtm_pd(const Mat& h) {
    if (h.rows() == 0) return h;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(h));
    Eigen::VectorXd ev = es.eigenvalues().cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

double max_abs(const Mat& M) {
    if (M.size() == 0) return 0.0;
    return M.cwiseAbs().maxCoeff();
}

Mat random_matrix(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> nd;
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) M(i, j) = cplx(nd(rng), nd(rng));
    return M;
}

Mat random_unitary(std::mt19937_64& rng, int n) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(rng, n, n));
    return qr.householderQ() * Mat::Identity(n, n);
}

Vec random_vector(std::mt19937_64& rng, int n) { return random_matrix(rng, n, 1).col(0); }

}  // namespace bdrep
