#include "examples.hpp"

#include <cmath>

namespace bdrep {

MatrixSystem spherical_system(const Alphabet& A, double h) {
    MatrixSystem S(A, std::vector<int>(static_cast<std::size_t>(A.size()), 1));
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a)
            if (b != A.inverse(a)) S.map(b, a)(0, 0) = h;
    return S;
}

SystemRef spherical_inner(const Alphabet& A) {
    InnerSystem I;
    I.system = spherical_system(A, 1.0 / std::sqrt(static_cast<double>(A.size() - 1)));
    I.forms = identity_forms(I.system);
    return std::make_shared<const InnerSystem>(std::move(I));
}

MatrixSystem random_system(const Alphabet& A, int max_dim, std::mt19937_64& rng) {
    std::vector<int> dims;
    for (Letter a = 0; a < A.size(); ++a) dims.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_dim)));
    MatrixSystem S(A, dims);
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a)
            if (b != A.inverse(a)) S.map(b, a) = random_matrix(rng, S.dim(b), S.dim(a));
    return S;
}

SystemRef normalized_inner(const MatrixSystem& S) {
    NormalizeResult r = normalize(S);
    const double c = static_cast<double>(r.system.total_dim()) / total_trace(r.forms);
    for (auto& m : r.forms) m *= c;
    return std::make_shared<const InnerSystem>(InnerSystem{std::move(r.system), std::move(r.forms)});
}

InnerSystem direct_sum(const InnerSystem& x, const InnerSystem& y) {
    const Alphabet& A = x.system.alphabet();
    std::vector<int> dims;
    for (Letter a = 0; a < A.size(); ++a) dims.push_back(x.system.dim(a) + y.system.dim(a));
    InnerSystem out{MatrixSystem(A, dims), {}};
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a) {
            Mat& M = out.system.map(b, a);
            M.topLeftCorner(x.system.dim(b), x.system.dim(a)) = x.system.map(b, a);
            M.bottomRightCorner(y.system.dim(b), y.system.dim(a)) = y.system.map(b, a);
        }
    for (Letter a = 0; a < A.size(); ++a) {
        Mat B = Mat::Zero(dims[static_cast<std::size_t>(a)], dims[static_cast<std::size_t>(a)]);
        B.topLeftCorner(x.system.dim(a), x.system.dim(a)) = x.forms[static_cast<std::size_t>(a)];
        B.bottomRightCorner(y.system.dim(a), y.system.dim(a)) = y.forms[static_cast<std::size_t>(a)];
        out.forms.push_back(B);
    }
    return out;
}

InnerSystem conjugate_randomly(const InnerSystem& S, std::mt19937_64& rng) {
    const Alphabet& A = S.system.alphabet();
    std::vector<Mat> U;
    for (Letter a = 0; a < A.size(); ++a) U.push_back(random_unitary(rng, S.system.dim(a)));
    InnerSystem out = S;
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a)
            out.system.map(b, a) = U[static_cast<std::size_t>(b)] * S.system.map(b, a) * U[static_cast<std::size_t>(a)].adjoint();
    for (Letter a = 0; a < A.size(); ++a)
        out.forms[static_cast<std::size_t>(a)] =
            U[static_cast<std::size_t>(a)] * S.forms[static_cast<std::size_t>(a)] * U[static_cast<std::size_t>(a)].adjoint();
    return out;
}

InnerSystem two_component_system(std::mt19937_64& rng) {
    const Alphabet A = Alphabet::standard(2);
    InnerSystem sph = *spherical_inner(A);
    InnerSystem lazy{MatrixSystem(A, std::vector<int>(4, 1)), {}};
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a)
            if (b != A.inverse(a)) lazy.system.map(b, a)(0, 0) = b == a ? std::sqrt(0.5) : 0.5;
    lazy.forms = identity_forms(lazy.system);
    return conjugate_randomly(direct_sum(sph, lazy), rng);
}

cplx seed_trace(const SystemRef& sys, const Word& x) {
    const Alphabet& A = sys->system.alphabet();
    cplx t = 0.0;
    for (Letter a = 0; a < A.size(); ++a) {
        const Mat R = inv_sqrtm_pd(sys->forms[static_cast<std::size_t>(a)]);
        for (int j = 0; j < R.cols(); ++j) {
            const MultVector e = letter_vector(sys, {{a, R.col(j)}});
            t += coefficient_fast(x, e, e);
        }
    }
    return t;
}

}  // namespace bdrep
