#include "system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bdrep {

MatrixSystem::MatrixSystem(Alphabet alphabet, std::vector<int> dims)
    : alphabet_(std::move(alphabet)), dims_(std::move(dims)) {
    if (static_cast<int>(dims_.size()) != alphabet_.size())
        throw ValidationError("matrix system: dims table size differs from the alphabet");
    for (int d : dims_)
        if (d < 0) throw ValidationError("matrix system: negative dimension");
    const auto n = static_cast<std::size_t>(alphabet_.size());
    maps_.resize(n * n);
    for (Letter b = 0; b < alphabet_.size(); ++b)
        for (Letter a = 0; a < alphabet_.size(); ++a) maps_[index(b, a)] = Mat::Zero(dim(b), dim(a));
}

int MatrixSystem::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

int MatrixSystem::max_dim() const { return dims_.empty() ? 0 : *std::max_element(dims_.begin(), dims_.end()); }

MatrixSystem MatrixSystem::scaled(double c) const {
    MatrixSystem out = *this;
    for (auto& m : out.maps_) m *= c;
    return out;
}

int Subsystem::total_dim() const {
    int n = 0;
    for (const auto& q : bases) n += static_cast<int>(q.cols());
    return n;
}

std::vector<std::string> validate(const MatrixSystem& S) {
    std::vector<std::string> out;
    const auto& A = S.alphabet();
    for (Letter a = 0; a < A.size(); ++a)
        if (S.dim(a) <= 0) out.push_back("letter '" + A.name(a) + "' has empty dimension");
    for (Letter b = 0; b < A.size(); ++b) {
        for (Letter a = 0; a < A.size(); ++a) {
            const Mat& H = S.map(b, a);
            const std::string pair = "(" + A.name(b) + "," + A.name(a) + ")";
            if (H.rows() != S.dim(b) || H.cols() != S.dim(a)) {
                out.push_back("map " + pair + " has shape " + std::to_string(H.rows()) + "x" +
                              std::to_string(H.cols()) + ", expected " + std::to_string(S.dim(b)) + "x" +
                              std::to_string(S.dim(a)));
                continue;
            }
            if (!H.allFinite()) out.push_back("map " + pair + " has non-finite entries");
            if (b == A.inverse(a) && max_abs(H) > kValidateTol)
                out.push_back("map " + pair + " must vanish since " + A.name(b) + A.name(a) + " = e");
        }
    }
    return out;
}

std::vector<std::string> validate_forms(const MatrixSystem& S, const FormTuple& B) {
    std::vector<std::string> out;
    const auto& A = S.alphabet();
    if (static_cast<int>(B.size()) != A.size()) {
        out.push_back("form tuple has " + std::to_string(B.size()) + " entries, expected " + std::to_string(A.size()));
        return out;
    }
    for (Letter a = 0; a < A.size(); ++a) {
        const Mat& F = B[static_cast<std::size_t>(a)];
        if (F.rows() != S.dim(a) || F.cols() != S.dim(a)) {
            out.push_back("form '" + A.name(a) + "' has wrong shape");
            continue;
        }
        const double scale = std::max(1.0, max_abs(F));
        if (max_abs(F - F.adjoint()) > kValidateTol * scale) out.push_back("form '" + A.name(a) + "' is not Hermitian");
        if (min_eigenvalue(F) < -1e-10 * scale) out.push_back("form '" + A.name(a) + "' is not positive semidefinite");
    }
    return out;
}

FormTuple transfer_apply(const MatrixSystem& S, const FormTuple& B) {
    const int n = S.letters();
    if (static_cast<int>(B.size()) != n) throw ValidationError("transfer_apply: form tuple size mismatch");
    for (Letter b = 0; b < n; ++b)
        if (B[static_cast<std::size_t>(b)].rows() != S.dim(b) || B[static_cast<std::size_t>(b)].cols() != S.dim(b))
            throw ValidationError("transfer_apply: form shape mismatch at '" + S.alphabet().name(b) + "'");
    FormTuple out(static_cast<std::size_t>(n));
    for (Letter a = 0; a < n; ++a) {
        Mat acc = Mat::Zero(S.dim(a), S.dim(a));
        for (Letter b = 0; b < n; ++b) {
            const Mat& H = S.map(b, a);
            if (H.size() == 0) continue;
            acc.noalias() += H.adjoint() * B[static_cast<std::size_t>(b)] * H;
        }
        out[static_cast<std::size_t>(a)] = acc;
    }
    return out;
}

double compatibility_residual(const MatrixSystem& S, const FormTuple& B) {
    const FormTuple T = transfer_apply(S, B);
    double r = 0.0;
    for (std::size_t a = 0; a < T.size(); ++a) r = std::max(r, max_abs(T[a] - B[a]));
    return r;
}

FormTuple identity_forms(const MatrixSystem& S) {
    FormTuple out;
    for (Letter a = 0; a < S.letters(); ++a) out.push_back(Mat::Identity(S.dim(a), S.dim(a)));
    return out;
}

double total_trace(const FormTuple& B) {
    double t = 0.0;
    for (const auto& m : B) t += m.trace().real();
    return t;
}

namespace {

double frob_dot(const FormTuple& X, const FormTuple& Y) {
    double s = 0.0;
    for (std::size_t a = 0; a < X.size(); ++a) s += (X[a].array() * Y[a].conjugate().array()).sum().real();
    return s;
}

double frob_norm(const FormTuple& X) { return std::sqrt(std::max(0.0, frob_dot(X, X))); }

void scale_forms(FormTuple& X, double c) {
    for (auto& m : X) m *= c;
}

void hermitize(FormTuple& X) {
    for (auto& m : X) m = hermitian_part(m);
}

// Eigenvalues of the transfer operator as a linear map on tuples of
// matrices (the complexification of its action on Hermitian tuples).
Eigen::VectorXcd transfer_spectrum(const MatrixSystem& S) {
    std::vector<int> offset(static_cast<std::size_t>(S.letters()) + 1, 0);
    for (Letter a = 0; a < S.letters(); ++a)
        offset[static_cast<std::size_t>(a) + 1] = offset[static_cast<std::size_t>(a)] + S.dim(a) * S.dim(a);
    const int N = offset.back();
    Mat K = Mat::Zero(N, N);
    FormTuple E;
    for (Letter a = 0; a < S.letters(); ++a) E.push_back(Mat::Zero(S.dim(a), S.dim(a)));
    for (Letter b = 0; b < S.letters(); ++b) {
        const int d = S.dim(b);
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < d; ++i) {
                E[static_cast<std::size_t>(b)].setZero();
                E[static_cast<std::size_t>(b)](i, j) = 1.0;
                const FormTuple T = transfer_apply(S, E);
                const int col = offset[static_cast<std::size_t>(b)] + i + j * d;
                for (Letter c = 0; c < S.letters(); ++c) {
                    const int dc = S.dim(c);
                    for (int q = 0; q < dc; ++q)
                        for (int p = 0; p < dc; ++p)
                            K(offset[static_cast<std::size_t>(c)] + p + q * dc, col) = T[static_cast<std::size_t>(c)](p, q);
                }
            }
        }
        E[static_cast<std::size_t>(b)].setZero();
    }
    if (N == 0) return Eigen::VectorXcd(0);
    Eigen::ComplexEigenSolver<Mat> es(K, false);
    return es.eigenvalues();
}

}  // namespace

NormalizeResult normalize(const MatrixSystem& S, const NormalizeOptions& opts) {
    if (auto diag = validate(S); !diag.empty()) throw ValidationError("normalize: invalid system: " + diag.front());
    FormTuple X = identity_forms(S);
    scale_forms(X, 1.0 / total_trace(X));

    double rho = 0.0;
    double res = 0.0;
    double best_res = std::numeric_limits<double>::infinity();
    int since_best = 0;
    int it = 0;
    bool converged = false;
    for (it = 1; it <= opts.max_iterations; ++it) {
        FormTuple Y = transfer_apply(S, X);
        const double xx = frob_dot(X, X);
        const double ny = frob_norm(Y);
        if (ny <= 1e-300 || total_trace(Y) <= 1e-14 * total_trace(X)) {
            rho = 0.0;
            break;
        }
        rho = frob_dot(Y, X) / xx;
        FormTuple D = Y;
        for (std::size_t a = 0; a < D.size(); ++a) D[a] -= rho * X[a];
        res = frob_norm(D) / std::sqrt(xx);
        if (rho > 0.0 && res <= 1e-14 * rho) {
            converged = true;
            break;
        }
        if (res < best_res * 0.999) {
            best_res = res;
            since_best = 0;
        } else if (++since_best > 2000 && rho > 0.0 && res <= 1e-3 * opts.tolerance * rho) {
            converged = true;  // stalled at round-off
            break;
        }
        // shifted step: Y + rho X keeps positivity and damps peripheral
        // eigenvalues other than rho
        for (std::size_t a = 0; a < X.size(); ++a) X[a] = Y[a] + std::max(rho, 0.0) * X[a];
        hermitize(X);
        const double tr = total_trace(X);
        if (!(tr > 0.0)) {
            rho = 0.0;
            break;
        }
        scale_forms(X, 1.0 / tr);
    }
    if (!(rho > 1e-12)) throw DegenerateSystem("degenerate system: transfer operator has spectral radius ~0");

    NormalizeResult out;
    out.rho = rho;
    out.iterations = it;
    out.system = S.scaled(1.0 / std::sqrt(rho));
    hermitize(X);
    scale_forms(X, 1.0 / total_trace(X));
    out.forms = X;
    out.residual = compatibility_residual(out.system, out.forms);
    if (!converged || out.residual > opts.tolerance) {
        std::ostringstream msg;
        msg << "normalization failed: residual " << out.residual << " after " << it << " iterations";
        throw NormalizationFailed(msg.str(), out.residual);
    }
    int N = 0;
    for (int d : S.dims()) N += d * d;
    if (opts.spectrum_diagnostics && N <= 400) {
        const auto ev = transfer_spectrum(S);
        int near = 0;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (std::abs(ev(i)) >= rho * (1.0 - 1e-6)) {
                ++near;
                if (std::abs(std::arg(ev(i))) > 1e-6) out.periodic = true;
            }
        }
        if (near >= 2 && !out.periodic) out.degenerate_perron = true;
    }
    return out;
}

RadicalQuotient radical_quotient(const MatrixSystem& S, const FormTuple& B, double tolerance) {
    double scale = 0.0;
    for (const auto& m : B) scale = std::max(scale, max_abs(m));
    if (compatibility_residual(S, B) > tolerance * std::max(1.0, scale))
        throw ValidationError("radical_quotient: forms are not compatible with the system");
    RadicalQuotient out;
    std::vector<int> dims;
    for (Letter a = 0; a < S.letters(); ++a) {
        const Mat& F = B[static_cast<std::size_t>(a)];
        Mat Q;
        if (F.rows() == 0 || scale == 0.0) {
            Q = Mat(S.dim(a), 0);
        } else {
            Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(F));
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                if (es.eigenvalues()(i) > 1e-9 * scale) keep.push_back(i);
            Q = Mat(S.dim(a), static_cast<Eigen::Index>(keep.size()));
            for (std::size_t k = 0; k < keep.size(); ++k) Q.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
        }
        out.dropped += S.dim(a) - static_cast<int>(Q.cols());
        dims.push_back(static_cast<int>(Q.cols()));
        out.bases.push_back(std::move(Q));
    }
    out.system = restrict_system(S, out.bases);
    out.forms = restrict_forms(B, out.bases);
    out.degenerate = out.system.total_dim() == 0;
    return out;
}

MatrixSystem restrict_system(const MatrixSystem& S, const std::vector<Mat>& bases) {
    std::vector<int> dims;
    for (const auto& q : bases) dims.push_back(static_cast<int>(q.cols()));
    MatrixSystem out(S.alphabet(), dims);
    for (Letter b = 0; b < S.letters(); ++b)
        for (Letter a = 0; a < S.letters(); ++a)
            out.map(b, a) = bases[static_cast<std::size_t>(b)].adjoint() * S.map(b, a) * bases[static_cast<std::size_t>(a)];
    return out;
}

FormTuple restrict_forms(const FormTuple& B, const std::vector<Mat>& bases) {
    FormTuple out;
    for (std::size_t a = 0; a < B.size(); ++a) out.push_back(hermitian_part(bases[a].adjoint() * B[a] * bases[a]));
    return out;
}

double invariance_defect(const MatrixSystem& S, const Subsystem& W) {
    double worst = 0.0;
    for (Letter b = 0; b < S.letters(); ++b) {
        const Mat& Qb = W.bases[static_cast<std::size_t>(b)];
        for (Letter a = 0; a < S.letters(); ++a) {
            const Mat& Qa = W.bases[static_cast<std::size_t>(a)];
            if (Qa.cols() == 0) continue;
            Mat img = S.map(b, a) * Qa;
            Mat out = img - Qb * (Qb.adjoint() * img);
            worst = std::max(worst, out.norm());
        }
    }
    return worst;
}

namespace {

struct BlockLayout {
    std::vector<int> offset;
    int n = 0;
};

BlockLayout block_layout(const MatrixSystem& S) {
    BlockLayout L;
    for (Letter a = 0; a < S.letters(); ++a) {
        L.offset.push_back(L.n);
        L.n += S.dim(a);
    }
    return L;
}

// Smallest subspace containing the seed columns and closed under gens.
Mat spin(const std::vector<Mat>& gens, const Mat& seeds, double tol) {
    const auto n = seeds.rows();
    Mat Q(n, 0);
    std::vector<Vec> queue;
    auto add = [&](const Vec& v) {
        if (v.norm() <= tol) return;
        Vec w = v;
        for (int pass = 0; pass < 2 && Q.cols() > 0; ++pass) w -= Q * (Q.adjoint() * w);
        const double nw = w.norm();
        if (nw <= tol) return;
        Q.conservativeResize(Eigen::NoChange, Q.cols() + 1);
        Q.col(Q.cols() - 1) = w / nw;
        queue.push_back(Q.col(Q.cols() - 1));
    };
    for (Eigen::Index j = 0; j < seeds.cols(); ++j) add(seeds.col(j));
    while (!queue.empty() && Q.cols() < n) {
        Vec q = std::move(queue.back());
        queue.pop_back();
        for (const auto& g : gens) add(g * q);
    }
    return Q;
}

Subsystem to_subsystem(const MatrixSystem& S, const BlockLayout& L, const Mat& Q) {
    Subsystem W;
    for (Letter a = 0; a < S.letters(); ++a) {
        Mat block = Q.middleRows(L.offset[static_cast<std::size_t>(a)], S.dim(a));
        W.bases.push_back(orthonormal_basis(block, 1e-8));
    }
    return W;
}

Subsystem complement_subsystem(const MatrixSystem& S, const Subsystem& U) {
    Subsystem W;
    for (Letter a = 0; a < S.letters(); ++a)
        W.bases.push_back(orthogonal_complement(U.bases[static_cast<std::size_t>(a)], S.dim(a)));
    return W;
}

}  // namespace

std::optional<Subsystem> find_invariant_subsystem(const MatrixSystem& S, const InvariantSearchOptions& opts) {
    const BlockLayout L = block_layout(S);
    const int n = L.n;
    if (n <= 1) return std::nullopt;

    // Module generators: vertex idempotents and the normalized H blocks.
    std::vector<Mat> gens;
    std::vector<Mat> adj;
    int nonempty = 0;
    for (Letter a = 0; a < S.letters(); ++a) {
        if (S.dim(a) == 0) continue;
        ++nonempty;
        Mat E = Mat::Zero(n, n);
        E.block(L.offset[static_cast<std::size_t>(a)], L.offset[static_cast<std::size_t>(a)], S.dim(a), S.dim(a)).setIdentity();
        gens.push_back(E);
        adj.push_back(E);
    }
    for (Letter b = 0; b < S.letters(); ++b) {
        for (Letter a = 0; a < S.letters(); ++a) {
            const Mat& H = S.map(b, a);
            const double nh = H.size() ? H.norm() : 0.0;
            if (nh <= 1e-14) continue;
            Mat G = Mat::Zero(n, n);
            G.block(L.offset[static_cast<std::size_t>(b)], L.offset[static_cast<std::size_t>(a)], S.dim(b), S.dim(a)) = H / nh;
            adj.push_back(G.adjoint());
            gens.push_back(std::move(G));
        }
    }
    (void)nonempty;

    const double tol = opts.tolerance;
    auto accept = [&](const Subsystem& W) {
        const int k = W.total_dim();
        return k > 0 && k < n && invariance_defect(S, W) <= tol * 10;
    };

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int round = 0; round < opts.rounds; ++round) {
        Mat theta = Mat::Zero(n, n);
        const std::size_t terms = 2 * gens.size() + 4;
        for (std::size_t t = 0; t < terms; ++t) {
            Mat P = gens[pick(rng)];
            const int len = 1 + static_cast<int>(rng() % 3);
            for (int l = 1; l < len; ++l) P = gens[pick(rng)] * P;
            theta += cplx(nd(rng), nd(rng)) * P;
        }
        Eigen::ComplexEigenSolver<Mat> es(theta, false);
        const cplx lambda = es.eigenvalues()(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
        Mat M = theta - lambda * Mat::Identity(n, n);

        Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        int nullity = 0;
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) <= 1e-9 * std::max(1.0, s(0))) ++nullity;
        nullity = std::max(nullity, 1);
        const Mat N = svd.matrixV().rightCols(nullity);   // null(M)
        const Mat Nt = svd.matrixU().rightCols(nullity);  // null(M^*)

        for (Eigen::Index j = 0; j < N.cols(); ++j) {
            Mat Q = spin(gens, N.col(j), tol);
            if (Q.cols() > 0 && Q.cols() < n) {
                Subsystem W = to_subsystem(S, L, Q);
                if (accept(W)) return W;
            }
        }
        for (Eigen::Index j = 0; j < Nt.cols(); ++j) {
            Mat Q = spin(adj, Nt.col(j), tol);
            if (Q.cols() > 0 && Q.cols() < n) {
                Subsystem W = complement_subsystem(S, to_subsystem(S, L, Q));
                if (accept(W)) return W;
            }
        }
        // Both spins are the whole space and the null space is a line:
        // this certifies irreducibility.
        if (nullity == 1) return std::nullopt;
    }
    return std::nullopt;
}

namespace {

FormTuple monotone_limit(const MatrixSystem& S, FormTuple X, int max_iterations) {
    for (int it = 0; it < max_iterations; ++it) {
        FormTuple Y = transfer_apply(S, X);
        double diff = 0.0;
        double scale = 0.0;
        for (std::size_t a = 0; a < X.size(); ++a) {
            diff = std::max(diff, max_abs(Y[a] - X[a]));
            scale = std::max(scale, max_abs(X[a]));
        }
        for (auto& m : Y) m = hermitian_part(m);
        X = std::move(Y);
        if (diff <= 1e-15 * std::max(scale, 1e-300)) break;
    }
    return X;
}

void decompose_into(const MatrixSystem& S, const FormTuple& B, const std::vector<Mat>& basis,
                    const std::vector<Mat>& coords, Decomposition& out, const DecomposeOptions& opts, int depth) {
    if (S.total_dim() == 0) return;
    if (depth > 4 * std::max(1, S.total_dim()) + 64) throw MathError("decompose: recursion did not terminate");
    const int n = S.letters();
    auto found = find_invariant_subsystem(S, opts.search);
    if (!found) {
        out.components.push_back({S, B, basis, coords});
        return;
    }
    // shrink to a minimal invariant subsystem
    std::vector<Mat> Q = found->bases;
    for (;;) {
        const MatrixSystem inner = restrict_system(S, Q);
        auto smaller = find_invariant_subsystem(inner, opts.search);
        if (!smaller) break;
        for (std::size_t a = 0; a < Q.size(); ++a) Q[a] = Q[a] * smaller->bases[a];
    }

    std::vector<Mat> C(static_cast<std::size_t>(n)), alpha(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n));
    for (Letter a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const Mat& Qa = Q[ua];
        const int d = S.dim(a);
        C[ua] = Qa.cols() == 0 ? Mat(Mat::Identity(d, d)) : null_space(Qa.adjoint() * B[ua], 1e-10);
        if (C[ua].cols() > 0) C[ua] = orthonormal_basis(C[ua], 1e-12);
        Mat QC(d, Qa.cols() + C[ua].cols());
        QC << Qa, C[ua];
        if (QC.cols() != d) throw MathError("decompose: B-orthogonal complement has the wrong dimension");
        const Mat inv = d == 0 ? Mat(0, 0) : Mat(QC.inverse());
        alpha[ua] = inv.topRows(Qa.cols());
        beta[ua] = inv.bottomRows(C[ua].cols());
    }

    Component comp;
    comp.system = restrict_system(S, Q);
    comp.forms = restrict_forms(B, Q);
    for (Letter a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        comp.basis.push_back(basis[ua] * Q[ua]);
        comp.coords.push_back(alpha[ua] * coords[ua]);
    }
    out.components.push_back(std::move(comp));

    // quotient by the subsystem, realized on the B-orthogonal complement
    std::vector<int> qdims;
    for (const auto& c : C) qdims.push_back(static_cast<int>(c.cols()));
    MatrixSystem Sq(S.alphabet(), qdims);
    for (Letter b = 0; b < n; ++b)
        for (Letter a = 0; a < n; ++a)
            Sq.map(b, a) = beta[static_cast<std::size_t>(b)] * S.map(b, a) * C[static_cast<std::size_t>(a)];
    FormTuple Bq = restrict_forms(B, C);
    // The restricted forms are superharmonic for the quotient; the norm of
    // the orthogonal complement is their monotone limit.
    Bq = monotone_limit(Sq, Bq, opts.max_iterations);
    RadicalQuotient rq = radical_quotient(Sq, Bq, 1e-8);
    out.dropped += rq.dropped;
    if (rq.degenerate) return;
    std::vector<Mat> nb, nc;
    for (Letter a = 0; a < n; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        nb.push_back(basis[ua] * C[ua] * rq.bases[ua]);
        nc.push_back(rq.bases[ua].adjoint() * beta[ua] * coords[ua]);
    }
    decompose_into(rq.system, rq.forms, nb, nc, out, opts, depth + 1);
}

}  // namespace

Decomposition decompose(const MatrixSystem& S, const FormTuple& B, const DecomposeOptions& opts) {
    if (auto d = validate_forms(S, B); !d.empty()) throw ValidationError("decompose: " + d.front());
    double scale = 0.0;
    for (const auto& m : B) scale = std::max(scale, max_abs(m));
    if (compatibility_residual(S, B) > kResidualTol * std::max(1.0, scale))
        throw ValidationError("decompose: forms are not compatible with the system");
    for (Letter a = 0; a < S.letters(); ++a)
        if (S.dim(a) > 0 && min_eigenvalue(B[static_cast<std::size_t>(a)]) <= 1e-10 * scale)
            throw ValidationError("decompose: forms must be strictly positive (apply radical_quotient first)");
    Decomposition out;
    std::vector<Mat> basis, coords;
    for (Letter a = 0; a < S.letters(); ++a) {
        basis.push_back(Mat::Identity(S.dim(a), S.dim(a)));
        coords.push_back(Mat::Identity(S.dim(a), S.dim(a)));
    }
    decompose_into(S, B, basis, coords, out, opts, 0);
    return out;
}

}  // namespace bdrep
