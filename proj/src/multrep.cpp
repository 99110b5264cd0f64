#include "multrep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace bdrep {

namespace {

void check_cap(const Alphabet& A, int radius, std::uint64_t cap) {
    const auto n = sphere_size(A, radius);
    if (n > cap)
        throw CapExceeded("sphere of radius " + std::to_string(radius) + " has " + std::to_string(n) +
                          " words, above the cap of " + std::to_string(cap));
}

void require_same(const MultVector& f, const MultVector& g) {
    if (f.system() != g.system()) throw ValidationError("vectors belong to different systems");
}

const Mat& form(const MultVector& f, Letter a) { return f.inner_system().forms[static_cast<std::size_t>(a)]; }

}  // namespace

MultVector::MultVector(SystemRef sys, int depth, std::uint64_t cap) : sys_(std::move(sys)), depth_(depth) {
    if (!sys_) throw ValidationError("vector without a system");
    if (depth_ < 1) throw ValidationError("vector depth must be at least 1");
    const auto& A = sys_->system.alphabet();
    check_cap(A, depth_, cap);
    values_.reserve(static_cast<std::size_t>(sphere_size(A, depth_)));
    for_each_in_sphere(A, depth_, [&](const Word& w) { values_.push_back(Vec::Zero(sys_->system.dim(w.back()))); });
}

const Vec& MultVector::at(const Word& w) const {
    if (static_cast<int>(w.size()) != depth_ || !is_reduced(alphabet(), w))
        throw WordError("vector lookup needs a reduced word of length " + std::to_string(depth_));
    return values_[static_cast<std::size_t>(sphere_index(alphabet(), w))];
}

Vec& MultVector::at(const Word& w) {
    return const_cast<Vec&>(static_cast<const MultVector&>(*this).at(w));
}

Vec MultVector::eval(const Word& w) const {
    if (static_cast<int>(w.size()) < depth_)
        throw WordError("cannot evaluate a depth-" + std::to_string(depth_) + " vector at a word of length " +
                        std::to_string(w.size()));
    const Word head(w.begin(), w.begin() + depth_);
    Vec v = at(head);
    for (std::size_t i = static_cast<std::size_t>(depth_); i < w.size(); ++i) {
        if (w[i] == alphabet().inverse(w[i - 1])) throw WordError("evaluation at a non-reduced word");
        v = sys_->system.map(w[i], w[i - 1]) * v;
    }
    return v;
}

bool MultVector::is_zero(double tol) const {
    for (const auto& v : values_)
        if (v.size() && v.cwiseAbs().maxCoeff() > tol) return false;
    return true;
}

MultVector letter_vector(const SystemRef& sys, const std::map<Letter, Vec>& seeds) {
    MultVector f(sys, 1);
    for (const auto& [a, v] : seeds) {
        if (v.size() != sys->system.dim(a)) throw ValidationError("seed has the wrong dimension");
        f.at(Word{a}) = v;
    }
    return f;
}

MultVector random_vector(const SystemRef& sys, int depth, std::mt19937_64& rng) {
    MultVector f(sys, depth);
    for (std::size_t i = 0; i < f.size(); ++i) f.at_index(i) = bdrep::random_vector(rng, static_cast<int>(f.at_index(i).size()));
    return f;
}

MultVector deepen(const MultVector& f, int depth, std::uint64_t cap) {
    if (depth < f.depth()) throw ValidationError("deepen: target depth is below the current depth");
    if (depth == f.depth()) return f;
    MultVector out(f.system(), depth, cap);
    std::uint64_t i = 0;
    for_each_in_sphere(f.alphabet(), depth, [&](const Word& w) { out.at_index(i++) = f.eval(w); });
    return out;
}

MultVector combine(cplx alpha, const MultVector& f, cplx beta, const MultVector& g, std::uint64_t cap) {
    require_same(f, g);
    const int M = std::max(f.depth(), g.depth());
    MultVector out(f.system(), M, cap);
    std::uint64_t i = 0;
    for_each_in_sphere(f.alphabet(), M, [&](const Word& w) {
        out.at_index(i++) = alpha * f.eval(w) + beta * g.eval(w);
    });
    return out;
}

MultVector scale(cplx c, const MultVector& f) {
    MultVector out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out.at_index(i) *= c;
    return out;
}

MultVector transport(const MultVector& f, const SystemRef& target, const std::vector<Mat>& coords) {
    MultVector out(target, f.depth());
    std::uint64_t i = 0;
    for_each_in_sphere(f.alphabet(), f.depth(), [&](const Word& w) {
        out.at_index(i) = coords[static_cast<std::size_t>(w.back())] * f.at_index(i);
        ++i;
    });
    return out;
}

cplx inner_at(const MultVector& f, const MultVector& g, int radius, std::uint64_t cap) {
    require_same(f, g);
    if (radius < std::max(f.depth(), g.depth())) throw ValidationError("inner: radius below the vector depths");
    check_cap(f.alphabet(), radius, cap);
    cplx s = 0.0;
    for_each_in_sphere(f.alphabet(), radius, [&](const Word& w) {
        s += g.eval(w).dot(form(f, w.back()) * f.eval(w));
    });
    return s;
}

cplx inner(const MultVector& f, const MultVector& g, std::uint64_t cap) {
    return inner_at(f, g, std::max(f.depth(), g.depth()), cap);
}

double norm(const MultVector& f, std::uint64_t cap) { return std::sqrt(std::max(0.0, inner(f, f, cap).real())); }

MultVector act(const Word& x, const MultVector& f, std::uint64_t cap) {
    if (x.empty()) return f;
    const auto& A = f.alphabet();
    const Word xi = inverse(A, x);
    const int M = f.depth() + static_cast<int>(x.size());
    MultVector out(f.system(), M, cap);
    std::uint64_t i = 0;
    for_each_in_sphere(A, M, [&](const Word& y) { out.at_index(i++) = f.eval(multiply(A, xi, y)); });
    return out;
}

int admissible_radius(const Word& x, const MultVector& f, const MultVector& g) {
    const int n = static_cast<int>(x.size());
    return std::max({f.depth() + n, g.depth(), n + 1});
}

namespace {

// Depth-first walk over y with |y| = radius, tracking z = x⁻¹y and the
// values f(z), g(y) incrementally.
class BruteWalker {
public:
    BruteWalker(const Word& x, const MultVector& f, const MultVector& g, int radius)
        : A_(f.alphabet()), S_(f.inner_system().system), f_(f), g_(g), radius_(radius) {
        const int n = static_cast<int>(x.size());
        fz_.resize(static_cast<std::size_t>(radius + n + 2));
        gy_.resize(static_cast<std::size_t>(radius + 2));
        z_.reserve(static_cast<std::size_t>(radius + n + 2));
        y_.reserve(static_cast<std::size_t>(radius + 2));
        for (Letter c : inverse(A_, x)) push_z(c);
        for (Letter a = 0; a < A_.size(); ++a) tmp_.push_back(Vec(S_.dim(a)));
    }

    // Sum over all y extending `prefix`.
    cplx run(const Word& prefix) {
        acc_ = 0.0;
        descend_prefix(prefix, 0);
        return acc_;
    }

private:
    void push_z(Letter c) {
        z_.push_back(c);
        const auto L = static_cast<int>(z_.size());
        if (L == f_.depth())
            fz_[static_cast<std::size_t>(L)] = f_.at(z_);
        else if (L > f_.depth())
            fz_[static_cast<std::size_t>(L)].noalias() = S_.map(c, z_[z_.size() - 2]) * fz_[static_cast<std::size_t>(L - 1)];
    }

    void push_y(Letter c) {
        y_.push_back(c);
        const auto L = static_cast<int>(y_.size());
        if (L == g_.depth())
            gy_[static_cast<std::size_t>(L)] = g_.at(y_);
        else if (L > g_.depth())
            gy_[static_cast<std::size_t>(L)].noalias() = S_.map(c, y_[y_.size() - 2]) * gy_[static_cast<std::size_t>(L - 1)];
    }

    template <class Body>
    void step(Letter c, Body&& body) {
        push_y(c);
        if (!z_.empty() && z_.back() == A_.inverse(c)) {
            const Letter saved = z_.back();
            const auto L = z_.size();
            Vec savedv = fz_[L];
            z_.pop_back();
            body();
            z_.push_back(saved);
            fz_[L] = std::move(savedv);
        } else {
            push_z(c);
            body();
            z_.pop_back();
        }
        y_.pop_back();
    }

    void descend_prefix(const Word& prefix, std::size_t i) {
        if (i == prefix.size()) {
            descend();
            return;
        }
        step(prefix[i], [&] { descend_prefix(prefix, i + 1); });
    }

    void descend() {
        if (static_cast<int>(y_.size()) == radius_) {
            const Letter last = y_.back();
            Vec& t = tmp_[static_cast<std::size_t>(last)];
            t.noalias() = f_.inner_system().forms[static_cast<std::size_t>(last)] * fz_[z_.size()];
            acc_ += gy_[y_.size()].dot(t);
            return;
        }
        for (Letter c = 0; c < A_.size(); ++c) {
            if (!y_.empty() && c == A_.inverse(y_.back())) continue;
            step(c, [&] { descend(); });
        }
    }

    const Alphabet& A_;
    const MatrixSystem& S_;
    const MultVector& f_;
    const MultVector& g_;
    int radius_;
    Word z_, y_;
    std::vector<Vec> fz_, gy_, tmp_;
    cplx acc_ = 0.0;
};

}  // namespace

cplx coefficient_brute(const Word& x, const MultVector& f, const MultVector& g, const EvalOptions& opts,
                       std::optional<int> radius) {
    require_same(f, g);
    const auto& A = f.alphabet();
    if (!is_reduced(A, x)) throw WordError("coefficient: group element is not reduced");
    const int lo = admissible_radius(x, f, g);
    const int M = radius ? *radius : std::max(f.depth(), g.depth()) + static_cast<int>(x.size()) + 1;
    if (M < lo) throw ValidationError("coefficient: sphere radius " + std::to_string(M) + " is not admissible");
    if (sphere_size(A, M) > opts.cap)
        throw CapExceeded("brute coefficient at '" + A.format(x) + "' needs a sphere of radius " + std::to_string(M) +
                          " (" + std::to_string(sphere_size(A, M)) + " words), above the cap of " +
                          std::to_string(opts.cap));

    // Fixed chunking by the first two letters keeps the summation order,
    // hence the result, independent of the thread count.
    const int chunk_depth = std::min(M, 2);
    const std::vector<Word> chunks = sphere(A, chunk_depth);
    std::vector<cplx> partial(chunks.size(), 0.0);
    const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(chunks.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        BruteWalker walker(x, f, g, M);
        for (std::size_t i = next++; i < chunks.size(); i = next++) partial[i] = walker.run(chunks[i]);
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    cplx s = 0.0;
    for (const auto& p : partial) s += p;
    return s;
}

cplx coefficient_fast(const Word& x, const MultVector& f, const MultVector& g) {
    require_same(f, g);
    const auto& A = f.alphabet();
    const auto& S = f.inner_system().system;
    if (!is_reduced(A, x)) throw WordError("coefficient: group element is not reduced");
    const int n = static_cast<int>(x.size());
    const Word xi = inverse(A, x);
    const int Mf = f.depth();
    const int Mg = g.depth();

    // Values along the geodesic: Fpre[p] = f(xi[0..p)), Gpre[k] = g(x[0..k)).
    std::vector<Vec> Fpre(static_cast<std::size_t>(n + 1)), Gpre(static_cast<std::size_t>(n + 1));
    for (int p = Mf; p <= n; ++p)
        Fpre[static_cast<std::size_t>(p)] =
            p == Mf ? f.at(Word(xi.begin(), xi.begin() + p))
                    : Vec(S.map(xi[static_cast<std::size_t>(p - 1)], xi[static_cast<std::size_t>(p - 2)]) *
                          Fpre[static_cast<std::size_t>(p - 1)]);
    for (int k = Mg; k <= n; ++k)
        Gpre[static_cast<std::size_t>(k)] =
            k == Mg ? g.at(Word(x.begin(), x.begin() + k))
                    : Vec(S.map(x[static_cast<std::size_t>(k - 1)], x[static_cast<std::size_t>(k - 2)]) *
                          Gpre[static_cast<std::size_t>(k - 1)]);

    auto value = [&](const MultVector& h, const std::vector<Vec>& pre, const Word& head, int len, const Word& tail) {
        if (len >= h.depth()) {
            Vec v = pre[static_cast<std::size_t>(len)];
            Letter prev = len > 0 ? head[static_cast<std::size_t>(len - 1)] : -1;
            for (Letter c : tail) {
                if (prev >= 0) v = S.map(c, prev) * v;
                prev = c;
            }
            return v;
        }
        Word w(head.begin(), head.begin() + len);
        w.insert(w.end(), tail.begin(), tail.end());
        return h.eval(w);
    };

    cplx total = 0.0;
    Word t;
    for (int k = 0; k <= n; ++k) {
        const int p = n - k;
        const int L = std::max({1, Mf - p, Mg - k});
        const Letter ban1 = k < n ? x[static_cast<std::size_t>(k)] : -1;
        const Letter ban2 = k >= 1 ? A.inverse(x[static_cast<std::size_t>(k - 1)]) : -1;
        // enumerate tails of length L
        t.assign(1, 0);
        std::function<void()> rec = [&] {
            if (static_cast<int>(t.size()) == L) {
                const Vec fv = value(f, Fpre, xi, p, t);
                const Vec gv = value(g, Gpre, x, k, t);
                total += gv.dot(form(f, t.back()) * fv);
                return;
            }
            for (Letter c = 0; c < A.size(); ++c) {
                if (c == A.inverse(t.back())) continue;
                t.push_back(c);
                rec();
                t.pop_back();
            }
        };
        for (Letter c = 0; c < A.size(); ++c) {
            if (c == ban1 || c == ban2) continue;
            t.assign(1, c);
            rec();
        }
    }
    return total;
}

cplx coefficient(const Word& x, const MultVector& f, const MultVector& g, Backend backend, const EvalOptions& opts) {
    return backend == Backend::Brute ? coefficient_brute(x, f, g, opts) : coefficient_fast(x, f, g);
}

MultVector cylinder_op(const Word& z, const MultVector& f, std::uint64_t cap) {
    if (z.empty()) throw WordError("cylinder_op: empty stem");
    if (!is_reduced(f.alphabet(), z)) throw WordError("cylinder_op: stem is not reduced");
    const int M = std::max(f.depth(), static_cast<int>(z.size()));
    MultVector out(f.system(), M, cap);
    std::uint64_t i = 0;
    for_each_in_sphere(f.alphabet(), M, [&](const Word& y) {
        if (starts_with(y, z)) out.at_index(i) = f.eval(y);
        ++i;
    });
    return out;
}

double covariance_check(const Word& x, const Word& z, const MultVector& f, std::uint64_t cap) {
    const auto& A = f.alphabet();
    const MultVector lhs = act(x, cylinder_op(z, act(inverse(A, x), f, cap), cap), cap);
    MultVector rhs(f.system(), 1, cap);
    for (const auto& C : cylinder_image(A, x, Cylinder{z})) rhs = combine(1.0, rhs, 1.0, cylinder_op(C.stem, f, cap), cap);
    return norm(combine(1.0, lhs, -1.0, rhs, cap), cap);
}

MultVector apply_crossed(const CrossedElement& E, const MultVector& f, std::uint64_t cap) {
    MultVector out(f.system(), f.depth(), cap);
    for (const auto& term : E.terms) {
        MultVector moved = act(term.element, f, cap);
        if (term.cylinder) moved = cylinder_op(*term.cylinder, moved, cap);
        out = combine(1.0, out, term.coefficient, moved, cap);
    }
    return out;
}

Word substitute(const Alphabet& A, const std::vector<Word>& images, const Word& x) {
    if (static_cast<int>(images.size()) != A.size()) throw ValidationError("substitute: one image per letter expected");
    Word out;
    for (Letter c : x) {
        // generator letters carry the image, their inverses the inverse image
        const Letter gen = std::min(c, A.inverse(c));
        const Word img = reduce(A, images[static_cast<std::size_t>(gen)]);
        out = multiply(A, out, c == gen ? img : inverse(A, img));
    }
    return out;
}

CoefficientFn precompose(const CoefficientFn& phi, const Alphabet& A, const std::vector<Word>& images) {
    return [phi, A, images](const Word& x) { return phi(substitute(A, images, x)); };
}

// ---------------------------------------------------------------------------

bool exactly_compatible(const ExactSystem& S) {
    const int n = static_cast<int>(S.dims.size());
    for (Letter a = 0; a < n; ++a) {
        QuadMatrix acc(S.dims[static_cast<std::size_t>(a)], S.dims[static_cast<std::size_t>(a)], S.radicand);
        for (Letter b = 0; b < n; ++b) {
            const QuadMatrix& H = S.map(b, a);
            const QuadMatrix term = adjoint(H) * S.forms[static_cast<std::size_t>(b)] * H;
            for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += term.data[i];
        }
        if (!(acc.data == S.forms[static_cast<std::size_t>(a)].data)) return false;
    }
    return true;
}

std::vector<Quad> exact_eval(const ExactSystem& S, const ExactVector& f, const Word& w) {
    if (static_cast<int>(w.size()) < f.depth) throw WordError("exact evaluation below the vector depth");
    const Word head(w.begin(), w.begin() + f.depth);
    std::vector<Quad> v = f.values.at(static_cast<std::size_t>(sphere_index(S.alphabet, head)));
    for (std::size_t i = static_cast<std::size_t>(f.depth); i < w.size(); ++i) v = bdrep::apply(S.map(w[i], w[i - 1]), v);
    return v;
}

Quad exact_coefficient(const ExactSystem& S, const Word& x, const ExactVector& f, const ExactVector& g,
                       std::uint64_t cap) {
    const auto& A = S.alphabet;
    const int M = std::max(f.depth, g.depth) + static_cast<int>(x.size()) + 1;
    check_cap(A, M, cap);
    const Word xi = inverse(A, x);
    Quad s(0, 0, S.radicand);
    for_each_in_sphere(A, M, [&](const Word& y) {
        const auto fv = exact_eval(S, f, multiply(A, xi, y));
        const auto gv = exact_eval(S, g, y);
        const auto Bf = bdrep::apply(S.forms[static_cast<std::size_t>(y.back())], fv);
        for (std::size_t i = 0; i < gv.size(); ++i) s += gv[i] * Bf[i];
    });
    return s;
}

}  // namespace bdrep
