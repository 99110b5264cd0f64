#pragma once

#include "exact.hpp"
#include "system.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>

namespace bdrep {

using SystemRef = std::shared_ptr<const InnerSystem>;

/// Limits shared by every sphere-sized computation.
struct EvalOptions {
    std::uint64_t cap = kDefaultSphereCap;
    int threads = 1;
};

/// Element of H∞ given by its values on the sphere of radius `depth`;
/// longer words are reached by f(xb) = H_{b,last(x)} f(x).
class MultVector {
public:
    MultVector() = default;
    /// Zero vector of the given depth (>= 1).
    MultVector(SystemRef sys, int depth, std::uint64_t cap = kDefaultSphereCap);

    const SystemRef& system() const { return sys_; }
    const InnerSystem& inner_system() const { return *sys_; }
    const Alphabet& alphabet() const { return sys_->system.alphabet(); }
    int depth() const { return depth_; }
    std::size_t size() const { return values_.size(); }

    /// Value at a word of length exactly depth().
    const Vec& at(const Word& w) const;
    Vec& at(const Word& w);
    const Vec& at_index(std::uint64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    Vec& at_index(std::uint64_t i) { return values_[static_cast<std::size_t>(i)]; }

    /// f(w) for any reduced w with |w| >= depth().
    Vec eval(const Word& w) const;

    bool is_zero(double tol = 0.0) const;

private:
    SystemRef sys_;
    int depth_ = 0;
    std::vector<Vec> values_;
};

/// Vector supported on the cones of single letters: value `seed[a]` at a.
MultVector letter_vector(const SystemRef& sys, const std::map<Letter, Vec>& seeds);

/// Random complex seeds on the sphere of radius depth.
MultVector random_vector(const SystemRef& sys, int depth, std::mt19937_64& rng);

MultVector deepen(const MultVector& f, int depth, std::uint64_t cap = kDefaultSphereCap);

/// Linear combination α f + β g at the common depth.
MultVector combine(cplx alpha, const MultVector& f, cplx beta, const MultVector& g,
                   std::uint64_t cap = kDefaultSphereCap);
MultVector scale(cplx c, const MultVector& f);

/// ⟨f, g⟩, linear in f.  Uses the sphere sum at the common depth.
cplx inner(const MultVector& f, const MultVector& g, std::uint64_t cap = kDefaultSphereCap);

/// Literal sphere sum of ⟨f, g⟩ over words of length `radius` (>= both depths).
cplx inner_at(const MultVector& f, const MultVector& g, int radius, std::uint64_t cap = kDefaultSphereCap);

/// π(x)f, depth f.depth + |x|.
MultVector act(const Word& x, const MultVector& f, std::uint64_t cap = kDefaultSphereCap);

enum class Backend { Brute, Fast };

/// ⟨π(x)f, g⟩ by the literal sphere sum at radius max(depths)+|x|+1
/// (or `radius` if given, which must be admissible).
cplx coefficient_brute(const Word& x, const MultVector& f, const MultVector& g, const EvalOptions& opts = {},
                       std::optional<int> radius = std::nullopt);

/// ⟨π(x)f, g⟩ by branching along the geodesic from e to x; linear in |x|.
cplx coefficient_fast(const Word& x, const MultVector& f, const MultVector& g);

cplx coefficient(const Word& x, const MultVector& f, const MultVector& g, Backend backend = Backend::Fast,
                 const EvalOptions& opts = {});

/// Smallest sphere radius at which the brute sum for ⟨π(x)f, g⟩ is valid.
int admissible_radius(const Word& x, const MultVector& f, const MultVector& g);

/// Boundary operator of the cylinder ∂Γ(z): restriction to the cone Γ(z).
MultVector cylinder_op(const Word& z, const MultVector& f, std::uint64_t cap = kDefaultSphereCap);

/// Norm of π(x) α(1_z) π(x⁻¹) f − α(1_{x·∂Γ(z)}) f.
double covariance_check(const Word& x, const Word& z, const MultVector& f, std::uint64_t cap = kDefaultSphereCap);

double norm(const MultVector& f, std::uint64_t cap = kDefaultSphereCap);

/// Σ ζ_i δ_{γ_i}: each ζ_i is a multiple of a cylinder indicator or of
/// the constant function 1 (cylinder = nullopt).
struct CrossedTerm {
    cplx coefficient;
    std::optional<Word> cylinder;
    Word element;
};

struct CrossedElement {
    std::vector<CrossedTerm> terms;
};

MultVector apply_crossed(const CrossedElement& E, const MultVector& f, std::uint64_t cap = kDefaultSphereCap);

using CoefficientFn = std::function<cplx(const Word&)>;

/// Image of x under the endomorphism given by generator images
/// (images[a] for every letter a, images of inverse letters implied).
Word substitute(const Alphabet& A, const std::vector<Word>& images, const Word& x);

/// x ↦ φ(φ-image of x).
CoefficientFn precompose(const CoefficientFn& phi, const Alphabet& A, const std::vector<Word>& images);

/// Applies coords[last letter] to every seed of f, giving a vector over
/// `target`.  For a summand that is not complemented by an invariant
/// subsystem, deepen f first: the leak into the summand settles after a
/// few levels.
MultVector transport(const MultVector& f, const SystemRef& target, const std::vector<Mat>& coords);

// ---------------------------------------------------------------------------
// Exact mode over Q(sqrt d): real entries only.

struct ExactSystem {
    Alphabet alphabet;
    long radicand = 0;
    std::vector<int> dims;
    std::vector<QuadMatrix> maps;   // index b * letters + a
    std::vector<QuadMatrix> forms;  // per letter

    const QuadMatrix& map(Letter b, Letter a) const {
        return maps[static_cast<std::size_t>(b) * dims.size() + static_cast<std::size_t>(a)];
    }
};

/// True iff the forms are an exact fixed point of the transfer operator.
bool exactly_compatible(const ExactSystem& S);

struct ExactVector {
    int depth = 1;
    std::vector<std::vector<Quad>> values;  // sphere index -> entries
};

std::vector<Quad> exact_eval(const ExactSystem& S, const ExactVector& f, const Word& w);

/// ⟨π(x)f, g⟩ by the literal sphere sum in exact arithmetic.
Quad exact_coefficient(const ExactSystem& S, const Word& x, const ExactVector& f, const ExactVector& g,
                       std::uint64_t cap = kDefaultSphereCap);

}  // namespace bdrep
