#pragma once

#include "multrep.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace bdrep {

/// Finitely additive nonnegative set function on cylinders, evaluated
/// lazily and memoized by stem.
class CylinderMeasure {
public:
    using Evaluator = std::function<double(const Word&)>;

    CylinderMeasure(Alphabet alphabet, Evaluator eval);

    /// μ(∂Γ(z)); the empty stem gives the total mass.
    double operator()(const Word& z) const;
    double total() const { return (*this)(Word{}); }
    const Alphabet& alphabet() const { return alphabet_; }

private:
    struct Cache {
        std::mutex lock;
        std::map<Word, double> values;
    };
    Alphabet alphabet_;
    Evaluator eval_;
    std::shared_ptr<Cache> cache_;
};

/// z ↦ ⟨α(1_{∂Γ(z)}) v, v⟩.
CylinderMeasure spectral_measure(const MultVector& v);

/// μ(∂Γ(x)) = |A|⁻¹ (|A|-1)^{1-|x|}.
CylinderMeasure uniform_measure(const Alphabet& A);

/// φ_N(x) = Σ_{|C|=N} sqrt(μ(x·C) μ(C)), N >= |x|+1.
double quasi_regular_coefficient(const CylinderMeasure& mu, const Word& x, int N,
                                 std::uint64_t cap = kDefaultSphereCap);

/// Depth-N approximation of the Radon–Nikodym derivative of x on each
/// cylinder of positive mass: μ(x·C)/μ(C).
struct RNApprox {
    Word x;
    int N = 0;
    std::vector<std::pair<Word, double>> ratios;
};

RNApprox radon_nikodym(const CylinderMeasure& mu, const Word& x, int N, std::uint64_t cap = kDefaultSphereCap);

struct HerzResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

inline constexpr double kHerzSlack = 1e-9;

/// |⟨π(x)v, v⟩| against φ_N(x) for the spectral measure of v.
HerzResult herz_check(const MultVector& v, const Word& x, int N);
HerzResult herz_check(const MultVector& v, const CylinderMeasure& mu, const Word& x, int N);

/// φ_{|wⁿ|+1}(wⁿ) for n = 1..max_power.
std::vector<double> no_harish_chandra_demo(const CylinderMeasure& mu, const Word& w, int max_power,
                                           std::uint64_t cap = kDefaultSphereCap);

}  // namespace bdrep
