#include "boundary_measure.hpp"

#include <cmath>

namespace bdrep {

CylinderMeasure::CylinderMeasure(Alphabet alphabet, Evaluator eval)
    : alphabet_(std::move(alphabet)), eval_(std::move(eval)), cache_(std::make_shared<Cache>()) {}

double CylinderMeasure::operator()(const Word& z) const {
    {
        std::lock_guard<std::mutex> g(cache_->lock);
        auto it = cache_->values.find(z);
        if (it != cache_->values.end()) return it->second;
    }
    const double v = eval_(z);
    std::lock_guard<std::mutex> g(cache_->lock);
    cache_->values.emplace(z, v);
    return v;
}

CylinderMeasure spectral_measure(const MultVector& v) {
    auto f = std::make_shared<const MultVector>(v);
    return CylinderMeasure(v.alphabet(), [f](const Word& z) {
        const auto& sys = f->inner_system();
        // past the seed depth the mass of a cylinder collapses to its stem
        if (static_cast<int>(z.size()) >= f->depth()) {
            const Vec val = f->eval(z);
            return std::max(0.0, val.dot(sys.forms[static_cast<std::size_t>(z.back())] * val).real());
        }
        double s = 0.0;
        std::uint64_t i = 0;
        for_each_in_sphere(f->alphabet(), f->depth(), [&](const Word& y) {
            const Vec& val = f->at_index(i++);
            if (starts_with(y, z)) s += val.dot(sys.forms[static_cast<std::size_t>(y.back())] * val).real();
        });
        return std::max(0.0, s);
    });
}

CylinderMeasure uniform_measure(const Alphabet& A) {
    const double n = A.size();
    return CylinderMeasure(A, [n](const Word& z) {
        if (z.empty()) return 1.0;
        return std::pow(n - 1.0, 1.0 - static_cast<double>(z.size())) / n;
    });
}

double quasi_regular_coefficient(const CylinderMeasure& mu, const Word& x, int N, std::uint64_t cap) {
    const auto& A = mu.alphabet();
    if (N < static_cast<int>(x.size()) + 1)
        throw ValidationError("quasi-regular coefficient: depth " + std::to_string(N) + " is below |x|+1 = " +
                              std::to_string(x.size() + 1));
    if (sphere_size(A, N) > cap) throw CapExceeded("quasi-regular coefficient: sphere of radius " + std::to_string(N) + " exceeds the cap");
    double s = 0.0;
    for_each_in_sphere(A, N, [&](const Word& C) {
        const double m = mu(C);
        if (m <= 0.0) return;
        s += std::sqrt(mu(multiply(A, x, C)) * m);
    });
    return s;
}

RNApprox radon_nikodym(const CylinderMeasure& mu, const Word& x, int N, std::uint64_t cap) {
    const auto& A = mu.alphabet();
    if (N < static_cast<int>(x.size()) + 1) throw ValidationError("Radon-Nikodym approximation: depth below |x|+1");
    if (sphere_size(A, N) > cap) throw CapExceeded("Radon-Nikodym approximation: sphere exceeds the cap");
    RNApprox out{x, N, {}};
    for_each_in_sphere(A, N, [&](const Word& C) {
        const double m = mu(C);
        if (m > 0.0) out.ratios.emplace_back(C, mu(multiply(A, x, C)) / m);
    });
    return out;
}

HerzResult herz_check(const MultVector& v, const CylinderMeasure& mu, const Word& x, int N) {
    HerzResult r;
    r.lhs = std::abs(coefficient_fast(x, v, v));
    r.rhs = quasi_regular_coefficient(mu, x, N);
    r.pass = r.lhs <= r.rhs + kHerzSlack;
    return r;
}

HerzResult herz_check(const MultVector& v, const Word& x, int N) { return herz_check(v, spectral_measure(v), x, N); }

std::vector<double> no_harish_chandra_demo(const CylinderMeasure& mu, const Word& w, int max_power, std::uint64_t cap) {
    if (w.empty()) throw ValidationError("demo: the group element must differ from e");
    std::vector<double> out;
    for (int n = 1; n <= max_power; ++n) {
        const Word wn = power(mu.alphabet(), w, n);
        out.push_back(quasi_regular_coefficient(mu, wn, static_cast<int>(wn.size()) + 1, cap));
    }
    return out;
}

}  // namespace bdrep
