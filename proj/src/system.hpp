#pragma once

#include "linalg.hpp"
#include "words.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdrep {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateSystem : MathError {
    using MathError::MathError;
};

struct NormalizationFailed : MathError {
    NormalizationFailed(const std::string& msg, double r) : MathError(msg), residual(r) {}
    double residual;
};

/// Matrix system (V_a, H_{ba}): a dimension per letter and a map
/// H_{ba}: V_a -> V_b for every ordered pair of letters.  Maps across an
/// inverse pair (ba = e) are zero.
class MatrixSystem {
public:
    MatrixSystem() = default;
    MatrixSystem(Alphabet alphabet, std::vector<int> dims);

    const Alphabet& alphabet() const { return alphabet_; }
    int letters() const { return alphabet_.size(); }
    int dim(Letter a) const { return dims_[static_cast<std::size_t>(a)]; }
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;
    int max_dim() const;

    /// H_{ba}, shape dim(b) x dim(a).
    const Mat& map(Letter b, Letter a) const { return maps_[index(b, a)]; }
    Mat& map(Letter b, Letter a) { return maps_[index(b, a)]; }

    /// Every map multiplied by c.
    MatrixSystem scaled(double c) const;

private:
    std::size_t index(Letter b, Letter a) const {
        return static_cast<std::size_t>(b) * static_cast<std::size_t>(letters()) + static_cast<std::size_t>(a);
    }

    Alphabet alphabet_;
    std::vector<int> dims_;
    std::vector<Mat> maps_;
};

/// One Hermitian form B_a per letter.
using FormTuple = std::vector<Mat>;

/// Matrix system with a compatible form tuple.
struct InnerSystem {
    MatrixSystem system;
    FormTuple forms;
};

/// Columns of bases[a] are an orthonormal basis of W_a ⊆ V_a.
struct Subsystem {
    std::vector<Mat> bases;
    int total_dim() const;
};

/// Shape table and the ba = e zero rule.  Returns one message per
/// violation; empty means valid.
std::vector<std::string> validate(const MatrixSystem& S);

/// Checks that B has the right shapes and is Hermitian PSD.
std::vector<std::string> validate_forms(const MatrixSystem& S, const FormTuple& B);

/// a ↦ Σ_b H_{ba}^* B_b H_{ba}.
FormTuple transfer_apply(const MatrixSystem& S, const FormTuple& B);

/// max-norm of transfer_apply(S, B) - B.
double compatibility_residual(const MatrixSystem& S, const FormTuple& B);

FormTuple identity_forms(const MatrixSystem& S);
double total_trace(const FormTuple& B);

struct NormalizeResult {
    MatrixSystem system;  // maps scaled by rho^{-1/2}
    FormTuple forms;      // PSD fixed point, Σ_a trace(B_a) = 1
    double rho = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool degenerate_perron = false;  // another eigenvalue of modulus ~rho
    bool periodic = false;           // a peripheral eigenvalue off the positive axis
};

struct NormalizeOptions {
    int max_iterations = 100000;
    double tolerance = kResidualTol;
    bool spectrum_diagnostics = true;
};

/// Scales the system to spectral radius 1 of the transfer operator and
/// returns the Perron fixed point reached by power iteration from the
/// identity tuple.
NormalizeResult normalize(const MatrixSystem& S, const NormalizeOptions& opts = {});

struct RadicalQuotient {
    MatrixSystem system;
    FormTuple forms;
    std::vector<Mat> bases;  // orthonormal basis of (ker B_a)^⊥ in V_a
    int dropped = 0;         // Σ_a dim ker B_a
    bool degenerate = false; // every dimension vanished
};

/// Quotient of each V_a by ker B_a.  Requires B compatible with S.
RadicalQuotient radical_quotient(const MatrixSystem& S, const FormTuple& B, double tolerance = kResidualTol);

struct InvariantSearchOptions {
    int rounds = 50;
    std::uint64_t seed = 0x5eed;
    double tolerance = kSubspaceTol;
};

/// Randomized search for a nontrivial proper invariant subsystem.
/// A returned subsystem is an exact witness; std::nullopt is a
/// probabilistic irreducibility answer.
std::optional<Subsystem> find_invariant_subsystem(const MatrixSystem& S, const InvariantSearchOptions& opts = {});

/// max over (b,a) of ‖(I - P_{W_b}) H_{ba} P_{W_a}‖.
double invariance_defect(const MatrixSystem& S, const Subsystem& W);

/// System on W_a in the stored bases: Q_b^* H_{ba} Q_a.
MatrixSystem restrict_system(const MatrixSystem& S, const std::vector<Mat>& bases);
FormTuple restrict_forms(const FormTuple& B, const std::vector<Mat>& bases);

struct Component {
    MatrixSystem system;
    FormTuple forms;
    std::vector<Mat> basis;   // columns embed component coordinates into V_a
    std::vector<Mat> coords;  // B-orthogonal projection V_a -> component coordinates
};

struct Decomposition {
    std::vector<Component> components;
    int dropped = 0;  // dimensions lost to radicals of quotient forms
};

struct DecomposeOptions {
    InvariantSearchOptions search;
    int max_iterations = 100000;
};

/// Splits a system with strictly positive compatible forms into
/// irreducible components, pairwise B-orthogonal.
Decomposition decompose(const MatrixSystem& S, const FormTuple& B, const DecomposeOptions& opts = {});

}  // namespace bdrep
