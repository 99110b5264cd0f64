#pragma once

#include "multrep.hpp"

#include <string>
#include <vector>

namespace bdrep {

struct VFError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Free product Z/m1 * ... * Z/mk with one named generator per factor.
struct VFGroup {
    std::vector<int> orders;
    std::vector<std::string> names;

    int factors() const { return static_cast<int>(orders.size()); }
};

/// Normal form: syllables (factor, exponent in [1, m-1]), adjacent
/// syllables from different factors.  Empty is the identity.
using VFWord = std::vector<std::pair<int, int>>;

VFWord vf_multiply(const VFGroup& G, const VFWord& x, const VFWord& y);
VFWord vf_inverse(const VFGroup& G, const VFWord& x);
VFWord vf_generator(const VFGroup& G, int factor, int exponent = 1);

/// Parses tokens "name" or "name^k" (k may be negative), concatenated or
/// separated by spaces or dots; "e" is the identity.
VFWord vf_parse(const VFGroup& G, std::string_view text);
std::string vf_format(const VFGroup& G, const VFWord& x);

/// Word length in the generators s_i^{±1}.
int vf_length(const VFGroup& G, const VFWord& x);

/// Λ with a transversal T of the right cosets Γ0·t of a free subgroup Γ0
/// and the factorization t·s = w·t′ for every t ∈ T and generator s.
/// Words w are over the standard alphabet of rank |free_basis|.
struct VFDatum {
    VFGroup group;
    std::vector<VFWord> transversal;  // transversal[0] = identity
    std::vector<VFWord> free_basis;
    Alphabet free_alphabet;
    std::vector<int> next;    // t * factors + i -> index of t′
    std::vector<Word> cocycle;  // t * factors + i -> w

    int index() const { return static_cast<int>(transversal.size()); }
    int rank() const { return static_cast<int>(free_basis.size()); }
};

/// Λ-element of a word over the free basis.
VFWord vf_expand(const VFDatum& D, const Word& w);

/// t·λ = w·t′: returns (t′, w).
std::pair<int, Word> vf_route(const VFDatum& D, int t, const VFWord& lambda);

/// Index of the transversal element equal to x, or -1.
int vf_find(const VFDatum& D, const VFWord& x);

/// Full consistency report; empty means valid.  `probes` random routing
/// checks use `seed`.
std::vector<std::string> vf_validate(const VFDatum& D, int probes = 500, std::uint64_t seed = 0x5eed);

/// PSL(2,Z) = Z/2 * Z/3 with its commutator subgroup (index 6, rank 2).
VFDatum psl2z_datum();

/// Builds the factorization table by searching free words up to
/// `max_length` for every (t, s).
void vf_fill_table(VFDatum& D, int max_length = 4);

/// ⟨Ind π(λ) F, G⟩ = Σ_t ⟨π(w_t) F(t′), G(t)⟩ with t·λ = w_t·t′.
cplx vf_coefficient(const VFDatum& D, const VFWord& lambda, const std::vector<MultVector>& F,
                    const std::vector<MultVector>& G, Backend backend = Backend::Fast);

/// All elements of word length <= r, ordered by length then discovery.
std::vector<VFWord> vf_ball(const VFGroup& G, int r);

}  // namespace bdrep
