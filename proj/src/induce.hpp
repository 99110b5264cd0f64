#pragma once

#include "multrep.hpp"
#include "subgroups.hpp"

#include <memory>

namespace bdrep {

struct LayoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Block positions of the induced V_a: offsets[a][i] is where the block of
/// pairs[a][i] starts.
struct InducedLayout {
    std::vector<std::vector<LayoutPair>> pairs;
    std::vector<std::vector<int>> offsets;
};

struct InducedSystem {
    SystemRef system;  // over the base alphabet
    InducedLayout layout;
};

/// Induces a system over the subgroup alphabet A′ to the whole free group.
InducedSystem induce_system(const InnerSystem& sub, const SchreierData& S);

/// Element of the induced space: one vector over the A′ system per coset,
/// blocks[c] = the function h ↦ F(u⁻¹h) with u the representative of c.
struct IndVector {
    std::shared_ptr<const SchreierData> schreier;
    std::vector<MultVector> blocks;
};

/// Vector supported on one coset (other blocks zero at depth 1).
IndVector ind_vector(std::shared_ptr<const SchreierData> S, const SystemRef& sub, int coset, const MultVector& block);

IndVector ind_random(std::shared_ptr<const SchreierData> S, const SystemRef& sub, int depth, std::mt19937_64& rng);

cplx ind_inner(const IndVector& F, const IndVector& G);

/// Induced action: (ρ(x)F)_u = π0(γ) F_{u′} where u·x = γ·u′.
IndVector ind_act(const Word& x, const IndVector& F);

/// ⟨ρ(x)F, G⟩ routed through the coset table: Σ_u ⟨π0(γ_u) F_{u′}, G_u⟩.
cplx ind_coefficient(const Word& x, const IndVector& F, const IndVector& G, Backend backend = Backend::Fast);

/// Π(1_{∂Γ(y)}): restricts each block to the subgroup words h whose
/// boundary direction u⁻¹h lies in ∂Γ(y).
IndVector ind_boundary_op(const Word& y, const IndVector& F);

/// F evaluated at g ∈ Γ (a value in V_{c′} for the last A′-letter c′ of the
/// subgroup part).  Throws LayoutError if the presentation is too shallow.
Vec ind_eval(const IndVector& F, const Word& g, Letter* last_gen = nullptr);

/// J F at depth M over the induced system.
MultVector intertwiner_J(const IndVector& F, const InducedSystem& ind, int depth);

/// J F at the smallest depth where all required values exist, checked for
/// consistency one level deeper.
MultVector intertwiner_J_auto(const IndVector& F, const InducedSystem& ind, int max_depth = 14);

}  // namespace bdrep
