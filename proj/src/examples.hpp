#pragma once

#include "multrep.hpp"

#include <random>

namespace bdrep {

/// All dims 1, H_{ba} = h for ba ≠ e.
MatrixSystem spherical_system(const Alphabet& A, double h);

/// Spherical system with h = (|A|-1)^{-1/2} and B_a = 1.
SystemRef spherical_inner(const Alphabet& A);

/// Dims drawn from 1..max_dim, complex Gaussian maps (zero across inverse pairs).
MatrixSystem random_system(const Alphabet& A, int max_dim, std::mt19937_64& rng);

/// normalize() followed by conversion of the forms to Σ tr B_a = Σ dim V_a.
SystemRef normalized_inner(const MatrixSystem& S);

/// Block-diagonal sum of two systems over the same alphabet.
InnerSystem direct_sum(const InnerSystem& x, const InnerSystem& y);

/// Conjugates every V_a by a random unitary; forms follow.
InnerSystem conjugate_randomly(const InnerSystem& S, std::mt19937_64& rng);

/// Spherical rank-2 system ⊕ a 1-dim system with weight √(1/2) on the
/// diagonal b = a and √(1/4) elsewhere, randomly conjugated: a compatible
/// pair with exactly two non-isomorphic irreducible summands.
InnerSystem two_component_system(std::mt19937_64& rng);

/// Tr of the compression of π(x) to the depth-1 vectors:
/// Σ_i ⟨π(x) e_i, e_i⟩ over a B-orthonormal basis e_i of the seeds at
/// single letters.  Invariant under isomorphisms of systems.
cplx seed_trace(const SystemRef& sys, const Word& x);

}  // namespace bdrep
