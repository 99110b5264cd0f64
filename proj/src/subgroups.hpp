#pragma once

#include "words.hpp"

#include <stdexcept>
#include <vector>

namespace bdrep {

struct SubgroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite group on {0..order-1} with identity 0, given by its
/// multiplication table.
class FiniteGroup {
public:
    FiniteGroup() : order_(1), table_{0} {}
    FiniteGroup(int order, std::vector<int> table);

    /// Z/m1 × ... × Z/mk, elements numbered in mixed radix (first factor fastest).
    static FiniteGroup cyclic_product(const std::vector<int>& orders);
    /// Element of cyclic_product(orders) with the given coordinates.
    static int cyclic_element(const std::vector<int>& orders, const std::vector<int>& coords);

    int order() const { return order_; }
    int mul(int x, int y) const { return table_[static_cast<std::size_t>(x * order_ + y)]; }
    int inv(int x) const;

private:
    int order_;
    std::vector<int> table_;
};

/// Homomorphism F_A -> Q given on letters, and a subgroup K of Q; the
/// subgroup of F_A is the preimage of K (K trivial: the kernel).
struct QuotientSpec {
    FiniteGroup group;
    std::vector<int> images;    // per letter
    std::vector<int> subgroup;  // elements of K; empty means {identity}
};

/// Right cosets Γ0·g numbered 0..index-1, basepoint 0 = Γ0.
struct CosetTable {
    int index = 1;
    int letters = 0;
    std::vector<int> action;  // coset * letters + letter -> coset·letter

    int act(int coset, Letter a) const { return action[static_cast<std::size_t>(coset * letters + a)]; }
    int walk(const Word& w, int start = 0) const;
};

CosetTable coset_table_from_quotient(const Alphabet& A, const QuotientSpec& spec);

/// Block index of the induced space at letter a: the pair (u, c′) and
/// the reduced word u⁻¹c′ it stands for.
struct LayoutPair {
    int coset;       // u = transversal[coset]
    Letter gen;      // c′, a letter of the subgroup alphabet
    Word word;       // reduce(u⁻¹ c′), starts with a
};

struct SchreierData {
    Alphabet base;
    CosetTable table;
    std::vector<Word> transversal;   // D, one representative per coset, prefix-closed
    std::vector<Word> generators;    // A′ as reduced words over the base alphabet
    std::vector<int> middle;         // position of the middle letter of each generator
    Alphabet sub_alphabet;           // letters of A′, inverse pairs adjacent
    std::vector<int> gen_of;         // coset * letters + a -> generator index, -1 if trivial
    std::vector<std::vector<LayoutPair>> pairs;  // per base letter
    std::vector<std::vector<Word>> P;            // per base letter, shortlex sorted

    int index() const { return table.index; }
    const Word& rep(int coset) const { return transversal[static_cast<std::size_t>(coset)]; }
};

/// Breadth-first shortlex transversal, symmetrized Schreier generators and
/// the sets P(a) = (D⁻¹·A′) ∩ Γ(a).
SchreierData schreier(const Alphabet& A, const CosetTable& T);

/// Coset of g (the representative's index).
int coset_of(const SchreierData& S, const Word& g);

/// Writes w ∈ Γ0 as a reduced word over A′.
Word rewrite_to_subgroup(const SchreierData& S, const Word& w);

/// Evaluates a word over A′ back in the base group.
Word expand(const SchreierData& S, const Word& w);

/// Consistency report: prefix closure, rank formula, distance condition,
/// P-table count.  Empty means consistent.
std::vector<std::string> check_schreier(const SchreierData& S);

}  // namespace bdrep
