#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bdrep {

using Letter = int;

/// A reduced word, stored as letter indices into an Alphabet.  The empty
/// vector is the identity.
using Word = std::vector<Letter>;

struct WordError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Default limit on the number of words a sphere may hold before any
/// operation refuses to materialize it.
inline constexpr std::uint64_t kDefaultSphereCap = 10'000'000;

/// Finite symmetric set of free generators.  Letters are indices; the
/// involution is a lookup table without fixed points.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(std::vector<std::string> names, std::vector<Letter> inverse);

    /// Free generators named `a, b, c, ...`, inverses by upper case:
    /// order is a, A, b, B, ...
    static Alphabet standard(int rank);

    int size() const { return static_cast<int>(names_.size()); }
    int rank() const { return size() / 2; }
    Letter inverse(Letter x) const { return inverse_[static_cast<std::size_t>(x)]; }
    const std::string& name(Letter x) const { return names_[static_cast<std::size_t>(x)]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Letter> find(std::string_view name) const;

    /// Parses a concatenation of letter names.  "e" or "" is the identity.
    /// The result is freely reduced.
    Word parse(std::string_view text) const;
    std::string format(const Word& w) const;

    bool operator==(const Alphabet& o) const { return names_ == o.names_ && inverse_ == o.inverse_; }

private:
    std::vector<std::string> names_;
    std::vector<Letter> inverse_;
};

Word inverse(const Alphabet& A, const Word& w);
Word multiply(const Alphabet& A, const Word& x, const Word& y);
Word reduce(const Alphabet& A, const Word& w);
bool is_reduced(const Alphabet& A, const Word& w);

/// Length of the cancellation when x and y are concatenated.
std::size_t cancellation(const Alphabet& A, const Word& x, const Word& y);

bool starts_with(const Word& w, const Word& prefix);

/// Power w^n for n >= 0.
Word power(const Alphabet& A, const Word& w, int n);

/// Number of reduced words of length r.
std::uint64_t sphere_size(const Alphabet& A, int r);

/// Streams every reduced word of length r in index order.
void for_each_in_sphere(const Alphabet& A, int r, const std::function<void(const Word&)>& visit);

/// All reduced words of length r; throws CapExceeded above `cap`.
std::vector<Word> sphere(const Alphabet& A, int r, std::uint64_t cap = kDefaultSphereCap);

/// All reduced words of length <= r, shortlex order.
std::vector<Word> ball(const Alphabet& A, int r, std::uint64_t cap = kDefaultSphereCap);

/// Position of a reduced word of length |w| in the index order of its sphere.
std::uint64_t sphere_index(const Alphabet& A, const Word& w);
Word sphere_word(const Alphabet& A, int r, std::uint64_t index);

/// Shortlex comparison (length first, then letter indices).
bool shortlex_less(const Word& x, const Word& y);

/// Cylinder ∂Γ(stem): boundary points whose reduced ray begins with stem.
struct Cylinder {
    Word stem;
    bool operator==(const Cylinder& o) const { return stem == o.stem; }
    bool operator<(const Cylinder& o) const { return shortlex_less(stem, o.stem); }
};

/// Pairwise disjoint cylinders.
using CylinderUnion = std::vector<Cylinder>;

/// x · ∂Γ(C.stem) as a disjoint union of cylinders, sorted shortlex.
CylinderUnion cylinder_image(const Alphabet& A, const Word& x, const Cylinder& C);

/// All cylinders of stem length `depth` inside C.
CylinderUnion refine(const Alphabet& A, const Cylinder& C, int depth);

/// Refines every part of U to stems of length `depth` (parts longer than
/// depth are kept as they are).
CylinderUnion refine_union(const Alphabet& A, const CylinderUnion& U, int depth);

/// True if no stem in U is a prefix of another.
bool is_disjoint(const CylinderUnion& U);

}  // namespace bdrep
