#include "words.hpp"

#include <algorithm>
#include <cctype>

namespace bdrep {

Alphabet::Alphabet(std::vector<std::string> names, std::vector<Letter> inverse)
    : names_(std::move(names)), inverse_(std::move(inverse)) {
    if (names_.size() != inverse_.size())
        throw WordError("alphabet: involution table size differs from letter count");
    if (names_.size() < 4 || names_.size() % 2 != 0)
        throw WordError("alphabet: need an even number of letters, at least 4 (rank >= 2)");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const Letter j = inverse_[i];
        if (j < 0 || static_cast<std::size_t>(j) >= names_.size())
            throw WordError("alphabet: involution maps '" + names_[i] + "' out of range");
        if (static_cast<std::size_t>(j) == i)
            throw WordError("alphabet: letter '" + names_[i] + "' is its own inverse");
        if (static_cast<std::size_t>(inverse_[static_cast<std::size_t>(j)]) != i)
            throw WordError("alphabet: involution is not an involution at '" + names_[i] + "'");
        if (names_[i].empty() || names_[i] == "e")
            throw WordError("alphabet: letter names must be nonempty and differ from 'e'");
        for (std::size_t k = 0; k < i; ++k)
            if (names_[k] == names_[i]) throw WordError("alphabet: duplicate letter '" + names_[i] + "'");
    }
}

Alphabet Alphabet::standard(int rank) {
    if (rank < 2 || rank > 26) throw WordError("standard alphabet: rank must be in [2, 26]");
    std::vector<std::string> names;
    std::vector<Letter> inv;
    for (int i = 0; i < rank; ++i) {
        const char c = static_cast<char>('a' + i);
        names.emplace_back(1, c);
        names.emplace_back(1, static_cast<char>(std::toupper(c)));
        inv.push_back(2 * i + 1);
        inv.push_back(2 * i);
    }
    return Alphabet(std::move(names), std::move(inv));
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<Letter>(i);
    return std::nullopt;
}

Word Alphabet::parse(std::string_view text) const {
    Word out;
    if (text.empty() || text == "e") return out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == '.' || c == ' ' || c == '*') {
            ++pos;
            continue;
        }
        // greedy longest match
        std::size_t best_len = 0;
        Letter best = -1;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (n.size() > best_len && text.substr(pos, n.size()) == n) {
                best_len = n.size();
                best = static_cast<Letter>(i);
            }
        }
        if (best < 0)
            throw WordError("cannot parse word '" + std::string(text) + "' at offset " + std::to_string(pos));
        out.push_back(best);
        pos += best_len;
    }
    return reduce(*this, out);
}

std::string Alphabet::format(const Word& w) const {
    if (w.empty()) return "e";
    bool multi = false;
    for (const auto& n : names_) multi = multi || n.size() > 1;
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (multi && i > 0) s += '.';
        s += name(w[i]);
    }
    return s;
}

Word inverse(const Alphabet& A, const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) x = A.inverse(x);
    return out;
}

Word reduce(const Alphabet& A, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (Letter x : w) {
        if (!out.empty() && out.back() == A.inverse(x))
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

bool is_reduced(const Alphabet& A, const Word& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i + 1] == A.inverse(w[i])) return false;
    for (Letter x : w)
        if (x < 0 || x >= A.size()) return false;
    return true;
}

std::size_t cancellation(const Alphabet& A, const Word& x, const Word& y) {
    std::size_t k = 0;
    while (k < x.size() && k < y.size() && y[k] == A.inverse(x[x.size() - 1 - k])) ++k;
    return k;
}

Word multiply(const Alphabet& A, const Word& x, const Word& y) {
    const std::size_t k = cancellation(A, x, y);
    Word out(x.begin(), x.end() - static_cast<std::ptrdiff_t>(k));
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(k), y.end());
    return out;
}

bool starts_with(const Word& w, const Word& prefix) {
    return prefix.size() <= w.size() && std::equal(prefix.begin(), prefix.end(), w.begin());
}

Word power(const Alphabet& A, const Word& w, int n) {
    Word out;
    for (int i = 0; i < n; ++i) out = multiply(A, out, w);
    return out;
}

std::uint64_t sphere_size(const Alphabet& A, int r) {
    if (r < 0) return 0;
    if (r == 0) return 1;
    std::uint64_t n = static_cast<std::uint64_t>(A.size());
    const auto q = static_cast<std::uint64_t>(A.size() - 1);
    for (int i = 1; i < r; ++i) {
        if (n > UINT64_MAX / q) return UINT64_MAX;
        n *= q;
    }
    return n;
}

namespace {

void extend(const Alphabet& A, Word& w, int r, const std::function<void(const Word&)>& visit) {
    if (static_cast<int>(w.size()) == r) {
        visit(w);
        return;
    }
    for (Letter c = 0; c < A.size(); ++c) {
        if (!w.empty() && c == A.inverse(w.back())) continue;
        w.push_back(c);
        extend(A, w, r, visit);
        w.pop_back();
    }
}

}  // namespace

void for_each_in_sphere(const Alphabet& A, int r, const std::function<void(const Word&)>& visit) {
    if (r < 0) throw WordError("sphere radius must be nonnegative");
    Word w;
    w.reserve(static_cast<std::size_t>(r));
    extend(A, w, r, visit);
}

std::vector<Word> sphere(const Alphabet& A, int r, std::uint64_t cap) {
    const auto n = sphere_size(A, r);
    if (n > cap)
        throw CapExceeded("sphere of radius " + std::to_string(r) + " has " + std::to_string(n) +
                          " words, above the cap of " + std::to_string(cap));
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(n));
    for_each_in_sphere(A, r, [&](const Word& w) { out.push_back(w); });
    return out;
}

std::vector<Word> ball(const Alphabet& A, int r, std::uint64_t cap) {
    std::vector<Word> out;
    for (int k = 0; k <= r; ++k) {
        auto s = sphere(A, k, cap);
        out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
        if (out.size() > cap) throw CapExceeded("ball of radius " + std::to_string(r) + " exceeds the cap");
    }
    return out;
}

std::uint64_t sphere_index(const Alphabet& A, const Word& w) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i == 0) {
            idx = static_cast<std::uint64_t>(w[0]);
        } else {
            const Letter forbidden = A.inverse(w[i - 1]);
            const Letter code = w[i] < forbidden ? w[i] : w[i] - 1;
            idx = idx * static_cast<std::uint64_t>(A.size() - 1) + static_cast<std::uint64_t>(code);
        }
    }
    return idx;
}

Word sphere_word(const Alphabet& A, int r, std::uint64_t index) {
    Word w(static_cast<std::size_t>(r));
    if (r == 0) return w;
    std::vector<std::uint64_t> codes(static_cast<std::size_t>(r));
    const auto q = static_cast<std::uint64_t>(A.size() - 1);
    for (int i = r - 1; i >= 1; --i) {
        codes[static_cast<std::size_t>(i)] = index % q;
        index /= q;
    }
    codes[0] = index;
    w[0] = static_cast<Letter>(codes[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        const Letter forbidden = A.inverse(w[i - 1]);
        const auto c = static_cast<Letter>(codes[i]);
        w[i] = c < forbidden ? c : c + 1;
    }
    return w;
}

bool shortlex_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

CylinderUnion cylinder_image(const Alphabet& A, const Word& x, const Cylinder& C) {
    if (C.stem.empty()) throw WordError("cylinder_image: empty stem");
    CylinderUnion out;
    // Refine C until the cancellation against x stops inside the stem.
    std::vector<Word> pending{C.stem};
    while (!pending.empty()) {
        Word s = std::move(pending.back());
        pending.pop_back();
        if (cancellation(A, x, s) < s.size()) {
            out.push_back({multiply(A, x, s)});
            continue;
        }
        for (Letter c = 0; c < A.size(); ++c) {
            if (c == A.inverse(s.back())) continue;
            Word t = s;
            t.push_back(c);
            pending.push_back(std::move(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CylinderUnion refine(const Alphabet& A, const Cylinder& C, int depth) {
    if (C.stem.empty()) throw WordError("refine: empty stem");
    if (depth < static_cast<int>(C.stem.size())) throw WordError("refine: depth shorter than the stem");
    CylinderUnion out;
    Word w = C.stem;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(w.size()) == depth) {
            out.push_back({w});
            return;
        }
        for (Letter c = 0; c < A.size(); ++c) {
            if (c == A.inverse(w.back())) continue;
            w.push_back(c);
            rec();
            w.pop_back();
        }
    };
    rec();
    return out;
}

CylinderUnion refine_union(const Alphabet& A, const CylinderUnion& U, int depth) {
    CylinderUnion out;
    for (const auto& C : U) {
        if (static_cast<int>(C.stem.size()) >= depth) {
            out.push_back(C);
            continue;
        }
        auto r = refine(A, C, depth);
        out.insert(out.end(), r.begin(), r.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_disjoint(const CylinderUnion& U) {
    for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t j = 0; j < U.size(); ++j)
            if (i != j && starts_with(U[j].stem, U[i].stem)) return false;
    return true;
}

}  // namespace bdrep
