#include "subgroups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace bdrep {

FiniteGroup::FiniteGroup(int order, std::vector<int> table) : order_(order), table_(std::move(table)) {
    if (order_ < 1) throw SubgroupError("finite group: order must be positive");
    if (static_cast<long>(table_.size()) != static_cast<long>(order_) * order_)
        throw SubgroupError("finite group: multiplication table has the wrong size");
    for (int v : table_)
        if (v < 0 || v >= order_) throw SubgroupError("finite group: table entry out of range");
    for (int x = 0; x < order_; ++x)
        if (mul(0, x) != x || mul(x, 0) != x) throw SubgroupError("finite group: element 0 is not the identity");
    for (int x = 0; x < order_; ++x) {
        std::vector<bool> seen(static_cast<std::size_t>(order_), false);
        for (int y = 0; y < order_; ++y) seen[static_cast<std::size_t>(mul(x, y))] = true;
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw SubgroupError("finite group: table is not a Latin square");
    }
    for (int x = 0; x < order_; ++x)
        for (int y = 0; y < order_; ++y)
            for (int z = 0; z < order_; ++z)
                if (mul(mul(x, y), z) != mul(x, mul(y, z))) throw SubgroupError("finite group: table is not associative");
}

FiniteGroup FiniteGroup::cyclic_product(const std::vector<int>& orders) {
    int n = 1;
    for (int m : orders) {
        if (m < 1) throw SubgroupError("cyclic factor orders must be positive");
        n *= m;
    }
    std::vector<int> table(static_cast<std::size_t>(n * n));
    auto coords = [&](int x) {
        std::vector<int> c;
        for (int m : orders) {
            c.push_back(x % m);
            x /= m;
        }
        return c;
    };
    for (int x = 0; x < n; ++x) {
        const auto cx = coords(x);
        for (int y = 0; y < n; ++y) {
            const auto cy = coords(y);
            std::vector<int> s(orders.size());
            for (std::size_t i = 0; i < orders.size(); ++i) s[i] = (cx[i] + cy[i]) % orders[i];
            table[static_cast<std::size_t>(x * n + y)] = cyclic_element(orders, s);
        }
    }
    return FiniteGroup(n, std::move(table));
}

int FiniteGroup::cyclic_element(const std::vector<int>& orders, const std::vector<int>& coords) {
    if (coords.size() != orders.size()) throw SubgroupError("element coordinates do not match the factors");
    int x = 0;
    for (std::size_t i = orders.size(); i-- > 0;) {
        const int m = orders[i];
        x = x * m + ((coords[i] % m) + m) % m;
    }
    return x;
}

int FiniteGroup::inv(int x) const {
    for (int y = 0; y < order_; ++y)
        if (mul(x, y) == 0) return y;
    throw SubgroupError("finite group: element without inverse");
}

int CosetTable::walk(const Word& w, int start) const {
    int c = start;
    for (Letter a : w) c = act(c, a);
    return c;
}

CosetTable coset_table_from_quotient(const Alphabet& A, const QuotientSpec& spec) {
    const FiniteGroup& Q = spec.group;
    if (static_cast<int>(spec.images.size()) != A.size())
        throw SubgroupError("quotient: one image per letter expected");
    for (Letter a = 0; a < A.size(); ++a) {
        const int x = spec.images[static_cast<std::size_t>(a)];
        if (x < 0 || x >= Q.order()) throw SubgroupError("quotient: image of '" + A.name(a) + "' out of range");
        if (spec.images[static_cast<std::size_t>(A.inverse(a))] != Q.inv(x))
            throw SubgroupError("quotient: images of '" + A.name(a) + "' and '" + A.name(A.inverse(a)) +
                                "' are not inverse to each other");
    }
    std::vector<int> K = spec.subgroup;
    if (K.empty()) K.push_back(0);
    std::set<int> Kset(K.begin(), K.end());
    for (int k : Kset) {
        if (k < 0 || k >= Q.order()) throw SubgroupError("quotient: subgroup element out of range");
        for (int l : Kset)
            if (!Kset.count(Q.mul(k, l))) throw SubgroupError("quotient: subgroup list is not closed under products");
    }
    if (!Kset.count(0)) throw SubgroupError("quotient: subgroup list lacks the identity");

    // Coset K·q is labelled by its smallest element.
    auto label = [&](int q) {
        int m = Q.order();
        for (int k : Kset) m = std::min(m, Q.mul(k, q));
        return m;
    };
    std::map<int, int> number;
    std::vector<int> labels;
    std::deque<int> queue;
    number[label(0)] = 0;
    labels.push_back(label(0));
    queue.push_back(0);
    std::vector<int> elem{0};
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < A.size(); ++a) {
            const int q = Q.mul(elem[static_cast<std::size_t>(c)], spec.images[static_cast<std::size_t>(a)]);
            const int l = label(q);
            if (!number.count(l)) {
                number[l] = static_cast<int>(labels.size());
                labels.push_back(l);
                elem.push_back(q);
                queue.push_back(number[l]);
            }
        }
    }
    CosetTable T;
    T.index = static_cast<int>(labels.size());
    T.letters = A.size();
    T.action.resize(static_cast<std::size_t>(T.index * T.letters));
    for (int c = 0; c < T.index; ++c)
        for (Letter a = 0; a < A.size(); ++a)
            T.action[static_cast<std::size_t>(c * T.letters + a)] =
                number.at(label(Q.mul(elem[static_cast<std::size_t>(c)], spec.images[static_cast<std::size_t>(a)])));
    return T;
}

namespace {

std::string generator_name(const Alphabet& A, const Word& w) {
    std::string s = A.format(w);
    std::replace(s.begin(), s.end(), '.', '_');
    return s;
}

}  // namespace

SchreierData schreier(const Alphabet& A, const CosetTable& T) {
    if (T.letters != A.size() || static_cast<int>(T.action.size()) != T.index * T.letters)
        throw SubgroupError("schreier: coset table does not match the alphabet");
    for (int c = 0; c < T.index; ++c)
        for (Letter a = 0; a < A.size(); ++a) {
            const int d = T.act(c, a);
            if (d < 0 || d >= T.index) throw SubgroupError("schreier: coset table entry out of range");
            if (T.act(d, A.inverse(a)) != c) throw SubgroupError("schreier: inverse letters do not act inversely");
        }

    SchreierData S;
    S.base = A;
    S.table = T;
    S.transversal.assign(static_cast<std::size_t>(T.index), Word{});
    std::vector<bool> seen(static_cast<std::size_t>(T.index), false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        for (Letter a = 0; a < A.size(); ++a) {
            const int d = T.act(c, a);
            if (seen[static_cast<std::size_t>(d)]) continue;
            seen[static_cast<std::size_t>(d)] = true;
            Word w = S.transversal[static_cast<std::size_t>(c)];
            w.push_back(a);
            S.transversal[static_cast<std::size_t>(d)] = w;
            queue.push_back(d);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw SubgroupError("schreier: coset table is disconnected");

    // Schreier generators u·a·rep(ua)⁻¹, paired with their inverses.
    std::map<Word, int> middle_of;
    for (int c = 0; c < T.index; ++c)
        for (Letter a = 0; a < A.size(); ++a) {
            const Word& u = S.rep(c);
            const Word w = multiply(A, multiply(A, u, Word{a}), inverse(A, S.rep(T.act(c, a))));
            if (!w.empty()) middle_of[w] = static_cast<int>(u.size());
        }
    std::vector<Word> reps;
    for (const auto& [w, m] : middle_of) {
        const Word wi = inverse(A, w);
        if (!middle_of.count(wi)) throw SubgroupError("schreier: generator set is not closed under inversion");
        if (!shortlex_less(wi, w)) reps.push_back(w);
    }
    std::sort(reps.begin(), reps.end(), shortlex_less);
    std::vector<std::string> names;
    std::vector<Letter> inv;
    for (const Word& w : reps) {
        for (const Word& v : {w, inverse(A, w)}) {
            S.generators.push_back(v);
            S.middle.push_back(middle_of.at(v));
            names.push_back(generator_name(A, v));
        }
        const auto k = static_cast<Letter>(S.generators.size());
        inv.push_back(k - 1);
        inv.push_back(k - 2);
    }
    if (S.generators.size() < 4)
        throw SubgroupError("schreier: subgroup has rank below 2");
    S.sub_alphabet = Alphabet(names, inv);

    std::map<Word, int> gen_index;
    for (std::size_t i = 0; i < S.generators.size(); ++i) gen_index[S.generators[i]] = static_cast<int>(i);
    S.gen_of.assign(static_cast<std::size_t>(T.index * A.size()), -1);
    for (int c = 0; c < T.index; ++c)
        for (Letter a = 0; a < A.size(); ++a) {
            const Word w = multiply(A, multiply(A, S.rep(c), Word{a}), inverse(A, S.rep(T.act(c, a))));
            if (!w.empty()) S.gen_of[static_cast<std::size_t>(c * A.size() + a)] = gen_index.at(w);
        }

    // Layout pairs and P(a).
    S.pairs.assign(static_cast<std::size_t>(A.size()), {});
    S.P.assign(static_cast<std::size_t>(A.size()), {});
    std::set<Word> all;
    for (int c = 0; c < T.index; ++c)
        for (std::size_t g = 0; g < S.generators.size(); ++g) {
            Word w = multiply(A, inverse(A, S.rep(c)), S.generators[g]);
            if (w.empty()) throw SubgroupError("schreier: transversal meets the subgroup");
            if (!all.insert(w).second) throw SubgroupError("schreier: pairs (u, c') do not determine u⁻¹c'");
            S.pairs[static_cast<std::size_t>(w.front())].push_back({c, static_cast<Letter>(g), w});
        }
    for (Letter a = 0; a < A.size(); ++a) {
        for (const auto& p : S.pairs[static_cast<std::size_t>(a)]) S.P[static_cast<std::size_t>(a)].push_back(p.word);
        std::sort(S.P[static_cast<std::size_t>(a)].begin(), S.P[static_cast<std::size_t>(a)].end(), shortlex_less);
    }
    return S;
}

int coset_of(const SchreierData& S, const Word& g) { return S.table.walk(g); }

Word rewrite_to_subgroup(const SchreierData& S, const Word& w) {
    const auto& A = S.base;
    if (!is_reduced(A, w)) throw WordError("rewrite: word is not reduced");
    Word out;
    int c = 0;
    for (Letter a : w) {
        const int g = S.gen_of[static_cast<std::size_t>(c * A.size() + a)];
        if (g >= 0) out.push_back(g);
        c = S.table.act(c, a);
    }
    if (c != 0) throw SubgroupError("rewrite: '" + A.format(w) + "' is not in the subgroup");
    return reduce(S.sub_alphabet, out);
}

Word expand(const SchreierData& S, const Word& w) {
    Word out;
    for (Letter g : w) out = multiply(S.base, out, S.generators[static_cast<std::size_t>(g)]);
    return out;
}

std::vector<std::string> check_schreier(const SchreierData& S) {
    std::vector<std::string> out;
    const auto& A = S.base;
    const int n = S.index();
    std::set<Word> D(S.transversal.begin(), S.transversal.end());
    if (static_cast<int>(D.size()) != n) out.push_back("transversal has repeated words");
    for (const Word& u : S.transversal) {
        if (!u.empty() && !D.count(Word(u.begin(), u.end() - 1))) out.push_back("transversal is not prefix-closed");
        if (coset_of(S, u) != static_cast<int>(&u - S.transversal.data())) out.push_back("representative in the wrong coset");
    }
    const int rank = static_cast<int>(S.generators.size()) / 2;
    if (rank != 1 + n * (A.rank() - 1)) out.push_back("generator count violates the Nielsen-Schreier rank formula");
    for (const Word& g : S.generators) {
        if (coset_of(S, g) != 0) out.push_back("generator '" + A.format(g) + "' is outside the subgroup");
        std::size_t best = SIZE_MAX;
        for (const Word& u : S.transversal)
            for (const Word& v : S.transversal)
                best = std::min(best, multiply(A, inverse(A, u), multiply(A, g, v)).size());
        if (best != 1) out.push_back("generator '" + A.format(g) + "' moves the transversal by distance " + std::to_string(best));
    }
    std::size_t count = 0;
    for (const auto& p : S.pairs) count += p.size();
    if (count != S.transversal.size() * S.generators.size()) out.push_back("pair count differs from |D|·|A'|");
    return out;
}

}  // namespace bdrep
