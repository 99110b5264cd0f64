#include "vfgroup.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace bdrep {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

void push_syllable(const VFGroup& G, VFWord& w, int factor, int exponent) {
    const int m = G.orders[static_cast<std::size_t>(factor)];
    exponent = mod(exponent, m);
    if (exponent == 0) return;
    if (!w.empty() && w.back().first == factor) {
        const int e = mod(w.back().second + exponent, m);
        if (e == 0)
            w.pop_back();
        else
            w.back().second = e;
        return;
    }
    w.emplace_back(factor, exponent);
}

}  // namespace

VFWord vf_multiply(const VFGroup& G, const VFWord& x, const VFWord& y) {
    VFWord out = x;
    for (const auto& [f, e] : y) push_syllable(G, out, f, e);
    return out;
}

VFWord vf_inverse(const VFGroup& G, const VFWord& x) {
    VFWord out;
    for (auto it = x.rbegin(); it != x.rend(); ++it) push_syllable(G, out, it->first, -it->second);
    return out;
}

VFWord vf_generator(const VFGroup& G, int factor, int exponent) {
    if (factor < 0 || factor >= G.factors()) throw VFError("generator index out of range");
    VFWord w;
    push_syllable(G, w, factor, exponent);
    return w;
}

VFWord vf_parse(const VFGroup& G, std::string_view text) {
    VFWord out;
    std::size_t pos = 0;
    if (text == "e" || text.empty()) return out;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c == ' ' || c == '.' || c == '*') {
            ++pos;
            continue;
        }
        int best = -1;
        std::size_t len = 0;
        for (int i = 0; i < G.factors(); ++i) {
            const auto& n = G.names[static_cast<std::size_t>(i)];
            if (n.size() > len && text.substr(pos, n.size()) == n) {
                best = i;
                len = n.size();
            }
        }
        if (best < 0) throw VFError("cannot parse group word '" + std::string(text) + "'");
        pos += len;
        int e = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            std::size_t end = pos;
            if (end < text.size() && text[end] == '-') ++end;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
            if (end == pos) throw VFError("missing exponent in '" + std::string(text) + "'");
            e = std::stoi(std::string(text.substr(pos, end - pos)));
            pos = end;
        }
        push_syllable(G, out, best, e);
    }
    return out;
}

std::string vf_format(const VFGroup& G, const VFWord& x) {
    if (x.empty()) return "e";
    std::string s;
    for (const auto& [f, e] : x) {
        s += G.names[static_cast<std::size_t>(f)];
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

int vf_length(const VFGroup& G, const VFWord& x) {
    int n = 0;
    for (const auto& [f, e] : x) n += std::min(e, G.orders[static_cast<std::size_t>(f)] - e);
    return n;
}

VFWord vf_expand(const VFDatum& D, const Word& w) {
    VFWord out;
    for (Letter l : w) {
        const VFWord& b = D.free_basis[static_cast<std::size_t>(l / 2)];
        out = vf_multiply(D.group, out, l % 2 == 0 ? b : vf_inverse(D.group, b));
    }
    return out;
}

int vf_find(const VFDatum& D, const VFWord& x) {
    for (int t = 0; t < D.index(); ++t)
        if (D.transversal[static_cast<std::size_t>(t)] == x) return t;
    return -1;
}

std::pair<int, Word> vf_route(const VFDatum& D, int t, const VFWord& lambda) {
    const int k = D.group.factors();
    if (static_cast<int>(D.next.size()) != D.index() * k) throw VFError("route: factorization table is incomplete");
    Word w;
    for (const auto& [f, e] : lambda) {
        for (int i = 0; i < e; ++i) {
            const auto idx = static_cast<std::size_t>(t * k + f);
            w = multiply(D.free_alphabet, w, D.cocycle[idx]);
            t = D.next[idx];
        }
    }
    return {t, w};
}

void vf_fill_table(VFDatum& D, int max_length) {
    const int k = D.group.factors();
    const int r = D.rank();
    if (r < 2) throw VFError("factorization table: free subgroup rank " + std::to_string(r) + " is below 2");
    D.free_alphabet = Alphabet::standard(r);
    std::vector<Word> words = ball(D.free_alphabet, max_length);
    std::vector<VFWord> values;
    for (const Word& w : words) values.push_back(vf_expand(D, w));
    D.next.assign(static_cast<std::size_t>(D.index() * k), -1);
    D.cocycle.assign(static_cast<std::size_t>(D.index() * k), Word{});
    for (int t = 0; t < D.index(); ++t)
        for (int i = 0; i < k; ++i) {
            const VFWord ts = vf_multiply(D.group, D.transversal[static_cast<std::size_t>(t)], vf_generator(D.group, i));
            bool found = false;
            for (int t2 = 0; t2 < D.index() && !found; ++t2) {
                const VFWord target = vf_multiply(D.group, ts, vf_inverse(D.group, D.transversal[static_cast<std::size_t>(t2)]));
                for (std::size_t j = 0; j < words.size(); ++j)
                    if (values[j] == target) {
                        D.next[static_cast<std::size_t>(t * k + i)] = t2;
                        D.cocycle[static_cast<std::size_t>(t * k + i)] = words[j];
                        found = true;
                        break;
                    }
            }
            if (!found)
                throw VFError("factorization table: no entry found for (" +
                              vf_format(D.group, D.transversal[static_cast<std::size_t>(t)]) + ", " +
                              D.group.names[static_cast<std::size_t>(i)] + ")");
        }
}

std::vector<std::string> vf_validate(const VFDatum& D, int probes, std::uint64_t seed) {
    std::vector<std::string> out;
    const VFGroup& G = D.group;
    const int k = G.factors();
    if (k < 1 || G.names.size() != G.orders.size()) {
        out.push_back("group needs one name per cyclic factor");
        return out;
    }
    for (int m : G.orders)
        if (m < 2) out.push_back("cyclic factor orders must be at least 2");
    if (!out.empty()) return out;
    if (D.transversal.empty() || !D.transversal[0].empty()) out.push_back("transversal must start with the identity");
    std::set<VFWord> tset(D.transversal.begin(), D.transversal.end());
    if (tset.size() != D.transversal.size()) out.push_back("transversal has repeated elements");
    // rank gate and Euler characteristic: 1 - rank = index * (Σ 1/m_i - (k - 1))
    if (D.rank() < 2) {
        out.push_back("free subgroup has rank " + std::to_string(D.rank()) + ", below the required rank 2");
        return out;
    }
    if (static_cast<int>(D.next.size()) != D.index() * k || D.cocycle.size() != D.next.size()) {
        out.push_back("factorization table is not total");
        return out;
    }
    double chi = 1.0 - k;
    for (int m : G.orders) chi += 1.0 / m;
    if (std::abs((1.0 - D.rank()) - D.index() * chi) > 1e-9)
        out.push_back("free basis size " + std::to_string(D.rank()) + " contradicts the Euler characteristic at index " +
                      std::to_string(D.index()));
    // every entry by normal forms
    for (int t = 0; t < D.index(); ++t)
        for (int i = 0; i < k; ++i) {
            const auto idx = static_cast<std::size_t>(t * k + i);
            const int t2 = D.next[idx];
            if (t2 < 0 || t2 >= D.index()) {
                out.push_back("table entry (" + std::to_string(t) + "," + G.names[static_cast<std::size_t>(i)] + ") is out of range");
                continue;
            }
            const VFWord lhs = vf_multiply(G, D.transversal[static_cast<std::size_t>(t)], vf_generator(G, i));
            const VFWord rhs = vf_multiply(G, vf_expand(D, D.cocycle[idx]), D.transversal[static_cast<std::size_t>(t2)]);
            if (lhs != rhs)
                out.push_back("table entry (" + vf_format(G, D.transversal[static_cast<std::size_t>(t)]) + ", " +
                              G.names[static_cast<std::size_t>(i)] + ") fails: " + vf_format(G, lhs) + " != " +
                              vf_format(G, rhs));
        }
    if (D.free_alphabet.rank() != D.rank()) out.push_back("free alphabet rank differs from the free basis size");
    if (!out.empty()) return out;
    // random routing probes: t·λ = w·t′ for composite λ
    std::mt19937_64 rng(seed);
    for (int p = 0; p < probes; ++p) {
        const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(D.index()));
        VFWord lambda;
        const int len = 1 + static_cast<int>(rng() % 8);
        for (int j = 0; j < len; ++j) {
            const int f = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
            lambda = vf_multiply(G, lambda, vf_generator(G, f, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(G.orders[static_cast<std::size_t>(f)] - 1))));
        }
        const auto [t2, w] = vf_route(D, t, lambda);
        const VFWord lhs = vf_multiply(G, D.transversal[static_cast<std::size_t>(t)], lambda);
        const VFWord rhs = vf_multiply(G, vf_expand(D, w), D.transversal[static_cast<std::size_t>(t2)]);
        if (lhs != rhs) {
            out.push_back("routing probe " + std::to_string(p) + " fails for " + vf_format(G, lambda));
            break;
        }
    }
    // freeness evidence: short nontrivial free words avoid T
    for (const Word& w : ball(D.free_alphabet, 4)) {
        if (w.empty()) continue;
        const VFWord x = vf_expand(D, w);
        if (x.empty() || tset.count(x)) {
            out.push_back("free word " + D.free_alphabet.format(w) + " lands in the transversal");
            break;
        }
    }
    return out;
}

VFDatum psl2z_datum() {
    VFDatum D;
    D.group = VFGroup{{2, 3}, {"s", "r"}};
    for (const char* t : {"e", "s", "r", "r^2", "sr", "sr^2"}) D.transversal.push_back(vf_parse(D.group, t));
    D.free_basis = {vf_parse(D.group, "srsr^2"), vf_parse(D.group, "sr^2sr")};
    vf_fill_table(D, 4);
    return D;
}

cplx vf_coefficient(const VFDatum& D, const VFWord& lambda, const std::vector<MultVector>& F,
                    const std::vector<MultVector>& G, Backend backend) {
    if (static_cast<int>(F.size()) != D.index() || static_cast<int>(G.size()) != D.index())
        throw VFError("induced vector needs one block per transversal element");
    cplx s = 0.0;
    for (int t = 0; t < D.index(); ++t) {
        const auto [t2, w] = vf_route(D, t, lambda);
        s += coefficient(w, F[static_cast<std::size_t>(t2)], G[static_cast<std::size_t>(t)], backend);
    }
    return s;
}

std::vector<VFWord> vf_ball(const VFGroup& G, int r) {
    std::vector<VFWord> out{VFWord{}};
    std::set<VFWord> seen{VFWord{}};
    std::size_t begin = 0;
    for (int step = 0; step < r; ++step) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int f = 0; f < G.factors(); ++f)
                for (int e : {1, -1}) {
                    VFWord w = vf_multiply(G, out[i], vf_generator(G, f, e));
                    if (seen.insert(w).second) out.push_back(std::move(w));
                }
        begin = end;
    }
    return out;
}

}  // namespace bdrep
