#include "induce.hpp"

#include <map>

namespace bdrep {

InducedSystem induce_system(const InnerSystem& sub, const SchreierData& S) {
    const MatrixSystem& S0 = sub.system;
    const auto& A = S.base;
    if (!(S0.alphabet() == S.sub_alphabet))
        throw ValidationError("induce: system alphabet differs from the subgroup generators " +
                              std::to_string(S.sub_alphabet.size()) + " letters expected");
    if (auto d = validate(S0); !d.empty()) throw ValidationError("induce: invalid subgroup system: " + d.front());
    if (auto d = validate_forms(S0, sub.forms); !d.empty()) throw ValidationError("induce: " + d.front());

    InducedLayout L;
    L.pairs = S.pairs;
    L.offsets.resize(static_cast<std::size_t>(A.size()));
    std::vector<int> dims(static_cast<std::size_t>(A.size()), 0);
    // (coset, generator) -> index in pairs[a]; word -> (a, index)
    std::map<std::pair<int, Letter>, std::pair<Letter, int>> by_pair;
    std::map<Word, std::pair<Letter, int>> by_word;
    for (Letter a = 0; a < A.size(); ++a) {
        const auto& ps = L.pairs[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < ps.size(); ++i) {
            L.offsets[static_cast<std::size_t>(a)].push_back(dims[static_cast<std::size_t>(a)]);
            dims[static_cast<std::size_t>(a)] += S0.dim(ps[i].gen);
            by_pair[{ps[i].coset, ps[i].gen}] = {a, static_cast<int>(i)};
            by_word[ps[i].word] = {a, static_cast<int>(i)};
        }
    }

    MatrixSystem H(A, dims);
    for (Letter a = 0; a < A.size(); ++a) {
        for (Letter b = 0; b < A.size(); ++b) {
            if (b == A.inverse(a)) continue;
            Mat& M = H.map(b, a);
            const auto& targets = L.pairs[static_cast<std::size_t>(b)];
            for (std::size_t j = 0; j < targets.size(); ++j) {
                const auto& [v, d, vword] = targets[j];
                const int row = L.offsets[static_cast<std::size_t>(b)][j];
                const Word va = multiply(A, S.rep(v), Word{A.inverse(a)});
                const int cva = coset_of(S, va);
                if (S.rep(cva) == va) {
                    // copy block from (v a⁻¹, d′)
                    auto it = by_pair.find({cva, d});
                    if (it == by_pair.end() || it->second.first != a)
                        throw LayoutError("induce: copy source missing for target block " + A.format(vword));
                    const int col = L.offsets[static_cast<std::size_t>(a)][static_cast<std::size_t>(it->second.second)];
                    M.block(row, col, S0.dim(d), S0.dim(d)).setIdentity();
                } else {
                    // the unique source (u, c′) with u⁻¹c′ = a v⁻¹
                    const Word key = multiply(A, Word{a}, inverse(A, S.rep(v)));
                    auto it = by_word.find(key);
                    if (it == by_word.end() || it->second.first != a)
                        throw LayoutError("induce: no source block u⁻¹c′ = " + A.format(key));
                    const auto& src = L.pairs[static_cast<std::size_t>(a)][static_cast<std::size_t>(it->second.second)];
                    const int col = L.offsets[static_cast<std::size_t>(a)][static_cast<std::size_t>(it->second.second)];
                    M.block(row, col, S0.dim(d), S0.dim(src.gen)) = S0.map(d, src.gen);
                }
            }
        }
    }

    FormTuple B;
    for (Letter a = 0; a < A.size(); ++a) {
        Mat F = Mat::Zero(dims[static_cast<std::size_t>(a)], dims[static_cast<std::size_t>(a)]);
        const auto& ps = L.pairs[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const int o = L.offsets[static_cast<std::size_t>(a)][i];
            F.block(o, o, S0.dim(ps[i].gen), S0.dim(ps[i].gen)) = sub.forms[static_cast<std::size_t>(ps[i].gen)];
        }
        B.push_back(F);
    }
    InducedSystem out;
    out.system = std::make_shared<const InnerSystem>(InnerSystem{std::move(H), std::move(B)});
    out.layout = std::move(L);
    return out;
}

IndVector ind_vector(std::shared_ptr<const SchreierData> S, const SystemRef& sub, int coset, const MultVector& block) {
    IndVector F;
    F.schreier = std::move(S);
    for (int c = 0; c < F.schreier->index(); ++c) F.blocks.emplace_back(sub, 1);
    if (coset < 0 || coset >= F.schreier->index()) throw ValidationError("induced vector: coset out of range");
    if (block.system() != sub) throw ValidationError("induced vector: block over a different system");
    F.blocks[static_cast<std::size_t>(coset)] = block;
    return F;
}

IndVector ind_random(std::shared_ptr<const SchreierData> S, const SystemRef& sub, int depth, std::mt19937_64& rng) {
    IndVector F;
    F.schreier = std::move(S);
    for (int c = 0; c < F.schreier->index(); ++c) F.blocks.push_back(random_vector(sub, depth, rng));
    return F;
}

cplx ind_inner(const IndVector& F, const IndVector& G) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < F.blocks.size(); ++c) s += inner(F.blocks[c], G.blocks[c]);
    return s;
}

namespace {

// u·x = γ·u′: returns (coset of u′, γ as a word over A′).
std::pair<int, Word> route(const SchreierData& S, int coset, const Word& x) {
    const auto& A = S.base;
    const int target = S.table.walk(x, coset);
    const Word gamma = multiply(A, multiply(A, S.rep(coset), x), inverse(A, S.rep(target)));
    return {target, rewrite_to_subgroup(S, gamma)};
}

}  // namespace

IndVector ind_act(const Word& x, const IndVector& F) {
    const auto& S = *F.schreier;
    IndVector out;
    out.schreier = F.schreier;
    for (int c = 0; c < S.index(); ++c) {
        auto [target, gamma] = route(S, c, x);
        out.blocks.push_back(act(gamma, F.blocks[static_cast<std::size_t>(target)]));
    }
    return out;
}

cplx ind_coefficient(const Word& x, const IndVector& F, const IndVector& G, Backend backend) {
    const auto& S = *F.schreier;
    cplx s = 0.0;
    for (int c = 0; c < S.index(); ++c) {
        auto [target, gamma] = route(S, c, x);
        s += coefficient(gamma, F.blocks[static_cast<std::size_t>(target)], G.blocks[static_cast<std::size_t>(c)], backend);
    }
    return s;
}

namespace {

// Reduced prefix shared by the expansions of every extension of h over A′:
// the expansion of h up to and including the middle letter of its last
// generator.
Word stable_prefix(const SchreierData& S, const Word& h) {
    const auto& A = S.base;
    Word head(h.begin(), h.end() - 1);
    Word out = expand(S, head);
    const Word& last = S.generators[static_cast<std::size_t>(h.back())];
    const int mid = S.middle[static_cast<std::size_t>(h.back())];
    return multiply(A, out, Word(last.begin(), last.begin() + mid + 1));
}

}  // namespace

IndVector ind_boundary_op(const Word& y, const IndVector& F) {
    const auto& S = *F.schreier;
    const auto& A = S.base;
    if (y.empty()) throw WordError("boundary operator: empty stem");
    IndVector out;
    out.schreier = F.schreier;
    for (int c = 0; c < S.index(); ++c) {
        const MultVector& phi = F.blocks[static_cast<std::size_t>(c)];
        const Word ui = inverse(A, S.rep(c));
        for (int K = phi.depth();; ++K) {
            if (K > phi.depth() + 12) throw LayoutError("boundary operator: stable prefixes do not reach the stem length");
            bool ok = true;
            std::vector<Word> dirs;
            for_each_in_sphere(phi.alphabet(), K, [&](const Word& h) {
                if (!ok) return;
                const Word P = stable_prefix(S, h);
                if (cancellation(A, ui, P) >= P.size()) {
                    ok = false;
                    return;
                }
                Word Q = multiply(A, ui, P);
                if (Q.size() < y.size()) {
                    ok = false;
                    return;
                }
                dirs.push_back(std::move(Q));
            });
            if (!ok) continue;
            MultVector r = deepen(phi, K);
            for (std::size_t i = 0; i < dirs.size(); ++i)
                if (!starts_with(dirs[i], y)) r.at_index(i).setZero();
            out.blocks.push_back(std::move(r));
            break;
        }
    }
    return out;
}

Vec ind_eval(const IndVector& F, const Word& g, Letter* last_gen) {
    const auto& S = *F.schreier;
    const auto& A = S.base;
    const int c = coset_of(S, inverse(A, g));
    const Word h = multiply(A, S.rep(c), g);
    const Word hA = rewrite_to_subgroup(S, h);
    const MultVector& phi = F.blocks[static_cast<std::size_t>(c)];
    if (static_cast<int>(hA.size()) < phi.depth()) throw LayoutError("induced vector: depth too small");
    if (last_gen) *last_gen = hA.back();
    return phi.eval(hA);
}

MultVector intertwiner_J(const IndVector& F, const InducedSystem& ind, int depth) {
    const auto& S = *F.schreier;
    const auto& A = S.base;
    MultVector out(ind.system, depth);
    std::uint64_t idx = 0;
    for_each_in_sphere(A, depth, [&](const Word& y) {
        const Letter a = y.back();
        const Word x(y.begin(), y.end() - 1);
        Vec& v = out.at_index(idx++);
        const auto& ps = ind.layout.pairs[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < ps.size(); ++i) {
            Letter last = -1;
            const Vec val = ind_eval(F, multiply(A, x, ps[i].word), &last);
            if (last != ps[i].gen) throw LayoutError("intertwiner: depth too small");
            v.segment(ind.layout.offsets[static_cast<std::size_t>(a)][i], val.size()) = val;
        }
    });
    return out;
}

MultVector intertwiner_J_auto(const IndVector& F, const InducedSystem& ind, int max_depth) {
    for (int M = 1; M < max_depth; ++M) {
        try {
            MultVector J = intertwiner_J(F, ind, M);
            const MultVector next = intertwiner_J(F, ind, M + 1);
            const MultVector prop = deepen(J, M + 1);
            double diff = 0.0, scale = 1e-300;
            for (std::size_t i = 0; i < next.size(); ++i) {
                if (next.at_index(i).size() == 0) continue;
                diff = std::max(diff, (next.at_index(i) - prop.at_index(i)).cwiseAbs().maxCoeff());
                scale = std::max(scale, next.at_index(i).cwiseAbs().maxCoeff());
            }
            if (diff <= 1e-10 * std::max(1.0, scale)) return J;
        } catch (const LayoutError&) {
        }
    }
    throw LayoutError("intertwiner: no admissible depth up to " + std::to_string(max_depth));
}

}  // namespace bdrep
