#include "bdrep/bdrep.h"

#include "boundary_measure.hpp"
#include "examples.hpp"
#include "induce.hpp"
#include "io.hpp"
#include "vfgroup.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

using namespace bdrep;

struct bdrep_system {
    LoadedSystem loaded;
    std::optional<FormTuple> trace_forms;  // written instead of loaded.forms when set
    mutable SystemRef inner;               // compatible pair, built on first use
};

struct bdrep_vector {
    SystemRef system;
    MultVector value;
    json source;
};

namespace {

thread_local std::string g_last_error;

struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bdrep_status set_error(bdrep_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
bdrep_status guard(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const CapExceeded& e) {
        return set_error(BDREP_ERR_CAP, e.what());
    } catch (const InvariantFailure& e) {
        return set_error(BDREP_ERR_INVARIANT, e.what());
    } catch (const MathError& e) {
        return set_error(BDREP_ERR_INVARIANT, e.what());
    } catch (const LayoutError& e) {
        return set_error(BDREP_ERR_INVARIANT, e.what());
    } catch (const ParseError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const ValidationError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const WordError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const SubgroupError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const VFError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const ExactError& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const json::exception& e) {
        return set_error(BDREP_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return set_error(BDREP_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(BDREP_ERR_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put(char** out, const std::string& s) {
    if (out) *out = dup(s);
}

bdrep_options resolve(const bdrep_options* o) {
    bdrep_options r;
    bdrep_options_init(&r);
    if (o) r = *o;
    if (!(r.tolerance > 0.0)) throw ValidationError("options: tolerance must be positive");
    if (r.cap < 1000) throw ValidationError("options: cap must be at least 1000");
    if (r.threads < 1) throw ValidationError("options: threads must be at least 1");
    if (r.trials < 1) throw ValidationError("options: trials must be at least 1");
    if (r.backend < BDREP_BACKEND_FAST || r.backend > BDREP_BACKEND_EXACT) throw ValidationError("options: unknown backend");
    return r;
}

void require(const void* p, const char* what) {
    if (!p) throw ValidationError(std::string(what) + " is null");
}

std::string join_lines(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += x + "\n";
    return s;
}

void check_valid(const MatrixSystem& S) {
    const auto issues = validate(S);
    if (!issues.empty()) throw ValidationError("invalid system: " + issues.front());
}

/// Compatible pair for evaluation; normalizes when the file has no forms.
const SystemRef& inner_of(const bdrep_system* sys, double tol) {
    if (sys->inner) return sys->inner;
    check_valid(sys->loaded.system);
    if (sys->loaded.forms) {
        const auto issues = validate_forms(sys->loaded.system, *sys->loaded.forms);
        if (!issues.empty()) throw ValidationError("invalid forms: " + issues.front());
        const double r = compatibility_residual(sys->loaded.system, *sys->loaded.forms);
        if (r > tol) {
            std::ostringstream m;
            m << "forms are not compatible with the maps (residual " << r << ")";
            throw InvariantFailure(m.str());
        }
        sys->inner = std::make_shared<const InnerSystem>(InnerSystem{sys->loaded.system, *sys->loaded.forms});
    } else {
        sys->inner = normalized_inner(sys->loaded.system);
    }
    return sys->inner;
}

std::string num(double x) { return csv_number(x); }

std::string word_name(const Alphabet& A, const Word& w) { return w.empty() ? "e" : A.format(w); }

Word random_word(const Alphabet& A, int length, std::mt19937_64& rng) {
    Word w;
    while (static_cast<int>(w.size()) < length) {
        const Letter c = static_cast<Letter>(rng() % static_cast<std::uint64_t>(A.size()));
        if (!w.empty() && c == A.inverse(w.back())) continue;
        w.push_back(c);
    }
    return w;
}

double diff_norm(const MultVector& x, const MultVector& y, std::uint64_t cap) {
    return norm(combine(1.0, x, -1.0, y, cap), cap);
}

IndVector unit_ind(IndVector F) {
    const double n = std::sqrt(std::abs(ind_inner(F, F)));
    if (n > 0)
        for (auto& b : F.blocks) b = scale(1.0 / n, b);
    return F;
}

Alphabet base_alphabet(const json& j) {
    if (j.contains("alphabet")) {
        json a = {{"alphabet", j.at("alphabet")}, {"involution", j.at("involution")}, {"dims", 1}};
        return system_from_json(a).system.alphabet();
    }
    return Alphabet::standard(j.value("rank", 2));
}

json layout_json(const SchreierData& S, const InducedSystem& ind) {
    json j = schreier_to_json(S);
    json L = json::object();
    for (Letter a = 0; a < S.base.size(); ++a) {
        json rows = json::array();
        const auto& pairs = ind.layout.pairs[static_cast<std::size_t>(a)];
        for (std::size_t i = 0; i < pairs.size(); ++i)
            rows.push_back({{"coset", word_name(S.base, S.rep(pairs[i].coset))},
                            {"generator", S.sub_alphabet.name(pairs[i].gen)},
                            {"word", S.base.format(pairs[i].word)},
                            {"offset", ind.layout.offsets[static_cast<std::size_t>(a)][i]}});
        L[S.base.name(a)] = rows;
    }
    j["layout"] = L;
    return j;
}

}  // namespace

extern "C" {

void bdrep_options_init(bdrep_options* opts) {
    if (!opts) return;
    opts->tolerance = kResidualTol;
    opts->cap = kDefaultSphereCap;
    opts->seed = 20240601ULL;
    opts->threads = 1;
    opts->backend = BDREP_BACKEND_FAST;
    opts->trials = 50;
}

const char* bdrep_last_error(void) { return g_last_error.c_str(); }

const char* bdrep_version(void) { return "0.1.0"; }

void bdrep_string_free(char* s) { std::free(s); }

bdrep_status bdrep_system_load(const char* path, bdrep_system** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        auto s = std::make_unique<bdrep_system>();
        try {
            s->loaded = system_from_json(read_json_file(path));
        } catch (const ParseError& e) {
            const std::string m = e.what();
            throw ParseError(m.rfind(path, 0) == 0 ? m : std::string(path) + ": " + m);
        }
        *out = s.release();
        return BDREP_OK;
    });
}

bdrep_status bdrep_system_parse(const char* json_text, bdrep_system** out) {
    return guard([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = nullptr;
        auto s = std::make_unique<bdrep_system>();
        json j;
        try {
            j = json::parse(json_text);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("system: ") + e.what());
        }
        s->loaded = system_from_json(j);
        *out = s.release();
        return BDREP_OK;
    });
}

void bdrep_system_free(bdrep_system* sys) { delete sys; }

int bdrep_system_letters(const bdrep_system* sys) { return sys ? sys->loaded.system.letters() : 0; }

int bdrep_system_dim(const bdrep_system* sys, int letter) {
    if (!sys || letter < 0 || letter >= sys->loaded.system.letters()) return -1;
    return sys->loaded.system.dim(letter);
}

int bdrep_system_has_forms(const bdrep_system* sys) { return sys && sys->loaded.forms ? 1 : 0; }

bdrep_status bdrep_system_to_json(const bdrep_system* sys, char** out) {
    return guard([&] {
        require(sys, "system");
        require(out, "out");
        json j;
        if (sys->trace_forms)
            j = system_to_json(sys->loaded.system, &*sys->trace_forms, true);
        else
            j = system_to_json(sys->loaded.system, sys->loaded.forms ? &*sys->loaded.forms : nullptr, false);
        *out = dup(j.dump(2) + "\n");
        return BDREP_OK;
    });
}

bdrep_status bdrep_system_validate(const bdrep_system* sys, char** diagnostics) {
    return guard([&] {
        require(sys, "system");
        auto issues = validate(sys->loaded.system);
        if (issues.empty() && sys->loaded.forms) issues = validate_forms(sys->loaded.system, *sys->loaded.forms);
        put(diagnostics, join_lines(issues));
        if (!issues.empty()) return set_error(BDREP_ERR_VALIDATION, issues.front());
        return BDREP_OK;
    });
}

bdrep_status bdrep_vector_parse(const bdrep_system* sys, const char* json_text, bdrep_vector** out) {
    return guard([&] {
        require(sys, "system");
        require(json_text, "json_text");
        require(out, "out");
        *out = nullptr;
        json j;
        try {
            j = json::parse(json_text);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("vector: ") + e.what());
        }
        auto v = std::make_unique<bdrep_vector>();
        v->system = inner_of(sys, kResidualTol);
        v->value = vector_from_json(j, v->system);
        v->source = std::move(j);
        *out = v.release();
        return BDREP_OK;
    });
}

bdrep_status bdrep_vector_load(const bdrep_system* sys, const char* path, bdrep_vector** out) {
    return guard([&] {
        require(sys, "system");
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        json j = read_json_file(path);
        auto v = std::make_unique<bdrep_vector>();
        v->system = inner_of(sys, kResidualTol);
        try {
            v->value = vector_from_json(j, v->system);
        } catch (const ParseError& e) {
            throw ParseError(std::string(path) + ": " + e.what());
        }
        v->source = std::move(j);
        *out = v.release();
        return BDREP_OK;
    });
}

void bdrep_vector_free(bdrep_vector* v) { delete v; }

bdrep_status bdrep_normalize(const bdrep_system* sys, const bdrep_options* opts, bdrep_system** out, double* rho,
                             double* residual, char** report) {
    return guard([&] {
        require(sys, "system");
        require(out, "out");
        *out = nullptr;
        const bdrep_options o = resolve(opts);
        check_valid(sys->loaded.system);
        NormalizeOptions no;
        no.tolerance = o.tolerance;
        const NormalizeResult r = normalize(sys->loaded.system, no);
        auto s = std::make_unique<bdrep_system>();
        s->loaded.system = r.system;
        s->loaded.forms = to_unit_convention(r.system, r.forms);
        s->trace_forms = r.forms;
        if (rho) *rho = r.rho;
        if (residual) *residual = r.residual;
        std::ostringstream rep;
        rep << "rho " << num(r.rho) << "\nresidual " << num(r.residual) << "\niterations " << r.iterations << "\n";
        if (r.degenerate_perron) rep << "warning: the leading eigenvalue of the transfer operator is degenerate\n";
        if (r.periodic) rep << "warning: peripheral eigenvalues off the positive axis (periodic system)\n";
        put(report, rep.str());
        *out = s.release();
        return BDREP_OK;
    });
}

bdrep_status bdrep_decompose(const bdrep_system* sys, const bdrep_options* opts, char** report_json) {
    return guard([&] {
        require(sys, "system");
        const bdrep_options o = resolve(opts);
        const SystemRef in = inner_of(sys, o.tolerance);
        const RadicalQuotient rq = radical_quotient(in->system, in->forms, o.tolerance);
        if (rq.degenerate) throw InvariantFailure("decompose: every dimension lies in the radical of the forms");
        DecomposeOptions dopts;
        dopts.search.seed = o.seed;
        const Decomposition D = decompose(rq.system, rq.forms, dopts);
        const Alphabet& A = rq.system.alphabet();
        json rep;
        rep["seed"] = o.seed;
        rep["radical_dropped"] = rq.dropped;
        rep["quotient_dropped"] = D.dropped;
        json comps = json::array();
        double worst_orth = 0.0;
        bool all_irreducible = true;
        int total = 0;
        for (std::size_t i = 0; i < D.components.size(); ++i) {
            const Component& c = D.components[i];
            json cj;
            json dims = json::object();
            for (Letter a = 0; a < A.size(); ++a) dims[A.name(a)] = c.system.dim(a);
            cj["dims"] = dims;
            total += c.system.total_dim();
            cj["residual"] = compatibility_residual(c.system, c.forms);
            InvariantSearchOptions so;
            so.seed = o.seed + i;
            const bool irreducible = !find_invariant_subsystem(c.system, so).has_value();
            all_irreducible = all_irreducible && irreducible;
            cj["irreducible"] = irreducible;
            cj["system"] = system_to_json(c.system, &c.forms, false);
            comps.push_back(cj);
            for (std::size_t k = 0; k < i; ++k)
                for (Letter a = 0; a < A.size(); ++a) {
                    const Mat G = D.components[k].basis[static_cast<std::size_t>(a)].adjoint() *
                                  rq.forms[static_cast<std::size_t>(a)] * c.basis[static_cast<std::size_t>(a)];
                    if (G.size() > 0) worst_orth = std::max(worst_orth, max_abs(G));
                }
        }
        rep["components"] = comps;
        rep["count"] = D.components.size();
        rep["dimension_total"] = total;
        rep["input_dimension"] = in->system.total_dim();
        rep["orthogonality"] = worst_orth;
        const bool ok = all_irreducible && worst_orth <= kSubspaceTol &&
                        total + D.dropped + rq.dropped == in->system.total_dim();
        rep["pass"] = ok;
        put(report_json, rep.dump(2) + "\n");
        if (!ok) return set_error(BDREP_ERR_INVARIANT, "decompose: component checks failed");
        return BDREP_OK;
    });
}

bdrep_status bdrep_coefficient(const bdrep_system* sys, const bdrep_vector* f, const bdrep_vector* g,
                               const char* word, int backend, const bdrep_options* opts, double* re, double* im) {
    return guard([&] {
        require(sys, "system");
        require(f, "f");
        require(g, "g");
        require(word, "word");
        const bdrep_options o = resolve(opts);
        const Word x = f->value.alphabet().parse(word);
        const EvalOptions eo{o.cap, o.threads};
        cplx v;
        if (backend == BDREP_BACKEND_BRUTE)
            v = coefficient_brute(x, f->value, g->value, eo);
        else if (backend == BDREP_BACKEND_FAST || backend == BDREP_BACKEND_BOTH)
            v = coefficient_fast(x, f->value, g->value);
        else
            throw ValidationError("coefficient: use bdrep_coefficients_csv for the exact backend");
        if (re) *re = v.real();
        if (im) *im = v.imag();
        return BDREP_OK;
    });
}

bdrep_status bdrep_coefficients_csv(const bdrep_system* sys, const bdrep_vector* f, const char* const* words,
                                    size_t count, const bdrep_options* opts, char** csv) {
    return guard([&] {
        require(sys, "system");
        require(f, "vector");
        require(csv, "csv");
        if (count > 0) require(words, "words");
        const bdrep_options o = resolve(opts);
        const Alphabet& A = f->value.alphabet();
        const EvalOptions eo{o.cap, o.threads};
        std::optional<ExactVector> ev;
        if (o.backend == BDREP_BACKEND_EXACT) {
            if (!sys->loaded.exact) throw ValidationError("exact backend: the system file has no \"exact\" section");
            if (!exactly_compatible(*sys->loaded.exact))
                throw ValidationError("exact backend: the exact forms are not an exact fixed point");
            ev = exact_vector_from_json(f->source, *sys->loaded.exact);
        }
        std::ostringstream out;
        out << "word,re,im,backend,depth";
        if (o.backend == BDREP_BACKEND_BOTH) out << ",discrepancy";
        if (o.backend == BDREP_BACKEND_EXACT) out << ",exact";
        out << "\n";
        for (size_t i = 0; i < count; ++i) {
            require(words[i], "word");
            const Word x = A.parse(words[i]);
            const std::string name = word_name(A, x);
            const int depth = admissible_radius(x, f->value, f->value);
            switch (o.backend) {
                case BDREP_BACKEND_FAST: {
                    const cplx v = coefficient_fast(x, f->value, f->value);
                    out << name << ',' << num(v.real()) << ',' << num(v.imag()) << ",fast," << depth << "\n";
                    break;
                }
                case BDREP_BACKEND_BRUTE: {
                    const cplx v = coefficient_brute(x, f->value, f->value, eo);
                    out << name << ',' << num(v.real()) << ',' << num(v.imag()) << ",brute," << depth << "\n";
                    break;
                }
                case BDREP_BACKEND_BOTH: {
                    const cplx a = coefficient_fast(x, f->value, f->value);
                    const cplx b = coefficient_brute(x, f->value, f->value, eo);
                    out << name << ',' << num(a.real()) << ',' << num(a.imag()) << ",both," << depth << ','
                        << num(std::abs(a - b)) << "\n";
                    break;
                }
                default: {
                    const Quad q = exact_coefficient(*sys->loaded.exact, x, *ev, *ev, o.cap);
                    out << name << ',' << num(q.to_double()) << ",0,exact," << depth << ',' << q.str() << "\n";
                }
            }
        }
        *csv = dup(out.str());
        return BDREP_OK;
    });
}

bdrep_status bdrep_induce(const bdrep_system* sub, const char* quotient_path, const bdrep_options* opts,
                          bdrep_system** out, char** layout, char** report) {
    return guard([&] {
        require(sub, "system");
        require(quotient_path, "quotient_path");
        if (out) *out = nullptr;
        const bdrep_options o = resolve(opts);
        const json qj = read_json_file(quotient_path);
        const Alphabet A = base_alphabet(qj);
        QuotientSpec spec;
        try {
            spec = quotient_from_json(qj, A);
        } catch (const ParseError& e) {
            throw ParseError(std::string(quotient_path) + ": " + e.what());
        }
        const CosetTable T = coset_table_from_quotient(A, spec);
        auto S = std::make_shared<const SchreierData>(schreier(A, T));
        const auto sissues = check_schreier(*S);
        if (!sissues.empty()) throw InvariantFailure("schreier data: " + sissues.front());

        bdrep_system local;
        local.loaded = relabel(sub->loaded, S->sub_alphabet);
        const SystemRef sub_inner = inner_of(&local, o.tolerance);
        const InducedSystem ind = induce_system(*sub_inner, *S);
        const MatrixSystem& IS = ind.system->system;

        std::ostringstream rep;
        rep << "seed " << o.seed << "\n";
        bool ok = true;
        auto line = [&](bool pass, const std::string& what) {
            rep << (pass ? "ok   " : "FAIL ") << what << "\n";
            ok = ok && pass;
        };
        rep << "index " << S->index() << ", subgroup rank " << S->sub_alphabet.rank() << "\n";
        std::ostringstream dims;
        dims << "induced dims";
        for (Letter a = 0; a < A.size(); ++a) dims << ' ' << A.name(a) << '=' << IS.dim(a);
        dims << " (total " << IS.total_dim() << " = " << S->index() << " x " << sub_inner->system.total_dim() << ")";
        line(IS.total_dim() == S->index() * sub_inner->system.total_dim(), dims.str());
        const auto vissues = validate(IS);
        line(vissues.empty(), vissues.empty() ? "induced system validates" : "induced system: " + vissues.front());
        const double res = compatibility_residual(IS, ind.system->forms);
        line(res <= o.tolerance, "induced forms compatible, residual " + num(res));

        std::mt19937_64 rng(o.seed);
        double iso = 0, intw = 0, route = 0, cov = 0;
        for (int t = 0; t < o.trials; ++t) {
            const IndVector F = unit_ind(ind_random(S, sub_inner, 1 + t % 2, rng));
            const IndVector G = unit_ind(ind_random(S, sub_inner, 1, rng));
            const MultVector JF = intertwiner_J_auto(F, ind);
            const MultVector JG = intertwiner_J_auto(G, ind);
            iso = std::max(iso, std::abs(inner(JF, JG, o.cap) - ind_inner(F, G)));
            const Word x = random_word(A, 1 + static_cast<int>(rng() % 3), rng);
            intw = std::max(intw, diff_norm(intertwiner_J_auto(ind_act(x, F), ind), act(x, JF, o.cap), o.cap));
            route = std::max(route, std::abs(ind_coefficient(x, F, G) - coefficient_fast(x, JF, JG)));
            const Word y = random_word(A, 1 + static_cast<int>(rng() % 2), rng);
            cov = std::max(cov, diff_norm(intertwiner_J_auto(ind_boundary_op(y, F), ind), cylinder_op(y, JF, o.cap), o.cap));
        }
        const double jt = 1e-10;
        line(iso <= jt, "J preserves inner products, worst " + num(iso) + " over " + std::to_string(o.trials) + " pairs");
        line(intw <= jt, "J intertwines the actions, worst " + num(intw));
        line(route <= 1e-9, "routed coefficients match coefficients through J, worst " + num(route));
        line(cov <= jt, "J carries the induced boundary operators to cylinder operators, worst " + num(cov));

        put(report, rep.str());
        put(layout, layout_json(*S, ind).dump(2) + "\n");
        if (out) {
            auto s = std::make_unique<bdrep_system>();
            s->loaded.system = IS;
            s->loaded.forms = ind.system->forms;
            *out = s.release();
        }
        if (!ok) return set_error(BDREP_ERR_INVARIANT, "induce: invariant checks failed");
        return BDREP_OK;
    });
}

bdrep_status bdrep_vf_induce(const bdrep_system* sub, const char* datum_path, const bdrep_options* opts,
                             char** report) {
    return guard([&] {
        require(sub, "system");
        const bdrep_options o = resolve(opts);
        VFDatum D;
        if (!datum_path || std::string(datum_path) == "PSL2Z")
            D = psl2z_datum();
        else
            D = vf_from_json(read_json_file(datum_path));
        std::ostringstream rep;
        rep << "seed " << o.seed << "\n";
        const auto issues = vf_validate(D, 500, o.seed);
        if (!issues.empty()) {
            for (const auto& m : issues) rep << "FAIL " << m << "\n";
            put(report, rep.str());
            throw ValidationError("virtually free datum: " + issues.front());
        }
        rep << "ok   datum validates: index " << D.index() << ", free rank " << D.rank() << ", 500 routing probes\n";
        bdrep_system local;
        local.loaded = relabel(sub->loaded, D.free_alphabet);
        const SystemRef s0 = inner_of(&local, o.tolerance);

        bool ok = true;
        auto line = [&](bool pass, const std::string& what) {
            rep << (pass ? "ok   " : "FAIL ") << what << "\n";
            ok = ok && pass;
        };
        std::mt19937_64 rng(o.seed);
        const std::vector<VFWord> ballL = vf_ball(D.group, 3);
        double worst_gram = 0.0, worst_id = 0.0, worst_eu = 0.0, worst_perm = 0.0;
        const int gram_trials = std::max(1, std::min(o.trials, 10));
        for (int t = 0; t < gram_trials; ++t) {
            std::vector<MultVector> F;
            for (int c = 0; c < D.index(); ++c) F.push_back(random_vector(s0, 1, rng));
            const auto n = static_cast<Eigen::Index>(ballL.size());
            Mat G(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index k = 0; k < n; ++k)
                    G(i, k) = vf_coefficient(D, vf_multiply(D.group, vf_inverse(D.group, ballL[static_cast<std::size_t>(i)]),
                                                            ballL[static_cast<std::size_t>(k)]),
                                             F, F);
            worst_gram = std::min(worst_gram, min_eigenvalue(hermitian_part(G)));
            worst_gram = std::min(worst_gram, -max_abs(G - G.adjoint()));
            cplx total = 0.0;
            for (const auto& b : F) total += inner(b, b, o.cap);
            worst_id = std::max(worst_id, std::abs(vf_coefficient(D, VFWord{}, F, F) - total));
        }
        for (int t = 0; t < o.trials; ++t) {
            std::vector<MultVector> F(static_cast<std::size_t>(D.index()), MultVector(s0, 1));
            F[0] = random_vector(s0, 1, rng);
            const Word w = random_word(D.free_alphabet, 1 + static_cast<int>(rng() % 4), rng);
            const cplx routed = vf_coefficient(D, vf_expand(D, w), F, F);
            worst_eu = std::max(worst_eu, std::abs(routed - coefficient_fast(w, F[0], F[0])));
            for (int i = 0; i < D.group.factors(); ++i)
                if (D.next[static_cast<std::size_t>(i)] != 0)
                    worst_perm = std::max(worst_perm, std::abs(vf_coefficient(D, vf_generator(D.group, i), F, F)));
        }
        line(worst_gram >= -1e-8, "Gram matrices over the radius-3 ball (" + std::to_string(ballL.size()) +
                                      " elements) are PSD, min eigenvalue " + num(worst_gram));
        line(worst_id <= 1e-10, "identity coefficient equals the block norm sum, worst " + num(worst_id));
        line(worst_eu <= 1e-10, "free-subgroup coefficients reduce to a single block, worst " + num(worst_eu));
        line(worst_perm <= 1e-10, "generators moving the identity coset give zero, worst " + num(worst_perm));
        put(report, rep.str());
        if (!ok) return set_error(BDREP_ERR_INVARIANT, "vf-induce: invariant checks failed");
        return BDREP_OK;
    });
}

bdrep_status bdrep_herz_csv(const bdrep_system* sys, const bdrep_vector* v, int radius, const bdrep_options* opts,
                            char** csv, int* failures) {
    return guard([&] {
        require(sys, "system");
        require(v, "vector");
        require(csv, "csv");
        resolve(opts);
        if (radius < 0) throw ValidationError("herz: radius must be nonnegative");
        const Alphabet& A = v->value.alphabet();
        const CylinderMeasure mu = spectral_measure(v->value);
        std::ostringstream out;
        out << "x,N,lhs,rhs,margin,pass\n";
        int fails = 0, rows = 0;
        for (const Word& x : ball(A, radius)) {
            const int N = static_cast<int>(x.size()) + 1;
            const HerzResult h = herz_check(v->value, mu, x, N);
            ++rows;
            if (!h.pass) ++fails;
            out << word_name(A, x) << ',' << N << ',' << num(h.lhs) << ',' << num(h.rhs) << ',' << num(h.rhs - h.lhs)
                << ',' << (h.pass ? "pass" : "fail") << "\n";
        }
        out << "# " << (rows - fails) << " of " << rows << " rows pass" << (fails ? "" : "; all pass") << "\n";
        *csv = dup(out.str());
        if (failures) *failures = fails;
        if (fails) return set_error(BDREP_ERR_INVARIANT, "herz: " + std::to_string(fails) + " rows fail");
        return BDREP_OK;
    });
}

bdrep_status bdrep_demo_no_hc_csv(const bdrep_system* sys, const bdrep_vector* v, const char* word, int max_power,
                                  const bdrep_options* opts, char** csv) {
    return guard([&] {
        require(word, "word");
        require(csv, "csv");
        const bdrep_options o = resolve(opts);
        if (!sys && v) throw ValidationError("demo: a vector needs its system");
        const Alphabet A = sys ? sys->loaded.system.alphabet() : Alphabet::standard(2);
        const Word w = A.parse(word);
        if (w.empty()) throw ValidationError("demo: the word must not be the identity");
        if (max_power < 1) throw ValidationError("demo: max power must be at least 1");
        const CylinderMeasure mu = v ? spectral_measure(v->value) : uniform_measure(A);
        const auto phi = no_harish_chandra_demo(mu, w, max_power, o.cap);
        std::ostringstream out;
        out << "n,word_length,phi\n";
        bool decreasing = true, below = true;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            const Word wn = power(A, w, static_cast<int>(i) + 1);
            out << i + 1 << ',' << wn.size() << ',' << num(phi[i]) << "\n";
            if (i > 0 && !(phi[i] < phi[i - 1])) decreasing = false;
            if (!(phi[i] < mu.total())) below = false;
        }
        out << "# measure " << (v ? "spectral" : "uniform") << ", total mass " << num(mu.total())
            << "; strictly decreasing: " << (decreasing ? "yes" : "no") << "; below total mass: " << (below ? "yes" : "no")
            << "\n";
        *csv = dup(out.str());
        return BDREP_OK;
    });
}

bdrep_status bdrep_selftest(const bdrep_options* opts, char** report) {
    return guard([&] {
        const bdrep_options o = resolve(opts);
        std::ostringstream rep;
        rep << "seed " << o.seed << "\n";
        bool ok = true;
        auto line = [&](bool pass, const std::string& what) {
            rep << (pass ? "ok   " : "FAIL ") << what << "\n";
            ok = ok && pass;
        };
        const Alphabet A = Alphabet::standard(2);
        const NormalizeResult nr = normalize(spherical_system(A, 1.0));
        line(std::abs(nr.rho - 3.0) <= 1e-9, "unscaled spherical system has rho " + num(nr.rho));

        const SystemRef sph = spherical_inner(A);
        const MultVector f = letter_vector(sph, {{0, Vec::Ones(1)}});
        const cplx fa = coefficient_fast({0}, f, f), ba = coefficient_brute({0}, f, f);
        line(std::abs(fa - 1.0 / std::sqrt(3.0)) <= 1e-12 && std::abs(ba - fa) <= 1e-12,
             "spherical coefficient at a is " + num(fa.real()));

        std::mt19937_64 rng(o.seed);
        double gap = 0.0, cov = 0.0;
        for (int t = 0; t < 20; ++t) {
            const SystemRef r = normalized_inner(random_system(A, 3, rng));
            const MultVector g = random_vector(r, 1 + t % 2, rng);
            const Word x = random_word(A, static_cast<int>(rng() % 5), rng);
            gap = std::max(gap, std::abs(coefficient_fast(x, g, g) - coefficient_brute(x, g, g, {o.cap, o.threads})));
            cov = std::max(cov, covariance_check(x, random_word(A, 1 + static_cast<int>(rng() % 3), rng), g, o.cap));
        }
        line(gap <= 1e-10, "fast and brute coefficients agree, worst " + num(gap));
        line(cov <= 1e-10, "boundary covariance, worst " + num(cov));

        QuotientSpec spec;
        spec.group = FiniteGroup::cyclic_product({2});
        spec.images = {1, 1, 0, 0};
        const SchreierData S = schreier(A, coset_table_from_quotient(A, spec));
        InnerSystem sub{spherical_system(S.sub_alphabet, 1.0 / std::sqrt(5.0)), {}};
        sub.forms = identity_forms(sub.system);
        const InducedSystem ind = induce_system(sub, S);
        const auto& d = ind.system->system.dims();
        line(d == std::vector<int>({4, 4, 2, 2}) && compatibility_residual(ind.system->system, ind.system->forms) <= 1e-12,
             "index-2 induction has dims 4 4 2 2 and compatible forms");

        line(vf_validate(psl2z_datum(), 500, o.seed).empty(), "PSL(2,Z) datum validates");

        const HerzResult h = herz_check(f, {0}, 2);
        line(h.pass && std::abs(h.lhs - h.rhs) <= 1e-12, "Herz equality for the spherical vector at a");
        put(report, rep.str());
        if (!ok) return set_error(BDREP_ERR_INVARIANT, "selftest failed");
        return BDREP_OK;
    });
}

}  // extern "C"
