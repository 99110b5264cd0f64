#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bdrep {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ParseError(field + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key)) fail(ctx.empty() ? key : ctx + "." + key, "missing");
    return j.at(key);
}

cplx parse_entry(const json& e, const std::string& field) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
        return {e[0].get<double>(), e[1].get<double>()};
    fail(field, "entry must be a number or [re, im]");
}

Mat parse_matrix(const json& m, int rows, int cols, const std::string& field) {
    if (m.is_number() || (rows == 1 && cols == 1 && m.is_array() && m.size() == 2 && m[0].is_number())) {
        if (rows != 1 || cols != 1) fail(field, "scalar given for a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        return Mat::Constant(1, 1, parse_entry(m, field));
    }
    if (!m.is_array() || static_cast<int>(m.size()) != rows)
        fail(field, "expected " + std::to_string(rows) + " rows");
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& r = m[static_cast<std::size_t>(i)];
        if (!r.is_array() || static_cast<int>(r.size()) != cols)
            fail(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k)
            M(i, k) = parse_entry(r[static_cast<std::size_t>(k)], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return M;
}

json entry_json(cplx z) {
    if (z.imag() == 0.0) return z.real();
    return json::array({z.real(), z.imag()});
}

json matrix_json(const Mat& M) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) r.push_back(entry_json(M(i, k)));
        rows.push_back(r);
    }
    return rows;
}

Alphabet alphabet_from_json(const json& j) {
    if (!j.contains("alphabet") && j.contains("rank")) return Alphabet::standard(j.at("rank").get<int>());
    const json& names_j = need(j, "alphabet", "");
    if (!names_j.is_array()) fail("alphabet", "must be an array of letter names");
    std::vector<std::string> names;
    for (const auto& n : names_j) {
        if (!n.is_string()) fail("alphabet", "letter names must be strings");
        names.push_back(n.get<std::string>());
    }
    std::vector<Letter> inv(names.size(), -1);
    auto index = [&](const json& n) {
        if (!n.is_string()) fail("involution", "entries must be letter names");
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n.get<std::string>()) return static_cast<Letter>(i);
        fail("involution", "unknown letter '" + n.get<std::string>() + "'");
    };
    const json& inv_j = need(j, "involution", "");
    if (!inv_j.is_array()) fail("involution", "must be an array of [letter, inverse] pairs");
    for (const auto& p : inv_j) {
        if (!p.is_array() || p.size() != 2) fail("involution", "pairs must have two names");
        const Letter x = index(p[0]), y = index(p[1]);
        inv[static_cast<std::size_t>(x)] = y;
        inv[static_cast<std::size_t>(y)] = x;
    }
    for (std::size_t i = 0; i < inv.size(); ++i)
        if (inv[i] < 0) fail("involution", "letter '" + names[i] + "' has no inverse");
    try {
        return Alphabet(names, inv);
    } catch (const WordError& e) {
        fail("alphabet", e.what());
    }
}

json alphabet_json(const Alphabet& A, json& j) {
    j["alphabet"] = A.names();
    json inv = json::array();
    for (Letter a = 0; a < A.size(); ++a)
        if (a < A.inverse(a)) inv.push_back(json::array({A.name(a), A.name(A.inverse(a))}));
    j["involution"] = inv;
    return j;
}

std::pair<Letter, Letter> parse_pair_key(const Alphabet& A, const std::string& key, const std::string& field) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) fail(field + "." + key, "key must have the form \"b|a\"");
    auto b = A.find(key.substr(0, bar));
    auto a = A.find(key.substr(bar + 1));
    if (!a || !b) fail(field + "." + key, "unknown letter");
    return {*b, *a};
}

Quad parse_quad(const json& e, long d, const std::string& field) {
    try {
        if (e.is_number_integer()) return Quad::rational(mpq_class(e.get<long>()), d);
        if (e.is_number()) {
            mpq_class q(e.get<double>());
            return Quad::rational(q, d);
        }
        if (e.is_string()) return Quad::parse(e.get<std::string>(), d);
    } catch (const ExactError& ex) {
        fail(field, ex.what());
    }
    fail(field, "exact entries must be integers or strings such as \"1/3*sqrt(3)\"");
}

QuadMatrix parse_quad_matrix(const json& m, int rows, int cols, long d, const std::string& field) {
    QuadMatrix M(rows, cols, d);
    if (!m.is_array() || static_cast<int>(m.size()) != rows) {
        if (rows == 1 && cols == 1 && !m.is_array()) {
            M(0, 0) = parse_quad(m, d, field);
            return M;
        }
        fail(field, "expected " + std::to_string(rows) + " rows");
    }
    for (int i = 0; i < rows; ++i) {
        const json& r = m[static_cast<std::size_t>(i)];
        if (!r.is_array() || static_cast<int>(r.size()) != cols)
            fail(field, "row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (int k = 0; k < cols; ++k) M(i, k) = parse_quad(r[static_cast<std::size_t>(k)], d, field);
    }
    return M;
}

}  // namespace

FormTuple to_unit_convention(const MatrixSystem& S, const FormTuple& B) {
    const double t = total_trace(B);
    if (!(t > 0.0)) return B;
    const double c = static_cast<double>(S.total_dim()) / t;
    FormTuple out = B;
    for (auto& m : out) m *= c;
    return out;
}

LoadedSystem system_from_json(const json& j) {
    if (!j.is_object()) fail("system", "must be a JSON object");
    const Alphabet A = alphabet_from_json(j);
    const json& dims_j = need(j, "dims", "");
    std::vector<int> dims(static_cast<std::size_t>(A.size()), 0);
    if (dims_j.is_number_integer()) {
        std::fill(dims.begin(), dims.end(), dims_j.get<int>());
    } else {
        if (!dims_j.is_object()) fail("dims", "must map letter names to dimensions");
        for (Letter a = 0; a < A.size(); ++a) {
            if (!dims_j.contains(A.name(a))) fail("dims." + A.name(a), "missing");
            if (!dims_j.at(A.name(a)).is_number_integer()) fail("dims." + A.name(a), "must be an integer");
            dims[static_cast<std::size_t>(a)] = dims_j.at(A.name(a)).get<int>();
        }
    }
    for (Letter a = 0; a < A.size(); ++a)
        if (dims[static_cast<std::size_t>(a)] < 1) fail("dims." + A.name(a), "must be a positive integer");
    LoadedSystem out;
    out.system = MatrixSystem(A, dims);
    if (j.contains("maps")) {
        const json& maps = j.at("maps");
        if (!maps.is_object()) fail("maps", "must be an object keyed by \"b|a\"");
        for (auto it = maps.begin(); it != maps.end(); ++it) {
            const auto [b, a] = parse_pair_key(A, it.key(), "maps");
            out.system.map(b, a) = parse_matrix(it.value(), out.system.dim(b), out.system.dim(a), "maps." + it.key());
        }
    }
    if (j.contains("forms")) {
        const json& fj = j.at("forms");
        if (!fj.is_object()) fail("forms", "must map letter names to matrices");
        FormTuple B;
        for (Letter a = 0; a < A.size(); ++a) {
            if (!fj.contains(A.name(a))) fail("forms." + A.name(a), "missing");
            B.push_back(parse_matrix(fj.at(A.name(a)), dims[static_cast<std::size_t>(a)], dims[static_cast<std::size_t>(a)],
                                     "forms." + A.name(a)));
        }
        const bool trace = j.value("form_convention", std::string("unit")) == "trace";
        out.forms = trace ? to_unit_convention(out.system, B) : B;
    }
    if (j.contains("exact")) {
        const json& ej = j.at("exact");
        ExactSystem E;
        E.alphabet = A;
        E.dims = dims;
        E.radicand = ej.value("sqrt", 0L);
        if (E.radicand < 0) fail("exact.sqrt", "radicand must be nonnegative");
        const auto n = static_cast<std::size_t>(A.size());
        E.maps.resize(n * n);
        for (Letter b = 0; b < A.size(); ++b)
            for (Letter a = 0; a < A.size(); ++a)
                E.maps[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] =
                    QuadMatrix(dims[static_cast<std::size_t>(b)], dims[static_cast<std::size_t>(a)], E.radicand);
        if (ej.contains("maps")) {
            const json& maps = ej.at("maps");
            for (auto it = maps.begin(); it != maps.end(); ++it) {
                const auto [b, a] = parse_pair_key(A, it.key(), "exact.maps");
                E.maps[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] =
                    parse_quad_matrix(it.value(), dims[static_cast<std::size_t>(b)], dims[static_cast<std::size_t>(a)],
                                      E.radicand, "exact.maps." + it.key());
            }
        }
        const json& fj = need(ej, "forms", "exact");
        for (Letter a = 0; a < A.size(); ++a) {
            if (!fj.contains(A.name(a))) fail("exact.forms." + A.name(a), "missing");
            E.forms.push_back(parse_quad_matrix(fj.at(A.name(a)), dims[static_cast<std::size_t>(a)],
                                                dims[static_cast<std::size_t>(a)], E.radicand, "exact.forms." + A.name(a)));
        }
        // the exact data must describe the same system as the float data
        for (Letter b = 0; b < A.size(); ++b)
            for (Letter a = 0; a < A.size(); ++a) {
                const QuadMatrix& Q = E.map(b, a);
                for (int r = 0; r < Q.rows; ++r)
                    for (int c = 0; c < Q.cols; ++c)
                        if (std::abs(Q(r, c).to_double() - out.system.map(b, a)(r, c)) > 1e-12)
                            fail("exact.maps." + A.name(b) + "|" + A.name(a), "disagrees with the floating-point map");
            }
        out.exact = std::move(E);
    }
    return out;
}

json system_to_json(const MatrixSystem& S, const FormTuple* forms, bool trace_convention) {
    const auto& A = S.alphabet();
    json j;
    alphabet_json(A, j);
    json dims = json::object();
    for (Letter a = 0; a < A.size(); ++a) dims[A.name(a)] = S.dim(a);
    j["dims"] = dims;
    json maps = json::object();
    for (Letter b = 0; b < A.size(); ++b)
        for (Letter a = 0; a < A.size(); ++a)
            if (max_abs(S.map(b, a)) > 0.0) maps[A.name(b) + "|" + A.name(a)] = matrix_json(S.map(b, a));
    j["maps"] = maps;
    if (forms) {
        json fj = json::object();
        for (Letter a = 0; a < A.size(); ++a) fj[A.name(a)] = matrix_json((*forms)[static_cast<std::size_t>(a)]);
        j["forms"] = fj;
        j["form_convention"] = trace_convention ? "trace" : "unit";
    }
    return j;
}

LoadedSystem relabel(const LoadedSystem& L, const Alphabet& target) {
    const Alphabet& A = L.system.alphabet();
    if (A == target) return L;
    if (A.size() != target.size()) throw ParseError("alphabet: expected " + std::to_string(target.size()) + " letters");
    std::vector<Letter> src;  // target letter -> source letter
    for (Letter t = 0; t < target.size(); ++t) {
        auto s = A.find(target.name(t));
        if (!s) throw ParseError("alphabet: missing letter '" + target.name(t) + "'");
        src.push_back(*s);
    }
    for (Letter t = 0; t < target.size(); ++t)
        if (A.inverse(src[static_cast<std::size_t>(t)]) != src[static_cast<std::size_t>(target.inverse(t))])
            throw ParseError("involution: letter '" + target.name(t) + "' is paired differently");
    std::vector<int> dims;
    for (Letter t = 0; t < target.size(); ++t) dims.push_back(L.system.dim(src[static_cast<std::size_t>(t)]));
    LoadedSystem out;
    out.system = MatrixSystem(target, dims);
    for (Letter b = 0; b < target.size(); ++b)
        for (Letter a = 0; a < target.size(); ++a)
            out.system.map(b, a) = L.system.map(src[static_cast<std::size_t>(b)], src[static_cast<std::size_t>(a)]);
    if (L.forms) {
        FormTuple B;
        for (Letter t = 0; t < target.size(); ++t) B.push_back((*L.forms)[static_cast<std::size_t>(src[static_cast<std::size_t>(t)])]);
        out.forms = B;
    }
    return out;
}

MultVector vector_from_json(const json& j, const SystemRef& sys) {
    const json& dj = need(j, "depth", "vector");
    if (!dj.is_number_integer() || dj.get<int>() < 1) fail("vector.depth", "must be a positive integer");
    MultVector f(sys, dj.get<int>());
    const auto& A = sys->system.alphabet();
    const json& vals = need(j, "values", "vector");
    if (!vals.is_object()) fail("vector.values", "must map words to vectors");
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        const std::string field = "vector.values." + it.key();
        Word w;
        try {
            w = A.parse(it.key());
        } catch (const WordError& e) {
            fail(field, e.what());
        }
        if (static_cast<int>(w.size()) != f.depth()) fail(field, "word length differs from the depth");
        const int d = sys->system.dim(w.back());
        const json& v = it.value();
        Vec x(d);
        if (d == 1 && !(v.is_array() && v.size() == 1)) {
            x(0) = parse_entry(v, field);  // bare scalar or [re, im]
        } else {
            if (!v.is_array() || static_cast<int>(v.size()) != d) fail(field, "expected " + std::to_string(d) + " entries");
            for (int i = 0; i < d; ++i) x(i) = parse_entry(v[static_cast<std::size_t>(i)], field);
        }
        f.at(w) = x;
    }
    return f;
}

json vector_to_json(const MultVector& f) {
    json j;
    j["depth"] = f.depth();
    json vals = json::object();
    std::uint64_t i = 0;
    for_each_in_sphere(f.alphabet(), f.depth(), [&](const Word& w) {
        const Vec& v = f.at_index(i++);
        if (v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0) return;
        json e = json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k) e.push_back(entry_json(v(k)));
        vals[f.alphabet().format(w)] = e;
    });
    j["values"] = vals;
    return j;
}

ExactVector exact_vector_from_json(const json& j, const ExactSystem& S) {
    ExactVector f;
    const json& dj = need(j, "depth", "vector");
    if (!dj.is_number_integer() || dj.get<int>() < 1) fail("vector.depth", "must be a positive integer");
    f.depth = dj.get<int>();
    const auto& A = S.alphabet;
    for_each_in_sphere(A, f.depth, [&](const Word& w) {
        f.values.emplace_back(static_cast<std::size_t>(S.dims[static_cast<std::size_t>(w.back())]), Quad(0, 0, S.radicand));
    });
    const json& vals = need(j, "values", "vector");
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        const std::string field = "vector.values." + it.key();
        const Word w = A.parse(it.key());
        if (static_cast<int>(w.size()) != f.depth) fail(field, "word length differs from the depth");
        auto& slot = f.values[static_cast<std::size_t>(sphere_index(A, w))];
        const json& v = it.value();
        if (!v.is_array()) {
            if (slot.size() != 1) fail(field, "expected an array");
            slot[0] = parse_quad(v, S.radicand, field);
            continue;
        }
        if (v.size() != slot.size()) fail(field, "wrong number of entries");
        for (std::size_t k = 0; k < slot.size(); ++k) {
            if (v[k].is_array()) fail(field, "exact mode supports real entries only");
            slot[k] = parse_quad(v[k], S.radicand, field);
        }
    }
    return f;
}

namespace {

int group_element(const json& e, const std::vector<int>& cyclic, int order, const std::string& field) {
    if (e.is_number_integer()) {
        const int x = e.get<int>();
        if (!cyclic.empty() && cyclic.size() == 1) return ((x % cyclic[0]) + cyclic[0]) % cyclic[0];
        if (x < 0 || x >= order) fail(field, "element out of range");
        return x;
    }
    if (e.is_array() && !cyclic.empty()) {
        if (e.size() != cyclic.size()) fail(field, "coordinate count differs from the number of cyclic factors");
        std::vector<int> c;
        for (const auto& v : e) c.push_back(v.get<int>());
        return FiniteGroup::cyclic_element(cyclic, c);
    }
    fail(field, "element must be an index or a coordinate array");
}

}  // namespace

QuotientSpec quotient_from_json(const json& j, const Alphabet& A) {
    const json& q = j.contains("quotient") ? j.at("quotient") : j;
    const json& od = need(q, "order-data", "quotient");
    QuotientSpec spec;
    std::vector<int> cyclic;
    try {
        if (od.is_array() && !od.empty() && od[0].is_array()) {
            std::vector<int> table;
            for (const auto& row : od) {
                if (!row.is_array() || row.size() != od.size()) fail("quotient.order-data", "table must be square");
                for (const auto& v : row) table.push_back(v.get<int>());
            }
            spec.group = FiniteGroup(static_cast<int>(od.size()), table);
        } else if (od.is_array()) {
            for (const auto& v : od) {
                if (!v.is_number_integer()) fail("quotient.order-data", "cyclic orders must be integers");
                cyclic.push_back(v.get<int>());
            }
            spec.group = FiniteGroup::cyclic_product(cyclic);
        } else {
            fail("quotient.order-data", "must be a list of cyclic orders or a multiplication table");
        }
    } catch (const SubgroupError& e) {
        fail("quotient.order-data", e.what());
    } catch (const json::exception& e) {
        fail("quotient.order-data", e.what());
    }
    const json& im = need(q, "images", "quotient");
    if (!im.is_object()) fail("quotient.images", "must map letters to group elements");
    spec.images.assign(static_cast<std::size_t>(A.size()), -1);
    for (auto it = im.begin(); it != im.end(); ++it) {
        auto a = A.find(it.key());
        if (!a) fail("quotient.images." + it.key(), "unknown letter");
        spec.images[static_cast<std::size_t>(*a)] =
            group_element(it.value(), cyclic, spec.group.order(), "quotient.images." + it.key());
    }
    for (Letter a = 0; a < A.size(); ++a) {
        auto& x = spec.images[static_cast<std::size_t>(a)];
        if (x >= 0) continue;
        const int y = spec.images[static_cast<std::size_t>(A.inverse(a))];
        if (y < 0) fail("quotient.images." + A.name(a), "missing");
        x = spec.group.inv(y);
    }
    if (q.contains("subgroup")) {
        for (const auto& e : q.at("subgroup")) spec.subgroup.push_back(group_element(e, cyclic, spec.group.order(), "quotient.subgroup"));
    }
    return spec;
}

json schreier_to_json(const SchreierData& S) {
    const auto& A = S.base;
    json j;
    j["index"] = S.index();
    json D = json::array();
    for (const auto& u : S.transversal) D.push_back(A.format(u));
    j["transversal"] = D;
    json G = json::array();
    for (const auto& g : S.generators) G.push_back(A.format(g));
    j["generators"] = G;
    json P = json::object();
    for (Letter a = 0; a < A.size(); ++a) {
        json l = json::array();
        for (const auto& w : S.P[static_cast<std::size_t>(a)]) l.push_back(A.format(w));
        P[A.name(a)] = l;
    }
    j["P"] = P;
    return j;
}

VFDatum vf_from_json(const json& j) {
    if (j.contains("builtin")) {
        if (j.at("builtin") != "PSL2Z") fail("builtin", "unknown datum '" + j.at("builtin").dump() + "'");
        return psl2z_datum();
    }
    VFDatum D;
    const json& fj = need(j, "factors", "");
    const json& gj = need(j, "generators", "");
    if (!fj.is_array() || !gj.is_array() || fj.size() != gj.size())
        fail("factors", "needs one generator name per cyclic factor");
    for (const auto& v : fj) D.group.orders.push_back(v.get<int>());
    for (const auto& v : gj) D.group.names.push_back(v.get<std::string>());
    try {
        for (const auto& t : need(j, "transversal", "")) D.transversal.push_back(vf_parse(D.group, t.get<std::string>()));
        for (const auto& b : need(j, "free_basis", "")) D.free_basis.push_back(vf_parse(D.group, b.get<std::string>()));
    } catch (const VFError& e) {
        fail("transversal", e.what());
    }
    if (D.free_basis.size() < 2) {
        // keep the datum so that validation can report the rank gate
        return D;
    }
    D.free_alphabet = Alphabet::standard(D.rank());
    if (!j.contains("table")) {
        vf_fill_table(D);
        return D;
    }
    const int k = D.group.factors();
    D.next.assign(static_cast<std::size_t>(D.index() * k), -1);
    D.cocycle.assign(D.next.size(), Word{});
    const json& tab = j.at("table");
    for (auto it = tab.begin(); it != tab.end(); ++it) {
        const std::string field = "table." + it.key();
        const auto bar = it.key().find('|');
        if (bar == std::string::npos) fail(field, "key must have the form \"t|s\"");
        const int t = vf_find(D, vf_parse(D.group, it.key().substr(0, bar)));
        const std::string sname = it.key().substr(bar + 1);
        const auto s = std::find(D.group.names.begin(), D.group.names.end(), sname);
        if (t < 0) fail(field, "coset element not in the transversal");
        if (s == D.group.names.end()) fail(field, "unknown generator");
        const json& v = it.value();
        if (!v.is_array() || v.size() != 2) fail(field, "value must be [t', w]");
        const int t2 = vf_find(D, vf_parse(D.group, v[0].get<std::string>()));
        if (t2 < 0) fail(field, "target coset not in the transversal");
        const auto idx = static_cast<std::size_t>(t * k + static_cast<int>(s - D.group.names.begin()));
        D.next[idx] = t2;
        D.cocycle[idx] = D.free_alphabet.parse(v[1].get<std::string>());
    }
    return D;
}

json vf_to_json(const VFDatum& D) {
    json j;
    j["factors"] = D.group.orders;
    j["generators"] = D.group.names;
    json T = json::array();
    for (const auto& t : D.transversal) T.push_back(vf_format(D.group, t));
    j["transversal"] = T;
    json B = json::array();
    for (const auto& b : D.free_basis) B.push_back(vf_format(D.group, b));
    j["free_basis"] = B;
    json tab = json::object();
    const int k = D.group.factors();
    for (int t = 0; t < D.index(); ++t)
        for (int i = 0; i < k; ++i) {
            const auto idx = static_cast<std::size_t>(t * k + i);
            if (idx >= D.next.size() || D.next[idx] < 0) continue;
            tab[vf_format(D.group, D.transversal[static_cast<std::size_t>(t)]) + "|" + D.group.names[static_cast<std::size_t>(i)]] =
                json::array({vf_format(D.group, D.transversal[static_cast<std::size_t>(D.next[idx])]),
                             D.free_alphabet.format(D.cocycle[idx])});
        }
    j["table"] = tab;
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ParseError(path + ": line " + std::to_string(line) + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot write");
    out << text;
}

std::string csv_number(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
    return std::string(buf, r.ptr);
}

}  // namespace bdrep
