#include "exact.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace bdrep {

long Quad::merge(const Quad& o) const {
    const bool a = q_ != 0 && d_ > 1;
    const bool b = o.q_ != 0 && o.d_ > 1;
    if (a && b && d_ != o.d_) throw ExactError("exact arithmetic: mixed radicands");
    if (d_ > 1 && o.d_ > 1 && d_ != o.d_) throw ExactError("exact arithmetic: mixed radicands");
    return std::max(d_, o.d_);
}

Quad Quad::operator+(const Quad& o) const { return Quad(p_ + o.p_, q_ + o.q_, merge(o)); }

Quad Quad::operator-(const Quad& o) const { return Quad(p_ - o.p_, q_ - o.q_, merge(o)); }

Quad Quad::operator*(const Quad& o) const {
    const long d = merge(o);
    return Quad(p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_, d);
}

double Quad::to_double() const { return p_.get_d() + q_.get_d() * std::sqrt(static_cast<double>(d_)); }

std::string Quad::str() const {
    if (q_ == 0) return p_.get_str();
    std::string s;
    if (p_ != 0) s = p_.get_str() + (q_ > 0 ? "+" : "");
    return s + q_.get_str() + "*sqrt(" + std::to_string(d_) + ")";
}

namespace {

// One signed term: rational, rational*sqrt(d), or sqrt(d).
void parse_term(std::string_view t, long d, mpq_class& p, mpq_class& q) {
    const auto pos = t.find("sqrt(");
    if (pos == std::string_view::npos) {
        mpq_class v{std::string(t)};
        v.canonicalize();
        p += v;
        return;
    }
    const auto close = t.find(')', pos);
    if (close == std::string_view::npos) throw ExactError("exact entry: unbalanced sqrt(");
    const long r = std::stol(std::string(t.substr(pos + 5, close - pos - 5)));
    if (r != d) throw ExactError("exact entry: sqrt(" + std::to_string(r) + ") differs from the declared radicand");
    mpq_class coef = 1;
    std::string_view head = t.substr(0, pos);
    if (!head.empty()) {
        if (head.back() != '*') throw ExactError("exact entry: expected '*' before sqrt");
        head.remove_suffix(1);
        if (head == "-") coef = -1;
        else if (head != "+") {
            coef = mpq_class(std::string(head));
            coef.canonicalize();
        }
    }
    q += coef;
}

}  // namespace

Quad Quad::parse(std::string_view text, long d) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ExactError("exact entry: empty");
    mpq_class p = 0, q = 0;
    try {
        std::size_t start = 0;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '*' && s[i - 1] != '(')) {
                std::string_view term(s.data() + start, i - start);
                if (!term.empty() && term.front() == '+') term.remove_prefix(1);
                if (term.empty()) throw ExactError("exact entry: empty term");
                parse_term(term, d, p, q);
                start = i;
            }
        }
    } catch (const std::invalid_argument&) {
        throw ExactError("exact entry: cannot parse '" + s + "'");
    }
    return Quad(p, q, d);
}

QuadMatrix operator*(const QuadMatrix& A, const QuadMatrix& B) {
    if (A.cols != B.rows) throw ExactError("exact matrix product: shape mismatch");
    long d = 0;
    if (!A.data.empty()) d = A.data.front().radicand();
    QuadMatrix C(A.rows, B.cols, d);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            Quad acc(0, 0, d);
            for (int k = 0; k < A.cols; ++k) acc += A(i, k) * B(k, j);
            C(i, j) = acc;
        }
    return C;
}

QuadMatrix adjoint(const QuadMatrix& A) {
    QuadMatrix T(A.cols, A.rows, A.data.empty() ? 0 : A.data.front().radicand());
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

std::vector<Quad> apply(const QuadMatrix& A, const std::vector<Quad>& v) {
    if (static_cast<int>(v.size()) != A.cols) throw ExactError("exact matrix-vector product: shape mismatch");
    std::vector<Quad> out;
    for (int i = 0; i < A.rows; ++i) {
        Quad acc(0, 0, A.data.empty() ? 0 : A.data.front().radicand());
        for (int k = 0; k < A.cols; ++k) acc += A(i, k) * v[static_cast<std::size_t>(k)];
        out.push_back(acc);
    }
    return out;
}

}  // namespace bdrep
