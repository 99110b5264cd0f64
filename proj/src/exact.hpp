#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bdrep {

struct ExactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// p + q·sqrt(d) with rational p, q and a fixed squarefree radicand d shared
/// by all operands (d = 0 or 1 means plain rationals).
class Quad {
public:
    Quad() = default;
    Quad(mpq_class p, mpq_class q, long d) : p_(std::move(p)), q_(std::move(q)), d_(d) { canon(); }
    static Quad rational(const mpq_class& p, long d = 0) { return Quad(p, 0, d); }

    /// Parses "p", "p/q", "r*sqrt(d)", "p+r*sqrt(d)", "sqrt(d)" etc.
    static Quad parse(std::string_view text, long d);

    const mpq_class& rational_part() const { return p_; }
    const mpq_class& radical_part() const { return q_; }
    long radicand() const { return d_; }
    bool is_zero() const { return p_ == 0 && q_ == 0; }
    bool is_rational() const { return q_ == 0; }

    Quad operator+(const Quad& o) const;
    Quad operator-(const Quad& o) const;
    Quad operator*(const Quad& o) const;
    Quad operator-() const { return Quad(-p_, -q_, d_); }
    Quad& operator+=(const Quad& o) { return *this = *this + o; }
    bool operator==(const Quad& o) const { return p_ == o.p_ && q_ == o.q_; }

    double to_double() const;
    std::string str() const;

private:
    void canon() {
        p_.canonicalize();
        q_.canonicalize();
    }
    long merge(const Quad& o) const;

    mpq_class p_ = 0;
    mpq_class q_ = 0;
    long d_ = 0;
};

/// Dense matrix over Q(sqrt d), row-major.
struct QuadMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Quad> data;

    QuadMatrix() = default;
    QuadMatrix(int r, int c, long d) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), Quad(0, 0, d)) {}
    Quad& operator()(int i, int j) { return data[static_cast<std::size_t>(i * cols + j)]; }
    const Quad& operator()(int i, int j) const { return data[static_cast<std::size_t>(i * cols + j)]; }
};

QuadMatrix operator*(const QuadMatrix& A, const QuadMatrix& B);
QuadMatrix adjoint(const QuadMatrix& A);  // entries are real, so the transpose
std::vector<Quad> apply(const QuadMatrix& A, const std::vector<Quad>& v);

}  // namespace bdrep
