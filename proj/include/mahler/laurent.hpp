#pragma once

#include <mahler/common.hpp>
#include <mahler/int_matrix.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace mahler {

/// Exponent vector of one Laurent monomial: k signed integer exponents.
using exponent_vector = std::vector<std::int64_t>;

namespace coeff {

inline bool is_zero(const bigint& c) { return c == 0; }
inline bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }

inline double abs_value(const bigint& c) { return std::abs(static_cast<double>(c)); }
inline double abs_value(const std::complex<double>& c) { return std::abs(c); }

inline std::complex<double> to_complex(const bigint& c) { return {static_cast<double>(c), 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& c) { return c; }

} // namespace coeff

/// Sparse Laurent polynomial in k variables. Terms map exponent vectors to
/// nonzero coefficients; the term order is lexicographic (the canonical order
/// used for printing, hashing and enumeration). A polynomial with no terms is
/// the zero polynomial. k = 0 polynomials are scalars (single empty-exponent
/// term or zero).
template <class C>
class laurent_poly {
public:
    using coeff_type = C;
    using term_map = std::map<exponent_vector, C>;

    laurent_poly() = default;
    explicit laurent_poly(std::size_t k) : k_(k) {}

    static laurent_poly constant(std::size_t k, const C& c) {
        laurent_poly p(k);
        p.add_term(exponent_vector(k, 0), c);
        return p;
    }

    static laurent_poly monomial(std::size_t k, const exponent_vector& e, const C& c) {
        laurent_poly p(k);
        p.add_term(e, c);
        return p;
    }

    std::size_t k() const { return k_; }
    const term_map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_monomial() const { return terms_.size() == 1; }

    /// Adds c * z^e, combining with an existing term and dropping zeros.
    void add_term(const exponent_vector& e, const C& c) {
        if (e.size() != k_) throw std::invalid_argument("add_term: exponent length differs from k");
        if (coeff::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (coeff::is_zero(it->second)) terms_.erase(it);
        }
    }

    bool operator==(const laurent_poly& o) const = default;

    laurent_poly operator-() const {
        laurent_poly r(k_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    laurent_poly operator+(const laurent_poly& o) const {
        if (k_ != o.k_) throw std::invalid_argument("poly sum: variable counts differ");
        laurent_poly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }

    laurent_poly operator-(const laurent_poly& o) const { return *this + (-o); }

private:
    std::size_t k_ = 0;
    term_map terms_;
};

using ipoly = laurent_poly<bigint>;
using cpoly = laurent_poly<std::complex<double>>;

/// Exact product; the substitution homomorphism identity (FG)_A = F_A G_A
/// rests on this being exact for integer coefficients.
template <class C>
laurent_poly<C> mul(const laurent_poly<C>& f, const laurent_poly<C>& g) {
    if (f.k() != g.k()) throw std::invalid_argument("mul: variable counts differ");
    laurent_poly<C> r(f.k());
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) {
            exponent_vector e(f.k());
            for (std::size_t i = 0; i < f.k(); ++i) e[i] = ef[i] + eg[i];
            r.add_term(e, cf * cg);
        }
    return r;
}

/// Monomial substitution F -> F_A: a term with exponent column j becomes a
/// term with exponent A*j in rows(A) variables. Like terms combine; the
/// result may be zero.
template <class C>
laurent_poly<C> substitute(const laurent_poly<C>& f, const int_matrix& a) {
    if (a.cols() != f.k()) throw std::invalid_argument("substitute: matrix has " + std::to_string(a.cols()) +
                                                       " columns but polynomial has " + std::to_string(f.k()) +
                                                       " variables");
    laurent_poly<C> r(a.rows());
    for (const auto& [e, c] : f.terms()) {
        exponent_vector img(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            bigint s = 0;
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (e[j] != 0) s += a(i, j) * e[j];
            img[i] = to_int64_checked(s, "substituted exponent");
        }
        r.add_term(img, c);
    }
    return r;
}

/// Length: sum of the moduli of the coefficients. 0 for the zero polynomial.
template <class C>
double length(const laurent_poly<C>& f) {
    double s = 0;
    for (const auto& [e, c] : f.terms()) s += coeff::abs_value(c);
    return s;
}

/// Exact length for integer coefficients.
inline bigint length_exact(const ipoly& f) {
    bigint s = 0;
    for (const auto& [e, c] : f.terms()) s += abs(c);
    return s;
}

/// F(e^{2 pi i t_1}, ..., e^{2 pi i t_k}). Each monomial's argument is
/// accumulated and reduced modulo 1 before the single complex exponential,
/// so large exponents cost no accuracy.
template <class C>
std::complex<double> evaluate(const laurent_poly<C>& f, const std::vector<double>& angles) {
    if (angles.size() != f.k())
        throw std::invalid_argument("evaluate: expected " + std::to_string(f.k()) + " angles, got " +
                                    std::to_string(angles.size()));
    std::complex<double> s = 0;
    for (const auto& [e, c] : f.terms()) {
        double arg = 0;
        for (std::size_t i = 0; i < f.k(); ++i) {
            if (e[i] == 0) continue;
            double t = static_cast<double>(e[i]) * angles[i];
            arg += t - std::floor(t);
        }
        arg -= std::floor(arg);
        s += coeff::to_complex(c) * std::polar(1.0, 2.0 * std::numbers::pi * arg);
    }
    return s;
}

/// Canonical form dividing out z^v, v the componentwise minimum exponent.
/// Changes the polynomial (not its measure); used for display and dedup only.
template <class C>
laurent_poly<C> monomial_normalized(const laurent_poly<C>& f) {
    if (f.is_zero() || f.k() == 0) return f;
    exponent_vector vmin = f.terms().begin()->first;
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < f.k(); ++i) vmin[i] = std::min(vmin[i], e[i]);
    laurent_poly<C> r(f.k());
    for (const auto& [e, c] : f.terms()) {
        exponent_vector e2(f.k());
        for (std::size_t i = 0; i < f.k(); ++i) e2[i] = e[i] - vmin[i];
        r.add_term(e2, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// text form
//
// grammar: expr  = ['+'|'-'] term (('+'|'-') term)*
//          term  = factor (['*'] factor)*
//          factor = integer | 'z' index ['^' ['-'] integer]
// ---------------------------------------------------------------------------

namespace detail {

class poly_parser {
public:
    poly_parser(const std::string& text, std::size_t k) : s_(text), k_(k) {}

    ipoly run() {
        ipoly p(k_);
        skip_ws();
        bool neg = accept('-');
        if (!neg) accept('+');
        parse_term(p, neg);
        skip_ws();
        while (pos_ < s_.size()) {
            char op = s_[pos_];
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            ++pos_;
            parse_term(p, op == '-');
            skip_ws();
        }
        return p;
    }

private:
    void parse_term(ipoly& p, bool negative) {
        bigint c = negative ? -1 : 1;
        exponent_vector e(k_, 0);
        bool any = false;
        for (;;) {
            skip_ws();
            if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])))) {
                c *= parse_uint();
                any = true;
            } else if (pos_ < s_.size() && s_[pos_] == 'z') {
                ++pos_;
                std::size_t vpos = pos_;
                bigint idx = parse_uint();
                if (idx < 1 || idx > static_cast<std::int64_t>(k_))
                    throw parse_error("variable index out of range (k = " + std::to_string(k_) + ")", vpos);
                std::int64_t exp = 1;
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    bool eneg = accept('-');
                    exp = to_int64_checked(parse_uint(), "exponent");
                    if (eneg) exp = -exp;
                }
                e[static_cast<std::size_t>(idx) - 1] += exp;
                any = true;
            } else {
                fail("expected coefficient or variable");
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == 'z'))
                continue; // juxtaposition, e.g. "2z1"
            break;
        }
        if (!any) fail("empty term");
        p.add_term(e, c);
    }

    bigint parse_uint() {
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer");
        bigint v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos_); }

    const std::string& s_;
    std::size_t k_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the expression grammar above into a normalized polynomial.
/// parse(print(p)) == p for every normalized p.
inline ipoly parse_poly(const std::string& text, std::size_t k) {
    // "0" and cancellations yield the zero polynomial (empty term set).
    detail::poly_parser parser(text, k);
    ipoly p = parser.run();
    return p;
}

/// Canonical text form: terms in descending lexicographic exponent order.
inline std::string print_poly(const ipoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bigint mag = abs(c);
        if (c < 0)
            out << '-';
        else if (!first)
            out << '+';
        first = false;
        bool has_var = false;
        for (auto x : e)
            if (x != 0) has_var = true;
        if (mag != 1 || !has_var) {
            out << mag.str();
            if (has_var) out << '*';
        }
        bool first_factor = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!first_factor) out << '*';
            first_factor = false;
            out << 'z' << (i + 1);
            if (e[i] != 1) out << '^' << e[i];
        }
    }
    return out.str();
}

} // namespace mahler
