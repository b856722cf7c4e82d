#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "iwa/padic.hpp"

namespace iwa {

/// Ambient configuration: the prime, the fixed unit u = chi(gamma~)
/// generating 1 + pZ_p, and the nominal working precision.
struct Config {
    long p = 3;
    long u = 4;
    long prec = 30;
};

/// rho = p^{-a/b}, a/b > 0 in lowest terms.
struct RadiusExp {
    long a = 1;
    long b = 1;
    RadiusExp() = default;
    RadiusExp(long a_, long b_);
    mpq_class exponent() const { return mpq_class(a, b); }
    std::string str() const;
    static RadiusExp parse(const std::string& s);  // "a/b" or "a"
};

/// What is known about coefficients beyond x_trunc.
enum class TailKind {
    Zero,        // polynomial: tail identically zero
    LogBounded,  // v_p(a_k) >= -offset - floor(log_p k), as for log(1+x)/log u
    Unknown,
};

/// A power series over Q_p truncated at x^x_trunc.
class TruncatedSeries {
public:
    TruncatedSeries() : p_(0), prec_(0), tail_(TailKind::Unknown), tail_offset_(0) {}
    TruncatedSeries(long p, long prec, std::vector<PadicScalar> coeffs,
                    TailKind tail = TailKind::Unknown, long tail_offset = 0);

    static TruncatedSeries zero(long p, long prec, long len);
    static TruncatedSeries one(long p, long prec);
    /// Exact integer polynomial.
    static TruncatedSeries from_ints(long p, long prec, const std::vector<mpz_class>& coeffs);

    long prime() const { return p_; }
    long prec() const { return prec_; }
    long x_trunc() const { return (long)c_.size(); }
    TailKind tail() const { return tail_; }
    long tail_offset() const { return tail_offset_; }
    const std::vector<PadicScalar>& coeffs() const { return c_; }
    PadicScalar coeff(long k) const;
    bool is_polynomial() const { return tail_ == TailKind::Zero; }
    /// Degree of the polynomial part (highest index with nonzero coefficient).
    long degree() const;
    bool is_zero() const;

    TruncatedSeries operator-() const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const PadicScalar& s) const;
    TruncatedSeries mul_p_pow(long k) const;
    TruncatedSeries truncate(long len) const;
    /// Multiply by x^k.
    TruncatedSeries shift_x(long k) const;

    /// f(a + b*x); preserves x_trunc. Polynomial inputs stay exact.
    TruncatedSeries compose_linear(const PadicScalar& a, const PadicScalar& b) const;
    /// f(q(x)) with q(0) = 0; polynomial inputs expand fully.
    TruncatedSeries compose(const TruncatedSeries& q) const;
    /// Horner evaluation at t, v_p(t) >= 1; result precision capped by what
    /// the truncation plus tail bound certify.
    PadicScalar evaluate(const PadicScalar& t) const;
    ExtScalar evaluate_ext(const ExtScalar& t) const;

    /// Exact division with remainder by a monic polynomial.
    std::pair<TruncatedSeries, TruncatedSeries> divrem_monic(const TruncatedSeries& pi) const;

    bool congruent(const TruncatedSeries& o) const;
    /// Coefficientwise congruence of coefficients 0..len-1 modulo p^abs_prec.
    bool congruent_to(const TruncatedSeries& o, long len, long abs_prec) const;

    std::string str() const;

private:
    long p_;
    long prec_;
    std::vector<PadicScalar> c_;
    TailKind tail_;
    long tail_offset_;
};

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices;  // (n, v_p(a_n)) on the lower hull
    long reliable_window = 0;                     // hull certified for n < reliable_window
};

/// Lower convex hull of (n, v_p(a_n)) over determined coefficients.
NewtonPolygon newton_polygon(const TruncatedSeries& f);

struct NormResult {
    mpq_class valuation;          // v_rho(f) = min_n (v_p(a_n) + n a/b)
    std::vector<long> attained;   // indices attaining the minimum
    bool certified = false;
    std::string note;
};

/// v_rho(f), certified against precision floors and the tail bound;
/// throws precision_error when the minimum cannot be certified.
NormResult norm_at_radius(const TruncatedSeries& f, const RadiusExp& rho);

/// True iff f has no zeros on the circle |x| = p^{-a/b} (unique minimizer).
bool is_unit_on_circle(const TruncatedSeries& f, const RadiusExp& rho);

/// omega_n = (1+x)^{p^n} - 1, exact.
TruncatedSeries omega(const Config& cfg, long n);
/// xi_n = omega_n / omega_{n-1} = sum_{i<p} (1+x)^{i p^{n-1}}, exact; n >= 1.
TruncatedSeries xi(const Config& cfg, long n);
/// Tw_u^{-j}(f) = f(u^{-j}(1+x) - 1).
TruncatedSeries twist(const Config& cfg, const TruncatedSeries& f, long j);
/// chi_u at weight k: evaluation at x = u^k - 1.
PadicScalar chi_u_eval(const Config& cfg, const TruncatedSeries& f, long k);
/// log(1+x) truncated at len.
TruncatedSeries log1px(const Config& cfg, long len);
/// ell_j = log(1+x)/log u - j truncated at len.
TruncatedSeries ell(const Config& cfg, long j, long len);
/// Monic normalization of Tw_u^{-j}(xi_n): degree p^{n-1}(p-1), roots u^j zeta - 1.
TruncatedSeries pi_factor(const Config& cfg, long n, long j);
/// Largest e with pi^e | f, remainders declared zero at valuation >= tau
/// (tau < 0 means the default prec/2).
long ord_at_factor(const TruncatedSeries& f, const TruncatedSeries& pi, long tau = -1);

/// The critical radii p^{-1/(p^{n-1}(p-1))} where ell_j fails to be a unit.
RadiusExp critical_radius(long p, long n);

}  // namespace iwa
