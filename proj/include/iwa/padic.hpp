#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwa {

/// Thrown when an operation leaves the domain where it is defined
/// (division by an apparent zero, log of a non-principal unit, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when truncation or precision is too small to certify a result.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpz_class pow_si(unsigned long base, unsigned long exp);

/// An element of Q_p known modulo p^N (absolute precision shift + prec).
///
/// Canonical form: value = p^shift * rep with rep a unit in [0, p^prec),
/// or rep == 0, prec == 0, meaning "zero to absolute precision shift".
/// Elements of negative valuation carry shift < 0.
class PadicScalar {
public:
    PadicScalar() : p_(0), shift_(0), prec_(0), rep_(0) {}

    static PadicScalar from_mpz(long p, const mpz_class& value, long abs_prec);
    static PadicScalar from_long(long p, long value, long abs_prec);
    static PadicScalar zero_at(long p, long abs_prec);
    /// p^shift * rep, rep reduced mod p^rel_prec.
    static PadicScalar make(long p, long shift, const mpz_class& rep, long rel_prec);

    long prime() const { return p_; }
    long shift() const { return shift_; }
    long rel_prec() const { return prec_; }
    long abs_prec() const { return shift_ + prec_; }
    const mpz_class& rep() const { return rep_; }

    /// True when the element is indistinguishable from 0 at its precision.
    bool is_zero() const { return rep_ == 0; }

    /// Valuation: (v, true) when determined, (bound, false) meaning ">= bound".
    std::pair<long, bool> valuation() const;
    bool is_unit() const { return rep_ != 0 && shift_ == 0; }

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator/(const PadicScalar& o) const;
    PadicScalar inv() const;
    PadicScalar pow(long e) const;
    /// Multiply by p^k (exact).
    PadicScalar mul_p_pow(long k) const;

    /// a - b == 0 at the joint precision.
    bool congruent(const PadicScalar& o) const { return (*this - o).is_zero(); }

    /// Integer representative p^shift*rep when shift >= 0; throws otherwise.
    mpz_class lift() const;

    /// Literal format "<integer> + O(<p>^<N>)"; negative-valuation elements
    /// as "<rep>*<p>^<shift> + O(<p>^<N>)".
    std::string str() const;
    static PadicScalar parse(long p, const std::string& text, long default_prec);

private:
    PadicScalar(long p, long shift, long prec, mpz_class rep)
        : p_(p), shift_(shift), prec_(prec), rep_(std::move(rep)) {}
    void canonicalize();

    long p_;
    long shift_;
    long prec_;
    mpz_class rep_;
};

/// Teichmuller lift: the (p-1)-th root of unity congruent to a mod p.
PadicScalar teichmuller(long p, long a, long prec);

/// log of a principal unit (x == 1 mod p) via the usual series.
PadicScalar log_unit(const PadicScalar& x, long prec);

/// Modulus data for a finite extension of Q_p generated by one element.
class ExtModulus {
public:
    enum class Kind { Cyclotomic, Inert };

    /// Phi_{p^n}(t) = sum_{i<p} t^{i p^{n-1}}; root = primitive p^n-th root of 1.
    static std::shared_ptr<const ExtModulus> cyclotomic(long p, long n);
    /// Monic integer polynomial, irreducible mod p; degree = residue degree f.
    static std::shared_ptr<const ExtModulus> inert(long p, std::vector<mpz_class> coeffs);
    /// A default inert modulus of degree f (f in {1,2,3}).
    static std::shared_ptr<const ExtModulus> inert_default(long p, long f);

    long prime() const { return p_; }
    Kind kind() const { return kind_; }
    long level() const { return level_; }          // cyclotomic: n
    long degree() const { return (long)coeffs_.size() - 1; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

private:
    ExtModulus(long p, Kind k, long level, std::vector<mpz_class> coeffs)
        : p_(p), kind_(k), level_(level), coeffs_(std::move(coeffs)) {}
    long p_;
    Kind kind_;
    long level_;
    std::vector<mpz_class> coeffs_;  // monic, ascending
};

using ExtModulusPtr = std::shared_ptr<const ExtModulus>;

/// Element of Q_p[t]/(modulus), coefficients as PadicScalar.
class ExtScalar {
public:
    ExtScalar() = default;
    ExtScalar(ExtModulusPtr mod, std::vector<PadicScalar> coeffs);
    static ExtScalar from_base(ExtModulusPtr mod, const PadicScalar& c);
    static ExtScalar zero(ExtModulusPtr mod, long p, long abs_prec);
    static ExtScalar generator(ExtModulusPtr mod, long abs_prec);

    const ExtModulusPtr& modulus() const { return mod_; }
    const std::vector<PadicScalar>& coeffs() const { return c_; }

    bool is_zero() const;
    /// Min over coefficients of the valuation lower bound.
    long val_lower_bound() const;

    ExtScalar operator-() const;
    ExtScalar operator+(const ExtScalar& o) const;
    ExtScalar operator-(const ExtScalar& o) const;
    ExtScalar operator*(const ExtScalar& o) const;
    ExtScalar operator*(const PadicScalar& s) const;
    ExtScalar inv() const;
    ExtScalar pow(long e) const;
    bool congruent(const ExtScalar& o) const;

    std::string str() const;

private:
    ExtModulusPtr mod_;
    std::vector<PadicScalar> c_;
};

/// The Frobenius lift sigma on an inert extension: the unique ring
/// endomorphism reducing to the p-power map on the residue field.
/// Cyclotomic moduli are rejected.
ExtScalar frobenius(const ExtScalar& x);

}  // namespace iwa
