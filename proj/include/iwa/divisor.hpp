#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "iwa/series.hpp"

namespace iwa {

/// A factor symbol: either pi_{n,j} (the monic twisted cyclotomic factor)
/// or the formal symbol ell_j. Serialized as "pi:n:j" / "ell:j".
struct FactorSym {
    enum class Kind { Pi, Ell };
    Kind kind = Kind::Pi;
    long n = 1;  // only meaningful for Pi
    long j = 0;

    static FactorSym pi(long n, long j) { return FactorSym{Kind::Pi, n, j}; }
    static FactorSym ell(long j) { return FactorSym{Kind::Ell, 0, j}; }

    auto operator<=>(const FactorSym&) const = default;

    std::string str() const;
    static FactorSym parse(const std::string& s);
};

/// A product of factor symbols with non-negative exponents, recorded modulo
/// units and powers of p. The zero element is kept apart (every exponent
/// infinite).
class FactoredElement {
public:
    FactoredElement() = default;
    static FactoredElement one() { return FactoredElement(); }
    static FactoredElement zero();
    static FactoredElement sym(const FactorSym& s, long e = 1);

    bool is_zero() const { return zero_; }
    bool is_one() const { return !zero_ && e_.empty(); }
    const std::map<FactorSym, long>& exponents() const { return e_; }
    long exponent(const FactorSym& s) const;

    FactoredElement operator*(const FactoredElement& o) const;
    bool divides(const FactoredElement& o) const;
    bool operator==(const FactoredElement& o) const = default;

    std::string str() const;

private:
    bool zero_ = false;
    std::map<FactorSym, long> e_;  // positive exponents only
};

/// The elementary-divisor chain in the paper's descending convention:
/// entries = [f_1; ...; f_d] with f_{s+1} | f_s.
struct DivisorChain {
    std::vector<FactoredElement> entries;
    bool partial = false;        // some minor was indistinguishable from zero
    bool det_consistent = true;  // numeric engine: determinant cross-check
    std::string note;

    bool descending_ok() const;
};

using FactoredMatrix = std::vector<std::vector<FactoredElement>>;
using SeriesMatrix = std::vector<std::vector<TruncatedSeries>>;

/// Exact engine on factored entries, generic-unit semantics: the exponent of
/// a symbol in a minor is the minimum over its permutation terms (no
/// accidental cancellation is modeled). Exhaustive minor enumeration up to
/// 5x5; beyond that, seeded randomized sampling with a note in the chain.
DivisorChain snf_exact(const FactoredMatrix& a, unsigned long seed = 0);

/// Numeric engine: minor-valuation profiles mu_k(pi) = min over k x k minors
/// of ord_at_factor, for each provided monic factor. Cross-checks the column
/// sums against ord_at_factor(det, pi) on square inputs.
DivisorChain snf_numeric(const Config& cfg, const SeriesMatrix& a,
                         const std::vector<std::pair<FactorSym, TruncatedSeries>>& factors,
                         long tau = -1);

/// f_1: the generator of the exponent ideal.
FactoredElement exponent_of(const DivisorChain& chain);

/// The level-n0 shadow of ell_j: prod_{1 <= n <= n0} pi_{n,j}, as a series.
TruncatedSeries ell_shadow_series(const Config& cfg, long j, long n0);
/// The same shadow as a factored element.
FactoredElement ell_shadow_sym(long j, long n0);

/// Turn a factored element into an honest polynomial: pi symbols via
/// pi_factor, ell symbols via their level-ell_shadow_level shadows.
TruncatedSeries materialize(const Config& cfg, const FactoredElement& f, long ell_shadow_level = 2);

}  // namespace iwa
