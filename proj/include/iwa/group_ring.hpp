#pragma once

#include <map>

#include "iwa/series.hpp"

namespace iwa {

/// An element of the finite group ring Z_p[(Z/p^level)^x], coefficients on
/// least positive unit residues.
class GroupRingElem {
public:
    GroupRingElem() : p_(0), level_(0), mod_(0) {}
    GroupRingElem(long p, long level);

    static GroupRingElem dirac(const Config& cfg, long level, long a);

    long prime() const { return p_; }
    long level() const { return level_; }
    long modulus() const { return mod_; }
    const std::map<long, PadicScalar>& coeffs() const { return c_; }

    PadicScalar coeff(long a) const;
    /// Set the coefficient at the unit residue a (reduced mod p^level).
    void set(long a, const PadicScalar& v);

    GroupRingElem operator+(const GroupRingElem& o) const;
    GroupRingElem operator-(const GroupRingElem& o) const;
    /// Convolution product.
    GroupRingElem operator*(const GroupRingElem& o) const;
    GroupRingElem operator*(const PadicScalar& s) const;

    bool congruent(const GroupRingElem& o) const;

private:
    long reduce_unit(long a) const;
    long p_;
    long level_;
    long mod_;  // p^level
    std::map<long, PadicScalar> c_;
};

/// The character omega^i of Delta = mu_{p-1}; exponent reduced mod p-1.
struct DeltaChar {
    long i = 0;
    DeltaChar() = default;
    explicit DeltaChar(long p, long exponent) { i = ((exponent % (p - 1)) + (p - 1)) % (p - 1); }
};

/// Mellin transform sum_a f[a] (1+x)^a, as the reduced representative
/// mod omega_level of length p^level (an exact polynomial).
TruncatedSeries mellin(const Config& cfg, const GroupRingElem& f);

/// The intertwined action on the series side: f((1+x)^sigma - 1) mod omega_n.
/// Contract: mellin(sigma . g) = mellin_action_check(sigma, mellin(g)).
TruncatedSeries mellin_action_check(const Config& cfg, long sigma, const TruncatedSeries& f,
                                    long level);

/// Group-side action of the unit sigma (translation of the support).
GroupRingElem sigma_act(const Config& cfg, long sigma, const GroupRingElem& f);

/// Isotypic projector e_delta = (p-1)^{-1} sum_{d in Delta} delta^{-1}(d) [d].
GroupRingElem e_delta(const Config& cfg, const DeltaChar& delta, const GroupRingElem& f);

/// Natural projection to the group ring one level down (sum over fibers).
GroupRingElem transition(const Config& cfg, const GroupRingElem& f);

/// ell_j as a T-adic series in T = gamma~ - 1: log(1+T)/log u - j. The
/// coefficients agree with the series-side ell; evaluation at T = u^k - 1
/// (chi_u_eval) gives k - j.
TruncatedSeries ell_group(const Config& cfg, long j, long T_trunc);

/// Comparison map between the two H-levels, on polynomial elements: sends
/// sum c_k T^k to sum c_k ([sigma_u] - [1])^k at the given level. Mellin
/// turns convolution into the group action (not into multiplication of
/// series), so the intertwining reads
///   mellin(from_T_polynomial(h) * g) = h(A)(mellin(g)),
/// where A is the operator s -> s((1+x)^u - 1) - s on Z_p[x]/omega_n.
/// Weight-k specialization on the group side is chi^k, matching
/// chi_u_eval of the T-series at weight k modulo p^level (the finite ring
/// only sees residues mod p^level).
GroupRingElem from_T_polynomial(const Config& cfg, long level, const TruncatedSeries& h);

/// chi^k of a group element: sum_a f[a] a^k.
PadicScalar chi_weight(const Config& cfg, const GroupRingElem& f, long k);

}  // namespace iwa
