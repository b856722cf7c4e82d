#include "iwa/group_ring.hpp"

#include <algorithm>

namespace iwa {

namespace {

PadicScalar one_of(long p, long prec) { return PadicScalar::from_long(p, 1, prec); }

TruncatedSeries to_y_basis(const TruncatedSeries& f) {
    long p = f.prime(), prec = f.prec();
    return f.compose_linear(PadicScalar::from_long(p, -1, prec + 32), one_of(p, prec + 32));
}

TruncatedSeries from_y_basis(const TruncatedSeries& g) {
    long p = g.prime(), prec = g.prec();
    return g.compose_linear(one_of(p, prec + 32), one_of(p, prec + 32));
}

long pow_long(long base, long exp) {
    long r = 1;
    for (long i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

GroupRingElem::GroupRingElem(long p, long level) : p_(p), level_(level) {
    if (level < 1) throw domain_error("group ring level must be >= 1");
    mod_ = pow_long(p, level);
}

long GroupRingElem::reduce_unit(long a) const {
    long r = ((a % mod_) + mod_) % mod_;
    if (r % p_ == 0) throw domain_error("group ring support must consist of units");
    return r;
}

GroupRingElem GroupRingElem::dirac(const Config& cfg, long level, long a) {
    GroupRingElem e(cfg.p, level);
    e.set(a, PadicScalar::from_long(cfg.p, 1, cfg.prec));
    return e;
}

PadicScalar GroupRingElem::coeff(long a) const {
    auto it = c_.find(reduce_unit(a));
    if (it == c_.end()) return PadicScalar::zero_at(p_, 1 << 20);
    return it->second;
}

void GroupRingElem::set(long a, const PadicScalar& v) { c_[reduce_unit(a)] = v; }

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
    if (p_ != o.p_ || level_ != o.level_) throw domain_error("group ring level mismatch");
    GroupRingElem r = *this;
    for (const auto& [a, v] : o.c_) {
        auto it = r.c_.find(a);
        if (it == r.c_.end())
            r.c_[a] = v;
        else
            it->second = it->second + v;
    }
    return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const {
    GroupRingElem neg = o;
    for (auto& [a, v] : neg.c_) v = -v;
    return *this + neg;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
    if (p_ != o.p_ || level_ != o.level_) throw domain_error("group ring level mismatch");
    GroupRingElem r(p_, level_);
    for (const auto& [a, va] : c_)
        for (const auto& [b, vb] : o.c_) {
            long ab = (a * b) % mod_;
            auto it = r.c_.find(ab);
            if (it == r.c_.end())
                r.c_[ab] = va * vb;
            else
                it->second = it->second + va * vb;
        }
    return r;
}

GroupRingElem GroupRingElem::operator*(const PadicScalar& s) const {
    GroupRingElem r = *this;
    for (auto& [a, v] : r.c_) v = v * s;
    return r;
}

bool GroupRingElem::congruent(const GroupRingElem& o) const {
    if (p_ != o.p_ || level_ != o.level_) return false;
    for (const auto& [a, v] : c_)
        if (!(v - o.coeff(a)).is_zero()) return false;
    for (const auto& [a, v] : o.c_)
        if (!(v - coeff(a)).is_zero()) return false;
    return true;
}

TruncatedSeries mellin(const Config& cfg, const GroupRingElem& f) {
    long p = f.prime();
    long N = f.modulus();
    std::vector<PadicScalar> yc((size_t)N, PadicScalar::zero_at(p, cfg.prec));
    for (const auto& [a, v] : f.coeffs()) yc[(size_t)a] = v;
    return from_y_basis(TruncatedSeries(p, cfg.prec, std::move(yc), TailKind::Zero));
}

TruncatedSeries mellin_action_check(const Config& cfg, long sigma, const TruncatedSeries& f,
                                    long level) {
    long p = f.prime();
    long N = pow_long(p, level);
    long s = ((sigma % N) + N) % N;
    if (s % p == 0) throw domain_error("group action requires a unit");
    TruncatedSeries g = f;
    if (g.x_trunc() < N) g = g + TruncatedSeries::zero(p, f.prec(), N);
    if (g.x_trunc() > N) {
        // reduce the representative mod omega_level first
        Config c2 = cfg;
        c2.prec = f.prec();
        g = g.divrem_monic(omega(c2, level)).second;
        g = g + TruncatedSeries::zero(p, f.prec(), N);
    }
    TruncatedSeries b = to_y_basis(g);
    std::vector<PadicScalar> yc((size_t)N, PadicScalar::zero_at(p, f.prec()));
    for (long k = 0; k < N && k < b.x_trunc(); ++k) {
        long t = (s * k) % N;
        yc[(size_t)t] = yc[(size_t)t] + b.coeff(k);
    }
    return from_y_basis(TruncatedSeries(p, f.prec(), std::move(yc), TailKind::Zero));
}

GroupRingElem sigma_act(const Config&, long sigma, const GroupRingElem& f) {
    GroupRingElem r(f.prime(), f.level());
    for (const auto& [a, v] : f.coeffs()) r.set(sigma * a, v);
    return r;
}

GroupRingElem e_delta(const Config& cfg, const DeltaChar& delta, const GroupRingElem& f) {
    long p = f.prime();
    long prec = std::max(cfg.prec, f.level() + 2);
    GroupRingElem acc(p, f.level());
    for (long d = 1; d < p; ++d) {
        PadicScalar tau = teichmuller(p, d, prec);
        long dhat = (long)mpz_class(tau.lift() % f.modulus()).get_si();
        // delta^{-1}(d) = tau^{p-1-i} since tau^{p-1} = 1
        PadicScalar chr = tau.pow(((p - 1 - delta.i) % (p - 1) + (p - 1)) % (p - 1));
        acc = acc + sigma_act(cfg, dhat, f) * chr;
    }
    return acc * PadicScalar::from_long(p, p - 1, prec).inv();
}

GroupRingElem transition(const Config&, const GroupRingElem& f) {
    if (f.level() < 2) throw domain_error("transition needs level >= 2");
    GroupRingElem r(f.prime(), f.level() - 1);
    for (const auto& [a, v] : f.coeffs()) r.set(a % r.modulus(), r.coeff(a) + v);
    return r;
}

TruncatedSeries ell_group(const Config& cfg, long j, long T_trunc) {
    return ell(cfg, j, T_trunc);
}

GroupRingElem from_T_polynomial(const Config& cfg, long level, const TruncatedSeries& h) {
    if (!h.is_polynomial()) throw domain_error("comparison map is defined on polynomials");
    long p = cfg.p;
    GroupRingElem base = GroupRingElem::dirac(cfg, level, cfg.u) - GroupRingElem::dirac(cfg, level, 1);
    GroupRingElem res(p, level);
    for (long k = h.degree(); k >= 0; --k) {
        res = res * base;
        res = res + GroupRingElem::dirac(cfg, level, 1) * h.coeff(k);
    }
    return res;
}

PadicScalar chi_weight(const Config& cfg, const GroupRingElem& f, long k) {
    long p = f.prime();
    PadicScalar acc = PadicScalar::zero_at(p, cfg.prec + 16);
    for (const auto& [a, v] : f.coeffs())
        acc = acc + v * PadicScalar::from_long(p, a, cfg.prec + 16).pow(k);
    return acc;
}

}  // namespace iwa
