#include "iwa/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace iwa {

RadiusExp::RadiusExp(long a_, long b_) : a(a_), b(b_) {
    if (a <= 0 || b <= 0) throw domain_error("RadiusExp: exponent a/b must be positive");
    long g = std::gcd(a, b);
    a /= g;
    b /= g;
}

std::string RadiusExp::str() const {
    std::ostringstream os;
    os << a << "/" << b;
    return os.str();
}

RadiusExp RadiusExp::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return RadiusExp(std::stol(s), 1);
    return RadiusExp(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
}

TruncatedSeries::TruncatedSeries(long p, long prec, std::vector<PadicScalar> coeffs,
                                 TailKind tail, long tail_offset)
    : p_(p), prec_(prec), c_(std::move(coeffs)), tail_(tail), tail_offset_(tail_offset) {}

TruncatedSeries TruncatedSeries::zero(long p, long prec, long len) {
    std::vector<PadicScalar> c((size_t)std::max(1L, len), PadicScalar::zero_at(p, prec));
    return TruncatedSeries(p, prec, std::move(c), TailKind::Zero);
}

TruncatedSeries TruncatedSeries::one(long p, long prec) {
    return TruncatedSeries(p, prec, {PadicScalar::from_long(p, 1, prec)}, TailKind::Zero);
}

TruncatedSeries TruncatedSeries::from_ints(long p, long prec,
                                           const std::vector<mpz_class>& coeffs) {
    std::vector<PadicScalar> c;
    c.reserve(coeffs.size());
    for (auto& z : coeffs) c.push_back(PadicScalar::from_mpz(p, z, prec));
    return TruncatedSeries(p, prec, std::move(c), TailKind::Zero);
}

PadicScalar TruncatedSeries::coeff(long k) const {
    if (k < 0 || k >= (long)c_.size()) {
        if (tail_ == TailKind::Zero) return PadicScalar::zero_at(p_, prec_);
        throw precision_error("coefficient beyond truncation requested");
    }
    return c_[k];
}

long TruncatedSeries::degree() const {
    for (long k = (long)c_.size() - 1; k >= 0; --k)
        if (!c_[k].is_zero()) return k;
    return -1;
}

bool TruncatedSeries::is_zero() const { return degree() < 0; }

static TailKind combine_tail(const TruncatedSeries& a, const TruncatedSeries& b, long& offset) {
    if (a.tail() == TailKind::Unknown || b.tail() == TailKind::Unknown) return TailKind::Unknown;
    if (a.tail() == TailKind::Zero && b.tail() == TailKind::Zero) return TailKind::Zero;
    offset = std::max(a.tail() == TailKind::LogBounded ? a.tail_offset() : 0,
                      b.tail() == TailKind::LogBounded ? b.tail_offset() : 0);
    return TailKind::LogBounded;
}

TruncatedSeries TruncatedSeries::operator-() const {
    auto c = c_;
    for (auto& x : c) x = -x;
    return TruncatedSeries(p_, prec_, std::move(c), tail_, tail_offset_);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    long len;
    if (tail_ == TailKind::Zero && o.tail_ == TailKind::Zero)
        len = std::max(x_trunc(), o.x_trunc());
    else if (tail_ == TailKind::Zero)
        len = o.x_trunc();
    else if (o.tail_ == TailKind::Zero)
        len = x_trunc();
    else
        len = std::min(x_trunc(), o.x_trunc());
    std::vector<PadicScalar> c((size_t)len);
    for (long k = 0; k < len; ++k) {
        PadicScalar a = (k < x_trunc()) ? c_[k] : PadicScalar::zero_at(p_, prec_);
        PadicScalar b = (k < o.x_trunc()) ? o.c_[k] : PadicScalar::zero_at(p_, prec_);
        c[k] = a + b;
    }
    long off = 0;
    TailKind t = combine_tail(*this, o, off);
    return TruncatedSeries(p_, std::min(prec_, o.prec_), std::move(c), t, off);
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + (-o);
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    bool poly = tail_ == TailKind::Zero && o.tail_ == TailKind::Zero;
    long len = poly ? x_trunc() + o.x_trunc() - 1
                    : std::min(tail_ == TailKind::Zero ? o.x_trunc() : x_trunc(),
                               o.tail_ == TailKind::Zero ? x_trunc() : o.x_trunc());
    long la = x_trunc(), lb = o.x_trunc();
    // fast path: integral coefficients on both sides -> one modular convolution
    bool fast = p_ > 0 && p_ == o.p_ && len > 0;
    long P = 1L << 40;
    auto consider = [&](const PadicScalar& s) {
        if (!s.is_zero() && s.shift() < 0) fast = false;
        P = std::min(P, s.abs_prec());
    };
    for (const auto& ck : c_) consider(ck);
    for (const auto& ck : o.c_) consider(ck);
    if (fast && P >= 1) {
        mpz_class mod = pow_si((unsigned long)p_, (unsigned long)P);
        auto lift = [&](const PadicScalar& s) {
            return s.is_zero() ? mpz_class(0) : mpz_class(s.lift() % mod);
        };
        std::vector<mpz_class> va((size_t)la), vb((size_t)lb), vc((size_t)len);
        for (long i = 0; i < la; ++i) va[(size_t)i] = lift(c_[(size_t)i]);
        for (long j = 0; j < lb; ++j) vb[(size_t)j] = lift(o.c_[(size_t)j]);
        for (long i = 0; i < la; ++i) {
            if (va[(size_t)i] == 0) continue;
            for (long j = 0; j < lb && i + j < len; ++j)
                vc[(size_t)(i + j)] += va[(size_t)i] * vb[(size_t)j];
        }
        std::vector<PadicScalar> c;
        c.reserve((size_t)len);
        for (long k = 0; k < len; ++k)
            c.push_back(PadicScalar::from_mpz(p_, vc[(size_t)k] % mod, P));
        return TruncatedSeries(p_, std::min(prec_, o.prec_), std::move(c),
                               poly ? TailKind::Zero : TailKind::Unknown);
    }
    std::vector<PadicScalar> c((size_t)len,
                               PadicScalar::zero_at(p_, std::max(prec_, o.prec_) + 64));
    for (long i = 0; i < la; ++i) {
        if (c_[i].is_zero() && c_[i].shift() >= prec_) continue;
        for (long j = 0; j < lb && i + j < len; ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
    }
    return TruncatedSeries(p_, std::min(prec_, o.prec_), std::move(c),
                           poly ? TailKind::Zero : TailKind::Unknown);
}

TruncatedSeries TruncatedSeries::operator*(const PadicScalar& s) const {
    auto c = c_;
    for (auto& x : c) x = x * s;
    TailKind t = tail_;
    long off = tail_offset_;
    if (t == TailKind::LogBounded) {
        auto [v, exact] = s.valuation();
        if (exact)
            off -= v;
        else
            t = TailKind::Unknown;
    }
    return TruncatedSeries(p_, prec_, std::move(c), t, off);
}

TruncatedSeries TruncatedSeries::mul_p_pow(long k) const {
    auto c = c_;
    for (auto& x : c) x = x.mul_p_pow(k);
    long off = tail_offset_ - k;
    return TruncatedSeries(p_, prec_ + k, std::move(c), tail_, off);
}

TruncatedSeries TruncatedSeries::truncate(long len) const {
    if (len >= x_trunc()) return *this;
    std::vector<PadicScalar> c(c_.begin(), c_.begin() + len);
    TailKind t = tail_ == TailKind::Zero ? TailKind::Unknown : tail_;
    // a shortened polynomial is no longer the same polynomial
    if (tail_ == TailKind::Zero) {
        bool exactcut = true;
        for (long k = len; k < x_trunc(); ++k)
            if (!c_[k].is_zero()) exactcut = false;
        if (exactcut) t = TailKind::Zero;
    }
    return TruncatedSeries(p_, prec_, std::move(c), t, tail_offset_);
}

TruncatedSeries TruncatedSeries::shift_x(long k) const {
    std::vector<PadicScalar> c((size_t)(x_trunc() + k), PadicScalar::zero_at(p_, prec_));
    for (long i = 0; i < x_trunc(); ++i) c[i + k] = c_[i];
    return TruncatedSeries(p_, prec_, std::move(c), tail_, tail_offset_);
}

TruncatedSeries TruncatedSeries::compose_linear(const PadicScalar& a,
                                                const PadicScalar& b) const {
    long len = x_trunc();
    // Fast path: when a, b and every coefficient are integral, the whole
    // substitution is one modular Taylor pass on integer lifts.
    bool fast = p_ > 0 && len > 0;
    long P = 1L << 40;
    auto consider = [&](const PadicScalar& s) {
        if (s.prime() != p_) {
            fast = false;
            return;
        }
        if (!s.is_zero() && s.shift() < 0) fast = false;
        P = std::min(P, s.abs_prec());
    };
    consider(a);
    consider(b);
    for (const auto& ck : c_) consider(ck);
    if (fast && P >= 1) {
        mpz_class mod = pow_si((unsigned long)p_, (unsigned long)P);
        auto lift = [&](const PadicScalar& s) {
            return s.is_zero() ? mpz_class(0) : mpz_class(s.lift() % mod);
        };
        mpz_class A = lift(a), B = lift(b);
        std::vector<mpz_class> v((size_t)len);
        long rlen = 1;
        for (long k = len - 1; k >= 0; --k) {
            long newlen = std::min(len, rlen + 1);
            for (long i = newlen - 1; i >= 1; --i)
                v[(size_t)i] = (v[(size_t)i] * A + v[(size_t)i - 1] * B) % mod;
            v[0] = (v[0] * A + lift(c_[(size_t)k])) % mod;
            rlen = newlen;
        }
        std::vector<PadicScalar> out;
        out.reserve((size_t)len);
        for (long i = 0; i < len; ++i) out.push_back(PadicScalar::from_mpz(p_, v[(size_t)i], P));
        return TruncatedSeries(p_, prec_, std::move(out),
                               tail_ == TailKind::Zero ? TailKind::Zero : TailKind::Unknown);
    }
    std::vector<PadicScalar> res(1, PadicScalar::zero_at(p_, prec_));
    for (long k = len - 1; k >= 0; --k) {
        long newlen = std::min(len, (long)res.size() + 1);
        std::vector<PadicScalar> nxt((size_t)newlen, PadicScalar::zero_at(p_, prec_ + 32));
        for (long i = 0; i < (long)res.size(); ++i) {
            nxt[i] = nxt[i] + res[i] * a;
            if (i + 1 < newlen) nxt[i + 1] = nxt[i + 1] + res[i] * b;
        }
        nxt[0] = nxt[0] + c_[k];
        res = std::move(nxt);
    }
    res.resize((size_t)len, PadicScalar::zero_at(p_, prec_));
    return TruncatedSeries(p_, prec_, std::move(res),
                           tail_ == TailKind::Zero ? TailKind::Zero : TailKind::Unknown);
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& q) const {
    if (!q.coeff(0).is_zero())
        throw domain_error("compose: substituted series must vanish at 0");
    bool poly = tail_ == TailKind::Zero && q.tail_ == TailKind::Zero;
    long cap = poly ? (std::max(degree(), 0L)) * std::max(q.degree(), 1L) + 1 : x_trunc();
    TruncatedSeries res = TruncatedSeries::zero(p_, prec_, 1);
    for (long k = x_trunc() - 1; k >= 0; --k) {
        res = res * q;
        if ((long)res.x_trunc() > cap) res = res.truncate(cap);
        TruncatedSeries ck(p_, prec_, {c_[k]}, TailKind::Zero);
        res = res + ck;
    }
    if (!poly) {
        auto c = res.coeffs();
        c.resize((size_t)cap, PadicScalar::zero_at(p_, prec_));
        return TruncatedSeries(p_, prec_, std::move(c), TailKind::Unknown);
    }
    return res;
}

// min over k >= M of  k*a/b - offset - floor(log_p k)
static mpq_class tail_min_bound(long p, long M, long a, long b, long offset) {
    if (M < 1) throw precision_error("tail bound needs positive truncation");
    // within [p^m, p^{m+1}) the bound is increasing in k, so only left
    // endpoints matter: k = M and k = p^m for p^m > M
    auto bound_at = [&](long k) -> mpq_class {
        long lg = 0;
        for (long t = k; t >= p; t /= p) ++lg;
        return mpq_class(k * a, b) - offset - lg;
    };
    mpq_class best = bound_at(M);
    mpz_class pm(1);
    while (pm <= M) pm *= p;
    for (int steps = 0; steps < 192; ++steps) {
        if (!pm.fits_slong_p()) break;
        long k = pm.get_si();
        mpq_class bk = bound_at(k);
        if (bk < best) best = bk;
        // from one power to the next the bound changes by (p-1)k*a/b - 1;
        // once that is > 0 and the current bound clears best, no later
        // endpoint can dip below it
        if (mpq_class((p - 1) * k * a, b) > 1 && bk > best) break;
        pm *= p;
    }
    return best;
}

PadicScalar TruncatedSeries::evaluate(const PadicScalar& t) const {
    if (!t.is_zero() && t.valuation().first < 1 && tail_ != TailKind::Zero)
        throw precision_error("evaluate: point not inside the tail's convergence control");
    PadicScalar acc = PadicScalar::zero_at(p_, prec_ + 32);
    for (long k = x_trunc() - 1; k >= 0; --k) acc = acc * t + c_[k];
    if (tail_ == TailKind::Zero) return acc;
    long vt = t.valuation().first;
    long cap;
    if (tail_ == TailKind::LogBounded) {
        mpq_class q = tail_min_bound(p_, x_trunc(), vt, 1, tail_offset_);
        mpz_class fl = q.get_num() / q.get_den();
        if (q < 0 && q.get_num() % q.get_den() != 0) fl -= 1;
        cap = fl.get_si();
    } else {
        cap = x_trunc() * vt;
    }
    return acc + PadicScalar::zero_at(p_, cap);
}

ExtScalar TruncatedSeries::evaluate_ext(const ExtScalar& t) const {
    ExtScalar acc = ExtScalar::zero(t.modulus(), p_, prec_ + 32);
    for (long k = x_trunc() - 1; k >= 0; --k)
        acc = acc * t + ExtScalar::from_base(t.modulus(), c_[k]);
    return acc;
}

std::pair<TruncatedSeries, TruncatedSeries> TruncatedSeries::divrem_monic(
    const TruncatedSeries& pi) const {
    long d = pi.degree();
    if (d < 0) throw domain_error("divrem: zero divisor");
    const PadicScalar& lead = pi.coeff(d);
    if (!(lead.is_unit() && lead.rep() == 1 && lead.shift() == 0))
        throw domain_error("divrem: divisor must be monic");
    long len = x_trunc();
    if (len <= d) {
        return {TruncatedSeries::zero(p_, prec_, 1), *this};
    }
    std::vector<PadicScalar> r = c_;
    std::vector<PadicScalar> q((size_t)(len - d), PadicScalar::zero_at(p_, prec_));
    for (long i = len - 1 - d; i >= 0; --i) {
        PadicScalar qi = r[i + d];
        q[i] = qi;
        if (qi.is_zero()) continue;
        for (long t2 = 0; t2 <= d; ++t2) r[i + t2] = r[i + t2] - qi * pi.coeff(t2);
    }
    r.resize((size_t)std::max(1L, d));
    TailKind t = tail_ == TailKind::Zero ? TailKind::Zero : TailKind::Unknown;
    return {TruncatedSeries(p_, prec_, std::move(q), t),
            TruncatedSeries(p_, prec_, std::move(r), t)};
}

bool TruncatedSeries::congruent(const TruncatedSeries& o) const {
    long len = std::max(x_trunc(), o.x_trunc());
    if (tail_ != TailKind::Zero || o.tail_ != TailKind::Zero)
        len = std::min(x_trunc(), o.x_trunc());
    for (long k = 0; k < len; ++k) {
        PadicScalar a = (k < x_trunc()) ? c_[k] : PadicScalar::zero_at(p_, prec_);
        PadicScalar b = (k < o.x_trunc()) ? o.c_[k] : PadicScalar::zero_at(p_, o.prec_);
        if (!a.congruent(b)) return false;
    }
    return true;
}

bool TruncatedSeries::congruent_to(const TruncatedSeries& o, long len, long abs_prec) const {
    for (long k = 0; k < len; ++k) {
        PadicScalar a = (k < x_trunc()) ? c_[k] : PadicScalar::zero_at(p_, prec_);
        PadicScalar b = (k < o.x_trunc()) ? o.c_[k] : PadicScalar::zero_at(p_, o.prec_);
        PadicScalar d = a - b;
        if (!d.is_zero() && d.valuation().first < abs_prec) return false;
    }
    return true;
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    os << "[";
    for (long k = 0; k < x_trunc(); ++k) {
        if (k) os << ", ";
        os << c_[k].str();
    }
    os << "]";
    return os.str();
}

NewtonPolygon newton_polygon(const TruncatedSeries& f) {
    std::vector<std::pair<long, long>> pts;
    for (long n = 0; n < f.x_trunc(); ++n) {
        auto [v, exact] = f.coeff(n).valuation();
        if (exact) pts.emplace_back(n, v);
    }
    NewtonPolygon np;
    // lower hull, monotone chain
    for (auto& pt : pts) {
        auto& h = np.vertices;
        while (h.size() >= 2) {
            auto [x1, y1] = h[h.size() - 2];
            auto [x2, y2] = h[h.size() - 1];
            // keep strictly convex: drop if new point is not above the line
            __int128 cross = (__int128)(x2 - x1) * (pt.second - y1) -
                             (__int128)(pt.first - x1) * (y2 - y1);
            if (cross <= 0)
                h.pop_back();
            else
                break;
        }
        np.vertices.push_back(pt);
    }
    // certify: undetermined coefficients must sit strictly above the hull
    long window = f.x_trunc();
    auto hull_value = [&](long n) -> mpq_class {
        const auto& h = np.vertices;
        if (h.empty()) return mpq_class(0);
        if (n <= h.front().first) return mpq_class(h.front().second);
        for (size_t i = 0; i + 1 < h.size(); ++i) {
            if (n >= h[i].first && n <= h[i + 1].first) {
                mpq_class slope(h[i + 1].second - h[i].second, h[i + 1].first - h[i].first);
                return mpq_class(h[i].second) + slope * (n - h[i].first);
            }
        }
        return mpq_class(h.back().second);
    };
    for (long n = 0; n < f.x_trunc(); ++n) {
        auto [v, exact] = f.coeff(n).valuation();
        if (!exact && mpq_class(v) <= hull_value(n)) {
            window = n;
            break;
        }
    }
    np.reliable_window = window;
    return np;
}

NormResult norm_at_radius(const TruncatedSeries& f, const RadiusExp& rho) {
    NormResult res;
    mpq_class w(rho.a, rho.b);
    bool have = false;
    mpq_class best;
    for (long n = 0; n < f.x_trunc(); ++n) {
        auto [v, exact] = f.coeff(n).valuation();
        if (!exact) continue;
        mpq_class t = mpq_class(v) + w * n;
        if (!have || t < best) {
            best = t;
            have = true;
        }
    }
    if (!have)
        throw precision_error("norm_at_radius: no coefficient with determined valuation");
    // precision floors of apparent zeros must stay strictly above the minimum
    for (long n = 0; n < f.x_trunc(); ++n) {
        auto [v, exact] = f.coeff(n).valuation();
        mpq_class t = mpq_class(v) + w * n;
        if (exact) {
            if (t == best) res.attained.push_back(n);
        } else if (t <= best) {
            throw precision_error(
                "norm_at_radius: precision floor at index " + std::to_string(n) +
                " cannot be separated from the minimum; raise precision");
        }
    }
    switch (f.tail()) {
        case TailKind::Zero:
            break;
        case TailKind::LogBounded: {
            // monotonicity of the bound requires x_trunc past the turning point
            if (f.x_trunc() < 2 * rho.b / rho.a + 2)
                throw precision_error("norm_at_radius: truncation too small for tail bound");
            mpq_class tb = tail_min_bound(f.prime(), f.x_trunc(), rho.a, rho.b,
                                          f.tail_offset());
            if (tb <= best)
                throw precision_error(
                    "norm_at_radius: tail bound does not clear the minimum; "
                    "raise truncation");
            break;
        }
        case TailKind::Unknown:
            throw precision_error("norm_at_radius: unknown tail, cannot certify");
    }
    res.valuation = best;
    res.certified = true;
    return res;
}

bool is_unit_on_circle(const TruncatedSeries& f, const RadiusExp& rho) {
    NormResult r = norm_at_radius(f, rho);
    return r.attained.size() == 1;
}

static long pow_long(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) {
        if (r > (1L << 40) / std::max(b, 2L)) throw domain_error("power too large");
        r *= b;
    }
    return r;
}

TruncatedSeries omega(const Config& cfg, long n) {
    long pn = pow_long(cfg.p, n);
    std::vector<mpz_class> c((size_t)pn + 1);
    for (long k = 1; k <= pn; ++k)
        mpz_bin_uiui(c[k].get_mpz_t(), (unsigned long)pn, (unsigned long)k);
    c[0] = 0;
    return TruncatedSeries::from_ints(cfg.p, cfg.prec, c);
}

TruncatedSeries xi(const Config& cfg, long n) {
    if (n < 1) throw domain_error("xi: n must be >= 1");
    long step = pow_long(cfg.p, n - 1);
    long deg = (cfg.p - 1) * step;
    std::vector<mpz_class> c((size_t)deg + 1, mpz_class(0));
    for (long i = 0; i < cfg.p; ++i) {
        long e = i * step;
        for (long k = 0; k <= e; ++k) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), (unsigned long)e, (unsigned long)k);
            c[k] += b;
        }
    }
    return TruncatedSeries::from_ints(cfg.p, cfg.prec, c);
}

TruncatedSeries twist(const Config& cfg, const TruncatedSeries& f, long j) {
    PadicScalar u = PadicScalar::from_long(cfg.p, cfg.u, f.prec() + 32);
    PadicScalar uj = u.pow(-j);
    PadicScalar a = uj - PadicScalar::from_long(cfg.p, 1, f.prec() + 32);
    return f.compose_linear(a, uj);
}

PadicScalar chi_u_eval(const Config& cfg, const TruncatedSeries& f, long k) {
    PadicScalar u = PadicScalar::from_long(cfg.p, cfg.u, f.prec() + 32);
    PadicScalar t = u.pow(k) - PadicScalar::from_long(cfg.p, 1, f.prec() + 32);
    return f.evaluate(t);
}

TruncatedSeries log1px(const Config& cfg, long len) {
    std::vector<PadicScalar> c((size_t)len);
    c[0] = PadicScalar::zero_at(cfg.p, cfg.prec + 16);
    for (long k = 1; k < len; ++k) {
        PadicScalar kk = PadicScalar::from_long(cfg.p, k, cfg.prec + 16);
        PadicScalar t = kk.inv();
        c[k] = (k % 2 == 0) ? -t : t;
    }
    return TruncatedSeries(cfg.p, cfg.prec, std::move(c), TailKind::LogBounded, 0);
}

TruncatedSeries ell(const Config& cfg, long j, long len) {
    PadicScalar u = PadicScalar::from_long(cfg.p, cfg.u, cfg.prec + 16);
    PadicScalar logu = log_unit(u, cfg.prec + 8);
    long vlogu = logu.valuation().first;
    TruncatedSeries l = log1px(cfg, len) * logu.inv();
    std::vector<PadicScalar> c = l.coeffs();
    c[0] = PadicScalar::from_long(cfg.p, -j, cfg.prec);
    return TruncatedSeries(cfg.p, cfg.prec, std::move(c), TailKind::LogBounded, vlogu);
}

TruncatedSeries pi_factor(const Config& cfg, long n, long j) {
    TruncatedSeries t = twist(cfg, xi(cfg, n), j);
    long d = t.degree();
    PadicScalar lead = t.coeff(d);
    TruncatedSeries monic = t * lead.inv();
    // force an exactly-1 leading coefficient
    auto c = monic.coeffs();
    c.resize((size_t)d + 1);
    c[d] = PadicScalar::from_long(cfg.p, 1, c[d].abs_prec());
    return TruncatedSeries(cfg.p, monic.prec(), std::move(c), TailKind::Zero);
}

long ord_at_factor(const TruncatedSeries& f, const TruncatedSeries& pi, long tau) {
    if (f.is_zero())
        throw domain_error("ord_at_factor: indeterminate (f vanishes at working precision)");
    if (tau < 0) tau = f.prec() / 2;
    TruncatedSeries cur = f;
    long e = 0;
    while (cur.x_trunc() > pi.degree()) {
        auto [q, r] = cur.divrem_monic(pi);
        bool rzero = true;
        for (auto& cc : r.coeffs()) {
            auto [v, exact] = cc.valuation();
            if (!cc.is_zero() && v < tau) rzero = false;
            if (cc.is_zero() && v < tau) rzero = false;  // cannot certify either way
        }
        if (!rzero) break;
        if (q.is_zero()) break;
        cur = q;
        ++e;
    }
    return e;
}

RadiusExp critical_radius(long p, long n) {
    return RadiusExp(1, pow_long(p, n - 1) * (p - 1));
}

}  // namespace iwa
