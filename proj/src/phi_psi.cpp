#include "iwa/phi_psi.hpp"

#include "iwa/linalg.hpp"

#include <algorithm>

namespace iwa {

namespace {

PadicScalar one_of(long p, long prec) { return PadicScalar::from_long(p, 1, prec); }

// f(y - 1): the coefficients of f in the y = 1+x basis.
TruncatedSeries to_y_basis(const TruncatedSeries& f) {
    long p = f.prime(), prec = f.prec();
    return f.compose_linear(PadicScalar::from_long(p, -1, prec + 32), one_of(p, prec + 32));
}

// g(1 + x): back from the y basis.
TruncatedSeries from_y_basis(const TruncatedSeries& g) {
    long p = g.prime(), prec = g.prec();
    return g.compose_linear(one_of(p, prec + 32), one_of(p, prec + 32));
}

// (1+x)^i as an exact polynomial.
TruncatedSeries one_plus_x_pow(long p, long prec, long i) {
    std::vector<mpz_class> bin((size_t)i + 1);
    for (long j = 0; j <= i; ++j)
        mpz_bin_uiui(bin[(size_t)j].get_mpz_t(), (unsigned long)i, (unsigned long)j);
    return TruncatedSeries::from_ints(p, prec, bin);
}

}  // namespace

TruncatedSeries phi(const Config& cfg, const TruncatedSeries& f) {
    long p = f.prime();
    if (f.is_polynomial()) {
        // exact route: in the y = 1+x basis phi just dilates exponents by p
        TruncatedSeries b = to_y_basis(f);
        long d = std::max(b.degree(), 0L);
        std::vector<PadicScalar> c((size_t)(p * d + 1), PadicScalar::zero_at(p, f.prec()));
        for (long i = 0; i <= d; ++i) c[(size_t)(p * i)] = b.coeff(i);
        return from_y_basis(TruncatedSeries(p, f.prec(), std::move(c), TailKind::Zero));
    }
    Config c2 = cfg;
    c2.prec = std::max(cfg.prec, f.prec());
    return f.compose(omega(c2, 1));
}

TruncatedSeries psi(const Config&, const TruncatedSeries& f) {
    long p = f.prime();
    TruncatedSeries b = to_y_basis(f);
    bool poly = f.is_polynomial();
    long outlen = poly ? std::max(b.degree(), 0L) / p + 1 : std::max(1L, f.x_trunc() / p);
    std::vector<PadicScalar> c((size_t)outlen, PadicScalar::zero_at(p, f.prec()));
    for (long q = 0; q < outlen; ++q)
        if (p * q < b.x_trunc()) c[(size_t)q] = b.coeff(p * q);
    TruncatedSeries g(p, f.prec(), std::move(c), poly ? TailKind::Zero : TailKind::Unknown);
    return from_y_basis(g);
}

std::vector<ExtScalar> cyclotomic_average(const Config&, const TruncatedSeries& f) {
    long p = f.prime();
    long prec = f.prec() + 8;
    long M = f.x_trunc();
    auto mod = ExtModulus::cyclotomic(p, 1);
    bool fast = true;
    for (const auto& ck : f.coeffs())
        if (ck.shift() < 0) fast = false;
    if (fast) {
        // integral coefficients: run the same per-zeta Horner on integer
        // lifts modulo Phi_p and p^{prec+1}; multiplying by zeta = t^i is a
        // coefficient shift, so every step is additive
        long d = p - 1;
        mpz_class pm = pow_si((unsigned long)p, (unsigned long)(prec + 1));
        using Elt = std::vector<mpz_class>;
        auto mul_t = [&](const Elt& v) {
            Elt w((size_t)d);
            for (long j = 1; j < d; ++j) w[(size_t)j] = v[(size_t)j - 1];
            for (long j = 0; j < d; ++j) w[(size_t)j] = (w[(size_t)j] - v[(size_t)d - 1]) % pm;
            return w;
        };
        auto lift = [&](const PadicScalar& s) {
            return s.is_zero() ? mpz_class(0) : mpz_class(s.lift() % pm);
        };
        std::vector<Elt> total((size_t)M, Elt((size_t)d));
        for (long i = 0; i < p; ++i) {
            std::vector<Elt> res(1, Elt((size_t)d));
            for (long k = M - 1; k >= 0; --k) {
                long newlen = std::min(M, (long)res.size() + 1);
                std::vector<Elt> nxt((size_t)newlen, Elt((size_t)d));
                for (long j = 0; j < (long)res.size(); ++j) {
                    Elt z = res[(size_t)j];
                    for (long s = 0; s < i; ++s) z = mul_t(z);  // zeta * res[j]
                    for (long s = 0; s < d; ++s)
                        nxt[(size_t)j][(size_t)s] =
                            (nxt[(size_t)j][(size_t)s] + z[(size_t)s] - res[(size_t)j][(size_t)s]) %
                            pm;  // (zeta - 1) * res[j]
                    if (j + 1 < newlen)
                        for (long s = 0; s < d; ++s)
                            nxt[(size_t)j + 1][(size_t)s] =
                                (nxt[(size_t)j + 1][(size_t)s] + z[(size_t)s]) % pm;
                }
                nxt[0][0] = (nxt[0][0] + lift(f.coeff(k))) % pm;
                res = std::move(nxt);
            }
            res.resize((size_t)M, Elt((size_t)d));
            for (long n = 0; n < M; ++n)
                for (long s = 0; s < d; ++s)
                    total[(size_t)n][(size_t)s] =
                        (total[(size_t)n][(size_t)s] + res[(size_t)n][(size_t)s]) % pm;
        }
        bool divisible = true;
        for (auto& v : total)
            for (auto& z : v) {
                z = ((z % pm) + pm) % pm;
                if (z % p != 0) divisible = false;
            }
        if (divisible) {
            std::vector<ExtScalar> out;
            out.reserve((size_t)M);
            for (auto& v : total) {
                std::vector<PadicScalar> co;
                co.reserve((size_t)d);
                for (auto& z : v) co.push_back(PadicScalar::from_mpz(p, z / p, prec));
                out.emplace_back(mod, std::move(co));
            }
            return out;
        }
    }
    ExtScalar one = ExtScalar::from_base(mod, one_of(p, prec));
    ExtScalar t = ExtScalar::generator(mod, prec);
    std::vector<ExtScalar> total((size_t)M, ExtScalar::zero(mod, p, prec));
    for (long i = 0; i < p; ++i) {
        ExtScalar zeta = (i == 0) ? one : t.pow(i);
        ExtScalar a = zeta - one;
        // Horner for f(a + zeta*x) truncated at x^M
        std::vector<ExtScalar> res(1, ExtScalar::zero(mod, p, prec));
        for (long k = M - 1; k >= 0; --k) {
            long newlen = std::min(M, (long)res.size() + 1);
            std::vector<ExtScalar> nxt((size_t)newlen, ExtScalar::zero(mod, p, prec));
            for (long j = 0; j < (long)res.size(); ++j) {
                nxt[(size_t)j] = nxt[(size_t)j] + res[(size_t)j] * a;
                if (j + 1 < newlen) nxt[(size_t)j + 1] = nxt[(size_t)j + 1] + res[(size_t)j] * zeta;
            }
            nxt[0] = nxt[0] + ExtScalar::from_base(mod, f.coeff(k));
            res = std::move(nxt);
        }
        res.resize((size_t)M, ExtScalar::zero(mod, p, prec));
        for (long n = 0; n < M; ++n) total[(size_t)n] = total[(size_t)n] + res[(size_t)n];
    }
    PadicScalar pinv = PadicScalar::from_long(p, p, prec + 4).inv();
    for (auto& v : total) v = v * pinv;
    return total;
}

std::vector<TruncatedSeries> phi_components(const Config&, const TruncatedSeries& f) {
    long p = f.prime();
    TruncatedSeries b = to_y_basis(f);
    bool poly = f.is_polynomial();
    std::vector<TruncatedSeries> out;
    out.reserve((size_t)p);
    for (long i = 0; i < p; ++i) {
        long outlen;
        if (poly) {
            long d = b.degree();
            outlen = (d >= i) ? (d - i) / p + 1 : 1;
        } else {
            outlen = std::max(1L, f.x_trunc() / p);
        }
        std::vector<PadicScalar> c((size_t)outlen, PadicScalar::zero_at(p, f.prec()));
        for (long q = 0; q < outlen; ++q)
            if (p * q + i < b.x_trunc()) c[(size_t)q] = b.coeff(p * q + i);
        out.push_back(from_y_basis(
            TruncatedSeries(p, f.prec(), std::move(c), poly ? TailKind::Zero : TailKind::Unknown)));
    }
    return out;
}

TruncatedSeries phi_reconstruct(const Config& cfg, const std::vector<TruncatedSeries>& parts) {
    if (parts.empty()) throw domain_error("phi_reconstruct: no components");
    long p = parts[0].prime();
    TruncatedSeries acc = phi(cfg, parts[0]);
    for (long i = 1; i < (long)parts.size(); ++i)
        acc = acc + one_plus_x_pow(p, parts[(size_t)i].prec(), i) * phi(cfg, parts[(size_t)i]);
    return acc;
}

TruncatedSeries log_xi1_over_p(const Config& cfg, long len) {
    if (len < 1) throw precision_error("log_xi1_over_p: empty truncation");
    long p = cfg.p, prec = cfg.prec;
    TruncatedSeries f = xi(cfg, 1).mul_p_pow(-1);  // principal unit, short polynomial
    long df = f.degree();
    // log f = integral of f'/f; invert f to the needed length first
    std::vector<PadicScalar> finv((size_t)len);
    PadicScalar f0inv = f.coeff(0).inv();
    finv[0] = f0inv;
    for (long n = 1; n < len; ++n) {
        PadicScalar s = PadicScalar::zero_at(p, prec + 32);
        for (long k = 1; k <= std::min(n, df); ++k) s = s + f.coeff(k) * finv[(size_t)(n - k)];
        finv[(size_t)n] = -(s * f0inv);
    }
    std::vector<PadicScalar> fp((size_t)std::max(df, 1L), PadicScalar::zero_at(p, prec + 32));
    for (long k = 0; k < df; ++k)
        fp[(size_t)k] = f.coeff(k + 1) * PadicScalar::from_long(p, k + 1, prec + 64);
    std::vector<PadicScalar> out((size_t)len, PadicScalar::zero_at(p, prec + 32));
    for (long n = 1; n < len; ++n) {
        PadicScalar g = PadicScalar::zero_at(p, prec + 32);
        for (long k = 0; k <= std::min(n - 1, df - 1); ++k)
            g = g + fp[(size_t)k] * finv[(size_t)(n - 1 - k)];
        out[(size_t)n] = g * PadicScalar::from_long(p, n, prec + 64).inv();
    }
    return TruncatedSeries(p, prec, std::move(out), TailKind::Unknown);
}

LogSeries psi_log(const Config& cfg, const LogSeries& g) {
    if (g.c.empty()) return g;
    long p = cfg.p;
    long K = g.degree_L();
    long len = 1;
    for (const auto& s : g.c) len = std::max(len, s.x_trunc());
    TruncatedSeries cser = log_xi1_over_p(cfg, len);
    if (g.branch_const.prime() != 0 && !g.branch_const.is_zero())
        cser = cser + TruncatedSeries(p, cfg.prec, {g.branch_const}, TailKind::Zero);
    std::vector<TruncatedSeries> cpow;
    cpow.push_back(TruncatedSeries::one(p, cfg.prec));
    for (long m = 1; m <= K; ++m) cpow.push_back(cpow.back() * cser);
    LogSeries out;
    out.branch_const = g.branch_const;
    out.c.reserve((size_t)K + 1);
    for (long j = 0; j <= K; ++j) {
        TruncatedSeries acc = psi(cfg, g.c[(size_t)j]);  // the k = j term
        for (long k = j + 1; k <= K; ++k) {
            mpz_class b;
            mpz_bin_uiui(b.get_mpz_t(), (unsigned long)k, (unsigned long)j);
            if ((k - j) % 2) b = -b;
            PadicScalar bs = PadicScalar::from_mpz(p, b, cfg.prec + 32);
            acc = acc + psi(cfg, g.c[(size_t)k] * cpow[(size_t)(k - j)]) * bs;
        }
        out.c.push_back(std::move(acc));
    }
    return out;
}

ThetaApprox theta_k_approx(const Config& cfg, long k, long n_steps, long x_trunc) {
    long p = cfg.p;
    LogSeries g;
    g.c.assign((size_t)k + 1, TruncatedSeries::zero(p, cfg.prec, 1));
    g.c[(size_t)k] = TruncatedSeries::zero(p, cfg.prec, x_trunc) + TruncatedSeries::one(p, cfg.prec);
    long steps = 0;
    for (long s = 0; s < n_steps; ++s) {
        long len = 1;
        for (const auto& c : g.c) len = std::max(len, c.x_trunc());
        if (k > 0 && len < p) break;  // truncation exhausted: report the partial result
        g = psi_log(cfg, g);
        ++steps;
    }
    for (auto& c : g.c) c = c.mul_p_pow(k * steps);
    return ThetaApprox{std::move(g), steps};
}

namespace {

mpq_class spread(const std::vector<mpq_class>& v, size_t lo, size_t hi) {
    mpq_class mn = v[lo], mx = v[lo];
    for (size_t i = lo; i < hi; ++i) {
        if (v[i] < mn) mn = v[i];
        if (v[i] > mx) mx = v[i];
    }
    return mx - mn;
}

}  // namespace

OPhiEstimate o_phi_estimate(const std::vector<TruncatedSeries>& g,
                            const std::vector<std::vector<PadicScalar>>& phi_matrix,
                            const RadiusExp& rho, long n_max) {
    if (g.empty()) throw domain_error("o_phi_estimate: empty coordinate vector");
    long d = (long)g.size();
    long p = g[0].prime();
    auto ainv = padic_inv(phi_matrix);
    std::vector<TruncatedSeries> h = g;
    OPhiEstimate out;
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            std::vector<TruncatedSeries> nh;
            nh.reserve((size_t)d);
            for (long i = 0; i < d; ++i) {
                TruncatedSeries acc = h[0] * ainv[(size_t)i][0];
                for (long j = 1; j < d; ++j) acc = acc + h[(size_t)j] * ainv[(size_t)i][(size_t)j];
                nh.push_back(std::move(acc));
            }
            h = std::move(nh);
        }
        mpz_class den = mpz_class(rho.b) * pow_si((unsigned long)p, (unsigned long)n);
        if (!den.fits_slong_p()) break;
        RadiusExp rn(rho.a, den.get_si());
        bool have = false;
        mpq_class cn;
        try {
            for (long i = 0; i < d; ++i) {
                if (h[(size_t)i].is_zero()) continue;
                mpq_class v = norm_at_radius(h[(size_t)i], rn).valuation;
                if (!have || v < cn) { cn = v; have = true; }
            }
        } catch (const precision_error&) {
            break;
        }
        if (!have) break;  // the zero vector has no finite norm
        out.c_values.push_back(cn);
    }
    long N = (long)out.c_values.size();
    out.levels_used = N;
    mpq_class slope = 0, intercept = N > 0 ? out.c_values[0] : mpq_class(0);
    if (N >= 2) {
        mpq_class sx = 0, sy = 0, sxy = 0, sxx = 0;
        for (long n = 0; n < N; ++n) {
            sx += n;
            sy += out.c_values[(size_t)n];
            sxy += mpq_class(n) * out.c_values[(size_t)n];
            sxx += mpq_class(n) * n;
        }
        mpq_class denom = mpq_class(N) * sxx - sx * sx;
        slope = (mpq_class(N) * sxy - sx * sy) / denom;
        intercept = (sy - slope * sx) / N;
    }
    out.estimate = -slope;
    mpq_class dev = 0;
    std::vector<mpq_class> detr;
    for (long n = 0; n < N; ++n) {
        mpq_class r = out.c_values[(size_t)n] - (intercept + slope * n);
        if (abs(r) > dev) dev = abs(r);
        detr.push_back(out.c_values[(size_t)n] + out.estimate * n);
    }
    out.max_dev = dev;
    if (N >= 2) {
        size_t half = (size_t)(N + 1) / 2;
        out.bounded_with_slope = spread(detr, 0, (size_t)N) <= spread(detr, 0, half) + 1;
    }
    return out;
}

}  // namespace iwa
