#include "doctest.h"
#include "iwa/group_ring.hpp"
#include "iwa/linalg.hpp"
#include "iwa/phi_psi.hpp"

#include <random>

using namespace iwa;

static Config cfg3() { return Config{3, 4, 30}; }

static long pw(long b, long e) {
    long r = 1;
    while (e--) r *= b;
    return r;
}

static GroupRingElem rnd_elem(std::mt19937_64& rng, const Config& cfg, long level) {
    GroupRingElem f(cfg.p, level);
    long N = pw(cfg.p, level);
    for (long a = 1; a < N; ++a) {
        if (a % cfg.p == 0) continue;
        long val = (long)(rng() % 200) - 100;
        f.set(a, PadicScalar::from_long(cfg.p, val, cfg.prec));
    }
    return f;
}

static TruncatedSeries pad_to(const TruncatedSeries& f, long len) {
    return f + TruncatedSeries::zero(f.prime(), f.prec(), len);
}

TEST_CASE("mellin on Dirac masses") {
    Config cfg = cfg3();
    TruncatedSeries m2 = mellin(cfg, GroupRingElem::dirac(cfg, 1, 2));
    CHECK(m2.congruent(pad_to(TruncatedSeries::from_ints(cfg.p, cfg.prec, {1, 2, 1}), 3)));
    TruncatedSeries m1 = mellin(cfg, GroupRingElem::dirac(cfg, 1, 1));
    CHECK(m1.congruent(pad_to(TruncatedSeries::from_ints(cfg.p, cfg.prec, {1, 1}), 3)));
}

TEST_CASE("the Mellin image lies in the kernel of psi") {
    Config cfg = cfg3();
    std::mt19937_64 rng(123);
    for (long level = 1; level <= 3; ++level)
        for (int it = 0; it < 10; ++it)
            CHECK(psi(cfg, mellin(cfg, rnd_elem(rng, cfg, level))).is_zero());
}

TEST_CASE("mellin intertwines the group action") {
    Config cfg = cfg3();
    std::mt19937_64 rng(321);
    long level = 2, N = pw(cfg.p, level);
    SUBCASE("sigma = 1 acts as the identity") {
        TruncatedSeries f = mellin(cfg, rnd_elem(rng, cfg, level));
        CHECK(mellin_action_check(cfg, 1, f, level).congruent(f));
    }
    SUBCASE("Dirac convolution matches substitution") {
        for (int it = 0; it < 20; ++it) {
            long s = 1 + (long)(rng() % (N - 1));
            long t = 1 + (long)(rng() % (N - 1));
            if (s % cfg.p == 0 || t % cfg.p == 0) continue;
            GroupRingElem ds = GroupRingElem::dirac(cfg, level, s);
            GroupRingElem dt = GroupRingElem::dirac(cfg, level, t);
            TruncatedSeries lhs = mellin(cfg, ds * dt);
            CHECK(lhs.congruent(mellin(cfg, GroupRingElem::dirac(cfg, level, s * t))));
            CHECK(lhs.congruent(mellin_action_check(cfg, s, mellin(cfg, dt), level)));
        }
    }
    SUBCASE("random elements") {
        for (int it = 0; it < 10; ++it) {
            GroupRingElem f = rnd_elem(rng, cfg, level);
            long s = 2 + (long)(rng() % (N - 2));
            if (s % cfg.p == 0) ++s;
            CHECK(mellin(cfg, sigma_act(cfg, s, f))
                      .congruent(mellin_action_check(cfg, s, mellin(cfg, f), level)));
        }
    }
}

TEST_CASE("isotypic projectors") {
    Config cfg = cfg3();
    std::mt19937_64 rng(555);
    long level = 2;
    SUBCASE("idempotence and resolution of identity") {
        for (int it = 0; it < 10; ++it) {
            GroupRingElem f = rnd_elem(rng, cfg, level);
            GroupRingElem total(cfg.p, level);
            for (long i = 0; i < cfg.p - 1; ++i) {
                DeltaChar d(cfg.p, i);
                GroupRingElem e = e_delta(cfg, d, f);
                CHECK(e_delta(cfg, d, e).congruent(e));
                total = total + e;
            }
            CHECK(total.congruent(f));
        }
    }
    SUBCASE("mellin of the projection lands in the delta-eigenspace") {
        long N = pw(cfg.p, level);
        for (long i = 0; i < cfg.p - 1; ++i) {
            DeltaChar ch(cfg.p, i);
            GroupRingElem e = e_delta(cfg, ch, rnd_elem(rng, cfg, level));
            TruncatedSeries me = mellin(cfg, e);
            for (long d = 1; d < cfg.p; ++d) {
                PadicScalar tau = teichmuller(cfg.p, d, cfg.prec);
                long dhat = (long)mpz_class(tau.lift() % N).get_si();
                TruncatedSeries acted = mellin_action_check(cfg, dhat, me, level);
                CHECK(acted.congruent(me * tau.pow(i)));
            }
        }
    }
}

TEST_CASE("transition maps commute with mellin") {
    Config cfg = cfg3();
    std::mt19937_64 rng(808);
    for (long level = 2; level <= 3; ++level)
        for (int it = 0; it < 10; ++it) {
            GroupRingElem f = rnd_elem(rng, cfg, level);
            Config c2 = cfg;
            TruncatedSeries down =
                mellin(cfg, f).divrem_monic(omega(c2, level - 1)).second;
            TruncatedSeries expect = mellin(cfg, transition(cfg, f));
            CHECK(down.congruent(expect));
        }
}

TEST_CASE("mellin is injective at levels up to 4") {
    Config cfg = cfg3();
    for (long level = 1; level <= 4; ++level) {
        long N = pw(cfg.p, level);
        PadicMatrix m;
        for (long a = 1; a < N; ++a) {
            if (a % cfg.p == 0) continue;
            TruncatedSeries img = mellin(cfg, GroupRingElem::dirac(cfg, level, a));
            std::vector<PadicScalar> row;
            for (long k = 0; k < N; ++k) row.push_back(img.coeff(k));
            m.push_back(std::move(row));
        }
        long expect = N - N / cfg.p;
        CHECK(padic_rank(std::move(m)) == expect);
    }
}

TEST_CASE("image of mellin is exactly ker psi at finite level") {
    Config cfg = cfg3();
    std::mt19937_64 rng(17);
    long level = 2, N = pw(cfg.p, level);
    for (int it = 0; it < 10; ++it) {
        // a random kernel element: g - phi(psi(g))
        std::vector<mpz_class> gc((size_t)N);
        for (auto& z : gc) z = (long)(rng() % 100) - 50;
        TruncatedSeries g = TruncatedSeries::from_ints(cfg.p, cfg.prec, gc);
        TruncatedSeries h = g - phi(cfg, psi(cfg, g));
        // membership in ker psi, exactly
        CHECK(psi(cfg, h).is_zero());
        // membership in the image: read off the group-ring preimage and round-trip
        TruncatedSeries hb = pad_to(h, N).compose_linear(
            PadicScalar::from_long(cfg.p, -1, cfg.prec + 32),
            PadicScalar::from_long(cfg.p, 1, cfg.prec + 32));
        GroupRingElem pre(cfg.p, level);
        for (long a = 1; a < N; ++a) {
            if (a % cfg.p == 0) {
                CHECK(hb.coeff(a).is_zero());
                continue;
            }
            pre.set(a, hb.coeff(a));
        }
        CHECK(hb.coeff(0).is_zero());
        CHECK(mellin(cfg, pre).congruent(pad_to(h, N)));
    }
}

TEST_CASE("Delta permutes the twisted phi-subspaces") {
    Config cfg = cfg3();
    long level = 2, N = pw(cfg.p, level);
    for (long d = 1; d < cfg.p; ++d) {
        PadicScalar tau = teichmuller(cfg.p, d, cfg.prec);
        long dhat = (long)mpz_class(tau.lift() % N).get_si();
        for (long i = 0; i < cfg.p; ++i) {
            long target = (d * i) % cfg.p;  // the permutation actually observed
            for (long m = 0; m < N / cfg.p; ++m) {
                // basis vector (1+x)^{i + pm} of the i-th subspace
                std::vector<PadicScalar> yc((size_t)N, PadicScalar::zero_at(cfg.p, cfg.prec));
                yc[(size_t)(i + cfg.p * m)] = PadicScalar::from_long(cfg.p, 1, cfg.prec);
                TruncatedSeries v =
                    TruncatedSeries(cfg.p, cfg.prec, std::move(yc), TailKind::Zero)
                        .compose_linear(PadicScalar::from_long(cfg.p, 1, cfg.prec + 32),
                                        PadicScalar::from_long(cfg.p, 1, cfg.prec + 32));
                TruncatedSeries acted = mellin_action_check(cfg, dhat, v, level);
                TruncatedSeries ab = acted.compose_linear(
                    PadicScalar::from_long(cfg.p, -1, cfg.prec + 32),
                    PadicScalar::from_long(cfg.p, 1, cfg.prec + 32));
                for (long k = 0; k < ab.x_trunc(); ++k)
                    if (!ab.coeff(k).is_zero()) CHECK(k % cfg.p == target);
            }
        }
    }
}

TEST_CASE("T-adic series and the comparison map") {
    Config cfg = cfg3();
    SUBCASE("ell_group evaluations") {
        TruncatedSeries l0 = ell_group(cfg, 0, 200);
        CHECK(chi_u_eval(cfg, l0, 1).congruent(PadicScalar::from_long(cfg.p, 1, 20)));
        for (long j = -2; j <= 2; ++j) {
            TruncatedSeries lj = ell_group(cfg, j, 200);
            CHECK(lj.coeff(0).congruent(PadicScalar::from_long(cfg.p, -j, cfg.prec)));
            TruncatedSeries diff = lj - l0;
            CHECK(diff.coeff(0).congruent(PadicScalar::from_long(cfg.p, -j, cfg.prec)));
            for (long k = 1; k < 20; ++k) CHECK(diff.coeff(k).is_zero());
        }
    }
    SUBCASE("comparison map intertwines T with the gamma-shift operator") {
        long level = 2;
        std::mt19937_64 rng(9001);
        // A(s) = s((1+x)^u - 1) - s, the action of T = gamma~ - 1 mod omega_n
        auto gamma_minus_one = [&](const TruncatedSeries& s) {
            return mellin_action_check(cfg, cfg.u, s, level) - s;
        };
        for (int it = 0; it < 10; ++it) {
            std::vector<mpz_class> hc(1 + rng() % 5);
            for (auto& z : hc) z = (long)(rng() % 40) - 20;
            TruncatedSeries h = TruncatedSeries::from_ints(cfg.p, cfg.prec, hc);
            GroupRingElem gh = from_T_polynomial(cfg, level, h);
            GroupRingElem g = rnd_elem(rng, cfg, level);
            TruncatedSeries lhs = mellin(cfg, gh * g);
            // h(A) applied to mellin(g), Horner style
            TruncatedSeries rhs = TruncatedSeries::zero(cfg.p, cfg.prec, 1);
            TruncatedSeries mg = mellin(cfg, g);
            for (long k = h.degree(); k >= 0; --k)
                rhs = gamma_minus_one(rhs) + mg * h.coeff(k);
            CHECK(lhs.congruent(rhs));
            // chi^k only sees residues mod p^level on the finite group ring,
            // so the weight specializations match to that modulus
            for (long k = 0; k <= 4; ++k) {
                PadicScalar d = chi_weight(cfg, gh, k) - chi_u_eval(cfg, h, k);
                CHECK((d.is_zero() || d.valuation().first >= level));
            }
        }
    }
}
