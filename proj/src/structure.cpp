#include "iwa/structure.hpp"

#include <algorithm>
#include <random>

namespace iwa {

namespace {

long dim_fil(const std::vector<long>& weights, long k) {
    long c = 0;
    for (long w : weights)
        if (k <= w) ++c;
    return c;
}

void require_weights(const FilteredPhiNModule& d) {
    if (d.weights.empty()) throw domain_error("module has no Hodge weights");
    if ((long)d.weights.size() != d.dim) throw domain_error("weight multiset size must equal dim");
}

long pick_r_star(const FilteredPhiNModule& d, std::optional<long> r_star) {
    long minimal = *std::max_element(d.weights.begin(), d.weights.end());
    if (!r_star) return minimal;
    if (*r_star < minimal)
        throw domain_error("r* must satisfy Fil^{r*+1} = 0: at least the top weight");
    return *r_star;
}

FactoredElement ell_product(long lo, long hi) {  // prod_{lo <= j < hi} ell_j
    FactoredElement f;
    for (long j = lo; j < hi; ++j) f = f * FactoredElement::sym(FactorSym::ell(j));
    return f;
}

void require_spectral(const FilteredPhiNModule& d) {
    if (!d.flags.no_pj_eigenvalue)
        throw domain_error(
            "refusing to predict: the spectral hypothesis \"D^{phi=p^j} = 0\" is not asserted");
}

ExtMatrix ext_mul(const ExtMatrix& a, const ExtMatrix& b) {
    size_t n = a.size();
    ExtMatrix c(n, std::vector<ExtScalar>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            ExtScalar acc = a[i][0] * b[0][j];
            for (size_t k = 1; k < n; ++k) acc = acc + a[i][k] * b[k][j];
            c[i][j] = acc;
        }
    return c;
}

ExtMatrix ext_sigma(const ExtMatrix& a, long f) {
    if (f == 1) return a;
    ExtMatrix c = a;
    for (auto& row : c)
        for (auto& e : row) e = frobenius(e);
    return c;
}

ExtScalar ext_det(const ExtMatrix& a) {
    long n = (long)a.size();
    std::vector<long> perm((size_t)n);
    for (long i = 0; i < n; ++i) perm[(size_t)i] = i;
    ExtScalar acc;
    bool first = true;
    do {
        long inv = 0;
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j)
                if (perm[(size_t)i] > perm[(size_t)j]) ++inv;
        ExtScalar term = a[0][(size_t)perm[0]];
        for (long i = 1; i < n; ++i) term = term * a[(size_t)i][(size_t)perm[(size_t)i]];
        if (inv % 2) term = -term;
        acc = first ? term : acc + term;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

bool ext_mat_zero(const ExtMatrix& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

}  // namespace

ValidationReport validate(const FilteredPhiNModule& d, long spectral_window) {
    ValidationReport rep;
    rep.spectral_window = spectral_window;
    auto fail = [&](const std::string& m) {
        rep.ok = false;
        rep.failures.push_back(m);
    };
    try {
        require_weights(d);
    } catch (const domain_error& e) {
        fail(e.what());
        return rep;
    }
    long n = d.dim, f = d.K_degree;
    if ((long)d.phi_matrix.size() != n || (long)d.N_matrix.size() != n) {
        fail("matrix shapes do not match dim");
        return rep;
    }
    const auto& A = d.phi_matrix;
    const auto& N = d.N_matrix;
    long prec = 8;
    for (const auto& row : A)
        for (const auto& e : row)
            for (const auto& c : e.coeffs()) prec = std::max(prec, c.abs_prec() + 8);
    PadicScalar pscal = PadicScalar::from_long(d.p, d.p, prec);
    // N phi = p phi sigma(N), as matrices composed with sigma on coordinates
    ExtMatrix lhs = ext_mul(N, A);
    ExtMatrix rhs = ext_mul(A, ext_sigma(N, f));
    for (auto& row : rhs)
        for (auto& e : row) e = e * pscal;
    bool semieq = true;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!lhs[(size_t)i][(size_t)j].congruent(rhs[(size_t)i][(size_t)j])) semieq = false;
    if (!semieq) fail("N phi != p phi sigma(N)");
    // N nilpotent
    ExtMatrix Nk = N;
    for (long k = 1; k < n; ++k) Nk = ext_mul(Nk, N);
    if (!ext_mat_zero(Nk)) fail("N is not nilpotent");
    // phi invertible
    if (ext_det(A).is_zero()) fail("phi matrix is not invertible at working precision");
    // spectral window on the f-fold linearization
    ExtMatrix B = A;
    ExtMatrix S = A;
    for (long t = 1; t < f; ++t) {
        S = ext_sigma(S, f);
        B = ext_mul(B, S);
    }
    auto mod = A[0][0].modulus();
    for (long j = -spectral_window; j <= spectral_window; ++j) {
        ExtMatrix C = B;
        PadicScalar pj = PadicScalar::from_long(d.p, 1, prec).mul_p_pow(j * f);
        for (long i = 0; i < n; ++i)
            C[(size_t)i][(size_t)i] =
                C[(size_t)i][(size_t)i] - ExtScalar::from_base(mod, pj);
        if (ext_det(C).is_zero())
            fail("phi^f has eigenvalue p^{jf} (at precision) for j = " + std::to_string(j));
    }
    return rep;
}

HodgeData hodge_data(const FilteredPhiNModule& d) {
    require_weights(d);
    HodgeData h;
    std::vector<long> w = d.weights;
    std::sort(w.begin(), w.end());
    h.r = -w.front();
    h.r_star = w.back();
    for (long x : w) h.r_sorted.push_back(-x);
    std::sort(h.r_sorted.begin(), h.r_sorted.end());
    for (long j = w.front(); j <= w.back(); ++j) h.fil_dims[j] = dim_fil(d.weights, j);
    return h;
}

DivisorChain predicted_chain(const FilteredPhiNModule& d, std::optional<long> r_star) {
    require_spectral(d);
    require_weights(d);
    long rs = pick_r_star(d, r_star);
    HodgeData h = hodge_data(d);
    DivisorChain chain;
    for (auto it = h.r_sorted.rbegin(); it != h.r_sorted.rend(); ++it)
        for (long c = 0; c < d.K_degree; ++c)
            chain.entries.push_back(ell_product(-rs, *it));
    return chain;
}

FactoredElement predicted_determinant(const FilteredPhiNModule& d, std::optional<long> r_star) {
    require_spectral(d);
    require_weights(d);
    long rs = pick_r_star(d, r_star);
    HodgeData h = hodge_data(d);
    FactoredElement det;
    for (long j = -rs; j < h.r; ++j) {
        long e = d.K_degree * (d.dim - dim_fil(d.weights, -j));
        if (e > 0) det = det * FactoredElement::sym(FactorSym::ell(j), e);
    }
    return det;
}

FactoredElement predicted_annihilator(const FilteredPhiNModule& d, std::optional<long> r_star) {
    if (!d.flags.V_fixed_trivial)
        throw domain_error(
            "refusing to predict: the hypothesis V^{G_{K_infty}} = 0 is not asserted");
    require_weights(d);
    long rs = pick_r_star(d, r_star);
    HodgeData h = hodge_data(d);
    return ell_product(-rs, h.r);
}

bool determinant_identity_check(const FilteredPhiNModule& d, std::optional<long> r_star) {
    FilteredPhiNModule d2 = d;
    d2.flags.no_pj_eigenvalue = true;  // pure combinatorics of the weight multiset
    DivisorChain chain = predicted_chain(d2, r_star);
    FactoredElement prod;
    for (const auto& e : chain.entries) prod = prod * e;
    return prod == predicted_determinant(d2, r_star);
}

DivisorChain chain_from_determinant(const std::map<long, long>& n, long d_tilde) {
    if (d_tilde < 1) throw domain_error("chain length must be positive");
    for (const auto& [j, nj] : n)
        if (nj < 0 || nj > d_tilde)
            throw domain_error("infeasible determinant exponent for ell_" + std::to_string(j));
    DivisorChain chain;
    for (long s = 1; s <= d_tilde; ++s) {
        FactoredElement f;
        for (const auto& [j, nj] : n)
            if (nj >= s) f = f * FactoredElement::sym(FactorSym::ell(j));
        chain.entries.push_back(f);
    }
    return chain;
}

bool twist_shift_identity(const FilteredPhiNModule& d, long s) {
    if (s < 0) throw domain_error("shift must be non-negative");
    FilteredPhiNModule d2 = d;
    d2.flags.no_pj_eigenvalue = true;
    long rs = pick_r_star(d2, std::nullopt);
    FactoredElement extra = ell_product(-rs - s, -rs);
    DivisorChain base = predicted_chain(d2, rs);
    DivisorChain shifted = predicted_chain(d2, rs + s);
    if (base.entries.size() != shifted.entries.size()) return false;
    for (size_t i = 0; i < base.entries.size(); ++i)
        if (!(shifted.entries[i] == base.entries[i] * extra)) return false;
    FactoredElement dbase = predicted_determinant(d2, rs);
    FactoredElement dshift = predicted_determinant(d2, rs + s);
    FactoredElement expect = dbase;
    long power = d2.K_degree * d2.dim;
    for (long t = 0; t < power; ++t) expect = expect * extra;
    return dshift == expect;
}

namespace {

SeriesMatrix random_unimodular(const Config& cfg, long d, std::mt19937_64& rng, int ops = 8) {
    SeriesMatrix u((size_t)d,
                   std::vector<TruncatedSeries>((size_t)d, TruncatedSeries::zero(cfg.p, cfg.prec, 1)));
    for (long i = 0; i < d; ++i) u[(size_t)i][(size_t)i] = TruncatedSeries::one(cfg.p, cfg.prec);
    for (int t = 0; t < ops; ++t) {
        long i = (long)(rng() % (unsigned long)d), j = (long)(rng() % (unsigned long)d);
        switch (rng() % 3) {
            case 0:
                std::swap(u[(size_t)i], u[(size_t)j]);
                break;
            case 1: {
                long c = (rng() % 2) ? 2 : -1;
                for (auto& e : u[(size_t)i]) e = e * PadicScalar::from_long(cfg.p, c, cfg.prec);
                break;
            }
            default: {
                if (i == j) break;
                std::vector<mpz_class> qc(1 + rng() % 3);
                for (auto& z : qc) z = (long)(rng() % 7) - 3;
                TruncatedSeries q = TruncatedSeries::from_ints(cfg.p, cfg.prec, qc);
                for (long k = 0; k < d; ++k)
                    u[(size_t)i][(size_t)k] = u[(size_t)i][(size_t)k] + q * u[(size_t)j][(size_t)k];
                break;
            }
        }
    }
    return u;
}

SeriesMatrix series_mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    size_t n = a.size(), m = b[0].size(), kk = b.size();
    SeriesMatrix c(n, std::vector<TruncatedSeries>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            TruncatedSeries acc = a[i][0] * b[0][j];
            for (size_t t = 1; t < kk; ++t) acc = acc + a[i][t] * b[t][j];
            c[i][j] = acc;
        }
    return c;
}

FactoredElement shadow_of(const FactoredElement& f, long n0) {
    FactoredElement out;
    for (const auto& [s, e] : f.exponents()) {
        if (s.kind != FactorSym::Kind::Ell) throw domain_error("expected an ell-symbol chain");
        for (long t = 0; t < e; ++t) out = out * ell_shadow_sym(s.j, n0);
    }
    return out;
}

}  // namespace

SyntheticReport synthetic_verify(const FilteredPhiNModule& d, long n0, unsigned long seed,
                                 long prec) {
    SyntheticReport rep;
    Config cfg{d.p, d.u, prec};
    DivisorChain pred = predicted_chain(d);
    long rs = pick_r_star(d, std::nullopt);
    HodgeData h = hodge_data(d);
    for (const auto& e : pred.entries) rep.expected_shadow.entries.push_back(shadow_of(e, n0));
    long dt = (long)pred.entries.size();
    SeriesMatrix diag((size_t)dt,
                      std::vector<TruncatedSeries>((size_t)dt, TruncatedSeries::zero(cfg.p, prec, 1)));
    for (long i = 0; i < dt; ++i)
        diag[(size_t)i][(size_t)i] = materialize(cfg, rep.expected_shadow.entries[(size_t)i], n0);
    std::mt19937_64 rng(seed);
    SeriesMatrix m = series_mat_mul(random_unimodular(cfg, dt, rng),
                                    series_mat_mul(diag, random_unimodular(cfg, dt, rng)));
    std::vector<std::pair<FactorSym, TruncatedSeries>> factors;
    for (long j = -rs; j < h.r; ++j)
        for (long n = 1; n <= n0; ++n)
            factors.emplace_back(FactorSym::pi(n, j), pi_factor(cfg, n, j));
    try {
        rep.recovered = snf_numeric(cfg, m, factors);
    } catch (const precision_error& e) {
        rep.note = std::string("precision exhausted: ") + e.what();
        return rep;
    }
    rep.ok = rep.recovered.entries == rep.expected_shadow.entries && rep.recovered.det_consistent;
    if (!rep.ok && rep.note.empty()) rep.note = "recovered chain differs from the predicted shadow";
    if (rep.ok && rep.recovered.partial)
        rep.note = "some minors vanish identically; the determinant cross-check still closes";
    return rep;
}

}  // namespace iwa
