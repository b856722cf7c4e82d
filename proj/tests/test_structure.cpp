#include "doctest.h"
#include "iwa/structure.hpp"

#include <algorithm>
#include <random>

using namespace iwa;

namespace {

FilteredPhiNModule mk(std::vector<long> weights, long f = 1) {
    FilteredPhiNModule d;
    d.K_degree = f;
    d.dim = (long)weights.size();
    d.weights = std::move(weights);
    d.flags.no_pj_eigenvalue = true;
    d.flags.V_fixed_trivial = true;
    return d;
}

FactoredElement ells(long lo, long hi) {
    FactoredElement f;
    for (long j = lo; j < hi; ++j) f = f * FactoredElement::sym(FactorSym::ell(j));
    return f;
}

ExtMatrix base_diag(ExtModulusPtr mod, long p, std::vector<long> diag, long prec = 40) {
    long n = (long)diag.size();
    ExtMatrix m((size_t)n, std::vector<ExtScalar>((size_t)n,
                   ExtScalar::zero(mod, p, prec)));
    for (long i = 0; i < n; ++i)
        m[(size_t)i][(size_t)i] =
            ExtScalar::from_base(mod, PadicScalar::from_long(p, diag[(size_t)i], prec));
    return m;
}

}  // namespace

TEST_CASE("hodge data from the weight multiset") {
    auto h = hodge_data(mk({0, -2}));
    CHECK(h.r == 2);
    CHECK(h.r_star == 0);
    CHECK(h.r_sorted == std::vector<long>{0, 2});
    CHECK(h.fil_dims.at(-2) == 2);
    CHECK(h.fil_dims.at(-1) == 1);
    CHECK(h.fil_dims.at(0) == 1);

    auto h2 = hodge_data(mk({-1, -1, -3}));
    CHECK(h2.r == 3);
    CHECK(h2.r_star == -1);
    CHECK(h2.r_sorted == std::vector<long>{1, 1, 3});
    CHECK(h2.fil_dims.at(-3) == 3);
    CHECK(h2.fil_dims.at(-2) == 2);
    CHECK(h2.fil_dims.at(-1) == 2);
}

TEST_CASE("predicted chain, determinant and annihilator on worked examples") {
    auto d = mk({0, -2});
    auto chain = predicted_chain(d);
    REQUIRE(chain.entries.size() == 2);
    CHECK(chain.entries[0] == ells(0, 2));
    CHECK(chain.entries[1].is_one());
    CHECK(chain.descending_ok());
    CHECK(predicted_determinant(d) == ells(0, 2));
    CHECK(predicted_annihilator(d) == ells(0, 2));

    // enlarging r* past the minimal choice shifts everything down
    auto chain1 = predicted_chain(d, 1);
    CHECK(chain1.entries[0] == ells(-1, 2));
    CHECK(chain1.entries[1] == ells(-1, 0));
    auto det1 = predicted_determinant(d, 1);
    CHECK(det1.exponent(FactorSym::ell(-1)) == 2);
    CHECK(det1.exponent(FactorSym::ell(0)) == 1);
    CHECK(det1.exponent(FactorSym::ell(1)) == 1);

    // K of degree 2 repeats each slot
    auto df = mk({0, -1}, 2);
    auto chainf = predicted_chain(df);
    REQUIRE(chainf.entries.size() == 4);
    CHECK(chainf.entries[0] == ells(0, 1));
    CHECK(chainf.entries[1] == ells(0, 1));
    CHECK(chainf.entries[2].is_one());
    CHECK(chainf.entries[3].is_one());
    CHECK(predicted_determinant(df) == FactoredElement::sym(FactorSym::ell(0), 2));
}

TEST_CASE("predictions are gated on the asserted hypotheses") {
    auto d = mk({0, -2});
    d.flags.no_pj_eigenvalue = false;
    CHECK_THROWS_AS(predicted_chain(d), domain_error);
    CHECK_THROWS_AS(predicted_determinant(d), domain_error);
    d.flags.no_pj_eigenvalue = true;
    d.flags.V_fixed_trivial = false;
    CHECK_THROWS_AS(predicted_annihilator(d), domain_error);
    // r* below the top weight contradicts Fil^{r*+1} = 0
    CHECK_THROWS_AS(predicted_chain(mk({1, -1}), 0), domain_error);
}

TEST_CASE("determinant identity and counting round-trip over random weight multisets") {
    std::mt19937_64 rng(20260824);
    for (int it = 0; it < 1000; ++it) {
        long dim = 1 + (long)(rng() % 8);
        long f = 1 + (long)(rng() % 2);
        std::vector<long> w((size_t)dim);
        for (auto& x : w) x = -(long)(rng() % 7);
        auto d = mk(w, f);
        long rs_min = *std::max_element(w.begin(), w.end());
        long rs = rs_min + (long)(rng() % 4);

        auto chain = predicted_chain(d, rs);
        REQUIRE(chain.entries.size() == (size_t)(dim * f));
        CHECK(chain.descending_ok());

        FactoredElement prod;
        for (const auto& e : chain.entries) prod = prod * e;
        auto det = predicted_determinant(d, rs);
        CHECK(prod == det);
        CHECK(determinant_identity_check(d, rs));

        auto ann = predicted_annihilator(d, rs);
        CHECK(ann == chain.entries.front());
        for (const auto& [s, e] : ann.exponents()) CHECK(e == 1);

        std::map<long, long> n;
        for (const auto& [s, e] : det.exponents()) n[s.j] = e;
        auto rebuilt = chain_from_determinant(n, dim * f);
        CHECK(rebuilt.entries == chain.entries);

        CHECK(twist_shift_identity(d, (long)(rng() % 4)));
    }
}

TEST_CASE("chain from determinant exponents") {
    auto c = chain_from_determinant({{0, 1}, {1, 1}}, 2);
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0] == ells(0, 2));
    CHECK(c.entries[1].is_one());

    auto c2 = chain_from_determinant({{0, 2}}, 2);
    CHECK(c2.entries[0] == ells(0, 1));
    CHECK(c2.entries[1] == ells(0, 1));

    CHECK_THROWS_AS(chain_from_determinant({{0, 3}}, 2), domain_error);
    CHECK_THROWS_AS(chain_from_determinant({{0, -1}}, 2), domain_error);
}

TEST_CASE("module axioms: accepting and rejecting validate") {
    long p = 3, prec = 40;
    auto mod = ExtModulus::inert_default(p, 1);

    // diag(2, 2p) with N the standard nilpotent satisfies N phi = p phi N
    FilteredPhiNModule d;
    d.dim = 2;
    d.weights = {0, -1};
    d.phi_matrix = base_diag(mod, p, {2, 2 * p});
    d.N_matrix = base_diag(mod, p, {0, 0});
    d.N_matrix[0][1] = ExtScalar::from_base(mod, PadicScalar::from_long(p, 1, prec));
    auto rep = validate(d);
    CHECK(rep.ok);
    CHECK(rep.failures.empty());

    // swap the diagonal: semilinearity breaks
    auto bad = d;
    bad.phi_matrix = base_diag(mod, p, {2 * p, 2});
    bad.N_matrix = d.N_matrix;
    auto repb = validate(bad);
    CHECK_FALSE(repb.ok);
    REQUIRE(!repb.failures.empty());
    CHECK(repb.failures[0] == "N phi != p phi sigma(N)");

    // N = identity is not nilpotent
    auto nn = d;
    nn.N_matrix = base_diag(mod, p, {1, 1});
    auto repn = validate(nn);
    bool saw = false;
    for (const auto& m : repn.failures) saw = saw || m == "N is not nilpotent";
    CHECK(saw);

    // phi e = p e has the forbidden eigenvalue p^1
    FilteredPhiNModule sp;
    sp.dim = 1;
    sp.weights = {0};
    sp.phi_matrix = base_diag(mod, p, {p});
    sp.N_matrix = base_diag(mod, p, {0});
    auto reps = validate(sp, 2);
    CHECK_FALSE(reps.ok);
    saw = false;
    for (const auto& m : reps.failures) saw = saw || m.find("j = 1") != std::string::npos;
    CHECK(saw);

    // degree-2 coefficient field: linearization is phi sigma(phi)
    auto mod2 = ExtModulus::inert_default(p, 2);
    FilteredPhiNModule d2;
    d2.K_degree = 2;
    d2.dim = 1;
    d2.weights = {0};
    d2.phi_matrix = base_diag(mod2, p, {2});
    d2.N_matrix = base_diag(mod2, p, {0});
    CHECK(validate(d2).ok);
}

TEST_CASE("synthetic round-trip through the numeric divisor engine") {
    auto d = mk({0, -2});
    auto rep = synthetic_verify(d, 2, 97, 40);
    INFO(rep.note);
    REQUIRE(rep.expected_shadow.entries.size() == 2);
    CHECK(rep.expected_shadow.entries[0] ==
          ell_shadow_sym(0, 2) * ell_shadow_sym(1, 2));
    CHECK(rep.expected_shadow.entries[1].is_one());
    CHECK(rep.ok);
    CHECK(rep.recovered.entries == rep.expected_shadow.entries);

    // a different seed conjugates differently but recovers the same chain
    auto rep2 = synthetic_verify(d, 2, 1453, 40);
    INFO(rep2.note);
    CHECK(rep2.ok);

    auto df = mk({0, -1}, 2);
    auto repf = synthetic_verify(df, 1, 7, 40);
    INFO(repf.note);
    REQUIRE(repf.expected_shadow.entries.size() == 4);
    CHECK(repf.ok);
}
