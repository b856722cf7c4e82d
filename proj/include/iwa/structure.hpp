#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwa/divisor.hpp"

namespace iwa {

using ExtMatrix = std::vector<std::vector<ExtScalar>>;

/// Hypotheses that live outside the computable scope; they are user-asserted
/// inputs, never inferred.
struct ModuleFlags {
    bool no_pj_eigenvalue = false;  // "D^{phi=p^j} = 0" within the checked window
    bool V_fixed_trivial = false;   // V^{G_{K_infty}} = 0
};

/// A filtered (phi,N)-module over the unramified extension K of degree f,
/// described by matrices over K and the Hodge weight multiset {-r_1 >= ... >= -r_d}.
/// The filtration enters only through the weights; every formula in scope
/// depends on the multiset alone.
struct FilteredPhiNModule {
    long p = 3;
    long u = 4;
    long K_degree = 1;
    long dim = 1;
    ExtMatrix phi_matrix;
    ExtMatrix N_matrix;
    std::vector<long> weights;
    ModuleFlags flags;
};

struct HodgeData {
    long r = 0;                   // least r with Fil^{-r} = D, i.e. r_d
    long r_star = 0;              // least r* with Fil^{r*+1} = 0, i.e. the top weight
    std::vector<long> r_sorted;   // r_1 <= ... <= r_d
    std::map<long, long> fil_dims;  // j -> dim Fil^j over the jump range
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    long spectral_window = 0;
};

/// Check the (phi,N)-module axioms: N phi = p phi sigma(N), N nilpotent,
/// phi invertible, and the spectral window det(B - p^{jf}) != 0 for
/// |j| <= spectral_window, B = A sigma(A) ... sigma^{f-1}(A).
ValidationReport validate(const FilteredPhiNModule& d, long spectral_window = 4);

HodgeData hodge_data(const FilteredPhiNModule& d);

/// The predicted elementary-divisor chain: [prod_{-r* <= j < r_i} ell_j],
/// entries in descending order, each repeated f = [K:Q_p] times. Requires
/// the spectral flag; r_star may be enlarged past the minimal choice.
DivisorChain predicted_chain(const FilteredPhiNModule& d,
                             std::optional<long> r_star = std::nullopt);

/// prod_{-r* <= j < r} ell_j^{f (d - dim Fil^{-j})}; independent of
/// enlarging r past r_d.
FactoredElement predicted_determinant(const FilteredPhiNModule& d,
                                      std::optional<long> r_star = std::nullopt);

/// prod_{-r* <= j < r_d} ell_j. Requires the V^{G_{K_infty}} = 0 flag.
FactoredElement predicted_annihilator(const FilteredPhiNModule& d,
                                      std::optional<long> r_star = std::nullopt);

/// Product of the predicted chain entries = predicted determinant, as exact
/// exponent multisets.
bool determinant_identity_check(const FilteredPhiNModule& d,
                                std::optional<long> r_star = std::nullopt);

/// The proof's counting argument as an algorithm: given n_j = exponent of
/// ell_j in the determinant and d_tilde = f*d, the unique chain with 0/1
/// exponents decreasing along the slots is f_s = prod_{j : n_j >= s} ell_j.
DivisorChain chain_from_determinant(const std::map<long, long>& n, long d_tilde);

/// Predictions at r*+s equal the predictions at r* multiplied by
/// prod_{-r*-s <= j < -r*} ell_j (entrywise on the chain, to the power f*d
/// on the determinant).
bool twist_shift_identity(const FilteredPhiNModule& d, long s);

struct SyntheticReport {
    bool ok = false;
    DivisorChain recovered;
    DivisorChain expected_shadow;
    std::string note;
};

/// End-to-end check of the statement shape at finite level: materialize the
/// predicted chain's level-n0 shadow on a diagonal, conjugate by seeded
/// random unimodular matrices, run the numeric engine, and compare.
SyntheticReport synthetic_verify(const FilteredPhiNModule& d, long n0, unsigned long seed,
                                 long prec = 40);

}  // namespace iwa
