#pragma once

#include <vector>

#include "iwa/series.hpp"

namespace iwa {

/// phi: the ring endomorphism induced by x -> (1+x)^p - 1.
/// Polynomial inputs expand exactly; truncated inputs keep their x_trunc
/// (the substituted tail only feeds coefficients beyond it).
TruncatedSeries phi(const Config& cfg, const TruncatedSeries& f);

/// psi: the left inverse of phi, computed in the y = 1+x basis by keeping
/// the exponents divisible by p. Output x_trunc is floor(input/p) for
/// truncated inputs; polynomial inputs stay exact.
TruncatedSeries psi(const Config& cfg, const TruncatedSeries& f);

/// The averaging formula p^{-1} sum_{zeta^p = 1} f(zeta(1+x) - 1), computed
/// in level-1 cyclotomic extension arithmetic. Returns the coefficients of
/// the average up to f's truncation. This equals phi(psi(f)) and serves as
/// the independent oracle for the y-basis algorithm.
std::vector<ExtScalar> cyclotomic_average(const Config& cfg, const TruncatedSeries& f);

/// The unique decomposition f = sum_{i<p} (1+x)^i phi(f_i); returns
/// (f_0, ..., f_{p-1}) with f_0 = psi(f).
std::vector<TruncatedSeries> phi_components(const Config& cfg, const TruncatedSeries& f);

/// Reassemble sum_{i<p} (1+x)^i phi(parts[i]).
TruncatedSeries phi_reconstruct(const Config& cfg, const std::vector<TruncatedSeries>& parts);

/// An element sum_k c_k L^k of B[L], L the formal symbol log x.
/// branch_const is the chosen value of log p (a prime of 0 means the
/// default branch log p = 0).
struct LogSeries {
    std::vector<TruncatedSeries> c;
    PadicScalar branch_const;

    long degree_L() const { return (long)c.size() - 1; }
};

/// log(xi_1 / p) as a truncated series of length len; the coefficients have
/// unbounded negative valuation (roughly -k/2 at x^k for p = 3).
TruncatedSeries log_xi1_over_p(const Config& cfg, long len);

/// psi extended to B[L] via L = phi^{-1}(L) + log xi_1 under the branch:
/// psi(f L^k) = sum_j binom(k,j) (-1)^{k-j} L^j psi(f c^{k-j}) with
/// c = log(xi_1/p) + branch_const.
LogSeries psi_log(const Config& cfg, const LogSeries& g);

struct ThetaApprox {
    LogSeries value;   // p^{k * steps_done} psi^{steps_done}(L^k)
    long steps_done;   // may fall short of the request when truncation runs out
};

/// Raw convergents of Theta_k = lim_n p^{kn} psi^n(log^k x). Only the
/// approximants are reported, never an extrapolated limit.
ThetaApprox theta_k_approx(const Config& cfg, long k, long n_steps, long x_trunc);

struct OPhiEstimate {
    mpq_class estimate;              // minus the least-squares slope of c_n vs n
    mpq_class max_dev;               // max |c_n - fit(n)| over the fit window
    long levels_used = 0;            // how many c_n were certifiable
    bool bounded_with_slope = false; // heuristic: c_n + estimate*n stays in band
    std::vector<mpq_class> c_values; // the certified c_n
};

/// Growth-order estimator: c_n = v_{rho_n}((1 (x) phi)^{-n} g) with
/// rho_n = rho^{1/p^n}, fitted by exact rational least squares over
/// n = 0..n_max. phi acts on the coefficient module through phi_matrix
/// (columns = images of basis vectors); uncertifiable norms truncate the
/// fit window. bounded_with_slope flags when the detrended sequence
/// c_n + estimate*n drifts no more in the second half of the window than
/// one unit beyond its first-half spread.
OPhiEstimate o_phi_estimate(const std::vector<TruncatedSeries>& g,
                            const std::vector<std::vector<PadicScalar>>& phi_matrix,
                            const RadiusExp& rho, long n_max);

}  // namespace iwa
