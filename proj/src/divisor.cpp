#include "iwa/divisor.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace iwa {

std::string FactorSym::str() const {
    std::ostringstream os;
    if (kind == Kind::Pi)
        os << "pi:" << n << ":" << j;
    else
        os << "ell:" << j;
    return os.str();
}

FactorSym FactorSym::parse(const std::string& s) {
    auto c1 = s.find(':');
    if (c1 == std::string::npos) throw domain_error("bad factor symbol: " + s);
    std::string head = s.substr(0, c1);
    if (head == "ell") return ell(std::stol(s.substr(c1 + 1)));
    if (head == "pi") {
        auto c2 = s.find(':', c1 + 1);
        if (c2 == std::string::npos) throw domain_error("bad factor symbol: " + s);
        return pi(std::stol(s.substr(c1 + 1, c2 - c1 - 1)), std::stol(s.substr(c2 + 1)));
    }
    throw domain_error("bad factor symbol: " + s);
}

FactoredElement FactoredElement::zero() {
    FactoredElement z;
    z.zero_ = true;
    return z;
}

FactoredElement FactoredElement::sym(const FactorSym& s, long e) {
    FactoredElement f;
    if (e < 0) throw domain_error("factored exponents are non-negative");
    if (e > 0) f.e_[s] = e;
    return f;
}

long FactoredElement::exponent(const FactorSym& s) const {
    if (zero_) throw domain_error("the zero element has no finite exponents");
    auto it = e_.find(s);
    return it == e_.end() ? 0 : it->second;
}

FactoredElement FactoredElement::operator*(const FactoredElement& o) const {
    if (zero_ || o.zero_) return zero();
    FactoredElement r = *this;
    for (const auto& [s, e] : o.e_) r.e_[s] += e;
    return r;
}

bool FactoredElement::divides(const FactoredElement& o) const {
    if (o.zero_) return true;
    if (zero_) return false;
    for (const auto& [s, e] : e_)
        if (o.exponent(s) < e) return false;
    return true;
}

std::string FactoredElement::str() const {
    if (zero_) return "0";
    if (e_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, e] : e_) {
        if (!first) os << "*";
        first = false;
        os << s.str();
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

bool DivisorChain::descending_ok() const {
    for (size_t s = 0; s + 1 < entries.size(); ++s)
        if (!entries[s + 1].divides(entries[s])) return false;
    return true;
}

FactoredElement exponent_of(const DivisorChain& chain) {
    if (chain.entries.empty()) throw domain_error("empty divisor chain");
    return chain.entries.front();
}

namespace {

// all k-subsets of 0..n-1
std::vector<std::vector<long>> subsets(long n, long k) {
    std::vector<std::vector<long>> out;
    std::vector<long> idx((size_t)k);
    for (long i = 0; i < k; ++i) idx[(size_t)i] = i;
    while (true) {
        out.push_back(idx);
        long i = k - 1;
        while (i >= 0 && idx[(size_t)i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[(size_t)i];
        for (long t = i + 1; t < k; ++t) idx[(size_t)t] = idx[(size_t)t - 1] + 1;
    }
    return out;
}

struct MuProfile {
    bool exists = false;                // some permutation term / minor is nonzero
    std::map<FactorSym, long> mu;       // per-symbol minimum
    void feed(const std::map<FactorSym, long>& term) {
        if (!exists) {
            mu = term;
            exists = true;
            return;
        }
        // minimum symbol-wise; absent symbols count as 0
        for (auto& [s, e] : mu) {
            auto it = term.find(s);
            long o = it == term.end() ? 0 : it->second;
            if (o < e) e = o;
        }
        for (const auto& [s, e] : term)
            if (!mu.count(s)) mu[s] = 0;  // was implicitly 0 already
    }
};

DivisorChain assemble(const std::vector<MuProfile>& prof) {
    long r = 0;
    while (r < (long)prof.size() && prof[(size_t)r].exists) ++r;
    if (r == 0) throw domain_error("no chain: the matrix is zero");
    std::vector<FactoredElement> asc;
    std::map<FactorSym, long> prev;
    for (long k = 0; k < r; ++k) {
        FactoredElement d;
        for (const auto& [s, e] : prof[(size_t)k].mu) {
            long pe = prev.count(s) ? prev.at(s) : 0;
            if (e - pe > 0) d = d * FactoredElement::sym(s, e - pe);
        }
        asc.push_back(d);
        prev = prof[(size_t)k].mu;
    }
    DivisorChain chain;
    chain.entries.assign(asc.rbegin(), asc.rend());
    return chain;
}

void feed_exact_selection(const FactoredMatrix& a, const std::vector<long>& rows,
                          const std::vector<long>& cols, const std::vector<long>& perm,
                          MuProfile& prof) {
    std::map<FactorSym, long> term;
    for (size_t i = 0; i < rows.size(); ++i) {
        const FactoredElement& e = a[(size_t)rows[i]][(size_t)cols[(size_t)perm[i]]];
        if (e.is_zero()) return;
        for (const auto& [s, x] : e.exponents()) term[s] += x;
    }
    prof.feed(term);
}

}  // namespace

DivisorChain snf_exact(const FactoredMatrix& a, unsigned long seed) {
    if (a.empty() || a[0].empty()) throw domain_error("no chain: empty matrix");
    long rows = (long)a.size(), cols = (long)a[0].size();
    long kmax = std::min(rows, cols);
    std::vector<MuProfile> prof((size_t)kmax);
    bool sampled = false;
    for (long k = 1; k <= kmax; ++k) {
        std::vector<long> perm((size_t)k);
        if (std::max(rows, cols) <= 5) {
            for (const auto& rs : subsets(rows, k))
                for (const auto& cs : subsets(cols, k)) {
                    for (long i = 0; i < k; ++i) perm[(size_t)i] = i;
                    do {
                        feed_exact_selection(a, rs, cs, perm, prof[(size_t)k - 1]);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                }
        } else {
            // randomized Laplace-term sampling; confidence note recorded below
            sampled = true;
            std::mt19937_64 rng(seed + (unsigned long)k * 7919);
            std::vector<long> ridx(rows), cidx(cols);
            for (long i = 0; i < rows; ++i) ridx[(size_t)i] = i;
            for (long i = 0; i < cols; ++i) cidx[(size_t)i] = i;
            for (int it = 0; it < 4000; ++it) {
                std::shuffle(ridx.begin(), ridx.end(), rng);
                std::shuffle(cidx.begin(), cidx.end(), rng);
                std::vector<long> rs(ridx.begin(), ridx.begin() + k);
                std::vector<long> cs(cidx.begin(), cidx.begin() + k);
                std::sort(rs.begin(), rs.end());
                std::sort(cs.begin(), cs.end());
                for (long i = 0; i < k; ++i) perm[(size_t)i] = i;
                std::shuffle(perm.begin(), perm.end(), rng);
                feed_exact_selection(a, rs, cs, perm, prof[(size_t)k - 1]);
            }
        }
    }
    DivisorChain chain = assemble(prof);
    if (sampled)
        chain.note = "minor profiles sampled (matrix larger than 5x5); exponents are upper bounds";
    return chain;
}

namespace {

TruncatedSeries minor_det(const SeriesMatrix& a, const std::vector<long>& rows,
                          const std::vector<long>& cols) {
    long k = (long)rows.size();
    long p = a[0][0].prime();
    long prec = a[0][0].prec();
    std::vector<long> perm((size_t)k);
    for (long i = 0; i < k; ++i) perm[(size_t)i] = i;
    TruncatedSeries acc = TruncatedSeries::zero(p, prec, 1);
    do {
        long inv = 0;
        for (long i = 0; i < k; ++i)
            for (long j = i + 1; j < k; ++j)
                if (perm[(size_t)i] > perm[(size_t)j]) ++inv;
        TruncatedSeries term = a[(size_t)rows[0]][(size_t)cols[(size_t)perm[0]]];
        for (long i = 1; i < k; ++i)
            term = term * a[(size_t)rows[(size_t)i]][(size_t)cols[(size_t)perm[(size_t)i]]];
        acc = inv % 2 ? acc - term : acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace

DivisorChain snf_numeric(const Config& cfg, const SeriesMatrix& a,
                         const std::vector<std::pair<FactorSym, TruncatedSeries>>& factors,
                         long tau) {
    (void)cfg;
    if (a.empty() || a[0].empty()) throw domain_error("no chain: empty matrix");
    long rows = (long)a.size(), cols = (long)a[0].size();
    long kmax = std::min(rows, cols);
    if (std::max(rows, cols) > 5)
        throw domain_error("numeric engine enumerates minors exhaustively up to 5x5 only");
    std::vector<MuProfile> prof((size_t)kmax);
    bool partial = false;
    for (long k = 1; k <= kmax; ++k) {
        bool any_zero = false;
        for (const auto& rs : subsets(rows, k))
            for (const auto& cs : subsets(cols, k)) {
                TruncatedSeries d = minor_det(a, rs, cs);
                if (d.is_zero()) {
                    any_zero = true;
                    continue;
                }
                std::map<FactorSym, long> term;
                for (const auto& [s, piser] : factors) {
                    long e = ord_at_factor(d, piser, tau);
                    if (e > 0) term[s] = e;
                }
                prof[(size_t)k - 1].feed(term);
            }
        if (any_zero && prof[(size_t)k - 1].exists) partial = true;
    }
    DivisorChain chain = assemble(prof);
    chain.partial = partial;
    if (partial)
        chain.note = "some minors vanish at working precision; their profiles are lower bounds";
    // determinant cross-check on full-rank square input
    if (rows == cols && (long)chain.entries.size() == rows) {
        std::vector<long> all(rows);
        for (long i = 0; i < rows; ++i) all[(size_t)i] = i;
        TruncatedSeries det = minor_det(a, all, all);
        if (!det.is_zero()) {
            for (const auto& [s, piser] : factors) {
                long total = 0;
                for (const auto& f : chain.entries) total += f.exponent(s);
                if (total != ord_at_factor(det, piser, tau)) chain.det_consistent = false;
            }
        }
    }
    return chain;
}

TruncatedSeries ell_shadow_series(const Config& cfg, long j, long n0) {
    TruncatedSeries f = TruncatedSeries::one(cfg.p, cfg.prec);
    for (long n = 1; n <= n0; ++n) f = f * pi_factor(cfg, n, j);
    return f;
}

FactoredElement ell_shadow_sym(long j, long n0) {
    FactoredElement f;
    for (long n = 1; n <= n0; ++n) f = f * FactoredElement::sym(FactorSym::pi(n, j));
    return f;
}

TruncatedSeries materialize(const Config& cfg, const FactoredElement& f, long ell_shadow_level) {
    if (f.is_zero()) return TruncatedSeries::zero(cfg.p, cfg.prec, 1);
    TruncatedSeries r = TruncatedSeries::one(cfg.p, cfg.prec);
    for (const auto& [s, e] : f.exponents()) {
        TruncatedSeries base = s.kind == FactorSym::Kind::Pi
                                   ? pi_factor(cfg, s.n, s.j)
                                   : ell_shadow_series(cfg, s.j, ell_shadow_level);
        for (long i = 0; i < e; ++i) r = r * base;
    }
    return r;
}

}  // namespace iwa
