#include "iwa/padic.hpp"

#include <algorithm>
#include <sstream>

namespace iwa {

mpz_class pow_si(unsigned long base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

static mpz_class p_pow(long p, long e) {
    if (e < 0) throw std::logic_error("p_pow: negative exponent");
    return pow_si((unsigned long)p, (unsigned long)e);
}

void PadicScalar::canonicalize() {
    if (prec_ < 0) prec_ = 0;
    if (prec_ == 0) rep_ = 0;
    if (rep_ == 0) {
        shift_ += prec_;
        prec_ = 0;
        return;
    }
    mpz_class pm = p_pow(p_, prec_);
    rep_ = ((rep_ % pm) + pm) % pm;
    if (rep_ == 0) {
        shift_ += prec_;
        prec_ = 0;
        return;
    }
    // pull unit part out
    unsigned long v = mpz_remove(rep_.get_mpz_t(), rep_.get_mpz_t(), mpz_class(p_).get_mpz_t());
    if (v > 0) {
        shift_ += (long)v;
        prec_ -= (long)v;
        if (prec_ <= 0) {
            rep_ = 0;
            prec_ = 0;
            return;
        }
        rep_ %= p_pow(p_, prec_);
        if (rep_ == 0) {
            shift_ += prec_;
            prec_ = 0;
        }
    }
}

PadicScalar PadicScalar::make(long p, long shift, const mpz_class& rep, long rel_prec) {
    PadicScalar x(p, shift, rel_prec, rep);
    x.canonicalize();
    return x;
}

PadicScalar PadicScalar::from_mpz(long p, const mpz_class& value, long abs_prec) {
    return make(p, 0, value, abs_prec);
}

PadicScalar PadicScalar::from_long(long p, long value, long abs_prec) {
    return from_mpz(p, mpz_class(value), abs_prec);
}

PadicScalar PadicScalar::zero_at(long p, long abs_prec) {
    return PadicScalar(p, abs_prec, 0, mpz_class(0));
}

std::pair<long, bool> PadicScalar::valuation() const {
    if (rep_ == 0) return {shift_, false};
    return {shift_, true};
}

PadicScalar PadicScalar::operator-() const {
    if (rep_ == 0) return *this;
    return make(p_, shift_, p_pow(p_, prec_) - rep_, prec_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    if (p_ == 0) return o;
    if (o.p_ == 0) return *this;
    if (p_ != o.p_) throw domain_error("PadicScalar: mixed primes");
    long s = std::min(shift_, o.shift_);
    long abs = std::min(abs_prec(), o.abs_prec());
    long n = abs - s;
    if (n <= 0) return zero_at(p_, abs);
    mpz_class r = rep_ * p_pow(p_, shift_ - s) + o.rep_ * p_pow(p_, o.shift_ - s);
    return make(p_, s, r, n);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    if (p_ == 0 || o.p_ == 0) throw domain_error("PadicScalar: uninitialized operand");
    if (p_ != o.p_) throw domain_error("PadicScalar: mixed primes");
    if (rep_ == 0 || o.rep_ == 0) {
        // v(xy) >= (lower bound on v(x)) + (lower bound on v(y))
        long b1 = rep_ == 0 ? shift_ : shift_;
        long b2 = o.rep_ == 0 ? o.shift_ : o.shift_;
        return zero_at(p_, b1 + b2);
    }
    long n = std::min(prec_, o.prec_);
    return make(p_, shift_ + o.shift_, rep_ * o.rep_, n);
}

PadicScalar PadicScalar::inv() const {
    if (rep_ == 0)
        throw domain_error("PadicScalar: inverse of a value indistinguishable from 0");
    mpz_class pm = p_pow(p_, prec_);
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), rep_.get_mpz_t(), pm.get_mpz_t()))
        throw domain_error("PadicScalar: non-invertible representative");
    return PadicScalar(p_, -shift_, prec_, r);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const { return *this * o.inv(); }

PadicScalar PadicScalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    PadicScalar acc(p_, 0, prec_ > 0 ? prec_ : 32, mpz_class(1));
    PadicScalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

PadicScalar PadicScalar::mul_p_pow(long k) const {
    PadicScalar r = *this;
    r.shift_ += k;
    return r;
}

mpz_class PadicScalar::lift() const {
    if (rep_ == 0) return mpz_class(0);
    if (shift_ < 0) throw domain_error("PadicScalar: lift of negative-valuation element");
    return rep_ * p_pow(p_, shift_);
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    if (shift_ >= 0) {
        os << lift() << " + O(" << p_ << "^" << abs_prec() << ")";
    } else {
        os << rep_ << "*" << p_ << "^" << shift_ << " + O(" << p_ << "^" << abs_prec() << ")";
    }
    return os.str();
}

PadicScalar PadicScalar::parse(long p, const std::string& text, long default_prec) {
    // Accept "<int>", "<int> + O(<p>^<N>)", "<int>*<p>^<k> + O(<p>^<N>)".
    std::string s = text;
    long abs = default_prec;
    auto opos = s.find("O(");
    if (opos != std::string::npos) {
        auto caret = s.find('^', opos);
        auto close = s.find(')', opos);
        if (caret == std::string::npos || close == std::string::npos)
            throw domain_error("scalar literal: malformed O(...) term: " + text);
        abs = std::stol(s.substr(caret + 1, close - caret - 1));
        auto plus = s.rfind('+', opos);
        s = s.substr(0, plus == std::string::npos ? opos : plus);
    }
    // trim
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw domain_error("scalar literal: empty: " + text);
    s = s.substr(b, e - b + 1);
    auto star = s.find('*');
    if (star != std::string::npos) {
        mpz_class rep(s.substr(0, star));
        auto caret = s.find('^', star);
        if (caret == std::string::npos) throw domain_error("scalar literal: expected ^: " + text);
        long shift = std::stol(s.substr(caret + 1));
        return make(p, shift, rep, abs - shift);
    }
    return from_mpz(p, mpz_class(s), abs);
}

PadicScalar teichmuller(long p, long a, long prec) {
    long r = ((a % p) + p) % p;
    if (r == 0) throw domain_error("teichmuller: argument divisible by p");
    mpz_class pm = p_pow(p, prec);
    mpz_class x(r);
    // x <- x^p converges to the Teichmuller representative mod p^prec
    for (long i = 0; i < prec + 1; ++i) {
        mpz_class y;
        mpz_powm(y.get_mpz_t(), x.get_mpz_t(), mpz_class(p).get_mpz_t(), pm.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return PadicScalar::from_mpz(p, x, prec);
}

PadicScalar log_unit(const PadicScalar& x, long prec) {
    long p = x.prime();
    PadicScalar t = x - PadicScalar::from_long(p, 1, x.abs_prec());
    auto [v, exact] = t.valuation();
    if (!t.is_zero() && v < 1) throw domain_error("log_unit: argument is not a principal unit");
    if (t.is_zero()) return PadicScalar::zero_at(p, prec);
    PadicScalar acc = PadicScalar::zero_at(p, prec + 2);
    PadicScalar tk = PadicScalar::from_long(p, 1, prec + 64);
    for (long k = 1;; ++k) {
        tk = tk * t;
        // v(t^k / k) >= k*v - log_p(k); stop once past target precision
        long logk = 0;
        for (long m = k; m >= p; m /= p) ++logk;
        if (k * v - logk >= prec + 2 && k > 1) break;
        PadicScalar term = tk / PadicScalar::from_long(p, k, prec + 64);
        if (k % 2 == 0) term = -term;
        acc = acc + term;
        if (k > 4 * (prec + 8)) break;  // safety
    }
    return acc;
}

// ---------------------------------------------------------------------------
// extensions

std::shared_ptr<const ExtModulus> ExtModulus::cyclotomic(long p, long n) {
    if (n < 1) throw domain_error("cyclotomic modulus: level must be >= 1");
    long step = 1;
    for (long i = 0; i < n - 1; ++i) step *= p;
    std::vector<mpz_class> c((p - 1) * step + 1, mpz_class(0));
    for (long i = 0; i < p; ++i)
        if (i * step < (long)c.size()) c[i * step] = 1;
    c.back() = 1;
    return std::shared_ptr<const ExtModulus>(
        new ExtModulus(p, Kind::Cyclotomic, n, std::move(c)));
}

std::shared_ptr<const ExtModulus> ExtModulus::inert(long p, std::vector<mpz_class> coeffs) {
    if (coeffs.size() < 2 || coeffs.back() != 1)
        throw domain_error("inert modulus: need a monic polynomial of degree >= 1");
    long f = (long)coeffs.size() - 1;
    if (f <= 3 && f >= 2) {
        // degree 2/3: irreducible mod p iff no root mod p
        for (long a = 0; a < p; ++a) {
            mpz_class val(0), ap(1);
            for (auto& c : coeffs) {
                val += c * ap;
                ap *= a;
            }
            if (val % p == 0)
                throw domain_error("inert modulus: reducible mod p (root found)");
        }
    }
    return std::shared_ptr<const ExtModulus>(new ExtModulus(p, Kind::Inert, f, std::move(coeffs)));
}

std::shared_ptr<const ExtModulus> ExtModulus::inert_default(long p, long f) {
    if (f == 1) return inert(p, {mpz_class(-1), mpz_class(1)});  // t - 1, trivial
    if (f == 2) {
        // t^2 - c with c a non-residue mod p; for p = 3 this is t^2 + 1
        for (long c = 2; c < p * p; ++c) {
            bool residue = false;
            for (long a = 1; a < p; ++a)
                if ((a * a) % p == c % p) residue = true;
            if (!residue && c % p != 0)
                return inert(p, {mpz_class(-c), mpz_class(0), mpz_class(1)});
        }
    }
    if (f == 3) {
        for (long c0 = 1; c0 < p; ++c0)
            for (long c1 = 0; c1 < p; ++c1) {
                try {
                    return inert(p, {mpz_class(c0), mpz_class(c1), mpz_class(0), mpz_class(1)});
                } catch (const domain_error&) {
                }
            }
    }
    throw domain_error("inert_default: unsupported degree");
}

ExtScalar::ExtScalar(ExtModulusPtr mod, std::vector<PadicScalar> coeffs)
    : mod_(std::move(mod)), c_(std::move(coeffs)) {
    if ((long)c_.size() != mod_->degree())
        throw domain_error("ExtScalar: coefficient count must equal modulus degree");
}

ExtScalar ExtScalar::from_base(ExtModulusPtr mod, const PadicScalar& c) {
    std::vector<PadicScalar> v(mod->degree(), PadicScalar::zero_at(c.prime(), c.abs_prec()));
    v[0] = c;
    return ExtScalar(std::move(mod), std::move(v));
}

ExtScalar ExtScalar::zero(ExtModulusPtr mod, long p, long abs_prec) {
    std::vector<PadicScalar> v(mod->degree(), PadicScalar::zero_at(p, abs_prec));
    return ExtScalar(std::move(mod), std::move(v));
}

ExtScalar ExtScalar::generator(ExtModulusPtr mod, long abs_prec) {
    long p = mod->prime();
    std::vector<PadicScalar> v(mod->degree(), PadicScalar::zero_at(p, abs_prec));
    if (mod->degree() < 2) throw domain_error("generator: degree-1 modulus");
    v[1] = PadicScalar::from_long(p, 1, abs_prec);
    return ExtScalar(std::move(mod), std::move(v));
}

bool ExtScalar::is_zero() const {
    for (auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

long ExtScalar::val_lower_bound() const {
    long b = c_[0].valuation().first;
    for (auto& c : c_) b = std::min(b, c.valuation().first);
    return b;
}

ExtScalar ExtScalar::operator-() const {
    auto v = c_;
    for (auto& c : v) c = -c;
    return ExtScalar(mod_, std::move(v));
}

ExtScalar ExtScalar::operator+(const ExtScalar& o) const {
    auto v = c_;
    for (size_t i = 0; i < v.size(); ++i) v[i] = v[i] + o.c_[i];
    return ExtScalar(mod_, std::move(v));
}

ExtScalar ExtScalar::operator-(const ExtScalar& o) const { return *this + (-o); }

ExtScalar ExtScalar::operator*(const ExtScalar& o) const {
    long d = mod_->degree();
    long p = mod_->prime();
    long ap = c_[0].abs_prec();
    std::vector<PadicScalar> prod(2 * d - 1, PadicScalar::zero_at(p, ap + 64));
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) prod[i + j] = prod[i + j] + c_[i] * o.c_[j];
    // reduce by the monic integer modulus
    const auto& m = mod_->coeffs();
    for (long k = 2 * d - 2; k >= d; --k) {
        PadicScalar lead = prod[k];
        if (lead.is_zero()) continue;
        for (long i = 0; i < d; ++i) {
            PadicScalar mi = PadicScalar::from_mpz(p, m[i], lead.abs_prec() + 64);
            prod[k - d + i] = prod[k - d + i] - lead * mi;
        }
    }
    prod.resize(d);
    return ExtScalar(mod_, std::move(prod));
}

ExtScalar ExtScalar::operator*(const PadicScalar& s) const {
    auto v = c_;
    for (auto& c : v) c = c * s;
    return ExtScalar(mod_, std::move(v));
}

ExtScalar ExtScalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    ExtScalar acc = from_base(mod_, PadicScalar::from_long(mod_->prime(), 1, c_[0].abs_prec()));
    ExtScalar base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

bool ExtScalar::congruent(const ExtScalar& o) const { return (*this - o).is_zero(); }

std::string ExtScalar::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].str();
    }
    os << "]";
    return os.str();
}

// Solve x*y = 1 by Gaussian elimination on the multiplication matrix.
ExtScalar ExtScalar::inv() const {
    long d = mod_->degree();
    long p = mod_->prime();
    // columns: x * t^i
    std::vector<ExtScalar> cols;
    ExtScalar gen = (d >= 2) ? generator(mod_, c_[0].abs_prec() + 8)
                             : from_base(mod_, PadicScalar::from_long(p, 1, c_[0].abs_prec() + 8));
    ExtScalar cur = *this;
    for (long i = 0; i < d; ++i) {
        cols.push_back(cur);
        if (i + 1 < d) cur = cur * gen;
    }
    // augmented system A y = e0
    std::vector<std::vector<PadicScalar>> A(d, std::vector<PadicScalar>(d + 1));
    for (long r = 0; r < d; ++r) {
        for (long cix = 0; cix < d; ++cix) A[r][cix] = cols[cix].coeffs()[r];
        A[r][d] = PadicScalar::from_long(p, r == 0 ? 1 : 0, c_[0].abs_prec() + 8);
    }
    for (long col = 0; col < d; ++col) {
        long best = -1, bestv = 0;
        for (long r = col; r < d; ++r) {
            auto [v, exact] = A[r][col].valuation();
            if (exact && (best == -1 || v < bestv)) {
                best = r;
                bestv = v;
            }
        }
        if (best == -1) throw domain_error("ExtScalar::inv: singular at working precision");
        std::swap(A[col], A[best]);
        PadicScalar piv = A[col][col].inv();
        for (long c2 = col; c2 <= d; ++c2) A[col][c2] = A[col][c2] * piv;
        for (long r = 0; r < d; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            PadicScalar f = A[r][col];
            for (long c2 = col; c2 <= d; ++c2) A[r][c2] = A[r][c2] - f * A[col][c2];
        }
    }
    std::vector<PadicScalar> y(d);
    for (long r = 0; r < d; ++r) y[r] = A[r][d];
    return ExtScalar(mod_, std::move(y));
}

ExtScalar frobenius(const ExtScalar& x) {
    const auto& mod = x.modulus();
    if (mod->kind() != ExtModulus::Kind::Inert)
        throw domain_error("frobenius: only inert moduli are supported");
    long p = mod->prime();
    long d = mod->degree();
    long prec = x.coeffs()[0].abs_prec();
    // Hensel-lift the image of the generator: root of m congruent to t^p mod p.
    ExtScalar s = ExtScalar::generator(mod, prec + 8).pow(p);
    const auto& m = mod->coeffs();
    auto eval_poly = [&](const std::vector<mpz_class>& poly, const ExtScalar& at) {
        ExtScalar acc = ExtScalar::zero(mod, p, prec + 8);
        for (long i = (long)poly.size() - 1; i >= 0; --i) {
            acc = acc * at + ExtScalar::from_base(mod, PadicScalar::from_mpz(p, poly[i], prec + 8));
        }
        return acc;
    };
    std::vector<mpz_class> mder(d);
    for (long i = 1; i <= d; ++i) mder[i - 1] = m[i] * i;
    for (long it = 0; it < prec + 8; ++it) {
        ExtScalar fs = eval_poly(m, s);
        if (fs.is_zero()) break;
        ExtScalar fds = eval_poly(mder, s);
        s = s - fs * fds.inv();
    }
    // apply coefficientwise to x
    ExtScalar acc = ExtScalar::zero(mod, p, prec);
    ExtScalar spow = ExtScalar::from_base(mod, PadicScalar::from_long(p, 1, prec + 8));
    for (long i = 0; i < d; ++i) {
        acc = acc + spow * x.coeffs()[i];
        if (i + 1 < d) spow = spow * s;
    }
    return acc;
}

}  // namespace iwa
