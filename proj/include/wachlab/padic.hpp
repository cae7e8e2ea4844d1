#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace wachlab {

/// Bad user input: invalid profiles, malformed strings, violated preconditions.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The tracked precision cannot support the requested statement.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A mathematical certificate failed (integrality, commutation, shape, ...).
class CheckError : public std::runtime_error {
public:
    explicit CheckError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckError(msg);
}

/// p^e as an exact integer, e >= 0.
inline mpz_class pow_p(std::uint64_t p, std::int64_t e) {
    if (e < 0) throw ConfigError("pow_p: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e));
    return r;
}

/// Truncation caps for all computations.
///
/// Coefficients are tracked mod p^{cap_p} above their valuation floor, series
/// mod pi^{cap_pi}, families mod X^{cap_x}.  Internally scalars carry extra
/// guard digits (working_precision) so that the library can still certify
/// integrality statements after the deep cancellations caused by coefficients
/// of valuation down to -i/(p-1) at pi-order i, and after divisions by powers
/// of q; results are only ever *reported* against cap_p.
struct PrecisionProfile {
    std::uint64_t p = 3;
    int cap_p = 8;
    int cap_pi = 16;
    int cap_x = 2;

    PrecisionProfile() = default;

    PrecisionProfile(std::uint64_t p_, int cap_p_, int cap_pi_, int cap_x_)
        : p(p_), cap_p(cap_p_), cap_pi(cap_pi_), cap_x(cap_x_) {
        if (p == 2)
            throw ConfigError("p = 2 is not supported (Gamma is not procyclic)");
        mpz_class pz(static_cast<unsigned long>(p));
        if (p < 3 || mpz_probab_prime_p(pz.get_mpz_t(), 32) == 0)
            throw ConfigError("p must be an odd prime, got " + std::to_string(p));
        if (cap_p < 1 || cap_pi < 1 || cap_x < 1)
            throw ConfigError("all precision caps must be >= 1");
    }

    /// Relative precision used for internal arithmetic.
    int working_precision() const {
        int denom_guard = (cap_pi + static_cast<int>(p) - 3) / (static_cast<int>(p) - 1);
        return cap_p + denom_guard + 10;
    }

    bool operator==(const PrecisionProfile&) const = default;

    std::string describe() const {
        return "p=" + std::to_string(p) + " cap_p=" + std::to_string(cap_p) +
               " cap_pi=" + std::to_string(cap_pi) + " cap_x=" + std::to_string(cap_x);
    }
};

/// An element of Q_p with explicit precision bookkeeping:
///
///     unit * p^val + O(p^{val+rel})
///
/// where unit is a canonical residue mod p^rel coprime to p.  rel == 0 means
/// an "inexact zero": nothing is known beyond membership in p^val Z_p.  Exact
/// zeros are flagged separately (valuation +infinity).
///
/// Arithmetic is ultrametric-pessimistic: the output precision is the minimum
/// of the operand precisions adjusted for valuation shifts, so claimed digits
/// are always certified digits.  Values are immutable; all operations are pure.
class PadicScalar {
public:
    static constexpr std::int64_t kInfValuation =
        std::numeric_limits<std::int64_t>::max();

    PadicScalar() : p_(3), unit_(0), val_(0), rel_(0), exact_(true) {}

    static PadicScalar exact_zero(std::uint64_t p) {
        PadicScalar z;
        z.p_ = p;
        return z;
    }

    /// O(p^floor): zero at the tracked precision, valuation floor known only.
    static PadicScalar inexact_zero(std::uint64_t p, std::int64_t floor) {
        PadicScalar z;
        z.p_ = p;
        z.exact_ = false;
        z.val_ = floor;
        z.rel_ = 0;
        return z;
    }

    static PadicScalar from_mpz(std::uint64_t p, const mpz_class& n, int rel) {
        if (rel < 1) throw ConfigError("scalar precision must be >= 1");
        if (n == 0) return exact_zero(p);
        PadicScalar r;
        r.p_ = p;
        r.exact_ = false;
        mpz_class u;
        mpz_class pz(static_cast<unsigned long>(p));
        r.val_ = static_cast<std::int64_t>(
            mpz_remove(u.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
        r.rel_ = rel;
        mpz_class m = pow_p(p, rel);
        mpz_mod(u.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
        r.unit_ = u;
        return r;
    }

    static PadicScalar from_int(std::uint64_t p, std::int64_t n, int rel) {
        return from_mpz(p, mpz_class(static_cast<long>(n)), rel);
    }

    /// unit * p^val with `unit` reduced mod p^rel; unit must be coprime to p.
    static PadicScalar from_unit(std::uint64_t p, const mpz_class& unit,
                                 std::int64_t val, int rel) {
        if (rel < 1) throw ConfigError("scalar precision must be >= 1");
        mpz_class u;
        mpz_class m = pow_p(p, rel);
        mpz_mod(u.get_mpz_t(), unit.get_mpz_t(), m.get_mpz_t());
        if (u == 0 || mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p)))
            throw ConfigError("from_unit: unit part divisible by p");
        PadicScalar r;
        r.p_ = p;
        r.exact_ = false;
        r.unit_ = u;
        r.val_ = val;
        r.rel_ = rel;
        return r;
    }

    std::uint64_t prime() const { return p_; }
    bool is_exact_zero() const { return exact_; }

    /// True when no nonzero digit is known (exact zero or inexact zero).
    bool is_zero() const { return exact_ || rel_ == 0; }

    /// Certified lower bound for v_p; +infinity sentinel for exact zeros.
    /// Exact for any value with a known digit.
    std::int64_t valuation() const { return exact_ ? kInfValuation : val_; }

    /// Exponent w such that the value is known mod p^w.
    std::int64_t abs_precision() const {
        return exact_ ? kInfValuation : val_ + rel_;
    }

    int rel_precision() const { return rel_; }
    const mpz_class& unit_part() const { return unit_; }

    bool integral_certified() const { return exact_ || val_ >= 0; }
    bool nonintegral_certified() const { return !exact_ && rel_ > 0 && val_ < 0; }

    PadicScalar operator-() const {
        if (is_zero()) return *this;
        PadicScalar r = *this;
        r.unit_ = pow_p(p_, rel_) - unit_;
        return r;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        check_compat(a, b);
        if (a.exact_) return b;
        if (b.exact_) return a;
        std::int64_t prec = std::min(a.abs_precision(), b.abs_precision());
        std::int64_t w = std::min(a.val_, b.val_);
        if (prec <= w) return inexact_zero(a.p_, prec);
        mpz_class s = a.rep_shifted(w) + b.rep_shifted(w);
        return normalize(a.p_, std::move(s), w, prec);
    }

    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) {
        return a + (-b);
    }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        check_compat(a, b);
        if (a.exact_ || b.exact_) return exact_zero(a.p_);
        if (a.rel_ == 0 || b.rel_ == 0)
            return inexact_zero(a.p_, a.val_ + b.val_);
        PadicScalar r;
        r.p_ = a.p_;
        r.exact_ = false;
        r.val_ = a.val_ + b.val_;
        r.rel_ = std::min(a.rel_, b.rel_);
        mpz_class m = pow_p(a.p_, r.rel_);
        r.unit_ = a.unit_ * b.unit_;
        mpz_mod(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), m.get_mpz_t());
        return r;
    }

    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) {
        return a * b.inverse();
    }

    PadicScalar inverse() const {
        if (exact_) throw CheckError("division by exact zero");
        if (rel_ == 0)
            throw PrecisionError("division by a value known to 0 digits");
        PadicScalar r;
        r.p_ = p_;
        r.exact_ = false;
        r.val_ = -val_;
        r.rel_ = rel_;
        mpz_class m = pow_p(p_, rel_);
        if (mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), m.get_mpz_t()) == 0)
            throw CheckError("inverse: unit part not invertible");
        return r;
    }

    PadicScalar pow(unsigned e) const {
        PadicScalar r = one_like(*this);
        PadicScalar base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    /// Multiply by p^n (exact valuation shift).
    PadicScalar shift(std::int64_t n) const {
        if (exact_) return *this;
        PadicScalar r = *this;
        r.val_ += n;
        return r;
    }

    /// True iff the value is certified divisible by p^k.  Throws when the
    /// tracked precision cannot decide.
    bool divisible_by(std::int64_t k) const {
        if (exact_) return true;
        if (val_ >= k) return true;
        if (rel_ > 0) return false;
        throw PrecisionError("divisibility by p^" + std::to_string(k) +
                             " undecidable at O(p^" + std::to_string(val_) + ")");
    }

    /// Canonical residue of the value mod p^k (k <= abs_precision required).
    mpz_class residue_mod(std::int64_t k) const {
        if (exact_) return 0;
        if (val_ >= k) return 0;
        if (rel_ == 0)
            throw PrecisionError("residue mod p^" + std::to_string(k) +
                                 " undecidable at O(p^" + std::to_string(val_) + ")");
        if (val_ < 0)
            throw CheckError("residue_mod of a non-integral value");
        if (abs_precision() < k)
            throw PrecisionError("residue mod p^" + std::to_string(k) +
                                 " exceeds tracked precision");
        mpz_class r = unit_ * pow_p(p_, val_);
        mpz_class m = pow_p(p_, k);
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        return r;
    }

    /// Structural equality (same tracked digits and precision).
    bool operator==(const PadicScalar& o) const {
        return p_ == o.p_ && exact_ == o.exact_ && unit_ == o.unit_ &&
               (exact_ || (val_ == o.val_ && rel_ == o.rel_));
    }

    std::string to_string() const {
        if (exact_) return "0";
        std::string ps = std::to_string(p_);
        return unit_.get_str() + "*" + ps + "^" + std::to_string(val_) +
               " (mod " + ps + "^" + std::to_string(val_ + rel_) + ")";
    }

    /// Parses "0", a plain integer, or "u*p^v" with optional " (mod p^w)".
    static PadicScalar parse(std::uint64_t p, const std::string& text, int rel);

private:
    std::uint64_t p_;
    mpz_class unit_;
    std::int64_t val_;
    int rel_;
    bool exact_;

    static PadicScalar one_like(const PadicScalar& proto) {
        int rel = proto.rel_ > 0 ? proto.rel_ : 1;
        return from_int(proto.p_, 1, rel);
    }

    static void check_compat(const PadicScalar& a, const PadicScalar& b) {
        if (a.p_ != b.p_)
            throw ConfigError("mixed primes in scalar arithmetic");
    }

    // Representative as an integer scaled so that p^w = 1.
    mpz_class rep_shifted(std::int64_t w) const {
        if (rel_ == 0) return 0;
        return unit_ * pow_p(p_, val_ - w);
    }

    static PadicScalar normalize(std::uint64_t p, mpz_class s, std::int64_t w,
                                 std::int64_t prec) {
        mpz_class m = pow_p(p, prec - w);
        mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
        if (s == 0) return inexact_zero(p, prec);
        mpz_class u;
        mpz_class pz(static_cast<unsigned long>(p));
        std::int64_t t = static_cast<std::int64_t>(
            mpz_remove(u.get_mpz_t(), s.get_mpz_t(), pz.get_mpz_t()));
        PadicScalar r;
        r.p_ = p;
        r.exact_ = false;
        r.val_ = w + t;
        r.rel_ = static_cast<int>(prec - r.val_);
        mpz_class mu = pow_p(p, r.rel_);
        mpz_mod(u.get_mpz_t(), u.get_mpz_t(), mu.get_mpz_t());
        r.unit_ = u;
        return r;
    }
};

inline PadicScalar PadicScalar::parse(std::uint64_t p, const std::string& text,
                                      int rel) {
    auto fail = [&]() -> PadicScalar {
        throw ConfigError("cannot parse p-adic scalar \"" + text + "\"");
    };
    std::string s = text;
    // strip spaces
    std::string compact;
    for (char c : s)
        if (c != ' ') compact += c;
    s = compact;
    if (s.empty()) return fail();

    std::int64_t given_mod = -1;
    auto mpos = s.find("(mod");
    if (mpos != std::string::npos) {
        std::string mod = s.substr(mpos + 4);
        if (mod.empty() || mod.back() != ')') return fail();
        mod.pop_back();
        auto caret = mod.find('^');
        if (caret == std::string::npos) return fail();
        if (mpz_class(mod.substr(0, caret)) != mpz_class(std::to_string(p)))
            return fail();
        given_mod = std::stoll(mod.substr(caret + 1));
        s = s.substr(0, mpos);
    }

    auto star = s.find('*');
    if (star == std::string::npos) {
        // plain integer
        mpz_class n;
        if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0) return fail();
        PadicScalar r = from_mpz(p, n, rel);
        return r;
    }
    std::string upart = s.substr(0, star);
    std::string ppart = s.substr(star + 1);
    auto caret = ppart.find('^');
    if (caret == std::string::npos) return fail();
    if (mpz_class(ppart.substr(0, caret)) != mpz_class(std::to_string(p)))
        return fail();
    std::int64_t v = std::stoll(ppart.substr(caret + 1));
    mpz_class u;
    if (mpz_set_str(u.get_mpz_t(), upart.c_str(), 10) != 0) return fail();
    if (u == 0) {
        // inexact zero O(p^w); "0*p^v" with no modulus is an exact zero times p^v
        if (given_mod >= 0) return inexact_zero(p, given_mod);
        return exact_zero(p);
    }
    int use_rel = rel;
    PadicScalar r = from_mpz(p, u, use_rel);
    r = r.shift(v);
    if (given_mod >= 0) {
        std::int64_t want_rel = given_mod - r.valuation();
        if (want_rel < 0)
            throw ConfigError("modulus below valuation in \"" + text + "\"");
        if (want_rel == 0) return inexact_zero(p, given_mod);
        if (want_rel < r.rel_precision()) {
            // re-reduce to the requested precision
            mpz_class m = pow_p(p, want_rel);
            mpz_class uu = r.unit_part();
            mpz_mod(uu.get_mpz_t(), uu.get_mpz_t(), m.get_mpz_t());
            return from_unit(p, uu, r.valuation(), static_cast<int>(want_rel));
        }
    }
    return r;
}

/// v_p(n!) by Legendre's formula.
inline std::int64_t factorial_valuation(std::uint64_t p, std::uint64_t n) {
    std::int64_t v = 0;
    for (std::uint64_t q = p; q <= n; q *= p) {
        v += static_cast<std::int64_t>(n / q);
        if (q > n / p) break;
    }
    return v;
}

/// Generalized binomial coefficient C(a, i) = a(a-1)...(a-i+1)/i! for a
/// p-adic integer a.  Integral by the usual interpolation argument; the
/// absolute precision drops by v_p(i!).
inline PadicScalar binomial(const PadicScalar& a, unsigned i, int rel_cap = 0) {
    if (!a.integral_certified())
        throw ConfigError("binomial: first argument must be a p-adic integer");
    std::uint64_t p = a.prime();
    int cap = rel_cap > 0 ? rel_cap : std::max(a.rel_precision(), 1);
    PadicScalar prod = PadicScalar::from_int(p, 1, cap);
    for (unsigned j = 0; j < i; ++j) {
        PadicScalar factor = a - PadicScalar::from_int(p, static_cast<std::int64_t>(j), cap);
        prod = prod * factor;
        if (prod.is_exact_zero()) return prod;
    }
    if (i >= 2) {
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), i);
        prod = prod / PadicScalar::from_mpz(p, fact, cap);
    }
    return prod;
}

}  // namespace wachlab
