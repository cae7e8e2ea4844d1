#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "padic.hpp"
#include "xpoly.hpp"

namespace wachlab {

template <class C>
struct CoeffOps;

template <>
struct CoeffOps<PadicScalar> {
    static PadicScalar zero(const PrecisionProfile& prof) {
        return PadicScalar::exact_zero(prof.p);
    }
    static PadicScalar one(const PrecisionProfile& prof) {
        return PadicScalar::from_int(prof.p, 1, prof.working_precision());
    }
    static PadicScalar lift(const PrecisionProfile&, const PadicScalar& a) {
        return a;
    }
    static PadicScalar inverse(const PadicScalar& a) { return a.inverse(); }
    template <class F>
    static void visit(const PadicScalar& c, F&& f) {
        f(c);
    }
};

template <>
struct CoeffOps<XPoly> {
    static XPoly zero(const PrecisionProfile& prof) {
        return XPoly(prof.p, prof.cap_x);
    }
    static XPoly one(const PrecisionProfile& prof) {
        return XPoly::constant(CoeffOps<PadicScalar>::one(prof), prof.cap_x);
    }
    static XPoly lift(const PrecisionProfile& prof, const PadicScalar& a) {
        return XPoly::constant(a, prof.cap_x);
    }
    static XPoly inverse(const XPoly& a) { return a.invert(); }
    template <class F>
    static void visit(const XPoly& c, F&& f) {
        c.visit_scalars(f);
    }
};

/// Truncated power series in pi over C, reduced mod pi^{cap_pi}.
///
/// C = PadicScalar gives Z_p[[pi]] / Q_p[[pi]] windows, C = XPoly the
/// two-variable family ring Z_p[[pi, X]] / (X^{cap_x}).  Substitution by any
/// series with zero constant term is exact at this truncation, so a uniform
/// window is kept instead of per-series order tracking.
template <class C>
class Series {
public:
    Series() = default;

    explicit Series(const PrecisionProfile& prof)
        : prof_(prof),
          c_(static_cast<std::size_t>(prof.cap_pi), CoeffOps<C>::zero(prof)) {}

    static Series constant(const PrecisionProfile& prof, const C& a) {
        Series r(prof);
        r.c_[0] = a;
        return r;
    }

    static Series constant_scalar(const PrecisionProfile& prof, const PadicScalar& a) {
        return constant(prof, CoeffOps<C>::lift(prof, a));
    }

    static Series one(const PrecisionProfile& prof) {
        return constant(prof, CoeffOps<C>::one(prof));
    }

    static Series pi(const PrecisionProfile& prof, int degree = 1) {
        Series r(prof);
        if (degree < prof.cap_pi) r.c_[static_cast<std::size_t>(degree)] = CoeffOps<C>::one(prof);
        return r;
    }

    const PrecisionProfile& profile() const { return prof_; }
    int cap() const { return prof_.cap_pi; }
    const C& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    void set_coeff(int i, const C& a) { c_[static_cast<std::size_t>(i)] = a; }

    Series operator-() const {
        Series r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    friend Series operator+(const Series& x, const Series& y) {
        x.check(y);
        Series r = x;
        for (int i = 0; i < r.cap(); ++i) r.c_[i] = r.c_[i] + y.c_[i];
        return r;
    }

    friend Series operator-(const Series& x, const Series& y) { return x + (-y); }

    /// Product truncated to pi-order < trunc (trunc defaults to the window).
    template <class D>
    Series mul_with(const Series<D>& o, int trunc = -1) const {
        if (!(prof_ == o.profile()))
            throw ConfigError("incompatible series profiles");
        int n = trunc < 0 ? cap() : std::min(trunc, cap());
        Series r(prof_);
        for (int i = 0; i < cap() && i < n; ++i) {
            if (is_exact_zero_coeff(c_[static_cast<std::size_t>(i)])) continue;
            for (int j = 0; i + j < n; ++j) {
                const auto& oj = o.coeff(j);
                if (oj.is_exact_zero()) continue;
                r.c_[static_cast<std::size_t>(i + j)] =
                    r.c_[static_cast<std::size_t>(i + j)] +
                    c_[static_cast<std::size_t>(i)] * oj;
            }
        }
        return r;
    }

    friend Series operator*(const Series& x, const Series& y) { return x.mul_with(y); }

    Series scale(const PadicScalar& a) const {
        Series r = *this;
        for (auto& ci : r.c_) ci = ci * a;
        return r;
    }

    /// Multiply every pi-coefficient by a fixed element of the coefficient ring.
    Series scale_coeff(const C& a) const {
        Series r(prof_);
        if (a.is_exact_zero()) return r;
        for (int i = 0; i < cap(); ++i) {
            if (is_exact_zero_coeff(c_[static_cast<std::size_t>(i)])) continue;
            r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)] * a;
        }
        return r;
    }

    /// Rebrand to an equal-window profile (used when taking cached series
    /// into a context that differs only in cap_x).
    Series with_profile(const PrecisionProfile& prof) const {
        if (prof.p != prof_.p || prof.cap_p != prof_.cap_p || prof.cap_pi != prof_.cap_pi)
            throw ConfigError("with_profile: precision windows differ");
        if constexpr (std::is_same_v<C, XPoly>) {
            if (prof.cap_x != prof_.cap_x)
                throw ConfigError("with_profile: cap_x differs for a family series");
        }
        Series r = *this;
        r.prof_ = prof;
        return r;
    }

    /// Multiply every coefficient by p^n (exact shift).
    Series shift_p(std::int64_t n) const {
        Series r = *this;
        for (auto& ci : r.c_) ci = shift_coeff(ci, n);
        return r;
    }

    /// Multiply by pi^n, dropping overflow above the window.
    Series shift_pi(int n) const {
        Series r(prof_);
        for (int i = 0; i + n < cap(); ++i) r.c_[static_cast<std::size_t>(i + n)] = c_[static_cast<std::size_t>(i)];
        return r;
    }

    /// Divide by pi^n; coefficients below pi^n must be zero at precision.
    /// The result is only meaningful below pi-order cap-n; the top n slots
    /// are padding.
    Series unshift_pi(int n) const {
        for (int i = 0; i < n; ++i)
            if (!is_zero_coeff(c_[static_cast<std::size_t>(i)]))
                throw CheckError("unshift_pi: series not divisible by pi^" + std::to_string(n));
        Series r(prof_);
        for (int i = n; i < cap(); ++i) r.c_[static_cast<std::size_t>(i - n)] = c_[static_cast<std::size_t>(i)];
        return r;
    }

    /// f(g(pi)) truncated; g must have zero constant term.
    Series compose(const Series<PadicScalar>& g) const {
        if (!(prof_ == g.profile()))
            throw ConfigError("incompatible series profiles");
        if (!g.coeff(0).is_zero())
            throw ConfigError("compose: substituted series has nonzero constant term");
        Series acc = constant(prof_, c_[static_cast<std::size_t>(cap() - 1)]);
        for (int i = cap() - 2; i >= 0; --i) {
            acc = acc.template mul_with<PadicScalar>(g);
            acc.c_[0] = acc.c_[0] + c_[static_cast<std::size_t>(i)];
        }
        return acc;
    }

    /// Multiplicative inverse; the constant term must be invertible.
    Series invert_unit() const {
        Series g(prof_);
        g.c_[0] = CoeffOps<C>::inverse(c_[0]);
        for (int n = 1; n < cap(); ++n) {
            C acc = CoeffOps<C>::zero(prof_);
            for (int j = 1; j <= n; ++j) {
                if (is_exact_zero_coeff(c_[static_cast<std::size_t>(j)])) continue;
                acc = acc + c_[static_cast<std::size_t>(j)] * g.c_[static_cast<std::size_t>(n - j)];
            }
            g.c_[static_cast<std::size_t>(n)] = -(g.c_[0] * acc);
        }
        return g;
    }

    Series pow(unsigned e) const {
        Series r = one(prof_);
        Series base = *this;
        while (e) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(),
                           [](const C& a) { return is_zero_coeff(a); });
    }

    bool is_exact_zero() const {
        return std::all_of(c_.begin(), c_.end(),
                           [](const C& a) { return is_exact_zero_coeff(a); });
    }

    /// Smallest pi-order with a coefficient not zero at precision (cap if none).
    int low_order() const {
        for (int i = 0; i < cap(); ++i)
            if (!is_zero_coeff(c_[static_cast<std::size_t>(i)])) return i;
        return cap();
    }

    bool integral_certified() const {
        bool ok = true;
        visit_scalars([&](const PadicScalar& a) { ok = ok && a.integral_certified(); });
        return ok;
    }

    /// Certified to vanish mod p^w (every coefficient has valuation floor >= w).
    bool zero_mod_p(std::int64_t w) const {
        bool ok = true;
        visit_scalars([&](const PadicScalar& a) {
            ok = ok && (a.is_exact_zero() || a.valuation() >= w);
        });
        return ok;
    }

    /// Minimum certified valuation floor across all scalars.
    std::int64_t min_certified_floor() const {
        std::int64_t m = PadicScalar::kInfValuation;
        visit_scalars([&](const PadicScalar& a) { m = std::min(m, a.valuation()); });
        return m;
    }

    /// Minimum absolute precision across all scalars.
    std::int64_t min_abs_precision() const {
        std::int64_t m = PadicScalar::kInfValuation;
        visit_scalars([&](const PadicScalar& a) { m = std::min(m, a.abs_precision()); });
        return m;
    }

    template <class F>
    void visit_scalars(F&& f) const {
        for (const auto& a : c_) CoeffOps<C>::visit(a, f);
    }

    bool operator==(const Series& o) const { return prof_ == o.prof_ && c_ == o.c_; }

private:
    PrecisionProfile prof_;
    std::vector<C> c_;

    void check(const Series& o) const {
        if (!(prof_ == o.prof_)) throw ConfigError("incompatible series profiles");
    }

    static bool is_zero_coeff(const C& a) { return a.is_zero(); }
    static bool is_exact_zero_coeff(const C& a) { return a.is_exact_zero(); }
    static PadicScalar shift_coeff(const PadicScalar& a, std::int64_t n) { return a.shift(n); }
    static XPoly shift_coeff(const XPoly& a, std::int64_t n) { return a.shift(n); }
};

using PiSeries = Series<PadicScalar>;
using FamilySeries = Series<XPoly>;

/// (1+pi)^e - 1 truncated, via generalized binomials C(e, i).
inline PiSeries binomial_expansion(const PrecisionProfile& prof, const PadicScalar& e) {
    PiSeries r(prof);
    int wp = prof.working_precision();
    for (int i = 1; i < prof.cap_pi; ++i)
        r.set_coeff(i, binomial(e, static_cast<unsigned>(i), wp));
    return r;
}

/// Same, for a known integer exponent: every coefficient is exact.
inline PiSeries binomial_expansion(const PrecisionProfile& prof, const mpz_class& e) {
    if (e < 0) throw ConfigError("binomial_expansion: negative integer exponent");
    PiSeries r(prof);
    int wp = prof.working_precision();
    for (int i = 1; i < prof.cap_pi && i <= e; ++i) {
        mpz_class b;
        mpz_bin_ui(b.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(i));
        r.set_coeff(i, PadicScalar::from_mpz(prof.p, b, wp));
    }
    return r;
}

/// phi(pi) = (1+pi)^p - 1.
inline PiSeries phi_pi(const PrecisionProfile& prof) {
    return binomial_expansion(prof, mpz_class(static_cast<unsigned long>(prof.p)));
}

template <class C>
Series<C> frobenius(const Series<C>& f) {
    return f.compose(phi_pi(f.profile()));
}

/// An element of Gamma, represented by chi(gamma) in Z_p^* together with its
/// substitution action pi -> (1+pi)^{chi} - 1.  Elements constructed from
/// plain integers keep the exact exponent so their expansion coefficients and
/// products stay exact.
class GammaElement {
public:
    GammaElement(const PrecisionProfile& prof, const PadicScalar& chi)
        : prof_(prof), chi_(chi), image_(binomial_expansion(prof, chi)) {
        validate();
    }

    GammaElement(const PrecisionProfile& prof, const mpz_class& chi)
        : prof_(prof),
          chi_(PadicScalar::from_mpz(prof.p, chi, prof.working_precision())),
          exact_chi_(chi),
          image_(binomial_expansion(prof, chi)) {
        validate();
    }

    GammaElement(const PrecisionProfile& prof, std::uint64_t chi)
        : GammaElement(prof, mpz_class(static_cast<unsigned long>(chi))) {}

    const PrecisionProfile& profile() const { return prof_; }
    const PadicScalar& chi() const { return chi_; }
    const PiSeries& pi_image() const { return image_; }

    /// The product gamma*eta (Gamma is abelian; chi is multiplicative).
    GammaElement composed_with(const GammaElement& o) const {
        if (exact_chi_ && o.exact_chi_)
            return GammaElement(prof_, mpz_class(*exact_chi_ * *o.exact_chi_));
        return GammaElement(prof_, chi_ * o.chi_);
    }

    bool is_identity() const {
        auto one = PadicScalar::from_int(prof_.p, 1,
                                         std::max(chi_.rel_precision(), 1));
        return (chi_ - one).is_zero();
    }

    /// Canonical decimal key for maps and JSON (residue of chi).
    std::string key() const { return chi_.unit_part().get_str(); }

private:
    PrecisionProfile prof_;
    PadicScalar chi_;
    std::optional<mpz_class> exact_chi_;
    PiSeries image_;

    void validate() const {
        if (chi_.is_zero() || chi_.valuation() != 0)
            throw ConfigError("chi(gamma) must be a unit of Z_p");
    }
};

template <class C>
Series<C> gamma_act(const GammaElement& g, const Series<C>& f) {
    return f.compose(g.pi_image());
}

/// Membership in the ring R of Prop-style growth: v_p(a_i) + i/(p-1) >= 0
/// for every tracked coefficient (valuation floors are certified bounds).
inline bool in_ring_R(const PiSeries& f) {
    std::int64_t pm1 = static_cast<std::int64_t>(f.profile().p) - 1;
    for (int i = 0; i < f.cap(); ++i) {
        const auto& a = f.coeff(i);
        if (a.is_exact_zero()) continue;
        if (pm1 * a.valuation() + i < 0) return false;
    }
    return true;
}

/// Substitute X := alpha (alpha in pZ_p).
inline PiSeries evaluate_X(const FamilySeries& f, const PadicScalar& alpha) {
    if (!alpha.is_exact_zero() &&
        (alpha.valuation() < 1 || !alpha.integral_certified()))
        throw ConfigError("evaluate_X: alpha must lie in pZ_p");
    PiSeries r(f.profile());
    for (int i = 0; i < f.cap(); ++i) r.set_coeff(i, f.coeff(i).eval(alpha));
    return r;
}

inline FamilySeries embed_family(const PiSeries& f) {
    FamilySeries r(f.profile());
    for (int i = 0; i < f.cap(); ++i)
        r.set_coeff(i, XPoly::constant(f.coeff(i), f.profile().cap_x));
    return r;
}

/// Multiply by the family variable X.
inline FamilySeries mul_by_X(const FamilySeries& f) {
    const auto& prof = f.profile();
    FamilySeries r(prof);
    for (int i = 0; i < f.cap(); ++i) {
        XPoly shifted(prof.p, prof.cap_x);
        for (int d = 0; d + 1 < prof.cap_x; ++d)
            shifted.set_coeff(d + 1, f.coeff(i).coeff(d));
        r.set_coeff(i, shifted);
    }
    return r;
}

/// Coefficient-wise reduction of an integral series mod p.
struct FpSeries {
    std::uint64_t p = 3;
    std::vector<unsigned long> c;
    bool operator==(const FpSeries&) const = default;
};

inline FpSeries reduce_mod_p(const PiSeries& f) {
    FpSeries r;
    r.p = f.profile().p;
    for (int i = 0; i < f.cap(); ++i) {
        const auto& a = f.coeff(i);
        if (a.nonintegral_certified())
            throw CheckError("reduce_mod_p: non-integral input");
        r.c.push_back(a.residue_mod(1).get_ui());
    }
    return r;
}

struct FpFamily {
    std::uint64_t p = 3;
    std::vector<std::vector<unsigned long>> c;  // [pi-order][X-degree]
    bool operator==(const FpFamily&) const = default;
};

inline FpFamily reduce_mod_p(const FamilySeries& f) {
    FpFamily r;
    r.p = f.profile().p;
    for (int i = 0; i < f.cap(); ++i) {
        std::vector<unsigned long> row;
        for (int d = 0; d < f.profile().cap_x; ++d) {
            const auto& a = f.coeff(i).coeff(d);
            if (a.nonintegral_certified())
                throw CheckError("reduce_mod_p: non-integral input");
            row.push_back(a.residue_mod(1).get_ui());
        }
        r.c.push_back(std::move(row));
    }
    return r;
}

}  // namespace wachlab
