#pragma once

#include <vector>

#include "padic.hpp"

namespace wachlab {

/// Truncated polynomial in X over PadicScalar, reduced mod X^cap.
/// X is an exact variable: no X-adic precision is ever lost.
class XPoly {
public:
    XPoly() = default;

    XPoly(std::uint64_t p, int cap)
        : p_(p), c_(static_cast<std::size_t>(cap), PadicScalar::exact_zero(p)) {
        if (cap < 1) throw ConfigError("X-cap must be >= 1");
    }

    static XPoly constant(const PadicScalar& a, int cap) {
        XPoly r(a.prime(), cap);
        r.c_[0] = a;
        return r;
    }

    /// The monomial X (zero when cap == 1).
    static XPoly variable(std::uint64_t p, int cap, int rel) {
        XPoly r(p, cap);
        if (cap >= 2) r.c_[1] = PadicScalar::from_int(p, 1, rel);
        return r;
    }

    int cap() const { return static_cast<int>(c_.size()); }
    std::uint64_t prime() const { return p_; }
    const PadicScalar& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
    void set_coeff(int i, const PadicScalar& a) { c_[static_cast<std::size_t>(i)] = a; }

    bool is_zero() const {
        for (const auto& a : c_)
            if (!a.is_zero()) return false;
        return true;
    }

    bool is_exact_zero() const {
        for (const auto& a : c_)
            if (!a.is_exact_zero()) return false;
        return true;
    }

    bool integral_certified() const {
        for (const auto& a : c_)
            if (!a.integral_certified()) return false;
        return true;
    }

    XPoly operator-() const {
        XPoly r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    friend XPoly operator+(const XPoly& x, const XPoly& y) {
        check(x, y);
        XPoly r = x;
        for (int i = 0; i < r.cap(); ++i) r.c_[i] = r.c_[i] + y.c_[i];
        return r;
    }

    friend XPoly operator-(const XPoly& x, const XPoly& y) { return x + (-y); }

    friend XPoly operator*(const XPoly& x, const XPoly& y) {
        check(x, y);
        XPoly r(x.p_, x.cap());
        for (int i = 0; i < x.cap(); ++i) {
            if (x.c_[i].is_exact_zero()) continue;
            for (int j = 0; i + j < y.cap(); ++j) {
                if (y.c_[j].is_exact_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + x.c_[i] * y.c_[j];
            }
        }
        return r;
    }

    friend XPoly operator*(const XPoly& x, const PadicScalar& a) {
        XPoly r = x;
        for (auto& ci : r.c_) ci = ci * a;
        return r;
    }

    /// Inverse mod X^cap; requires an invertible constant term.
    XPoly invert() const {
        const PadicScalar& c0 = c_[0];
        if (c0.is_exact_zero())
            throw CheckError("XPoly::invert: constant term is zero");
        if (c0.is_zero())
            throw PrecisionError("XPoly::invert: constant term known to 0 digits");
        XPoly g(p_, cap());
        g.c_[0] = c0.inverse();
        for (int n = 1; n < cap(); ++n) {
            PadicScalar acc = PadicScalar::exact_zero(p_);
            for (int j = 1; j <= n; ++j) acc = acc + c_[j] * g.c_[n - j];
            g.c_[n] = -(g.c_[0] * acc);
        }
        return g;
    }

    PadicScalar eval(const PadicScalar& alpha) const {
        PadicScalar r = c_[cap() - 1];
        for (int i = cap() - 2; i >= 0; --i) r = r * alpha + c_[i];
        return r;
    }

    /// Exact valuation-shift of every coefficient (multiply by p^n).
    XPoly shift(std::int64_t n) const {
        XPoly r = *this;
        for (auto& a : r.c_) a = a.shift(n);
        return r;
    }

    std::int64_t min_certified_floor() const {
        std::int64_t m = PadicScalar::kInfValuation;
        for (const auto& a : c_) m = std::min(m, a.valuation());
        return m;
    }

    bool operator==(const XPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    template <class F>
    void visit_scalars(F&& f) const {
        for (const auto& a : c_) f(a);
    }

private:
    std::uint64_t p_ = 3;
    std::vector<PadicScalar> c_;

    static void check(const XPoly& x, const XPoly& y) {
        if (x.p_ != y.p_ || x.cap() != y.cap())
            throw ConfigError("incompatible X-polynomials");
    }
};

}  // namespace wachlab
