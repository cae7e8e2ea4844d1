#pragma once

#include "series.hpp"

namespace wachlab {

/// Row-major 2x2 matrix over a series or coefficient ring.
template <class S>
struct Mat2 {
    S a, b, c, d;  // [[a, b], [c, d]]

    Mat2() = default;
    Mat2(S a_, S b_, S c_, S d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    S det() const { return a * d - b * c; }
    Mat2 adjugate() const { return Mat2(d, -b, -c, a); }

    Mat2 operator-() const { return Mat2(-a, -b, -c, -d); }

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return Mat2(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return Mat2(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                    x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }

    bool is_zero() const {
        return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
    }

    bool operator==(const Mat2&) const = default;

    template <class F>
    auto map(F&& f) const -> Mat2<decltype(f(a))> {
        return {f(a), f(b), f(c), f(d)};
    }
};

template <class C>
Mat2<Series<C>> mat_identity(const PrecisionProfile& prof) {
    return {Series<C>::one(prof), Series<C>(prof), Series<C>(prof), Series<C>::one(prof)};
}

/// Matrix product with all series products truncated below pi-order n.
template <class C>
Mat2<Series<C>> mat_mul_trunc(const Mat2<Series<C>>& x, const Mat2<Series<C>>& y, int n) {
    auto m = [&](const Series<C>& u, const Series<C>& v) { return u.mul_with(v, n); };
    return {m(x.a, y.a) + m(x.b, y.c), m(x.a, y.b) + m(x.b, y.d),
            m(x.c, y.a) + m(x.d, y.c), m(x.c, y.b) + m(x.d, y.d)};
}

/// Family matrix times a pi-constant matrix (and the reverse order).
inline Mat2<FamilySeries> mat_mul_const(const Mat2<FamilySeries>& x, const Mat2<XPoly>& h) {
    auto m = [](const FamilySeries& u, const XPoly& v) { return u.scale_coeff(v); };
    return {m(x.a, h.a) + m(x.b, h.c), m(x.a, h.b) + m(x.b, h.d),
            m(x.c, h.a) + m(x.d, h.c), m(x.c, h.b) + m(x.d, h.d)};
}

inline Mat2<FamilySeries> mat_mul_const(const Mat2<XPoly>& h, const Mat2<FamilySeries>& x) {
    auto m = [](const FamilySeries& u, const XPoly& v) { return u.scale_coeff(v); };
    return {m(x.a, h.a) + m(x.c, h.b), m(x.b, h.a) + m(x.d, h.b),
            m(x.a, h.c) + m(x.c, h.d), m(x.b, h.c) + m(x.d, h.d)};
}

template <class C>
Mat2<Series<C>> frobenius(const Mat2<Series<C>>& m) {
    auto g = phi_pi(m.a.profile());
    return m.map([&](const Series<C>& s) { return s.compose(g); });
}

template <class C>
Mat2<Series<C>> gamma_act(const GammaElement& g, const Mat2<Series<C>>& m) {
    return m.map([&](const Series<C>& s) { return s.compose(g.pi_image()); });
}

inline Mat2<PiSeries> evaluate_X(const Mat2<FamilySeries>& m, const PadicScalar& alpha) {
    return m.map([&](const FamilySeries& s) { return evaluate_X(s, alpha); });
}

inline Mat2<FamilySeries> embed_family(const Mat2<PiSeries>& m) {
    return m.map([](const PiSeries& s) { return embed_family(s); });
}

inline Mat2<XPoly> slice_pi(const Mat2<FamilySeries>& m, int l) {
    return m.map([&](const FamilySeries& s) { return s.coeff(l); });
}

inline Mat2<PadicScalar> slice_pi(const Mat2<PiSeries>& m, int l) {
    return m.map([&](const PiSeries& s) { return s.coeff(l); });
}

/// Smallest pi-order at which some entry has a tracked nonzero coefficient.
template <class C>
int mat_low_order(const Mat2<Series<C>>& m) {
    return std::min(std::min(m.a.low_order(), m.b.low_order()),
                    std::min(m.c.low_order(), m.d.low_order()));
}

template <class C>
std::int64_t mat_min_floor(const Mat2<Series<C>>& m) {
    return std::min(std::min(m.a.min_certified_floor(), m.b.min_certified_floor()),
                    std::min(m.c.min_certified_floor(), m.d.min_certified_floor()));
}

template <class C>
bool mat_integral(const Mat2<Series<C>>& m) {
    return m.a.integral_certified() && m.b.integral_certified() &&
           m.c.integral_certified() && m.d.integral_certified();
}

}  // namespace wachlab
