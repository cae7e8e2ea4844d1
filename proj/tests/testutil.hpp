#pragma once

// Shared deterministic generators for the property-style tests.

#include <random>

#include <wachlab/padic.hpp>
#include <wachlab/series.hpp>

namespace testutil {

using wachlab::PadicScalar;
using wachlab::PrecisionProfile;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Random nonzero unit-part scalar with valuation in [lo, hi].
inline PadicScalar random_scalar(std::mt19937_64& g, std::uint64_t p, int rel,
                                 int lo = -4, int hi = 6) {
    std::uniform_int_distribution<int> vd(lo, hi);
    std::uniform_int_distribution<std::uint64_t> ud(1, 1'000'000'007ULL);
    std::uint64_t u = ud(g);
    while (u % p == 0) ++u;
    return PadicScalar::from_mpz(p, mpz_class(static_cast<unsigned long>(u)), rel)
        .shift(vd(g));
}

/// Random integral scalar (valuation >= 0), occasionally zero.
inline PadicScalar random_integer(std::mt19937_64& g, std::uint64_t p, int rel) {
    std::uniform_int_distribution<int> zd(0, 9);
    if (zd(g) == 0) return PadicScalar::exact_zero(p);
    return random_scalar(g, p, rel, 0, 5);
}

inline bool eq_at_precision(const PadicScalar& a, const PadicScalar& b) {
    return (a - b).is_zero();
}

template <class C>
bool eq_at_precision(const wachlab::Series<C>& a, const wachlab::Series<C>& b) {
    return (a - b).is_zero();
}

/// Agreement mod p^w across the whole pi-window (for comparing two
/// independently truncated computations of the same object).
template <class C>
bool eq_mod_p(const wachlab::Series<C>& a, const wachlab::Series<C>& b,
              std::int64_t w) {
    return (a - b).zero_mod_p(w);
}

inline wachlab::PiSeries random_pi_series(std::mt19937_64& g,
                                          const PrecisionProfile& prof,
                                          int lo = 0, int hi = 4) {
    wachlab::PiSeries r(prof);
    std::uniform_int_distribution<int> zd(0, 5);
    for (int i = 0; i < prof.cap_pi; ++i) {
        if (zd(g) == 0) continue;  // leave exact zeros in
        r.set_coeff(i, random_scalar(g, prof.p, prof.working_precision(), lo, hi));
    }
    return r;
}

/// Random element of the ring R: v_p(a_i) >= -i/(p-1).
inline wachlab::PiSeries random_ring_R(std::mt19937_64& g,
                                       const PrecisionProfile& prof) {
    wachlab::PiSeries r(prof);
    std::uniform_int_distribution<int> zd(0, 5);
    for (int i = 0; i < prof.cap_pi; ++i) {
        if (zd(g) == 0) continue;
        int floor = -(i / (static_cast<int>(prof.p) - 1));
        std::uniform_int_distribution<int> vd(floor, 3);
        r.set_coeff(i, random_scalar(g, prof.p, prof.working_precision(), 0, 0)
                           .shift(vd(g)));
    }
    return r;
}

inline wachlab::FamilySeries random_family(std::mt19937_64& g,
                                           const PrecisionProfile& prof,
                                           int lo = 0, int hi = 4) {
    wachlab::FamilySeries r(prof);
    std::uniform_int_distribution<int> zd(0, 4);
    for (int i = 0; i < prof.cap_pi; ++i) {
        wachlab::XPoly c(prof.p, prof.cap_x);
        for (int d = 0; d < prof.cap_x; ++d) {
            if (zd(g) == 0) continue;
            c.set_coeff(d, random_scalar(g, prof.p, prof.working_precision(), lo, hi));
        }
        r.set_coeff(i, c);
    }
    return r;
}

}  // namespace testutil
