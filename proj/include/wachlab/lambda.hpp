#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "series.hpp"

namespace wachlab {

/// q = phi(pi)/pi, the degree-(p-1) polynomial with q(0) = p.
inline PiSeries q_series(const PrecisionProfile& prof) {
    return phi_pi(prof).unshift_pi(1);
}

/// q_n = phi^{n-1}(q), n >= 1.
inline PiSeries q_n(const PrecisionProfile& prof, int n) {
    if (n < 1) throw ConfigError("q_n: n must be >= 1");
    PiSeries q = q_series(prof);
    PiSeries phi = phi_pi(prof);
    for (int i = 1; i < n; ++i) q = q.compose(phi);
    return q;
}

/// The two infinite products
///
///   lambda_plus  = prod_{n>=0} q_{2n+2}/p,   lambda_minus = prod_{n>=0} q_{2n+1}/p,
///
/// truncated once a factor is 1 across the whole precision window (the
/// truncation is self-certifying: the next factor is checked to be 1 too).
struct LambdaPair {
    PiSeries plus, minus;
    int factors_used = 0;
};

namespace detail {

inline LambdaPair compute_lambda_pair(const PrecisionProfile& prof) {
    PiSeries phi = phi_pi(prof);
    PiSeries one = PiSeries::one(prof);
    LambdaPair out{one, one, 0};

    PiSeries qn = q_series(prof);  // q_1
    int budget = 8 * (prof.working_precision() + prof.cap_pi) + 32;
    // Stop once a factor is 1 mod (p^wp, pi^cap_pi): the omitted tail then
    // perturbs lambda at pi-order n by at most O(p^{wp - n/(p-1)}), which is
    // exactly the precision the bookkeeping claims.
    std::int64_t wp = prof.working_precision();
    bool stabilized = false;
    for (int n = 1; n <= budget; ++n) {
        PiSeries factor = qn.shift_p(-1);  // q_n / p
        if ((factor - one).zero_mod_p(wp)) {
            // the next factor must be 1 as well, so both parities (and the
            // omitted tail) are covered
            PiSeries next = qn.compose(phi).shift_p(-1);
            if (!(next - one).zero_mod_p(wp))
                throw CheckError("lambda products: stabilization not monotone");
            out.factors_used = n - 1;
            stabilized = true;
            break;
        }
        if (n % 2 == 1)
            out.minus = out.minus * factor;
        else
            out.plus = out.plus * factor;
        qn = qn.compose(phi);
    }
    if (!stabilized)
        throw PrecisionError("lambda products did not stabilize within the factor budget");

    require((out.plus.coeff(0) - PadicScalar::from_int(prof.p, 1, prof.working_precision())).is_zero(),
            "lambda_plus(0) != 1");
    require((out.minus.coeff(0) - PadicScalar::from_int(prof.p, 1, prof.working_precision())).is_zero(),
            "lambda_minus(0) != 1");
    // both products live in the ring R; fail loudly if the envelope is exceeded
    require(in_ring_R(out.plus), "lambda_plus escaped the ring R envelope");
    require(in_ring_R(out.minus), "lambda_minus escaped the ring R envelope");
    return out;
}

}  // namespace detail

/// Cached accessor; the pair is computed once per (p, cap_p, cap_pi) and
/// shared.  The cache behaves as a write-once map.
inline LambdaPair lambda_for(const PrecisionProfile& prof) {
    using Key = std::tuple<std::uint64_t, int, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const LambdaPair>> cache;

    Key key{prof.p, prof.cap_p, prof.cap_pi};
    std::shared_ptr<const LambdaPair> hit;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) hit = it->second;
    }
    if (!hit) {
        PrecisionProfile canonical(prof.p, prof.cap_p, prof.cap_pi, 1);
        auto computed = std::make_shared<const LambdaPair>(
            detail::compute_lambda_pair(canonical));
        std::lock_guard<std::mutex> lock(mu);
        auto [it, inserted] = cache.emplace(key, computed);
        hit = it->second;
    }
    return LambdaPair{hit->plus.with_profile(prof), hit->minus.with_profile(prof),
                      hit->factors_used};
}

/// lambda / gamma(lambda); certified to lie in 1 + pi Z_p[[pi]].
inline PiSeries ratio_gamma(const PiSeries& lam, const GammaElement& g) {
    PiSeries ratio = lam * gamma_act(g, lam).invert_unit();
    const auto& prof = lam.profile();
    auto c0 = ratio.coeff(0) - PadicScalar::from_int(prof.p, 1, prof.working_precision());
    require(c0.is_zero(), "lambda ratio: constant term != 1");
    require(ratio.integral_certified(), "lambda ratio escaped 1 + pi Z_p[[pi]]");
    return ratio;
}

/// z = p^m (lambda_-/lambda_+)^{k-1} truncated below pi^{k-1}, when integral.
struct ZData {
    int k = 2;
    int m = 0;
    PiSeries z;           // polynomial of degree <= k-2 (exact zeros above)
    PiSeries full_ratio;  // p^m (lambda_-/lambda_+)^{k-1}, full window
};

/// Succeeds iff z_0..z_{k-2} are integral at the tracked precision; a
/// certified non-integral coefficient is a normal failure (nullopt) and
/// drives minimal_m.
inline std::optional<ZData> compute_z(const PrecisionProfile& prof,
                                      const LambdaPair& lambda, int k, int m) {
    if (k < 2) throw ConfigError("compute_z: k must be >= 2");
    if (m < 0) throw ConfigError("compute_z: m must be >= 0");
    if (prof.cap_pi < k - 1) throw ConfigError("compute_z: cap_pi < k-1");
    if (!(lambda.plus.profile() == prof))
        throw ConfigError("compute_z: lambda pair carries a different profile");

    PiSeries ratio = lambda.minus * lambda.plus.invert_unit();
    require(in_ring_R(ratio), "lambda_-/lambda_+ escaped the ring R envelope");
    PiSeries powed = ratio.pow(static_cast<unsigned>(k - 1));
    // v_p(z_i) + i/(p-1) >= m coefficient-wise (R-membership before the p^m shift)
    require(in_ring_R(powed), "(lambda_-/lambda_+)^{k-1} escaped the ring R envelope");
    PiSeries full = powed.shift_p(m);

    ZData out;
    out.k = k;
    out.m = m;
    out.full_ratio = full;
    out.z = PiSeries(prof);
    for (int i = 0; i <= k - 2; ++i) {
        const auto& zi = full.coeff(i);
        if (zi.nonintegral_certified()) return std::nullopt;
        if (!zi.integral_certified())
            throw PrecisionError("compute_z: integrality of z_" + std::to_string(i) +
                                 " undecidable at tracked precision");
        out.z.set_coeff(i, zi);
    }
    return out;
}

/// Smallest m >= 0 making compute_z succeed; bounded by floor((k-2)/(p-1)).
inline int minimal_m(const PrecisionProfile& prof, const LambdaPair& lambda, int k) {
    int bound = (k - 2) / (static_cast<int>(prof.p) - 1);
    for (int m = 0; m <= bound; ++m)
        if (compute_z(prof, lambda, k, m)) return m;
    throw CheckError("minimal_m: no admissible m up to floor((k-2)/(p-1))");
}

/// floor((k-2)/(p-1)), the family's denominator-clearing exponent.
inline int family_m(const PrecisionProfile& prof, int k) {
    return (k - 2) / (static_cast<int>(prof.p) - 1);
}

}  // namespace wachlab
