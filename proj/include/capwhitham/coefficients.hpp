#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "capwhitham/errors.hpp"
#include "capwhitham/format.hpp"
#include "capwhitham/multi_index.hpp"
#include "capwhitham/polynomial.hpp"
#include "capwhitham/symbol.hpp"

namespace capwhitham {

inline constexpr double resonance_tol = 1e-13;

/// Environment (c, kappa, T, pair) of the multiplier ell.
struct MultiplierContext {
    WaveNumberPair pair;
    double c;
    double kappa;
    double T;
    double speed_offset;  // c - 1, kept separately for accuracy near T = 1/3

    MultiplierContext(WaveNumberPair p, double c_, double kappa_, double T_)
        : MultiplierContext(p, c_, kappa_, T_, c_ - 1.0) {}

    MultiplierContext(WaveNumberPair p, double c_, double kappa_, double T_, double offset)
        : pair(p), c(c_), kappa(kappa_), T(T_), speed_offset(offset) {
        if (!(std::isfinite(c) && c > 0.0 && std::isfinite(kappa) && kappa > 0.0 && std::isfinite(T) &&
              T > 0.0))
            throw DomainError("multiplier context requires c, kappa, T > 0",
                              {{"c", fmt_num(c)}, {"kappa", fmt_num(kappa)}, {"T", fmt_num(T)}});
    }

    static MultiplierContext at(const WaveNumberPair& p, const BifurcationPoint& bp) {
        return MultiplierContext(p, bp.c0, bp.kappa0, bp.T, -bp.speed_deficit);
    }
};

/// ell(k) = 1/(c - m_T(kappa k)), zero on the kernel wavenumbers.
inline double multiplier(const MultiplierContext& ctx, int k) {
    if (ctx.pair.is_kernel(k)) return 0.0;
    const int a = k < 0 ? -k : k;
    const double gap = ctx.speed_offset - symbol_excess(ctx.T, ctx.kappa * a);
    if (!(std::abs(gap) >= resonance_tol)) throw NearResonanceError(k, gap);
    return 1.0 / gap;
}

enum class Endpoint { low, high };  // T -> 0 and T -> 1/3

inline const char* to_string(Endpoint e) { return e == Endpoint::low ? "T->0" : "T->1/3"; }

/// Endpoint limit of ell(n)/ell(k2+1).
inline double limit_ratio(const WaveNumberPair& pair, Endpoint endpoint, int n) {
    const double k1 = pair.k1();
    const double k2 = pair.k2();
    if (n < 0) n = -n;
    if (pair.is_kernel(n))
        throw DomainError("limit ratio undefined on kernel wavenumbers",
                          {{"n", std::to_string(n)}, {"k1", std::to_string(pair.k1())},
                           {"k2", std::to_string(pair.k2())}});
    const double nn = n;
    const double p = k2 + 1.0;
    if (endpoint == Endpoint::low) {
        if (n == 0) return 0.0;
        const double s = std::sqrt(k1 + k2);
        return (s - std::sqrt(k1 * k2 / p + p)) / (s - std::sqrt(k1 * k2 / nn + nn));
    }
    const double sq = k1 * k1 + k2 * k2;
    const double prod = k1 * k1 * k2 * k2;
    return (p * p * sq - prod - p * p * p * p) / (nn * nn * sq - prod - nn * nn * nn * nn);
}

namespace detail {
inline int wavenumber(const WaveNumberPair& pair, MultiIndex a, MultiIndex b) {
    return pair.k1() * (a.a1 - b.a1) + pair.k2() * (a.a2 - b.a2);
}
} // namespace detail

/**
 * Memoised Taylor-Fourier recursion
 *   u_{a,b} = ell(k1(a1-b1) + k2(a2-b2)) * sum_{splits} u_{a',b'} u_{a'',b''}
 * over any value algebra with +=, * and a zero default.
 * One engine is one evaluation session; it is not shared across threads.
 */
template <class Value, class Multiplier>
class CoefficientEngine {
public:
    CoefficientEngine(WaveNumberPair pair, Multiplier ell, Value base)
        : pair_(pair), ell_(std::move(ell)), base_(std::move(base)) {}

    const Value& u(MultiIndex a, MultiIndex b) {
        check(a, b, 1, "coefficient_u");
        if (a.order() + b.order() == 1) return base_;
        const auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Value l = ell_(detail::wavenumber(pair_, key.first, key.second));
        Value value{};
        if (!is_zero(l)) value = l * split_sum(key.first, key.second);
        return memo_.emplace(key, std::move(value)).first->second;
    }

    Value u2(MultiIndex a, MultiIndex b) {
        check(a, b, 2, "coefficient_u2");
        return a <= b ? split_sum(a, b) : split_sum(b, a);
    }

    std::size_t memo_size() const noexcept { return memo_.size(); }
    const WaveNumberPair& pair() const noexcept { return pair_; }

private:
    static void check(MultiIndex a, MultiIndex b, int min_order, const char* what) {
        if (!a.nonnegative() || !b.nonnegative() || a.order() + b.order() < min_order)
            throw DomainError(std::string(what) + ": multi-index order too small or negative",
                              {{"alpha", to_string(a)}, {"beta", to_string(b)}});
    }

    // Sum over splits (a',b') + (a'',b'') = (a,b) with both parts nonzero; each
    // unordered pair of parts is visited once and doubled.
    Value split_sum(MultiIndex a, MultiIndex b) {
        Value acc{};
        for (int p1 = 0; p1 <= a.a1; ++p1)
            for (int p2 = 0; p2 <= a.a2; ++p2)
                for (int q1 = 0; q1 <= b.a1; ++q1)
                    for (int q2 = 0; q2 <= b.a2; ++q2) {
                        const MultiIndex a1{p1, p2}, b1{q1, q2};
                        const MultiIndex a2 = a - a1, b2 = b - b1;
                        if (a1.order() + b1.order() == 0 || a2.order() + b2.order() == 0) continue;
                        const auto first = std::make_pair(a1, b1);
                        const auto second = std::make_pair(a2, b2);
                        if (second < first) continue;
                        Value prod = u(a1, b1) * u(a2, b2);
                        if (first != second) acc += prod;
                        acc += prod;
                    }
        return acc;
    }

    WaveNumberPair pair_;
    Multiplier ell_;
    Value base_;
    std::map<std::pair<MultiIndex, MultiIndex>, Value> memo_;
};

struct NumericMultiplier {
    MultiplierContext ctx;
    double operator()(int k) const { return multiplier(ctx, k); }
};

struct LimitMultiplier {
    WaveNumberPair pair;
    Endpoint endpoint;
    double operator()(int k) const { return pair.is_kernel(k) ? 0.0 : limit_ratio(pair, endpoint, k); }
};

/// Symbolic ell: the monomial ell(|k|), or zero on the kernel.
struct SymbolicMultiplier {
    WaveNumberPair pair;
    bool phi_path = false;  // assert that 0, k1, k2 never occur
    EllPolynomial operator()(int k) const {
        const int a = k < 0 ? -k : k;
        if (phi_path && (a == 0 || pair.is_kernel(a)))
            throw std::logic_error("phi-path purity violated at wavenumber " + std::to_string(a));
        if (pair.is_kernel(a)) return {};
        return EllPolynomial::ell(a);
    }
};

using NumericEngine = CoefficientEngine<double, NumericMultiplier>;
using LimitEngine = CoefficientEngine<double, LimitMultiplier>;
using SymbolicEngine = CoefficientEngine<EllPolynomial, SymbolicMultiplier>;

inline NumericEngine numeric_engine(const MultiplierContext& ctx) {
    return NumericEngine(ctx.pair, NumericMultiplier{ctx}, 0.5);
}

inline LimitEngine limit_engine(const WaveNumberPair& pair, Endpoint e) {
    return LimitEngine(pair, LimitMultiplier{pair, e}, 0.5);
}

/// Engine in integer scaling: computes 2^{|a|+|b|} u_{a,b}.
inline SymbolicEngine symbolic_engine(const WaveNumberPair& pair, bool phi_path = false) {
    return SymbolicEngine(pair, SymbolicMultiplier{pair, phi_path}, EllPolynomial::constant(1));
}

inline double coefficient_u(const MultiplierContext& ctx, MultiIndex a, MultiIndex b) {
    return numeric_engine(ctx).u(a, b);
}

inline double coefficient_u2(const MultiplierContext& ctx, MultiIndex a, MultiIndex b) {
    return numeric_engine(ctx).u2(a, b);
}

/// The multi-indices ((k2-1,0),(0,k1)) of the phi coefficient.
inline std::pair<MultiIndex, MultiIndex> phi_indices(const WaveNumberPair& pair) {
    return {MultiIndex{pair.k2() - 1, 0}, MultiIndex{0, pair.k1()}};
}

struct Monomial {
    std::int64_t coeff;
    Factors factors;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct PhiExpansion {
    WaveNumberPair pair;
    int prefactor_exponent;
    std::vector<Monomial> monomials;

    std::int64_t term_count() const {
        std::int64_t n = 0;
        for (const auto& m : monomials) n += m.coeff;
        return n;
    }
    int factor_count() const { return pair.k1() + pair.k2() - 3; }
};

inline constexpr std::uint64_t symbolic_size_guard = 100000000ULL;

namespace detail {
using u128 = unsigned __int128;
inline constexpr u128 u128_cap = (u128(1) << 120);

inline u128 binomial_capped(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    u128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * u128(n - k + i) / u128(i);
        if (r >= u128_cap) return u128_cap;
    }
    return r;
}
} // namespace detail

/// N = (2s-4)!/((s-2)! k1! (k2-1)!), s = k1+k2; saturates at UINT64_MAX.
inline std::uint64_t phi_term_count(const WaveNumberPair& pair) {
    const int s = pair.k1() + pair.k2();
    const detail::u128 a = detail::binomial_capped(2 * s - 4, s - 2);
    const detail::u128 b = detail::binomial_capped(s - 1, pair.k1());
    if (a >= detail::u128_cap || b >= detail::u128_cap) return std::numeric_limits<std::uint64_t>::max();
    if (a != 0 && b > detail::u128_cap / a) return std::numeric_limits<std::uint64_t>::max();
    const detail::u128 n = a * b / detail::u128(s - 1);
    if (n > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(n);
}

/// Exact grouped monomials of 2^{k1+k2-1} phi(T;k1,k2).
inline PhiExpansion expand_symbolic(const WaveNumberPair& pair) {
    const std::uint64_t n = phi_term_count(pair);
    if (n > symbolic_size_guard)
        throw ResourceError("symbolic expansion exceeds the size guard",
                            {{"k1", std::to_string(pair.k1())},
                             {"k2", std::to_string(pair.k2())},
                             {"N", std::to_string(n)},
                             {"guard", std::to_string(symbolic_size_guard)}});
    auto engine = symbolic_engine(pair, true);
    const auto [alpha, beta] = phi_indices(pair);
    const EllPolynomial poly = engine.u2(alpha, beta);
    PhiExpansion out{pair, pair.k1() + pair.k2() - 1, {}};
    const std::size_t m = static_cast<std::size_t>(out.factor_count());
    out.monomials.reserve(poly.terms().size());
    for (const auto& [factors, coeff] : poly.terms()) {
        if (factors.size() != m) throw std::logic_error("symbolic expansion is not homogeneous");
        out.monomials.push_back({coeff, factors});
    }
    if (static_cast<std::uint64_t>(out.term_count()) != n)
        throw std::logic_error("symbolic expansion weight differs from the closed-form count");
    return out;
}

/// Evaluates 2^{-prefactor} sum coeff prod ell(n) for a user-supplied ell.
template <class Ell>
double evaluate_expansion(const PhiExpansion& e, Ell&& ell) {
    double acc = 0.0;
    for (const auto& mono : e.monomials) {
        double p = static_cast<double>(mono.coeff);
        for (int f : mono.factors) p *= ell(f);
        acc += p;
    }
    return std::ldexp(acc, -e.prefactor_exponent);
}

} // namespace capwhitham
