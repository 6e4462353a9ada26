#pragma once

#include <stdexcept>
#include <utility>

#include "silkswap/invariant.hpp"
#include "silkswap/solver.hpp"

namespace silkswap {

/// Engine-domain failures: draining trades, insufficient balances.
struct PoolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SwapDirection { y_in_x_out, x_in_y_out };
enum class StartingPoint { two_am, two_gm };

inline const char* to_string(SwapDirection d) {
    return d == SwapDirection::y_in_x_out ? "y_in_x_out" : "x_in_y_out";
}

/// Two-token pool. Immutable value; every operation returns a new state.
/// After any committed operation the balances satisfy the invariant
/// (the fee part of a swap sits on top of the curve until the next D
/// recompute) and 2GM <= d <= 2AM holds within solver tolerance.
template <typename T>
struct PoolStateT {
    T x;
    T y;
    T d;
    PoolParamsT<T> params;
    OraclePricesT<T> prices;
    T fee_rate = Num<T>::zero();
};

template <typename T>
struct SwapQuoteT {
    SwapDirection direction = SwapDirection::y_in_x_out;
    T amount_in;
    T fee_amount;
    T amount_out;
    /// Spot price of token Y (units of X per Y) before/after the trade.
    T spot_price_before;
    T spot_price_after;
    /// |P_after - P_before| / P_before.
    T price_impact;
    int iterations = 0;
    SolveMethod method_used = SolveMethod::newton_then_bisection;
};

using PoolState = PoolStateT<double>;
using SwapQuote = SwapQuoteT<double>;

// ------------------------------------------------------------------
// D computation. At exact equilibrium (p*y == x) D = x + p*y directly.
// Otherwise the root of F(D) on [2GM, 2AM] is found by the requested
// method. Newton/Halley start from 2AM by default and measure steps
// relative to the pool scale x + p*y; bisection treats the tolerance
// as an absolute width on D.
// ------------------------------------------------------------------
template <typename T>
RootResult<T> compute_d(const T& x, const T& y, const OraclePricesT<T>& prices,
                        const PoolParamsT<T>& params, SolveMethod method,
                        const RootConfig<T>& cfg,
                        StartingPoint start = StartingPoint::two_am) {
    if (!(x > Num<T>::zero()) || !(y > Num<T>::zero())) {
        throw std::invalid_argument("compute_d: balances must be positive");
    }
    const T py = prices.conversion * y;
    if (py == x) {
        return RootResult<T>{x + py, 0, SolveStatus::converged, method};
    }
    const T two_am = x + py;
    const T two_gm = Num<T>::from_int(2) * Num<T>::sqrt(x * py);

    const PointT<T> pt{x, y};
    auto f = [&](const T& d) { return invariant_f(pt, d, prices, params); };
    auto df = [&](const T& d) { return df_dD(pt, d, prices, params); };
    auto d2f = [&](const T& d) { return d2f_dD2(pt, d, prices, params); };

    RootConfig<T> scaled_cfg = cfg;
    scaled_cfg.tolerance = cfg.tolerance * two_am;
    const T x0 = start == StartingPoint::two_am ? two_am : two_gm;

    switch (method) {
        case SolveMethod::newton:
            return newton(f, df, x0, scaled_cfg);
        case SolveMethod::halley:
            return halley(f, df, d2f, x0, scaled_cfg);
        case SolveMethod::bisection:
            return bisection(f, two_gm, two_am, cfg);
        case SolveMethod::newton_then_bisection: {
            RootResult<T> first;
            bool threw = false;
            try {
                first = newton(f, df, x0, scaled_cfg);
            } catch (const std::overflow_error&) {
                threw = true;
                first.iterations = 0;
            }
            if (!threw && first.converged() && two_gm <= first.root && first.root <= two_am) {
                return first;
            }
            RootResult<T> second = bisection(f, two_gm, two_am, cfg);
            second.method_used = SolveMethod::newton_then_bisection;
            second.iterations += first.iterations;
            return second;
        }
    }
    throw std::logic_error("compute_d: unknown method");
}

template <typename T>
PoolStateT<T> make_pool(const T& x, const T& y, const PoolParamsT<T>& params,
                        const OraclePricesT<T>& prices, const T& fee_rate,
                        const RootConfig<T>& cfg) {
    params.validate();
    if (Num<T>::is_negative(fee_rate) || !(fee_rate < Num<T>::one())) {
        throw std::invalid_argument("make_pool: fee_rate must lie in [0, 1)");
    }
    const auto r = compute_d(x, y, prices, params, SolveMethod::newton_then_bisection, cfg);
    if (!r.converged()) throw SolverError("make_pool: D solve failed");
    return PoolStateT<T>{x, y, r.root, params, prices, fee_rate};
}

/// Scaled residual of the committed state; ~0 for a consistent pool.
template <typename T>
T pool_residual(const PoolStateT<T>& pool) {
    return scaled_f(to_scaled(PointT<T>{pool.x, pool.y}, pool.d, pool.prices), pool.params);
}

template <typename T>
T fraction_x(const PoolStateT<T>& pool) {
    const T py = pool.prices.conversion * pool.y;
    return pool.x / (pool.x + py);
}

template <typename T>
T fraction_y(const PoolStateT<T>& pool) {
    return Num<T>::one() - fraction_x(pool);
}

// ------------------------------------------------------------------
// Swap quoting. The input amount is charged the fee up front; the net
// amount moves the input-side coordinate and the output side is solved
// on the scaled curve with D fixed, bracketed by [0, pre-swap scaled
// output balance] and started from the pre-swap value.
// ------------------------------------------------------------------
template <typename T>
SwapQuoteT<T> quote_swap(const PoolStateT<T>& pool, SwapDirection direction, const T& amount_in,
                         const RootConfig<T>& cfg,
                         SolveMethod method = SolveMethod::newton_then_bisection) {
    if (Num<T>::is_negative(amount_in)) {
        throw std::invalid_argument("quote_swap: amount_in must be non-negative");
    }
    const T p = pool.prices.conversion;
    const ScaledPointT<T> before{pool.x / pool.d, p * pool.y / pool.d};
    const T price_before = price_y_scaled(before, pool.params, p);

    SwapQuoteT<T> q;
    q.direction = direction;
    q.amount_in = amount_in;
    q.spot_price_before = price_before;
    q.method_used = method;
    if (amount_in == Num<T>::zero()) {
        q.fee_amount = Num<T>::zero();
        q.amount_out = Num<T>::zero();
        q.spot_price_after = price_before;
        q.price_impact = Num<T>::zero();
        q.iterations = 0;
        return q;
    }

    q.fee_amount = amount_in * pool.fee_rate;
    const T net_in = amount_in - q.fee_amount;

    // fixed input-side coordinate after the deposit, and the pre-swap
    // output-side coordinate that brackets the solve
    T in_fixed, out_pre;
    if (direction == SwapDirection::y_in_x_out) {
        in_fixed = p * (pool.y + net_in) / pool.d;
        out_pre = before.x;
    } else {
        in_fixed = (pool.x + net_in) / pool.d;
        out_pre = before.z;
    }

    const bool solve_x = direction == SwapDirection::y_in_x_out;
    auto point_at = [&](const T& o) {
        return solve_x ? ScaledPointT<T>{o, in_fixed} : ScaledPointT<T>{in_fixed, o};
    };
    auto f = [&](const T& o) { return scaled_f(point_at(o), pool.params); };
    auto df = [&](const T& o) {
        return solve_x ? dscaled_dx(point_at(o), pool.params) : dscaled_dz(point_at(o), pool.params);
    };
    auto d2f = [&](const T& o) {
        return solve_x ? d2scaled_dx2(point_at(o), pool.params)
                       : d2scaled_dz2(point_at(o), pool.params);
    };

    RootResult<T> r;
    switch (method) {
        case SolveMethod::newton:
            r = newton(f, df, out_pre, cfg);
            break;
        case SolveMethod::halley:
            r = halley(f, df, d2f, out_pre, cfg);
            break;
        case SolveMethod::bisection:
            r = bisection(f, Num<T>::zero(), out_pre, cfg);
            break;
        case SolveMethod::newton_then_bisection:
            r = solve_with_fallback(f, df, out_pre, Num<T>::zero(), out_pre, cfg);
            break;
    }
    if (!r.converged()) {
        throw SolverError(std::string("quote_swap: solve failed (") + to_string(r.status) + ")");
    }
    if (!(r.root > cfg.tolerance)) {
        throw PoolError("quote_swap: trade would exhaust the output side of the pool");
    }

    const T out_scaled = out_pre - r.root;
    q.amount_out = solve_x ? pool.d * out_scaled : pool.d * out_scaled / p;
    q.iterations = r.iterations;
    q.method_used = r.method_used;

    const ScaledPointT<T> after = point_at(r.root);
    q.spot_price_after = price_y_scaled(after, pool.params, p);
    q.price_impact = Num<T>::abs(q.spot_price_after - price_before) / price_before;
    return q;
}

/// Commits a quoted swap. D is unchanged; the fee stays in the pool's
/// input-token balance. A failed quote throws before any state is built.
template <typename T>
std::pair<PoolStateT<T>, SwapQuoteT<T>> execute_swap(
    const PoolStateT<T>& pool, SwapDirection direction, const T& amount_in,
    const RootConfig<T>& cfg, SolveMethod method = SolveMethod::newton_then_bisection) {
    const SwapQuoteT<T> q = quote_swap(pool, direction, amount_in, cfg, method);
    PoolStateT<T> next = pool;
    if (direction == SwapDirection::y_in_x_out) {
        next.y = pool.y + amount_in;
        next.x = pool.x - q.amount_out;
    } else {
        next.x = pool.x + amount_in;
        next.y = pool.y - q.amount_out;
    }
    if (!(next.x > Num<T>::zero()) || !(next.y > Num<T>::zero())) {
        throw PoolError("execute_swap: balances must stay positive");
    }
    return {next, q};
}

// ------------------------------------------------------------------
// Liquidity changes and oracle updates recompute D (swaps never do).
// ------------------------------------------------------------------

template <typename T>
PoolStateT<T> deposit(const PoolStateT<T>& pool, const T& dx, const T& dy,
                      const RootConfig<T>& cfg) {
    if (Num<T>::is_negative(dx) || Num<T>::is_negative(dy)) {
        throw std::invalid_argument("deposit: amounts must be non-negative");
    }
    PoolStateT<T> next = pool;
    next.x = pool.x + dx;
    next.y = pool.y + dy;
    const auto r =
        compute_d(next.x, next.y, next.prices, next.params, SolveMethod::newton_then_bisection, cfg);
    if (!r.converged()) throw SolverError("deposit: D solve failed");
    next.d = r.root;
    return next;
}

template <typename T>
PoolStateT<T> withdraw(const PoolStateT<T>& pool, const T& dx, const T& dy,
                       const RootConfig<T>& cfg) {
    if (Num<T>::is_negative(dx) || Num<T>::is_negative(dy)) {
        throw std::invalid_argument("withdraw: amounts must be non-negative");
    }
    if (!(dx < pool.x) || !(dy < pool.y)) {
        throw PoolError("withdraw: insufficient balance");
    }
    PoolStateT<T> next = pool;
    next.x = pool.x - dx;
    next.y = pool.y - dy;
    const auto r =
        compute_d(next.x, next.y, next.prices, next.params, SolveMethod::newton_then_bisection, cfg);
    if (!r.converged()) throw SolverError("withdraw: D solve failed");
    next.d = r.root;
    return next;
}

/// Updates oracle prices and re-solves D under the new conversion
/// factor, keeping the balances on the curve. Identical prices leave
/// D untouched.
template <typename T>
PoolStateT<T> set_oracle_prices(const PoolStateT<T>& pool, const T& price_x, const T& price_y,
                                const RootConfig<T>& cfg) {
    const auto prices = OraclePricesT<T>::make(price_x, price_y);
    PoolStateT<T> next = pool;
    next.prices = prices;
    if (prices.conversion == pool.prices.conversion) {
        return next;
    }
    const auto r =
        compute_d(next.x, next.y, next.prices, next.params, SolveMethod::newton_then_bisection, cfg);
    if (!r.converged()) throw SolverError("set_oracle_prices: D solve failed");
    next.d = r.root;
    return next;
}

}  // namespace silkswap
