#include <doctest.h>

#include <cmath>
#include <vector>

#include "silkswap/curve.hpp"
#include "silkswap/pool.hpp"
#include "support.hpp"

using namespace silkswap;
using SD = SignedDecimal;

namespace {

RootConfig<double> cfg16() { return default_root_config<double>(); }
RootConfig<SD> cfg16_fixed() { return default_root_config<SD>(); }

PoolState pool_of(double x, double y, double a, unsigned g1, unsigned g2, double p = 1.0,
                  double fee = 0.0) {
    const auto prices = OraclePrices::make(1.0, p);
    return make_pool(x, y, PoolParams{a, g1, g2}, prices, fee, cfg16());
}

PoolStateT<SD> fixed_pool_of(const char* x, const char* y, const char* a, unsigned g1, unsigned g2,
                             const char* p = "1", const char* fee = "0") {
    const auto prices = OraclePricesT<SD>::make(SD::from_int(1), SD::parse(p));
    return make_pool(SD::parse(x), SD::parse(y), PoolParamsT<SD>{SD::parse(a), g1, g2}, prices,
                     SD::parse(fee), cfg16_fixed());
}

}  // namespace

TEST_CASE("compute_d at exact equilibrium is direct") {
    const auto prices = OraclePrices::unit();
    const auto r = compute_d(1000.0, 1000.0, prices, PoolParams{100.0, 8, 8},
                             SolveMethod::newton, cfg16());
    CHECK(r.converged());
    CHECK(r.iterations == 0);
    CHECK(r.root == 2000.0);
}

TEST_CASE("D solve iteration counts, float backend") {
    const auto prices = OraclePrices::unit();
    const PoolParams params{100.0, 8, 8};

    struct Row {
        double x, y;
        SolveMethod m;
        StartingPoint s;
        int want;
    };
    // expected counts with +-1 slack on the stopping rule
    const std::vector<Row> rows = {
        {2000.0, 1000.0, SolveMethod::newton, StartingPoint::two_am, 4},
        {2000.0, 1000.0, SolveMethod::newton, StartingPoint::two_gm, 8},
        {2000.0, 1000.0, SolveMethod::halley, StartingPoint::two_am, 2},
        {2000.0, 1000.0, SolveMethod::halley, StartingPoint::two_gm, 5},
        {200000.0, 100000.0, SolveMethod::newton, StartingPoint::two_am, 4},
        {200000.0, 100000.0, SolveMethod::newton, StartingPoint::two_gm, 7},
        {200000.0, 100000.0, SolveMethod::halley, StartingPoint::two_am, 3},
        {200000.0, 100000.0, SolveMethod::halley, StartingPoint::two_gm, 5},
    };
    for (const auto& row : rows) {
        CAPTURE(row.x);
        CAPTURE(static_cast<int>(row.m));
        const auto r = compute_d(row.x, row.y, prices, params, row.m, cfg16(), row.s);
        CHECK(r.converged());
        CHECK(std::abs(r.iterations - row.want) <= 1);
    }
}

TEST_CASE("D solve iteration counts, fixed backend") {
    const auto prices = OraclePricesT<SD>::unit();
    const PoolParamsT<SD> params{SD::from_int(100), 8, 8};
    const auto cfg = cfg16_fixed();

    struct Row {
        long long x, y;
        SolveMethod m;
        StartingPoint s;
        int want;
    };
    const std::vector<Row> rows = {
        {2000, 1000, SolveMethod::newton, StartingPoint::two_am, 4},
        {2000, 1000, SolveMethod::newton, StartingPoint::two_gm, 8},
        {2000, 1000, SolveMethod::halley, StartingPoint::two_am, 2},
        {2000, 1000, SolveMethod::halley, StartingPoint::two_gm, 5},
        {200000, 100000, SolveMethod::newton, StartingPoint::two_am, 4},
        {200000, 100000, SolveMethod::newton, StartingPoint::two_gm, 7},
        {200000, 100000, SolveMethod::halley, StartingPoint::two_am, 3},
        {200000, 100000, SolveMethod::halley, StartingPoint::two_gm, 5},
    };
    for (const auto& row : rows) {
        CAPTURE(row.x);
        const auto r = compute_d(SD::from_int(row.x), SD::from_int(row.y), prices, params, row.m,
                                 cfg, row.s);
        CHECK(r.converged());
        CHECK(std::abs(r.iterations - row.want) <= 1);
    }

    SUBCASE("bisection halving counts match the closed form") {
        const auto r1 = compute_d(SD::from_int(2000), SD::from_int(1000), prices, params,
                                  SolveMethod::bisection, cfg);
        const double w1 = 3000.0 - 2.0 * std::sqrt(2000.0 * 1000.0);
        CHECK(r1.converged());
        CHECK(r1.iterations == bisection_iteration_bound(w1, 1e-16));

        const auto r2 = compute_d(SD::from_int(200000), SD::from_int(100000), prices, params,
                                  SolveMethod::bisection, cfg);
        const double w2 = 300000.0 - 2.0 * std::sqrt(200000.0 * 100000.0);
        CHECK(r2.converged());
        CHECK(r2.iterations == bisection_iteration_bound(w2, 1e-16));
    }
}

TEST_CASE("newton and halley agree on the solved D") {
    const auto prices = OraclePrices::unit();
    const PoolParams params{100.0, 8, 8};
    const auto rn = compute_d(2000.0, 1000.0, prices, params, SolveMethod::newton, cfg16());
    const auto rh = compute_d(2000.0, 1000.0, prices, params, SolveMethod::halley, cfg16());
    CHECK(rn.converged());
    CHECK(rh.converged());
    CHECK(std::abs(rn.root - rh.root) <= 10.0 * 1e-16 * 3000.0);
}

TEST_CASE("compute_d is scale equivariant") {
    const auto prices = OraclePrices::make(1.0, 1.2);
    const PoolParams params{55.0, 3, 7};
    const double d0 =
        compute_d(900.0, 1400.0, prices, params, SolveMethod::newton_then_bisection, cfg16()).root;
    for (double c : {1e-3, 10.0, 1e6}) {
        const double dc =
            compute_d(c * 900.0, c * 1400.0, prices, params, SolveMethod::newton_then_bisection,
                      cfg16())
                .root;
        CHECK(testutil::rel_err(dc, c * d0) < 1e-12);
    }
}

TEST_CASE("D respects the mean bounds on random pools") {
    testutil::Rng rng(911);
    for (int i = 0; i < 200; ++i) {
        const double scale = testutil::log_uniform(rng, 1.0, 1e9);
        const double x = scale * testutil::uniform(rng, 0.2, 1.0);
        const double y = scale * testutil::uniform(rng, 0.2, 1.0);
        const double p = testutil::uniform(rng, 0.5, 2.0);
        const auto prices = OraclePrices::make(1.0, p);
        const PoolParams params{testutil::log_uniform(rng, 1.0, 1e4),
                                static_cast<unsigned>(testutil::uniform_int(rng, 1, 20)),
                                static_cast<unsigned>(testutil::uniform_int(rng, 1, 20))};
        const auto r =
            compute_d(x, y, prices, params, SolveMethod::newton_then_bisection, cfg16());
        REQUIRE(r.converged());
        const double py = p * y;
        const double slack = 1e-9 * (x + py);
        CHECK(r.root >= 2.0 * std::sqrt(x * py) - slack);
        CHECK(r.root <= x + py + slack);
    }
}

TEST_CASE("near-equilibrium swap returns slightly less than deposited") {
    const auto pool = pool_of(1000.0, 1000.0, 100.0, 8, 8);
    const auto q = quote_swap(pool, SwapDirection::y_in_x_out, 1.0, cfg16(),
                              SolveMethod::bisection);
    CHECK(q.amount_out < 1.0);
    CHECK(1.0 - q.amount_out > 0.0);
    CHECK(1.0 - q.amount_out < 1e-3);
    CHECK(q.fee_amount == 0.0);
    CHECK(q.spot_price_before == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.price_impact < 1e-3);

    SUBCASE("newton path agrees with the bisection oracle") {
        const auto qn =
            quote_swap(pool, SwapDirection::y_in_x_out, 1.0, cfg16(), SolveMethod::newton);
        CHECK(qn.amount_out == doctest::Approx(q.amount_out).epsilon(1e-12));
    }
}

TEST_CASE("zero-size swap quotes zero with zero iterations") {
    const auto pool = pool_of(1000.0, 1000.0, 100.0, 8, 8);
    const auto q = quote_swap(pool, SwapDirection::y_in_x_out, 0.0, cfg16());
    CHECK(q.amount_out == 0.0);
    CHECK(q.iterations == 0);
    CHECK(q.price_impact == 0.0);
    CHECK_THROWS_AS(quote_swap(pool, SwapDirection::y_in_x_out, -1.0, cfg16()),
                    std::invalid_argument);
}

TEST_CASE("swap solve iteration counts, fixed backend") {
    // equilibrium pools; the bisection bracket [0, 0.5] halves 52 times
    // at tolerance 1e-16 regardless of pool or trade size
    const auto cfg = cfg16_fixed();
    for (long long size : {1000LL, 1000000LL}) {
        const auto pool = fixed_pool_of(std::to_string(size).c_str(),
                                        std::to_string(size).c_str(), "100", 8, 8);
        for (const char* amt : {"0.1", "1", "10", "100"}) {
            CAPTURE(size);
            CAPTURE(amt);
            const auto qb = quote_swap(pool, SwapDirection::y_in_x_out, SD::parse(amt), cfg,
                                       SolveMethod::bisection);
            CHECK(qb.iterations == 52);
        }
    }
}

TEST_CASE("committed swaps keep the trading point on the curve") {
    testutil::Rng rng(2718);
    for (int i = 0; i < 60; ++i) {
        const double scale = testutil::log_uniform(rng, 10.0, 1e7);
        const auto pool = pool_of(scale * testutil::uniform(rng, 0.4, 1.0),
                                  scale * testutil::uniform(rng, 0.4, 1.0),
                                  testutil::log_uniform(rng, 1.0, 1e3),
                                  static_cast<unsigned>(testutil::uniform_int(rng, 1, 10)),
                                  static_cast<unsigned>(testutil::uniform_int(rng, 1, 10)),
                                  testutil::uniform(rng, 0.5, 2.0));
        const auto dir = testutil::uniform_int(rng, 0, 1) == 0 ? SwapDirection::y_in_x_out
                                                               : SwapDirection::x_in_y_out;
        const double amt = (dir == SwapDirection::y_in_x_out ? pool.y : pool.x) *
                           testutil::uniform(rng, 1e-4, 0.5);
        const auto [next, q] = execute_swap(pool, dir, amt, cfg16());
        CHECK(std::abs(pool_residual(next)) <= 10.0 * 1e-16 * (1.0 + next.params.amplification));
        CHECK(q.amount_out > 0.0);
        CHECK(q.amount_out < (dir == SwapDirection::y_in_x_out ? pool.x : pool.y));
        // conservation: balances move by exactly the quoted amounts
        if (dir == SwapDirection::y_in_x_out) {
            CHECK(next.y == pool.y + amt);
            CHECK(next.x == pool.x - q.amount_out);
        } else {
            CHECK(next.x == pool.x + amt);
            CHECK(next.y == pool.y - q.amount_out);
        }
    }
}

TEST_CASE("round trips") {
    SUBCASE("with a fee, a round trip strictly loses") {
        const auto pool = pool_of(1000.0, 1000.0, 100.0, 8, 8, 1.0, 0.003);
        const auto [p1, q1] = execute_swap(pool, SwapDirection::y_in_x_out, 50.0, cfg16());
        const auto [p2, q2] = execute_swap(p1, SwapDirection::x_in_y_out, q1.amount_out, cfg16());
        CHECK(q2.amount_out < 50.0);
    }
    SUBCASE("without a fee, an infinitesimal round trip loses at most solver slack") {
        const auto pool = pool_of(1000.0, 1000.0, 100.0, 8, 8);
        const auto [p1, q1] = execute_swap(pool, SwapDirection::y_in_x_out, 1e-3, cfg16());
        const auto [p2, q2] = execute_swap(p1, SwapDirection::x_in_y_out, q1.amount_out, cfg16());
        CHECK(q2.amount_out <= 1e-3);
        CHECK(1e-3 - q2.amount_out <= 1e-16 * pool.d * 10.0);
    }
}

TEST_CASE("amount_out grows monotonically and sub-linearly in amount_in") {
    const auto pool = pool_of(1000.0, 1000.0, 50.0, 2, 8);
    double prev = 0.0;
    for (double amt : {1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 300.0, 700.0}) {
        const auto q = quote_swap(pool, SwapDirection::y_in_x_out, amt, cfg16());
        CHECK(q.amount_out > prev);
        prev = q.amount_out;
    }
    SUBCASE("doubling the trade less than doubles the output") {
        const auto q1 = quote_swap(pool, SwapDirection::y_in_x_out, 100.0, cfg16());
        const auto q2 = quote_swap(pool, SwapDirection::y_in_x_out, 200.0, cfg16());
        CHECK(q2.amount_out < 2.0 * q1.amount_out);
    }
}

TEST_CASE("directional price impact swaps with the gammas") {
    // sell Y into a pool sitting at fraction_y = 0.75, then mirror
    const auto cfg = cfg16();
    const double a = 80.0;
    const unsigned g1 = 3, g2 = 9;

    const auto sy = solve_point_at_fraction(0.25, PoolParams{a, g1, g2}, cfg);
    const double d1 = 4000.0;
    auto pool1 = pool_of(sy.x * d1, sy.z * d1, a, g1, g2);
    const auto qa = quote_swap(pool1, SwapDirection::y_in_x_out, 0.01 * pool1.y, cfg);

    const auto sx = solve_point_at_fraction(0.75, PoolParams{a, g2, g1}, cfg);
    auto pool2 = pool_of(sx.x * d1, sx.z * d1, a, g2, g1);
    const auto qb = quote_swap(pool2, SwapDirection::x_in_y_out, 0.01 * pool2.x, cfg);

    CHECK(qa.price_impact > 0.0);
    CHECK(testutil::rel_err(qa.price_impact, qb.price_impact) < 1e-9);
    // and the two directions genuinely differ when the gammas differ
    const auto qc = quote_swap(pool1, SwapDirection::x_in_y_out, 0.01 * pool1.x, cfg);
    CHECK(std::abs(qa.price_impact - qc.price_impact) > 1e-6 * qa.price_impact);
}

TEST_CASE("quotes are scale free") {
    const auto base = pool_of(1200.0, 800.0, 60.0, 2, 6, 1.5);
    const auto q0 = quote_swap(base, SwapDirection::y_in_x_out, 40.0, cfg16());
    for (double c : {1e-2, 1e3, 1e6}) {
        auto scaled = base;
        scaled.x *= c;
        scaled.y *= c;
        scaled.d *= c;
        const auto q = quote_swap(scaled, SwapDirection::y_in_x_out, c * 40.0, cfg16());
        CHECK(testutil::rel_err(q.amount_out, c * q0.amount_out) < 1e-9);
    }
}

TEST_CASE("liquidity changes recompute D") {
    const auto pool = pool_of(900.0, 1500.0, 70.0, 2, 5, 1.1);

    SUBCASE("doubling both balances doubles D") {
        const auto next = deposit(pool, 900.0, 1500.0, cfg16());
        CHECK(testutil::rel_err(next.d, 2.0 * pool.d) < 1e-12);
    }
    SUBCASE("deposit at equilibrium keeps the fractions balanced") {
        const auto eq = pool_of(1000.0, 1000.0, 70.0, 2, 5);
        const auto next = deposit(eq, 500.0, 500.0, cfg16());
        CHECK(fraction_x(next) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("withdraw requires the balance to stay positive") {
        CHECK_THROWS_AS(withdraw(pool, 900.0, 0.0, cfg16()), PoolError);
        CHECK_THROWS_AS(withdraw(pool, 1000.0, 0.0, cfg16()), PoolError);
        const auto next = withdraw(pool, 899.0, 0.0, cfg16());
        CHECK(next.x == doctest::Approx(1.0));
        CHECK(std::abs(pool_residual(next)) < 1e-12 * next.params.amplification);
    }
}

TEST_CASE("oracle price updates") {
    const auto pool = pool_of(1000.0, 1000.0, 100.0, 2, 8);

    SUBCASE("conversion factor follows the quoted prices") {
        const auto next = set_oracle_prices(pool, 1.0, 1.05, cfg16());
        CHECK(next.prices.conversion == doctest::Approx(1.05).epsilon(1e-15));
        const double py = next.prices.conversion * next.y;
        CHECK(next.d >= 2.0 * std::sqrt(next.x * py) - 1e-9 * (next.x + py));
        CHECK(next.d <= next.x + py + 1e-9 * (next.x + py));
        CHECK(std::abs(pool_residual(next)) < 1e-12 * (1.0 + next.params.amplification));
    }
    SUBCASE("identical prices do not move D") {
        const auto next = set_oracle_prices(pool, 1.0, 1.0, cfg16());
        CHECK(next.d == pool.d);
    }
    SUBCASE("non-positive prices are rejected") {
        CHECK_THROWS_AS(set_oracle_prices(pool, 0.0, 1.0, cfg16()), std::invalid_argument);
        CHECK_THROWS_AS(set_oracle_prices(pool, 1.0, -2.0, cfg16()), std::invalid_argument);
    }
}

TEST_CASE("pool fractions") {
    const auto eq = pool_of(1000.0, 1000.0, 10.0, 2, 2);
    CHECK(fraction_x(eq) == 0.5);
    CHECK(fraction_y(eq) == 0.5);

    const auto skew = pool_of(1500.0, 500.0, 10.0, 2, 2);
    CHECK(fraction_x(skew) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(fraction_y(skew) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(fraction_x(skew) + fraction_y(skew) == 1.0);
}

TEST_CASE("odd gamma1 shapes always resolve inside the bracket") {
    // these parameters give the scaled solve a second, negative zero; the
    // fallback policy must land on the positive in-bracket root every time
    testutil::Rng rng(404);
    const auto cfg = cfg16();
    const auto params = PoolParams{5.0, 3, 2};
    const auto prices = OraclePrices::unit();
    const double d = 2000.0;

    // on-curve x for z_s = 0.3, solved on the mirrored bounds bracket
    auto f = [&](double xs) { return scaled_f(ScaledPoint{xs, 0.3}, params); };
    const auto rx = bisection(f, 0.7, 1.0 / (4.0 * 0.3), cfg);
    REQUIRE(rx.converged());
    const auto pool = make_pool(rx.root * d, 600.0, params, prices, 0.0, cfg16());

    for (int i = 0; i < 120; ++i) {
        const double amt = pool.y * testutil::log_uniform(rng, 1e-4, 2.0);
        const auto q = quote_swap(pool, SwapDirection::y_in_x_out, amt, cfg);
        CHECK(q.amount_out > 0.0);
        CHECK(q.amount_out < pool.x);
    }
}

TEST_CASE("fee handling") {
    const auto pool = pool_of(1000.0, 1000.0, 100.0, 8, 8, 1.0, 0.01);
    const auto [next, q] = execute_swap(pool, SwapDirection::y_in_x_out, 100.0, cfg16());
    CHECK(q.fee_amount == doctest::Approx(1.0));
    // the fee stays in the input-side balance
    CHECK(next.y == pool.y + 100.0);
    // the curve was moved by the net amount only: quote of the same trade
    // on a zero-fee pool with net input matches
    auto nofee = pool;
    nofee.fee_rate = 0.0;
    const auto qn = quote_swap(nofee, SwapDirection::y_in_x_out, 99.0, cfg16());
    CHECK(q.amount_out == doctest::Approx(qn.amount_out).epsilon(1e-12));
    // the committed state sits on or above the curve, never below
    CHECK(pool_residual(next) >= -1e-12);
}
