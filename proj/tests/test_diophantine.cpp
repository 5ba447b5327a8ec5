#include "doctest.h"

#include <cmath>
#include <random>

#include "tlab/cf.hpp"
#include "tlab/errors.hpp"
#include "tlab/exact.hpp"

using namespace tlab;

namespace {

ExactReal golden() { return parse_real("(sqrt(5)-1)/2"); }
ExactReal sqrt2m1() { return parse_real("sqrt(2)-1"); }
ExactReal sqrt3m1() { return parse_real("sqrt(3)-1"); }

} // namespace

TEST_CASE("parser and exact arithmetic") {
    CHECK(parse_real("3/7").kind() == ExactReal::RATIONAL);
    CHECK(parse_real("0.25").rational() == mpq_class(1, 4));
    CHECK(parse_real("sqrt(4)").rational() == 2);
    CHECK(parse_real("sqrt(2)").kind() == ExactReal::SURD);
    CHECK(parse_real("sqrt(2)*sqrt(2)").rational() == 2);
    CHECK(parse_real("(sqrt(5)-1)/2 + (3-sqrt(5))/2").rational() == 1);
    CHECK(parse_real("e").kind() == ExactReal::NUMERIC);
    CHECK(parse_real("golden").to_double() == doctest::Approx(0.6180339887498949));
    // mixing incompatible surds demotes to numeric but keeps precision
    ExactReal d = sqrt2m1() - sqrt3m1();
    CHECK(d.kind() == ExactReal::NUMERIC);
    CHECK(d.to_double() == doctest::Approx(std::sqrt(2.0) - std::sqrt(3.0)));
    CHECK_THROWS_AS(parse_real("sqrt(2"), ConfigError);
    CHECK_THROWS_AS(parse_real("foo"), ConfigError);
}

TEST_CASE("BigFixed basics") {
    BigFixed a = BigFixed::from_decimal("0.7");
    CHECK(a.to_double() == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(a.dist_to_Z().to_double() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(BigFixed::from_decimal("2.25").dist_to_Z().to_double() == doctest::Approx(0.25));
    CHECK(BigFixed::from_decimal("-0.1").dist_to_Z().to_double() == doctest::Approx(0.1));
    // e to 30 digits: 2.718281828459045235360287471352...
    CHECK(BigFixed::euler_e().to_decimal(20).substr(0, 18) == "2.7182818284590452");
    // exactness of add/frac: {0.7 + 0.7} == 0.4 in fixed point exactly
    BigFixed s = (a + a).frac();
    CHECK((s - BigFixed::from_decimal("0.4")).abs().to_double() < 1e-70);
    // DD round trip keeps ~2^-100
    DD dd = BigFixed::sqrt_integer(2).to_dd();
    CHECK(std::abs(dd.hi - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("expand_cf: golden ratio has all quotients 1") {
    auto cf = expand_cf(golden(), 10);
    REQUIRE(cf.quotients.size() == 10);
    for (auto& a : cf.quotients)
        CHECK(a == 1);
    CHECK(cf.period_len >= 1);
}

TEST_CASE("expand_cf: sqrt(2)-1 has all quotients 2") {
    auto cf = expand_cf(sqrt2m1(), 5);
    REQUIRE(cf.quotients.size() == 5);
    for (auto& a : cf.quotients)
        CHECK(a == 2);
}

TEST_CASE("expand_cf: sqrt(3)-1 alternates 1,2") {
    auto cf = expand_cf(sqrt3m1(), 6);
    REQUIRE(cf.quotients.size() == 6);
    for (int i = 0; i < 6; ++i)
        CHECK(cf.quotients[i] == (i % 2 == 0 ? 1 : 2));
}

TEST_CASE("expand_cf: rational input raises") {
    CHECK_THROWS_AS(expand_cf(parse_real("3/7"), 10), RationalInput);
}

TEST_CASE("expand_cf: numeric source certified against surd path") {
    // the decimal literal only pins ~53 quotient's worth; compare prefix
    ExactReal num = ExactReal::numeric(sqrt2m1().approx(kDefaultFracBits + 64), 2.0);
    auto cf_num = expand_cf(num, 40);
    auto cf_exact = expand_cf(sqrt2m1(), 40);
    REQUIRE(cf_num.certified_depth >= 40);
    for (int i = 0; i < 40; ++i)
        CHECK(cf_num.quotients[i] == cf_exact.quotients[i]);
    // a short decimal literal is rational: terminating Gauss map
    CHECK_THROWS_AS(expand_cf(parse_real("0.414"), 50), RationalInput);
}

TEST_CASE("convergents: golden and sqrt2-1 denominators") {
    auto cf = expand_cf(golden(), 10);
    auto t = convergents(cf, 6);
    REQUIRE(t.q.size() == 7);
    long expect[] = {1, 1, 2, 3, 5, 8, 13};
    for (int i = 0; i <= 6; ++i)
        CHECK(t.q[i] == expect[i]);

    auto t2 = convergents(expand_cf(sqrt2m1(), 6), 4);
    long expect2[] = {1, 2, 5, 12, 29};
    for (int i = 0; i <= 4; ++i)
        CHECK(t2.q[i] == expect2[i]);

    auto t1 = convergents(cf, 1);
    CHECK(t1.q[0] == 1);
    CHECK(t1.q[1] == cf.quotients[0]);
}

TEST_CASE("convergent chain q_{n+1}||q_n a|| lies in [1/2, 1]") {
    for (auto v : {golden(), sqrt2m1(), sqrt3m1()}) {
        auto cf = expand_cf(v, 30);
        auto t = convergents(cf, 30);
        for (double c : t.chain) {
            CHECK(c >= 0.5);
            CHECK(c <= 1.0);
        }
    }
}

TEST_CASE("classical convergent bound |a - p/q| < 1/(q_n q_{n+1})") {
    for (auto v : {golden(), sqrt2m1(), sqrt3m1()}) {
        auto cf = expand_cf(v, 25);
        auto t = convergents(cf, 25);
        BigFixed a = v.approx(kDefaultFracBits + 64);
        for (int n = 1; n < 25; ++n) {
            BigFixed diff = a - BigFixed::from_ratio(t.p[n], t.q[n], a.bits());
            BigFixed bound = BigFixed::from_ratio(mpz_class(1), t.q[n] * t.q[n + 1], a.bits());
            CHECK(diff.abs() < bound);
        }
    }
}

TEST_CASE("ostrowski digits") {
    auto table = convergents(expand_cf(golden(), 20), 20);
    SUBCASE("n=4 in the golden base: 4 = q_1 + q_3") {
        auto d = ostrowski(4, table);
        REQUIRE(d.digits.size() == 4);
        CHECK(d.digits[0] == 0);
        CHECK(d.digits[1] == 1);
        CHECK(d.digits[2] == 0);
        CHECK(d.digits[3] == 1);
        CHECK(ostrowski_reconstruct(d, table) == 4);
    }
    SUBCASE("n = q_5 is a single digit") {
        auto d = ostrowski(table.q[5], table);
        CHECK(d.digits.back() == 1);
        mpz_class sum_others = 0;
        for (size_t i = 0; i + 1 < d.digits.size(); ++i)
            sum_others += d.digits[i];
        CHECK(sum_others == 0);
    }
    SUBCASE("n=1 with a_1 >= 2 gives b_0 = 1") {
        auto t2 = convergents(expand_cf(sqrt2m1(), 10), 10);
        auto d = ostrowski(1, t2);
        REQUIRE(d.digits.size() == 1);
        CHECK(d.digits[0] == 1);
    }
    SUBCASE("table too shallow") {
        auto shallow = convergents(expand_cf(golden(), 5), 5);
        CHECK_THROWS_AS(ostrowski(10000, shallow), DepthError);
    }
}

TEST_CASE("ostrowski round trip and digit bounds for n <= 10^6") {
    for (auto v : {golden(), sqrt2m1(), sqrt3m1()}) {
        auto cf = expand_cf(v, 40);
        auto table = convergents(cf, 40);
        // int64 mirror of the table for speed
        std::vector<long> q;
        for (auto& x : table.q)
            q.push_back(x.get_si());
        std::vector<long> a;
        for (auto& x : cf.quotients)
            a.push_back(x.get_si());
        long worst_digit_violations = 0;
        for (long n = 1; n <= 1000000; ++n) {
            long rem = n;
            int m = 0;
            while (m + 1 < static_cast<int>(q.size()) && q[m + 1] <= n)
                ++m;
            long recon = 0;
            for (int k = m; k >= 0; --k) {
                long b = rem / q[k];
                rem -= b * q[k];
                recon += b * q[k];
                bool ok = (k == 0) ? (b <= a[0] - 1) : (b <= a[k]);
                if (!ok)
                    ++worst_digit_violations;
            }
            if (recon != n) {
                CHECK(recon == n);
                break;
            }
        }
        CHECK(worst_digit_violations == 0);
    }
}

TEST_CASE("bad_margin") {
    SUBCASE("golden ratio margin is (3-sqrt(5))/2 at q=1, liminf 1/sqrt(5)") {
        // Oracle: q*||q*g|| is minimized at q = 1 with value 1-g = (3-sqrt5)/2
        // ~ 0.381966; along Fibonacci q the products increase to 1/sqrt(5)
        // ~ 0.4472, so the margin stays bounded away from zero.
        auto r = bad_margin(golden().approx(), BigFixed::from_long(0), 10000);
        CHECK(r.margin == doctest::Approx((3.0 - std::sqrt(5.0)) / 2).epsilon(1e-9));
        CHECK(r.argmin_q == 1);
        CHECK(r.margin > 1.0 / 3.0);
    }
    SUBCASE("x = theta is hit at q = 1") {
        BigFixed th = sqrt2m1().approx();
        auto r = bad_margin(th, th, 10);
        CHECK(r.margin < 1e-60);
        CHECK(r.argmin_q == 1);
    }
    SUBCASE("q_max = 1 gives ||theta - x||") {
        BigFixed th = golden().approx();
        BigFixed x = BigFixed::from_decimal("0.1");
        auto r = bad_margin(th, x, 1);
        CHECK(r.margin == doctest::Approx(dist_to_Z(th.to_double() - 0.1)));
    }
    SUBCASE("margin is non-increasing in q_max") {
        BigFixed th = sqrt3m1().approx();
        BigFixed x = BigFixed::from_decimal("0.3");
        double prev = 1e300;
        for (long q : {10L, 100L, 1000L, 10000L}) {
            auto r = bad_margin(th, x, q);
            CHECK(r.margin <= prev + 1e-15);
            prev = r.margin;
        }
    }
    SUBCASE("sqrt2-1 margin bounded below uniformly (bpq => Bad)") {
        BigFixed th = sqrt2m1().approx();
        for (long q : {100L, 1000L, 10000L, 100000L}) {
            auto r = bad_margin(th, BigFixed::from_long(0), q);
            CHECK(r.margin > 0.2);
        }
    }
}

TEST_CASE("type_probe") {
    SUBCASE("sqrt2-1 is Bad, hence type 1: inf_high stays away from 0") {
        auto rep = type_probe(sqrt2m1().approx(), 1.0, 0.1, 100000);
        CHECK(rep.inf_high > 0.2);
        CHECK_FALSE(rep.conclusive);
    }
    SUBCASE("q_max = 1: both infima are ||alpha||") {
        auto rep = type_probe(golden().approx(), 1.0, 0.2, 1);
        double d = dist_to_Z(golden().to_double());
        CHECK(rep.inf_low == doctest::Approx(d));
        CHECK(rep.inf_high == doctest::Approx(d));
    }
    SUBCASE("bounded partial quotients imply ||k a|| >= c/(k log^s k) on scan") {
        // a_n <= 2 for sqrt2-1; with s = 0 the bound is c/k, c = margin
        auto rep = type_probe(sqrt2m1().approx(), 1.0, 0.0001, 10000);
        CHECK(rep.inf_high > 0.2); // k^{1+eps}||k a|| ~ k ||k a||
    }
}

TEST_CASE("series_partial_sum") {
    BigFixed a = sqrt2m1().approx();
    SUBCASE("K = 1 gives 1/||alpha||") {
        CHECK(series_partial_sum(a, 1.0, 0.5, 1) ==
              doctest::Approx(1.0 / dist_to_Z(a.to_double())));
    }
    SUBCASE("monotone in K") {
        double s1 = series_partial_sum(a, 1.0, 0.5, 1000);
        double s2 = series_partial_sum(a, 1.0, 0.5, 2000);
        double s3 = series_partial_sum(a, 1.0, 0.5, 4000);
        CHECK(s2 >= s1);
        CHECK(s3 >= s2);
    }
    SUBCASE("plateau of the eta+delta = 1.5 series (oracle-frozen values)") {
        // Oracle run (direct summation at 256-bit precision):
        //   S(10^3) = 14.2539, S(10^4) = 15.0276, S(10^5) = 15.3501.
        // Successive increments shrink: 0.774 then 0.322.
        double s3 = series_partial_sum(a, 1.0, 0.5, 1000);
        double s4 = series_partial_sum(a, 1.0, 0.5, 10000);
        double s5 = series_partial_sum(a, 1.0, 0.5, 100000);
        CHECK(s3 == doctest::Approx(14.2539).epsilon(1e-3));
        CHECK(s4 == doctest::Approx(15.0276).epsilon(1e-3));
        CHECK(s5 == doctest::Approx(15.3501).epsilon(1e-3));
        CHECK(s4 - s3 < 1.0);
        CHECK(s5 - s4 < 0.5);
        CHECK(s5 - s4 < s4 - s3);
    }
}

TEST_CASE("precision property: ||k a|| certified for large k") {
    // fixed-point adds are exact, so ||k a|| error is k * ulp(a):
    // compare the incremental scan against direct multiplication
    BigFixed a = golden().approx();
    BigFixed acc = BigFixed::from_long(0, a.bits());
    std::mt19937_64 rng(7);
    long k = 0;
    for (int step = 0; step < 50; ++step) {
        long jump = 1 + static_cast<long>(rng() % 1000);
        for (long j = 0; j < jump; ++j)
            acc = acc + a;
        k += jump;
        BigFixed direct = a.mul_long(k);
        CHECK((acc.frac() - direct.frac()).is_zero());
    }
}
