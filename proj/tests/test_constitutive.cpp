#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "rodwave/constitutive.hpp"

using namespace rodwave;
using doctest::Approx;

TEST_CASE("elastic quotient is identically one") {
    const auto m = ConstitutiveModel::elastic();
    CHECK(m.M({3.0, 4.0}) == ComplexS(1.0, 0.0));
    CHECK(m.M({1e-8, 0.0}) == ComplexS(1.0, 0.0));
    CHECK(m.M_on_cut(2.0, CutSide::Upper) == ComplexS(1.0, 0.0));
    CHECK(m.M_on_cut(2.0, CutSide::Lower) == ComplexS(1.0, 0.0));
    CHECK(m.sM_derivative({0.5, 0.5}) == ComplexS(1.0, 0.0));
    CHECK(m.limits().c_inf == 1.0);
    CHECK(m.limits().c_0 == 1.0);
    CHECK(m.nondegenerate());
}

TEST_CASE("fractional Zener quotient") {
    const auto m = ConstitutiveModel::fractional_zener(0.5, 0.2, 0.6);

    SUBCASE("real positive axis: sqrt((1+0.2*2)/(1+0.6*2))") {
        const ComplexS v = m.M({4.0, 0.0});
        CHECK(v.real() == Approx(0.79772403521746564).epsilon(1e-14));
        CHECK(v.imag() == 0.0);
    }

    SUBCASE("cut limits are conjugate and match the reference") {
        const ComplexS up = m.M_on_cut(1.0, CutSide::Upper);
        const ComplexS lo = m.M_on_cut(1.0, CutSide::Lower);
        CHECK(up.real() == Approx(0.92141305720070846).epsilon(1e-14));
        CHECK(up.imag() == Approx(-0.15960141044254641).epsilon(1e-14));
        CHECK(lo.real() == Approx(up.real()).epsilon(1e-15));
        CHECK(lo.imag() == Approx(-up.imag()).epsilon(1e-15));
    }

    SUBCASE("closed negative real axis is rejected") {
        CHECK_THROWS_AS((void)m.M({-1.0, 0.0}), DomainError);
        CHECK_THROWS_AS((void)m.M({0.0, 0.0}), DomainError);
        CHECK_THROWS_AS((void)m.M_on_cut(0.0, CutSide::Upper), DomainError);
        CHECK_THROWS_AS((void)m.M_on_cut(-2.0, CutSide::Lower), DomainError);
    }

    SUBCASE("d(sM)/ds at s = i") {
        const ComplexS d = m.sM_derivative({0.0, 1.0});
        CHECK(d.real() == Approx(0.82736921239612613).epsilon(1e-13));
        CHECK(d.imag() == Approx(-0.08773297621101551).epsilon(1e-13));
    }

    SUBCASE("wave-speed and creep limits") {
        CHECK(m.limits().c_inf == Approx(std::sqrt(0.2 / 0.6)).epsilon(1e-15));
        CHECK(m.limits().c_0 == Approx(1.0).epsilon(1e-15));
        CHECK(m.nondegenerate());
    }

    SUBCASE("thermodynamic restriction a <= b") {
        CHECK_THROWS_AS(ConstitutiveModel::fractional_zener(0.5, 0.7, 0.3),
                        DomainError);
        try {
            ConstitutiveModel::fractional_zener(0.5, 0.7, 0.3);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find("restriction") != std::string::npos);
        }
    }

    SUBCASE("a = b collapses to the elastic quotient") {
        // complex division leaves ~1e-17 of roundoff in the imaginary part,
        // so "equals one" is asserted at machine precision rather than bitwise
        const auto same = ConstitutiveModel::fractional_zener(0.5, 0.4, 0.4);
        const ComplexS v = same.M({0.3, 2.7});
        CHECK(std::abs(v - ComplexS{1.0, 0.0}) <= 1e-15);
    }
}

TEST_CASE("power-law quotient") {
    const auto m = ConstitutiveModel::power_law(0.5, 2.0);

    SUBCASE("removable point a*s = 1 goes through the series branch") {
        // M(2)^2 = g(1)/g(4) with g(z) = (z-1)/ln z, g(1) = 1
        const ComplexS v = m.M({2.0, 0.0});
        CHECK(v.real() == Approx(0.67977799344587265).epsilon(1e-14));
        CHECK(v.imag() == 0.0);
    }

    SUBCASE("series and direct branches join smoothly") {
        // M decreases through the removable point; values frozen from a
        // 50-digit evaluation on both sides of the series/direct switch
        const ComplexS lo = m.M({2.0 * (1.0 - 1e-6), 0.0});
        const ComplexS hi = m.M({2.0 * (1.0 + 1e-6), 0.0});
        CHECK(lo.real() == Approx(0.6797780315086396).epsilon(1e-12));
        CHECK(hi.real() == Approx(0.6797779553831484).epsilon(1e-12));
    }

    SUBCASE("derivative agrees with an independent central difference") {
        const ComplexS s(1.0, 0.5);
        const double h = 1e-6;
        const ComplexS fd =
            (s * (1.0 + h) * m.M(s * (1.0 + h)) - s * (1.0 - h) * m.M(s * (1.0 - h))) /
            (2.0 * h * s);
        const ComplexS d = m.sM_derivative(s);
        CHECK(std::abs(d - fd) / std::abs(d) < 1e-5);
    }

    SUBCASE("limits") {
        CHECK(m.limits().c_inf == Approx(0.5).epsilon(1e-12));
        CHECK(m.limits().c_0 == Approx(1.0).epsilon(1e-12));
        CHECK(m.nondegenerate());
    }

    SUBCASE("restriction a <= b") {
        CHECK_THROWS_AS(ConstitutiveModel::power_law(2.0, 0.5), DomainError);
    }
}

TEST_CASE("Hilfer fluid is degenerate and gated") {
    CHECK_THROWS_AS(ConstitutiveModel::hilfer_fluid(0.3, 0.2, 0.2, 0.3, 0.4,
                                                    0.4, 0.6, 0.9),
                    DomainError);
    const auto m = ConstitutiveModel::hilfer_fluid(0.3, 0.2, 0.2, 0.3, 0.4,
                                                   0.4, 0.6, 0.9,
                                                   /*allow_degenerate=*/true);
    CHECK_FALSE(m.nondegenerate());
    CHECK(m.limits().c_inf == 0.0);
    // the quotient itself is evaluable off the cut
    const ComplexS v = m.M({1.0, 1.0});
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
}

TEST_CASE("assumption audit") {
    SUBCASE("Zener passes") {
        const auto rep = check_assumptions(
            ConstitutiveModel::fractional_zener(0.5, 0.2, 0.6), 1e4, 64);
        CHECK(rep.limits_ok);
        CHECK(rep.derivative_ok);
        CHECK(rep.c_inf_estimate == Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-2));
        CHECK(rep.c_0_estimate == Approx(1.0).epsilon(1e-2));
    }
    SUBCASE("degenerate fluid is flagged") {
        const auto m = ConstitutiveModel::hilfer_fluid(0.3, 0.2, 0.2, 0.3, 0.4,
                                                       0.4, 0.6, 0.9, true);
        const auto rep = check_assumptions(m, 1e4, 64);
        CHECK_FALSE(rep.limits_ok);
    }
    SUBCASE("precondition screening") {
        CHECK_THROWS_AS(check_assumptions(ConstitutiveModel::elastic(), 0.5, 64),
                        DomainError);
        CHECK_THROWS_AS(check_assumptions(ConstitutiveModel::elastic(), 1e4, 4),
                        DomainError);
    }
}

TEST_CASE("model grammar") {
    CHECK(parse_model("elastic") == ConstitutiveModel::elastic());
    CHECK(parse_model("zener alpha=0.5 a=0.2 b=0.6") ==
          ConstitutiveModel::fractional_zener(0.5, 0.2, 0.6));
    CHECK(parse_model("powerlaw a=0.5 b=2") ==
          ConstitutiveModel::power_law(0.5, 2.0));

    CHECK_THROWS_AS(parse_model(""), ConfigError);
    CHECK_THROWS_AS(parse_model("maxwell a=1"), ConfigError);
    CHECK_THROWS_AS(parse_model("zener alpha=0.5 a=0.2"), ConfigError);      // missing b
    CHECK_THROWS_AS(parse_model("zener alpha=0.5 a=0.2 b=0.6 c=1"), ConfigError);
    CHECK_THROWS_AS(parse_model("zener alpha=0.5 a=0.2 a=0.3 b=0.6"), ConfigError);
    CHECK_THROWS_AS(parse_model("zener alpha=0.5 a=abc b=0.6"), ConfigError);
    CHECK_THROWS_AS(parse_model("zener alpha=0.5 a=0.7 b=0.3"), ConfigError); // a > b
    CHECK_THROWS_AS(
        parse_model("hilfer a=0.3 alpha=0.2 b0=0.2 b1=0.3 b2=0.4 beta0=0.4 beta1=0.6 beta2=0.9"),
        ConfigError); // degenerate without the unsafe flag
    CHECK_NOTHROW(
        parse_model("hilfer a=0.3 alpha=0.2 b0=0.2 b1=0.3 b2=0.4 beta0=0.4 beta1=0.6 beta2=0.9",
                    /*allow_degenerate=*/true));

    try {
        parse_model("zener alpha=0.5 a=0.7 b=0.3");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("restriction") != std::string::npos);
    }
}
