#include "bis/error.hpp"
#include "bis/pbox.hpp"
#include "support/support.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

using namespace bis;
using Catch::Approx;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected bis::Error");
    return ErrorKind::InvalidArgument;
}

WeightedStepCdf three_atoms() {
    const std::vector<double> s{1, 2, 3};
    const std::vector<double> w{0.5, 0.3, 0.2};
    return WeightedStepCdf(s, w);
}

} // namespace

TEST_CASE("bounding interval requires lo < hi", "[pbox]") {
    REQUIRE_NOTHROW(BoundingInterval(0.0, kInf));
    REQUIRE_NOTHROW(BoundingInterval(-kInf, kInf));
    REQUIRE(kind_of([] { BoundingInterval(1.0, 1.0); }) == ErrorKind::BadInterval);
    REQUIRE(kind_of([] { BoundingInterval(2.0, 1.0); }) == ErrorKind::BadInterval);
    REQUIRE(kind_of([] { BoundingInterval(std::nan(""), 1.0); }) == ErrorKind::BadInterval);
}

TEST_CASE("extended order statistics", "[pbox]") {
    SECTION("sample data on [0, inf)") {
        const auto stats = make_extended_order_stats(test::kSampleData, {0.0, kInf});
        REQUIRE(stats.n_obs() == 15);
        REQUIRE(stats.points().size() == 17);
        REQUIRE(stats.points().front() == 0.0);
        REQUIRE(stats.points()[1] == 0.124);
        REQUIRE(stats.points()[2] == 0.211);
        REQUIRE(stats.points()[15] == 7.289);
        REQUIRE(stats.points().back() == kInf);
        REQUIRE(std::is_sorted(stats.points().begin(), stats.points().end()));
        REQUIRE(stats.observations().size() == 15);
    }
    SECTION("empty data") {
        const auto stats = make_extended_order_stats({}, {0.0, 1.0});
        REQUIRE(stats.points() == std::vector<double>{0.0, 1.0});
        REQUIRE(stats.n_obs() == 0);
    }
    SECTION("ties are kept and sorted") {
        const std::vector<double> data{2, 1, 1};
        const auto stats = make_extended_order_stats(data, {0.0, 3.0});
        REQUIRE(stats.points() == std::vector<double>{0, 1, 1, 2, 3});
    }
    SECTION("data on the bounds is allowed") {
        const std::vector<double> data{0.0, 1.0};
        REQUIRE(make_extended_order_stats(data, {0.0, 1.0}).points() ==
                std::vector<double>{0, 0, 1, 1});
    }
    SECTION("errors") {
        const std::vector<double> out{0.5, 1.5};
        REQUIRE(kind_of([&] { make_extended_order_stats(out, {0.0, 1.0}); }) ==
                ErrorKind::OutOfBounds);
        const std::vector<double> below{-0.1};
        REQUIRE(kind_of([&] { make_extended_order_stats(below, {0.0, 1.0}); }) ==
                ErrorKind::OutOfBounds);
        const std::vector<double> nan{std::nan("")};
        REQUIRE(kind_of([&] { make_extended_order_stats(nan, {0.0, 1.0}); }) ==
                ErrorKind::NonFinite);
        const std::vector<double> inf{kInf};
        REQUIRE(kind_of([&] { make_extended_order_stats(inf, {0.0, kInf}); }) ==
                ErrorKind::NonFinite);
    }
}

TEST_CASE("weighted step cdf construction", "[pbox]") {
    SECTION("equal supports are coalesced") {
        const std::vector<double> s{1, 1, 2};
        const std::vector<double> w{0.25, 0.25, 0.5};
        const WeightedStepCdf d(s, w);
        REQUIRE(d.size() == 2);
        REQUIRE(d.supports() == std::vector<double>{1, 2});
        REQUIRE(d.weights() == std::vector<double>{0.5, 0.5});
    }
    SECTION("rejects malformed input") {
        const std::vector<double> s{2, 1};
        const std::vector<double> w{0.5, 0.5};
        REQUIRE(kind_of([&] { WeightedStepCdf(s, w); }) == ErrorKind::InvalidArgument);
        const std::vector<double> s2{1, 2};
        const std::vector<double> heavy{0.5, 0.6};
        REQUIRE(kind_of([&] { WeightedStepCdf(s2, heavy); }) == ErrorKind::InvalidArgument);
        const std::vector<double> neg{1.5, -0.5};
        REQUIRE(kind_of([&] { WeightedStepCdf(s2, neg); }) == ErrorKind::InvalidArgument);
        const std::vector<double> one{1.0};
        REQUIRE(kind_of([&] { WeightedStepCdf(s2, one); }) == ErrorKind::InvalidArgument);
        REQUIRE(kind_of([&] { WeightedStepCdf({}, {}); }) == ErrorKind::InvalidArgument);
    }
    SECTION("unit step") {
        const auto d = WeightedStepCdf::unit_step(kInf);
        REQUIRE(d.cdf(1e300) == 0.0);
        REQUIRE(d.cdf(kInf) == 1.0);
    }
}

TEST_CASE("cdf evaluation", "[pbox]") {
    const std::vector<double> s{1, 2};
    const std::vector<double> w{0.4, 0.6};
    const WeightedStepCdf d(s, w);
    REQUIRE(cdf_eval(d, 1.5) == 0.4);
    REQUIRE(cdf_eval(d, 0.0) == 0.0);
    REQUIRE(cdf_eval(d, -kInf) == 0.0);
    REQUIRE(cdf_eval(d, kInf) == 1.0);
    REQUIRE(cdf_eval(d, 1.0) == 0.4);
    REQUIRE(d.cdf_left(1.0) == 0.0);
    REQUIRE(d.cdf_left(2.0) == 0.4);
}

TEST_CASE("generalized inverse uses the inf convention", "[pbox]") {
    const auto d = three_atoms();
    REQUIRE(generalized_inverse(d, 0.6) == 2.0);
    REQUIRE(generalized_inverse(d, 0.5) == 1.0);
    REQUIRE(generalized_inverse(d, 1.0) == 3.0);
    REQUIRE(generalized_inverse(d, 1e-300) == 1.0);
    REQUIRE(kind_of([&] { generalized_inverse(d, 0.0); }) == ErrorKind::InvalidProbability);
    REQUIRE(kind_of([&] { generalized_inverse(d, 1.5); }) == ErrorKind::InvalidProbability);
    REQUIRE(kind_of([&] { generalized_inverse(d, std::nan("")); }) ==
            ErrorKind::InvalidProbability);

    SECTION("zero-weight atoms are never returned") {
        const std::vector<double> s{1, 2, 3};
        const std::vector<double> w{0.5, 0.0, 0.5};
        const WeightedStepCdf z(s, w);
        REQUIRE(generalized_inverse(z, 0.5) == 1.0);
        REQUIRE(generalized_inverse(z, 0.5000001) == 3.0);
    }
}

TEST_CASE("generalized inverse is the Galois adjoint of the cdf", "[pbox][property]") {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> n_atoms(1, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = n_atoms(gen);
        std::vector<double> s(n);
        std::vector<double> w(n);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            s[i] = (i == 0 ? 0.0 : s[i - 1]) + 0.1 + unit(gen);
            w[i] = unit(gen) < 0.2 ? 0.0 : unit(gen);
            total += w[i];
        }
        if (total == 0.0) continue;
        for (double& x : w) x /= total;
        const WeightedStepCdf d(s, w);
        for (int k = 0; k < 20; ++k) {
            const double p = k == 0 ? 1.0 : unit(gen) + 1e-12;
            if (p > 1.0) continue;
            const double q = generalized_inverse(d, p);
            REQUIRE(d.cdf(q) >= p - 1e-15);
            REQUIRE(d.cdf_left(q) < p);
        }
    }
}

TEST_CASE("probability box validation", "[pbox]") {
    const auto lower = WeightedStepCdf::unit_step(1.0);
    const auto upper = WeightedStepCdf::unit_step(0.0);
    REQUIRE_NOTHROW(ProbabilityBox(lower, upper));
    REQUIRE(kind_of([&] { ProbabilityBox(upper, lower); }) == ErrorKind::InvalidArgument);
    REQUIRE(ProbabilityBox(lower, upper).breakpoints() == std::vector<double>{0.0, 1.0});
}

TEST_CASE("interval probabilities from a probability box", "[pbox]") {
    SECTION("precise box") {
        const auto d = three_atoms();
        const ProbabilityBox box(d, d);
        const auto pi = pbox_interval_probability(box, 1.5, 3.0);
        REQUIRE(pi.lower == Approx(0.5));
        REQUIRE(pi.upper == Approx(0.5));
    }
    SECTION("vacuous box") {
        const ProbabilityBox box(WeightedStepCdf::unit_step(1.0), WeightedStepCdf::unit_step(0.0));
        const auto pi = pbox_interval_probability(box, 0.2, 0.8);
        REQUIRE(pi.lower == 0.0);
        REQUIRE(pi.upper == 1.0);
    }
    SECTION("direct substitution") {
        // lower CDF is 0.3 at a and 0.5 at b; upper CDF is 0.6 at a and 0.9 at b
        const std::vector<double> ls{0.5, 1.5, 3.0};
        const std::vector<double> lw{0.3, 0.2, 0.5};
        const std::vector<double> us{0.5, 1.5, 3.0};
        const std::vector<double> uw{0.6, 0.3, 0.1};
        const ProbabilityBox box(WeightedStepCdf(ls, lw), WeightedStepCdf(us, uw));
        const auto pi = pbox_interval_probability(box, 1.0, 2.0);
        REQUIRE(pi.lower == 0.0);
        REQUIRE(pi.upper == Approx(0.6));
    }
    SECTION("bad interval") {
        const auto d = three_atoms();
        const ProbabilityBox box(d, d);
        REQUIRE(kind_of([&] { pbox_interval_probability(box, 2.0, 2.0); }) ==
                ErrorKind::BadInterval);
    }
}

TEST_CASE("expected probability box", "[pbox]") {
    SECTION("sample data on [0, inf)") {
        const auto stats = make_extended_order_stats(test::kSampleData, {0.0, kInf});
        const auto box = expected_pbox(stats);
        REQUIRE(box.lower().size() == 16);
        REQUIRE(box.upper().size() == 16);
        for (double w : box.lower().weights()) REQUIRE(w == 1.0 / 16.0);
        for (double w : box.upper().weights()) REQUIRE(w == 1.0 / 16.0);
        REQUIRE(box.upper().supports().front() == 0.0);
        REQUIRE(box.lower().supports().back() == kInf);
        REQUIRE(box.breakpoints().size() == 17);
    }
    SECTION("no data gives the vacuous box") {
        const auto box = expected_pbox(make_extended_order_stats({}, {0.0, 1.0}));
        REQUIRE(box.lower().supports() == std::vector<double>{1.0});
        REQUIRE(box.upper().supports() == std::vector<double>{0.0});
    }
    SECTION("one observation") {
        const std::vector<double> data{0.5};
        const auto box = expected_pbox(make_extended_order_stats(data, {0.0, 1.0}));
        REQUIRE(box.lower().supports() == std::vector<double>{0.5, 1.0});
        REQUIRE(box.upper().supports() == std::vector<double>{0.0, 0.5});
        REQUIRE(box.lower().weights() == std::vector<double>{0.5, 0.5});
    }
}

TEST_CASE("probability box invariants on random boxes", "[pbox][property]") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> data(1 + trial % 12);
        for (double& x : data) x = unit(gen);
        const auto box = expected_pbox(make_extended_order_stats(data, {0.0, 1.0}));
        for (int k = 0; k <= 100; ++k) {
            const double x = k / 100.0;
            REQUIRE(box.lower().cdf(x) <= box.upper().cdf(x));
            const double a = unit(gen) - 0.1;
            const double b = a + 0.01 + unit(gen);
            const auto pi = pbox_interval_probability(box, a, b);
            REQUIRE(0.0 <= pi.lower);
            REQUIRE(pi.lower <= pi.upper);
            REQUIRE(pi.upper <= 1.0);
        }
    }
}

TEST_CASE("interval estimate validation", "[pbox]") {
    REQUIRE_NOTHROW(IntervalEstimate(1.0, 1.0, 0.9));
    REQUIRE(IntervalEstimate(1.0, kInf, 0.9).unbounded());
    REQUIRE_FALSE(IntervalEstimate(1.0, 2.0, 0.9).unbounded());
    REQUIRE(IntervalEstimate(1.0, 2.0, 0.9).contains(2.0));
    REQUIRE(kind_of([] { IntervalEstimate(2.0, 1.0, 0.9); }) == ErrorKind::BadInterval);
    REQUIRE(kind_of([] { IntervalEstimate(1.0, 2.0, 1.0); }) == ErrorKind::InvalidProbability);
    REQUIRE(kind_of([] { IntervalEstimate(1.0, 2.0, 0.0); }) == ErrorKind::InvalidProbability);
}
