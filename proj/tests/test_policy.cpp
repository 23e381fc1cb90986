#include <doctest.h>

#include <algorithm>
#include <random>

#include "megalink/policy.hpp"

using namespace megalink;

TEST_CASE("empty list selects nothing")
{
    std::vector<Candidate> none;
    CHECK_FALSE(select_serving(none, {PolicyKind::closest, {}}, 0, 0).has_value());
    CHECK_FALSE(select_serving(none, {PolicyKind::random, 1}, 0, 0).has_value());
}

TEST_CASE("closest picks the minimum range, ties to lowest id")
{
    std::vector<Candidate> c{{7, 1200.0}, {3, 500.0}, {9, 800.0}};
    SelectionPolicy const p{PolicyKind::closest, {}};
    CHECK(select_serving(c, p, 0, 0) == 3);
    std::vector<Candidate> tie{{8, 500.0}, {2, 500.0}, {5, 900.0}};
    CHECK(select_serving(tie, p, 0, 0) == 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(tie.begin(), tie.end(), rng);
        CHECK(select_serving(tie, p, 0, 0) == 2);
    }
}

TEST_CASE("random draws are keyed and order independent")
{
    SelectionPolicy const p{PolicyKind::random, 42};
    std::vector<Candidate> c{{1, 100.0}, {2, 200.0}};
    int first = 0;
    int const n = 20000;
    for (int step = 0; step < n; ++step) {
        auto const s = select_serving(c, p, step, 5);
        REQUIRE(s.has_value());
        first += *s == 1 ? 1 : 0;
    }
    CHECK(static_cast<double>(first) / n == doctest::Approx(0.5).epsilon(0.04));

    std::vector<Candidate> rev{{2, 200.0}, {1, 100.0}};
    for (int step = 0; step < 200; ++step) {
        CHECK(select_serving(c, p, step, 9) == select_serving(rev, p, step, 9));
    }
    // Evaluation order does not matter: compute backwards and compare.
    std::vector<int> fwd;
    std::vector<int> bwd(100);
    std::vector<Candidate> five{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
    for (int s = 0; s < 100; ++s) {
        fwd.push_back(*select_serving(five, p, s, 1));
    }
    for (int s = 99; s >= 0; --s) {
        bwd[static_cast<std::size_t>(s)] = *select_serving(five, p, s, 1);
    }
    CHECK(fwd == bwd);
    CHECK_THROWS(select_serving(c, SelectionPolicy{PolicyKind::random, {}}, 0, 0));
    CHECK(policy_kind_from_string("closest") == PolicyKind::closest);
    CHECK_THROWS(policy_kind_from_string("sticky"));
}
