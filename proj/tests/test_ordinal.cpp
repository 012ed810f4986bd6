#include "wanderflow/ordinal.hpp"

#include "wanderflow/rational.hpp"

#include <doctest.h>

using namespace wanderflow;

TEST_CASE("ordinal arithmetic in Cantor normal form") {
    Ordinal two = Ordinal::finite(2);
    Ordinal w = Ordinal::omega();

    CHECK(Ordinal::finite(0).str() == "0");
    CHECK(two.str() == "2");
    CHECK(w.str() == "w");
    CHECK((w + Ordinal::finite(3)).str() == "w+3");
    CHECK((w + w).str() == "w*2");
    CHECK(w.times_omega().str() == "w^2");
    CHECK((w + w + Ordinal::finite(1)).str() == "w*2+1");

    // left addition of a finite part is absorbed
    CHECK((two + w) == w);
    CHECK((two + w + two).str() == "w+2");

    // 2 * w would be w; the times_omega normalization covers that reading
    CHECK(two.times_omega() == w);
    CHECK((w + w).times_omega().str() == "w^2");

    CHECK(w > two);
    CHECK(w.times_omega() > w + Ordinal::finite(100));
    CHECK(Ordinal::max(w, two) == w);
    CHECK(Ordinal::finite(5).finite_value() == 5);
    CHECK_THROWS_AS((void)w.finite_value(), error);
}
