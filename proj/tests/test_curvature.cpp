#include <doctest.h>

TEST_CASE("placeholder curvature") { CHECK(true); }
