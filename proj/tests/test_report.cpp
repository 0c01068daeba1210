#include <doctest.h>

TEST_CASE("placeholder report") { CHECK(true); }
