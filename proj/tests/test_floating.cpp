#include <doctest.h>

TEST_CASE("placeholder floating") { CHECK(true); }
