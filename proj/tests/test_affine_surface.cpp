#include <doctest.h>

TEST_CASE("placeholder affine_surface") { CHECK(true); }
