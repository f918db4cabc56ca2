#include "doctest.h"
TEST_SUITE("finite_oracle") {}
