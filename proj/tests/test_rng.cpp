// Copyright 2025 The adp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <vector>

#include "adp/rng.hpp"
#include "doctest.h"

using adp::Rng;

TEST_SUITE("rng") {

// Reference outputs computed with an independent reimplementation of
// splitmix64 seeding + xoshiro256++ (Blackman/Vigna reference algorithm).
TEST_CASE("matches xoshiro256++ reference sequence") {
    Rng r(42);
    CHECK(r.next_u64() == 15021278609987233951ULL);
    CHECK(r.next_u64() == 5881210131331364753ULL);
    CHECK(r.next_u64() == 18149643915985481100ULL);

    CHECK(Rng(0).next_u64() == 5987356902031041503ULL);
    CHECK(Rng(42).uniform() == doctest::Approx(0.81430514512290986).epsilon(1e-16));
}

TEST_CASE("same seed reproduces the stream bitwise") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
    Rng c(123), d(123);
    for (int i = 0; i < 100; ++i) {
        REQUIRE(c.uniform() == d.uniform());
        REQUIRE(c.normal() == d.normal());
    }
}

TEST_CASE("distinct seeds give distinct streams") {
    Rng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (a.next_u64() == b.next_u64());
    CHECK(same == 0);
}

TEST_CASE("derive is const and independent of draw position") {
    Rng r(42);
    Rng d0 = r.derive(7);
    CHECK(d0.next_u64() == 4577956811576599227ULL);

    // Consuming draws from the parent must not change what derive yields.
    for (int i = 0; i < 57; ++i) (void)r.next_u64();
    Rng d1 = r.derive(7);
    CHECK(d1.next_u64() == 4577956811576599227ULL);

    // Distinct keys decorrelate.
    Rng e = r.derive(8);
    CHECK(e.next_u64() != 4577956811576599227ULL);
}

TEST_CASE("uniform stays in [0,1) and respects bounds") {
    Rng r(7);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform(-3.0, 5.0);
        REQUIRE(u >= -3.0);
        REQUIRE(u < 5.0);
    }
}

TEST_CASE("uniform moments") {
    Rng r(11);
    const int n = 200000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        s += u;
        s2 += u * u;
    }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    // SE(mean) ~ 1/sqrt(12 n) ~ 6.5e-4.
    CHECK(std::abs(mean - 0.5) < 4e-3);
    CHECK(std::abs(var - 1.0 / 12.0) < 4e-3);
}

TEST_CASE("normal moments") {
    Rng r(13);
    const int n = 200000;
    double s = 0, s2 = 0, s3 = 0, s4 = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        s += z;
        s2 += z * z;
        s3 += z * z * z;
        s4 += z * z * z * z;
    }
    CHECK(std::abs(s / n) < 0.02);
    CHECK(std::abs(s2 / n - 1.0) < 0.03);
    CHECK(std::abs(s3 / n) < 0.1);
    CHECK(std::abs(s4 / n - 3.0) < 0.2);
}

TEST_CASE("normal spare does not leak across copies") {
    // The Box-Muller spare is per-object state; copies must replay it.
    Rng r(99);
    (void)r.normal();  // spare now primed
    Rng copy = r;
    CHECK(r.normal() == copy.normal());
    CHECK(r.normal() == copy.normal());
}

}  // TEST_SUITE
