/*
 Copyright 2025 The adp Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef ADP_RNG_HPP
#define ADP_RNG_HPP

#include <cstdint>

namespace adp {

/**
 * @brief Seedable random stream (xoshiro256++ with splitmix64 seeding).
 *
 * A self-contained generator is used instead of <random> distributions so
 * that every draw is bit-reproducible across compilers and standard
 * libraries; experiment outputs are compared byte-for-byte.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Next raw 64-bit word.
    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal draw (Box-Muller; the second deviate is cached).
    double normal();

    /**
     * @brief Independent substream for a given key.
     *
     * Depends only on the construction seed and the key, never on how many
     * draws this stream has produced, so parallel or reordered consumers
     * derive identical substreams.
     */
    Rng derive(std::uint64_t key) const;

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace adp

#endif  // ADP_RNG_HPP
