#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace copulas {

//! engine used by every sampling routine in the library
using RandomEngine = std::mt19937_64;

//! uniform draw strictly inside (0, 1)
//!
//! Maps the top 53 bits of one engine word to the open interval, so
//! streams are identical across standard library implementations.
inline double uniform01(RandomEngine& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

//! unit-rate exponential draw; consumes exactly one engine word
inline double exponential1(RandomEngine& rng)
{
    return -std::log(uniform01(rng));
}

}
