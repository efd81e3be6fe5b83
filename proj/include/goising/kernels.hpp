#pragma once

// Hot numeric primitives with a scalar reference path and an AVX2 path
// selected at runtime. Both paths are exact-equivalent: closest_pair is pure
// integer math, and moments uses the same fixed 4-lane summation tree in both
// implementations, so results are bit-identical whichever path runs.
//
// Dispatch: the AVX2 path runs only when the CPU reports support and the
// GOISING_NO_SIMD environment variable is unset/empty/"0".

#include <cstdint>
#include <limits>

namespace goising::kernels {

struct PairHit {
    std::int32_t dist2 = std::numeric_limits<std::int32_t>::max();
    std::int32_t a = -1;  // index into the first point set
    std::int32_t b = -1;  // index into the second point set

    friend bool operator==(const PairHit&, const PairHit&) = default;
};

// Closest pair between two integer point sets under squared Euclidean
// distance. Deterministic tie-break: smallest a, then smallest b. Either set
// empty -> the default PairHit (indices -1).
PairHit closest_pair(const std::int32_t* ax, const std::int32_t* ay, int na,
                     const std::int32_t* bx, const std::int32_t* by, int nb);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // population variance

    friend bool operator==(const Moments&, const Moments&) = default;
};

// Two-pass mean and population variance. n = 0 -> zeros.
Moments moments(const double* v, int n);

// "avx2" or "scalar": which path the calls above take on this process.
const char* active_backend();

namespace detail {

// Both paths exposed for direct equivalence testing. The avx2 variants must
// only be called when the CPU supports AVX2.
PairHit closest_pair_scalar(const std::int32_t* ax, const std::int32_t* ay, int na,
                            const std::int32_t* bx, const std::int32_t* by, int nb);
PairHit closest_pair_avx2(const std::int32_t* ax, const std::int32_t* ay, int na,
                          const std::int32_t* bx, const std::int32_t* by, int nb);
Moments moments_scalar(const double* v, int n);
Moments moments_avx2(const double* v, int n);

bool cpu_has_avx2();

// GOISING_NO_SIMD semantics on a raw env value: disabled when set to anything
// other than empty or "0". nullptr (unset) -> not disabled.
bool simd_disabled_by_env(const char* value);

}  // namespace detail

}  // namespace goising::kernels
