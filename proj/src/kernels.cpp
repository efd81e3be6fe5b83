#include "goising/kernels.hpp"

#include <immintrin.h>

#include <cstdlib>
#include <string_view>

namespace goising::kernels {

namespace detail {

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }

bool simd_disabled_by_env(const char* value) {
    if (value == nullptr) return false;
    std::string_view v(value);
    return !v.empty() && v != "0";
}

PairHit closest_pair_scalar(const std::int32_t* ax, const std::int32_t* ay, int na,
                            const std::int32_t* bx, const std::int32_t* by, int nb) {
    PairHit best;
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            const std::int32_t dx = ax[i] - bx[j];
            const std::int32_t dy = ay[i] - by[j];
            const std::int32_t d2 = dx * dx + dy * dy;
            if (d2 < best.dist2) {
                best.dist2 = d2;
                best.a = i;
                best.b = j;
            }
        }
    }
    return best;
}

__attribute__((target("avx2"))) PairHit closest_pair_avx2(const std::int32_t* ax,
                                                          const std::int32_t* ay, int na,
                                                          const std::int32_t* bx,
                                                          const std::int32_t* by, int nb) {
    PairHit best;
    const int vec_end = nb - (nb % 8);
    for (int i = 0; i < na; ++i) {
        const __m256i xi = _mm256_set1_epi32(ax[i]);
        const __m256i yi = _mm256_set1_epi32(ay[i]);

        std::int32_t row_min = best.dist2;
        std::int32_t row_b = -1;
        if (vec_end > 0) {
            // Per-lane minimum; strict less keeps the earliest index per lane.
            __m256i lane_min = _mm256_set1_epi32(std::numeric_limits<std::int32_t>::max());
            __m256i lane_idx = _mm256_set1_epi32(-1);
            const __m256i step = _mm256_set1_epi32(8);
            __m256i idx = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
            for (int j = 0; j < vec_end; j += 8) {
                const __m256i dx =
                    _mm256_sub_epi32(xi, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bx + j)));
                const __m256i dy =
                    _mm256_sub_epi32(yi, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(by + j)));
                const __m256i d2 =
                    _mm256_add_epi32(_mm256_mullo_epi32(dx, dx), _mm256_mullo_epi32(dy, dy));
                const __m256i lt = _mm256_cmpgt_epi32(lane_min, d2);  // d2 < lane_min
                lane_min = _mm256_blendv_epi8(lane_min, d2, lt);
                lane_idx = _mm256_blendv_epi8(lane_idx, idx, lt);
                idx = _mm256_add_epi32(idx, step);
            }
            alignas(32) std::int32_t mins[8];
            alignas(32) std::int32_t idxs[8];
            _mm256_store_si256(reinterpret_cast<__m256i*>(mins), lane_min);
            _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), lane_idx);
            for (int l = 0; l < 8; ++l) {
                if (mins[l] < row_min || (mins[l] == row_min && idxs[l] < row_b)) {
                    row_min = mins[l];
                    row_b = idxs[l];
                }
            }
        }
        for (int j = vec_end; j < nb; ++j) {
            const std::int32_t dx = ax[i] - bx[j];
            const std::int32_t dy = ay[i] - by[j];
            const std::int32_t d2 = dx * dx + dy * dy;
            if (d2 < row_min) {
                row_min = d2;
                row_b = j;
            }
        }
        // row_min started at best.dist2, so a strict improvement in this row
        // is exactly "row_b found something better than best".
        if (row_b >= 0 && (row_min < best.dist2 || best.a < 0)) {
            best.dist2 = row_min;
            best.a = i;
            best.b = row_b;
        }
    }
    return best;
}

namespace {

// Shared 4-lane summation tree: lane l accumulates v[l], v[l+4], ... and the
// lanes combine as (s0+s1)+(s2+s3). The AVX2 path reproduces this exactly,
// which keeps both paths bit-identical.
double lane_sum_scalar(const double* v, int n, double shift) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const int vec_end = n - (n % 4);
    for (int i = 0; i < vec_end; i += 4) {
        const double d0 = v[i] - shift;
        const double d1 = v[i + 1] - shift;
        const double d2 = v[i + 2] - shift;
        const double d3 = v[i + 3] - shift;
        s[0] += d0 * d0;
        s[1] += d1 * d1;
        s[2] += d2 * d2;
        s[3] += d3 * d3;
    }
    for (int i = vec_end; i < n; ++i) {
        const double d = v[i] - shift;
        s[i % 4] += d * d;
    }
    return (s[0] + s[1]) + (s[2] + s[3]);
}

double lane_plain_sum_scalar(const double* v, int n) {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    const int vec_end = n - (n % 4);
    for (int i = 0; i < vec_end; i += 4) {
        s[0] += v[i];
        s[1] += v[i + 1];
        s[2] += v[i + 2];
        s[3] += v[i + 3];
    }
    for (int i = vec_end; i < n; ++i) s[i % 4] += v[i];
    return (s[0] + s[1]) + (s[2] + s[3]);
}

}  // namespace

Moments moments_scalar(const double* v, int n) {
    if (n <= 0) return {};
    const double mean = lane_plain_sum_scalar(v, n) / n;
    const double ss = lane_sum_scalar(v, n, mean);
    return {mean, ss / n};
}

__attribute__((target("avx2"))) Moments moments_avx2(const double* v, int n) {
    if (n <= 0) return {};
    const int vec_end = n - (n % 4);

    __m256d acc = _mm256_setzero_pd();
    for (int i = 0; i < vec_end; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    for (int i = vec_end; i < n; ++i) s[i % 4] += v[i];
    const double mean = ((s[0] + s[1]) + (s[2] + s[3])) / n;

    const __m256d shift = _mm256_set1_pd(mean);
    __m256d acc2 = _mm256_setzero_pd();
    for (int i = 0; i < vec_end; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), shift);
        acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(d, d));
    }
    _mm256_store_pd(s, acc2);
    for (int i = vec_end; i < n; ++i) {
        const double d = v[i] - mean;
        s[i % 4] += d * d;
    }
    const double ss = (s[0] + s[1]) + (s[2] + s[3]);
    return {mean, ss / n};
}

}  // namespace detail

namespace {

bool use_avx2() {
    static const bool enabled = detail::cpu_has_avx2() &&
                                !detail::simd_disabled_by_env(std::getenv("GOISING_NO_SIMD"));
    return enabled;
}

}  // namespace

const char* active_backend() { return use_avx2() ? "avx2" : "scalar"; }

PairHit closest_pair(const std::int32_t* ax, const std::int32_t* ay, int na,
                     const std::int32_t* bx, const std::int32_t* by, int nb) {
    if (use_avx2()) return detail::closest_pair_avx2(ax, ay, na, bx, by, nb);
    return detail::closest_pair_scalar(ax, ay, na, bx, by, nb);
}

Moments moments(const double* v, int n) {
    if (use_avx2()) return detail::moments_avx2(v, n);
    return detail::moments_scalar(v, n);
}

}  // namespace goising::kernels
