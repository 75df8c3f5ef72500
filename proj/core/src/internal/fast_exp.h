// Copyright 2026 The selclass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SELCLASS_INTERNAL_FAST_EXP_H_
#define SELCLASS_INTERNAL_FAST_EXP_H_

#include <bit>
#include <cmath>
#include <cstdint>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace selclass::internal {

// a * b + c, fused when the target has FMA. Explicit so that the compiler
// never contracts some copies of a kernel and not others.
inline double MulAdd(double a, double b, double c) {
#if defined(__FMA__)
  return std::fma(a, b, c);
#else
  return a * b + c;
#endif
}

namespace exp_detail {

// 2^(j/16), j = 0..15.
inline constexpr double kTable[16] = {
    0x1.0000000000000p+0, 0x1.0b5586cf9890fp+0, 0x1.172b83c7d517bp+0,
    0x1.2387a6e756238p+0, 0x1.306fe0a31b715p+0, 0x1.3dea64c123422p+0,
    0x1.4bfdad5362a27p+0, 0x1.5ab07dd485429p+0, 0x1.6a09e667f3bcdp+0,
    0x1.7a11473eb0187p+0, 0x1.8ace5422aa0dbp+0, 0x1.9c49182a3f090p+0,
    0x1.ae89f995ad3adp+0, 0x1.c199bdd85529cp+0, 0x1.d5818dcfba487p+0,
    0x1.ea4afa2a490dap+0};
inline constexpr double k16Log2e = 0x1.71547652b82fep+4;
// ln(2)/16 split so that k * kLn2Hi is exact.
inline constexpr double kLn2Hi = 0x1.62e42fee00000p-5;
inline constexpr double kLn2Lo = 0x1.a39ef35793c76p-37;
// 1.5 * 2^52: adding it rounds to an integer held in the low mantissa bits.
inline constexpr double kShift = 0x1.8p52;
inline constexpr double kMin = -708.0;
// exp(r) ~ 1 + r + r^2 (c2 + c3 r + ... + c6 r^4) on |r| <= ln(2)/32.
inline constexpr double kC2 = 0x1.0000000000000p-1;
inline constexpr double kC3 = 0x1.55555554dcc9bp-3;
inline constexpr double kC4 = 0x1.55555555190f9p-5;
inline constexpr double kC5 = 0x1.11120b77051e7p-7;
inline constexpr double kC6 = 0x1.6c17bbd1f560ap-10;

}  // namespace exp_detail

// exp(x) for x <= 0, within ~2 ulp of std::exp. Every softmax-derived score
// in the library goes through this function (or ExpNonPositive8, which
// rounds identically) so that tuning and scoring agree bit for bit.
// Arguments below -708 return 0.
inline double ExpNonPositive(double x) {
  using namespace exp_detail;
  const double xc = x > kMin ? x : kMin;
  const double t = MulAdd(xc, k16Log2e, kShift);
  const double k = t - kShift;
  double r = MulAdd(-k, kLn2Hi, xc);
  r = MulAdd(-k, kLn2Lo, r);

  double p = MulAdd(kC6, r, kC5);
  p = MulAdd(p, r, kC4);
  p = MulAdd(p, r, kC3);
  p = MulAdd(p, r, kC2);
  p = MulAdd(p, r * r, r);
  // Low 4 bits of t select 2^(j/16); the next 12 are the binary exponent.
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(t);
  const std::uint64_t scale_bits =
      std::bit_cast<std::uint64_t>(kTable[bits & 15]) + ((bits >> 4) << 52);
  const double scale = std::bit_cast<double>(scale_bits);
  const double v = MulAdd(p, scale, scale);
  return x >= kMin ? v : 0.0;
}

#if defined(__AVX512F__) && defined(__FMA__)
#define SELCLASS_HAVE_EXP8 1

// Eight lanes of ExpNonPositive.
inline __m512d ExpNonPositive8(__m512d x) {
  using namespace exp_detail;
  const __m512d min = _mm512_set1_pd(kMin);
  const __m512d shift = _mm512_set1_pd(kShift);
  const __m512d xc = _mm512_max_pd(x, min);
  const __m512d t = _mm512_fmadd_pd(xc, _mm512_set1_pd(k16Log2e), shift);
  const __m512d k = _mm512_sub_pd(t, shift);
  __m512d r = _mm512_fnmadd_pd(k, _mm512_set1_pd(kLn2Hi), xc);
  r = _mm512_fnmadd_pd(k, _mm512_set1_pd(kLn2Lo), r);

  __m512d p = _mm512_fmadd_pd(_mm512_set1_pd(kC6), r, _mm512_set1_pd(kC5));
  p = _mm512_fmadd_pd(p, r, _mm512_set1_pd(kC4));
  p = _mm512_fmadd_pd(p, r, _mm512_set1_pd(kC3));
  p = _mm512_fmadd_pd(p, r, _mm512_set1_pd(kC2));
  p = _mm512_fmadd_pd(p, _mm512_mul_pd(r, r), r);
  const __m512i bits = _mm512_castpd_si512(t);
  const __m512i lo = _mm512_castpd_si512(_mm512_loadu_pd(kTable));
  const __m512i hi = _mm512_castpd_si512(_mm512_loadu_pd(kTable + 8));
  const __m512i table = _mm512_permutex2var_epi64(lo, bits, hi);
  const __m512d scale = _mm512_castsi512_pd(_mm512_add_epi64(
      table, _mm512_slli_epi64(_mm512_srli_epi64(bits, 4), 52)));
  const __m512d v = _mm512_fmadd_pd(p, scale, scale);
  const __mmask8 keep = _mm512_cmp_pd_mask(x, min, _CMP_GE_OQ);
  return _mm512_maskz_mov_pd(keep, v);
}
#endif

}  // namespace selclass::internal

#endif  // SELCLASS_INTERNAL_FAST_EXP_H_
