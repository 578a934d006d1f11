// Built with -mavx2 and without FMA. Must not include Eigen: its alignment
// settings depend on the enabled ISA.
#include <immintrin.h>

#include <cstddef>

namespace pampa::simd {
namespace scalar {
void pmt_to_cons(const double* in, double* out, std::size_t n);
void cons_to_pmt(const double* in, double* out, std::size_t n);
void prim_to_cons(const double* in, double* out, std::size_t n);
void cons_to_prim(const double* in, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {

namespace {

inline void transpose(__m256d& r0, __m256d& r1, __m256d& r2, __m256d& r3) {
  const __m256d t0 = _mm256_unpacklo_pd(r0, r1);
  const __m256d t1 = _mm256_unpackhi_pd(r0, r1);
  const __m256d t2 = _mm256_unpacklo_pd(r2, r3);
  const __m256d t3 = _mm256_unpackhi_pd(r2, r3);
  r0 = _mm256_permute2f128_pd(t0, t2, 0x20);
  r1 = _mm256_permute2f128_pd(t1, t3, 0x20);
  r2 = _mm256_permute2f128_pd(t0, t2, 0x31);
  r3 = _mm256_permute2f128_pd(t1, t3, 0x31);
}

// Loads four states, hands the components to op as SoA registers, and
// stores the result back as AoS.
template <class Op>
void batched(const double* in, double* out, std::size_t n, Op op,
             void (*tail)(const double*, double*, std::size_t)) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4, in += 16, out += 16) {
    __m256d a = _mm256_loadu_pd(in);
    __m256d b = _mm256_loadu_pd(in + 4);
    __m256d c = _mm256_loadu_pd(in + 8);
    __m256d d = _mm256_loadu_pd(in + 12);
    transpose(a, b, c, d);
    op(a, b, c, d);
    transpose(a, b, c, d);
    _mm256_storeu_pd(out, a);
    _mm256_storeu_pd(out + 4, b);
    _mm256_storeu_pd(out + 8, c);
    _mm256_storeu_pd(out + 12, d);
  }
  tail(in, out, n - i);
}

}  // namespace

void pmt_to_cons(const double* in, double* out, std::size_t n) {
  batched(in, out, n, [](__m256d& p, __m256d&, __m256d&, __m256d& t) {
    const __m256d h = _mm256_sqrt_pd(_mm256_div_pd(p, t));
    const __m256d ht = _mm256_sqrt_pd(_mm256_mul_pd(p, t));
    p = h;
    t = ht;
  }, scalar::pmt_to_cons);
}

void cons_to_pmt(const double* in, double* out, std::size_t n) {
  batched(in, out, n, [](__m256d& h, __m256d&, __m256d&, __m256d& ht) {
    const __m256d p = _mm256_mul_pd(h, ht);
    const __m256d t = _mm256_div_pd(ht, h);
    h = p;
    ht = t;
  }, scalar::cons_to_pmt);
}

void prim_to_cons(const double* in, double* out, std::size_t n) {
  batched(in, out, n, [](__m256d& h, __m256d& u, __m256d& v, __m256d& t) {
    u = _mm256_mul_pd(h, u);
    v = _mm256_mul_pd(h, v);
    t = _mm256_mul_pd(h, t);
  }, scalar::prim_to_cons);
}

void cons_to_prim(const double* in, double* out, std::size_t n) {
  batched(in, out, n, [](__m256d& h, __m256d& hu, __m256d& hv, __m256d& ht) {
    hu = _mm256_div_pd(hu, h);
    hv = _mm256_div_pd(hv, h);
    ht = _mm256_div_pd(ht, h);
  }, scalar::cons_to_prim);
}

}  // namespace avx2
}  // namespace pampa::simd
