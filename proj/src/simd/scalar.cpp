#include "pampa/simd/kernels.hpp"

#include <cmath>

namespace pampa::simd::scalar {

void pmt_to_cons(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i, in += 4, out += 4) {
    const double p = in[0], hu = in[1], hv = in[2], t = in[3];
    out[0] = std::sqrt(p / t);
    out[1] = hu;
    out[2] = hv;
    out[3] = std::sqrt(p * t);
  }
}

void cons_to_pmt(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i, in += 4, out += 4) {
    const double h = in[0], hu = in[1], hv = in[2], ht = in[3];
    out[0] = h * ht;
    out[1] = hu;
    out[2] = hv;
    out[3] = ht / h;
  }
}

void prim_to_cons(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i, in += 4, out += 4) {
    const double h = in[0], u = in[1], v = in[2], t = in[3];
    out[0] = h;
    out[1] = h * u;
    out[2] = h * v;
    out[3] = h * t;
  }
}

void cons_to_prim(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i, in += 4, out += 4) {
    const double h = in[0], hu = in[1], hv = in[2], ht = in[3];
    out[0] = h;
    out[1] = hu / h;
    out[2] = hv / h;
    out[3] = ht / h;
  }
}

}  // namespace pampa::simd::scalar
