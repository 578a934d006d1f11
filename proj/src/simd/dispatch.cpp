#include "pampa/simd/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pampa::simd {

namespace {

constexpr KernelSet kScalar{scalar::pmt_to_cons, scalar::cons_to_pmt, scalar::prim_to_cons,
                            scalar::cons_to_prim};
#ifdef PAMPA_HAVE_AVX2
constexpr KernelSet kAvx2{avx2::pmt_to_cons, avx2::cons_to_pmt, avx2::prim_to_cons,
                          avx2::cons_to_prim};
#endif

Isa detect() {
  if (const char* env = std::getenv("PAMPA_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && available(Isa::Avx2)) return Isa::Avx2;
  }
  return available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const double* raw(std::span<const Vec4> s) { return s.empty() ? nullptr : s[0].data(); }
double* raw(std::span<Vec4> s) { return s.empty() ? nullptr : s[0].data(); }

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd: input and output sizes differ");
}

}  // namespace

std::string_view name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(PAMPA_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active() {
  static const Isa isa = detect();
  return isa;
}

const KernelSet& kernels(Isa isa) {
  if (!available(isa)) throw std::invalid_argument("simd: " + std::string(name(isa)) + " unavailable");
#ifdef PAMPA_HAVE_AVX2
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

void from_vars(VariableSet set, std::span<const Vec4> in, std::span<Vec4> out) {
  check_sizes(in.size(), out.size());
  const KernelSet& k = kernels(active());
  (set == VariableSet::Pmt ? k.pmt_to_cons : k.prim_to_cons)(raw(in), raw(out), in.size());
}

void to_vars(VariableSet set, std::span<const Vec4> in, std::span<Vec4> out) {
  check_sizes(in.size(), out.size());
  const KernelSet& k = kernels(active());
  (set == VariableSet::Pmt ? k.cons_to_pmt : k.cons_to_prim)(raw(in), raw(out), in.size());
}

}  // namespace pampa::simd
