#pragma once

#include "pampa/model.hpp"

#include <cstddef>
#include <span>
#include <string_view>

/// Batched variable transformations over arrays of 4-component states.
/// Each kernel has a scalar reference and an AVX2 variant producing
/// bitwise-identical results (same operation order, no fused multiply-add).
namespace pampa::simd {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

/// Whether the AVX2 variant was compiled in and the CPU supports it.
bool available(Isa isa);

/// ISA used by the dispatching entry points. Chosen once from the CPU, and
/// overridable with PAMPA_SIMD=scalar|avx2.
Isa active();

/// Raw kernel signature: n states of 4 contiguous doubles.
using Kernel = void (*)(const double* in, double* out, std::size_t n);

struct KernelSet {
  Kernel pmt_to_cons;
  Kernel cons_to_pmt;
  Kernel prim_to_cons;
  Kernel cons_to_prim;
};

/// Throws std::invalid_argument if the ISA is unavailable.
const KernelSet& kernels(Isa isa);

/// out[i] = from_vars(set, in[i]) with the active ISA. in and out may alias.
void from_vars(VariableSet set, std::span<const Vec4> in, std::span<Vec4> out);
/// out[i] = to_vars(set, in[i]) with the active ISA.
void to_vars(VariableSet set, std::span<const Vec4> in, std::span<Vec4> out);

namespace scalar {
void pmt_to_cons(const double* in, double* out, std::size_t n);
void cons_to_pmt(const double* in, double* out, std::size_t n);
void prim_to_cons(const double* in, double* out, std::size_t n);
void cons_to_prim(const double* in, double* out, std::size_t n);
}  // namespace scalar

#ifdef PAMPA_HAVE_AVX2
namespace avx2 {
void pmt_to_cons(const double* in, double* out, std::size_t n);
void cons_to_pmt(const double* in, double* out, std::size_t n);
void prim_to_cons(const double* in, double* out, std::size_t n);
void cons_to_prim(const double* in, double* out, std::size_t n);
}  // namespace avx2
#endif

}  // namespace pampa::simd
