#include "pcpkit/kernels.hpp"

#include <atomic>
#include <string>

#include "pcpkit/errors.hpp"

namespace pcpkit::kernels {

#ifndef PCPKIT_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(PCPKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  return (avx2_table() != nullptr && cpu_supports(Isa::kAvx2)) ? Isa::kAvx2
                                                               : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const KernelTable& active() {
  return current().load(std::memory_order_relaxed) == Isa::kAvx2 ? *avx2_table()
                                                                 : scalar_table();
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (isa == Isa::kAvx2 && (avx2_table() == nullptr || !cpu_supports(isa)))
    throw InvalidInput("kernel variant " + std::string(to_string(isa)) +
                       " is not available on this build/CPU");
  current().store(isa, std::memory_order_relaxed);
}

void select_auto() { current().store(detect(), std::memory_order_relaxed); }

std::string_view to_string(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

}  // namespace pcpkit::kernels
