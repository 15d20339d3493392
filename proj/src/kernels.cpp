#include "dph/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace dph::kernels {

const kernel_table* avx2_impl();   // defined in kernels_avx2.cpp

const kernel_table* avx2() { return avx2_impl(); }

const kernel_table& active() {
  static const kernel_table& chosen = []() -> const kernel_table& {
    const char* env = std::getenv("DPH_KERNELS");
    if (env != nullptr) {
      std::string_view want(env);
      if (want == "scalar") return scalar();
      if (want == "avx2") {
        if (const kernel_table* t = avx2()) return *t;
        throw std::runtime_error("DPH_KERNELS=avx2 requested but AVX2 is unavailable");
      }
      if (!want.empty()) throw std::runtime_error("unknown DPH_KERNELS value");
    }
    if (const kernel_table* t = avx2()) return *t;
    return scalar();
  }();
  return chosen;
}

}  // namespace dph::kernels
