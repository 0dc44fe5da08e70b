// SPDX-License-Identifier: Apache-2.0

#include "sgru/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace sgru::kernels {
namespace {

struct Selected {
  const Ops* ops;
  const char* name;
};

Selected select_from_name(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return {&scalar_ops(), "scalar"};
  if (std::strcmp(name, "avx2") == 0) {
    const Ops* v = avx2_ops();
    if (!v)
      throw std::invalid_argument("kernel backend 'avx2' not supported on this CPU");
    return {v, "avx2"};
  }
  throw std::invalid_argument(std::string("unknown kernel backend '") + name + "'");
}

Selected auto_select() {
  if (const char* env = std::getenv("SGRU_KERNELS")) return select_from_name(env);
  if (const Ops* v = avx2_ops()) return {v, "avx2"};
  return {&scalar_ops(), "scalar"};
}

Selected& current() {
  static Selected sel = auto_select();
  return sel;
}

}  // namespace

const Ops& active() { return *current().ops; }

const char* active_name() { return current().name; }

void force_backend(const char* name) { current() = select_from_name(name); }

}  // namespace sgru::kernels
