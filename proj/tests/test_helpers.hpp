#pragma once

#include "patchdyn/config.hpp"

namespace testing_support {

// Default macro parameters with the coarse micro grid.
inline patchdyn::MacroConfig coarse_config(int nt = 1000) {
  patchdyn::MacroConfig c;
  c.n_macro_steps = nt;
  c.delta_t = 1.0 / nt;
  return c;
}

inline patchdyn::ValidatedConfig coarse(int nt = 1000) {
  return patchdyn::require_valid(coarse_config(nt));
}

}  // namespace testing_support
