// SPDX-License-Identifier: Apache-2.0
#include "beaconsim/superframe.hpp"

#include <stdexcept>
#include <string>

namespace beaconsim::mac154 {

SuperframeConfig superframe_from(int bo, int so, Tick base) {
  if (bo < 0 || bo > 14) throw std::invalid_argument("superframe: BO must be in [0, 14]");
  if (so < 0 || so > 14) throw std::invalid_argument("superframe: SO must be in [0, 14]");
  if (so > bo)
    throw std::invalid_argument("superframe: SO (" + std::to_string(so) +
                                ") must not exceed BO (" + std::to_string(bo) + ")");
  if (base <= 0) throw std::invalid_argument("superframe: base duration must be positive");
  SuperframeConfig c;
  c.bo = bo;
  c.so = so;
  c.base = base;
  c.bi = base << bo;
  c.sd = base << so;
  c.duty_num = 1;
  c.duty_den = 1 << (bo - so);
  return c;
}

}  // namespace beaconsim::mac154
