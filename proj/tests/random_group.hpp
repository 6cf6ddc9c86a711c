#pragma once

#include <vector>

#include "random_elems.hpp"

namespace iwalog::testing {

inline std::vector<AbelianLGroup> test_groups() {
  return {AbelianLGroup(3, {1}), AbelianLGroup(3, {2}), AbelianLGroup(3, {1, 1}), AbelianLGroup(5, {1})};
}

inline GroupRingElem zero_like(const GroupRingElem& x) { return GroupRingElem(x.group(), x.prec(), x.hi()); }

// x vanishes mod l^n on its whole window.
inline bool vanishes(const GroupRingElem& x, int n) { return x.congruent(zero_like(x), n, x.window()); }

}  // namespace iwalog::testing
