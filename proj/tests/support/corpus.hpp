#pragma once

#include <functional>
#include <string>
#include <vector>

#include "macoord/lasso.hpp"
#include "macoord/ltl.hpp"

namespace macoord::testing {

// Formula texts over the alphabet {p, q} used by the translation
// equivalence checks; mixes every operator, both atoms and nesting depths.
const std::vector<std::string>& formula_corpus();

// Calls fn with every lasso word over num_props propositions with
// |prefix| + |cycle| <= max_len (cycle non-empty).
void for_all_lassos(int num_props, int max_len,
                    const std::function<void(const Lasso&)>& fn);

}  // namespace macoord::testing
