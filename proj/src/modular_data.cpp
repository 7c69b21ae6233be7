#include "isocensus/families.hpp"

namespace isocensus {

// Lines "n dx dy coeff"; both (dx, dy) and (dy, dx) are listed.
const char* builtin_modular_data() {
  return R"(
2 0 0 -157464000000000
2 0 1 8748000000
2 1 0 8748000000
2 0 2 -162000
2 2 0 -162000
2 0 3 1
2 3 0 1
2 1 1 40773375
2 1 2 1488
2 2 1 1488
2 2 2 -1
3 0 1 1855425871872000000000
3 1 0 1855425871872000000000
3 0 2 452984832000000
3 2 0 452984832000000
3 0 3 36864000
3 3 0 36864000
3 0 4 1
3 4 0 1
3 1 1 -770845966336000000
3 1 2 8900222976000
3 2 1 8900222976000
3 1 3 -1069956
3 3 1 -1069956
3 2 2 2587918086
3 2 3 2232
3 3 2 2232
3 3 3 -1
4 0 0 280949374722195372109640625000000000000
4 0 1 -364936327796757658404375000000000000
4 1 0 -364936327796757658404375000000000000
4 0 2 158010236947953767724187500000000
4 2 0 158010236947953767724187500000000
4 0 3 -22805180351548032195000000000
4 3 0 -22805180351548032195000000000
4 0 4 24125474716854750000
4 4 0 24125474716854750000
4 0 5 -8507430000
4 5 0 -8507430000
4 0 6 1
4 6 0 1
4 1 1 -94266583063223403127324218750000
4 1 2 188656639464998455284287109375
4 2 1 188656639464998455284287109375
4 1 3 12519806366846423598750000
4 3 1 12519806366846423598750000
4 1 4 1194227244109980000
4 4 1 1194227244109980000
4 1 5 561444609
4 5 1 561444609
4 2 2 26402314839969410496000000
4 2 3 -914362550706103200000
4 3 2 -914362550706103200000
4 2 4 1425220456750080
4 4 2 1425220456750080
4 2 5 -2533680
4 5 2 -2533680
4 3 3 2729942049541120
4 3 4 80967606480
4 4 3 80967606480
4 3 5 2976
4 5 3 2976
4 4 4 7440
4 4 5 -1
4 5 4 -1
)";
}

}  // namespace isocensus
