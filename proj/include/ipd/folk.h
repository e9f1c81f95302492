#pragma once

#include "ipd/smale.h"

namespace ipd {

enum class FolkCase { paths = 1, good = 2, mixed = 3 };

struct FolkPair {
  SmalePlan x;
  SmalePlan y;
  PointQ payoff;
  FolkCase which;
};

// Strong Nash pair of Smale plans with payoff s*; needs s* in the hull with s*_X, s*_Y > P.
FolkPair folk_pair(const GameParams& g, const PointQ& s);

const char* folk_case_name(FolkCase c);

}  // namespace ipd
