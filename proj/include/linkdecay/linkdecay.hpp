#pragma once

#include "linkdecay/error.hpp"
#include "linkdecay/evaluation.hpp"
#include "linkdecay/format.hpp"
#include "linkdecay/graph.hpp"
#include "linkdecay/oracle.hpp"
#include "linkdecay/scoring.hpp"
#include "linkdecay/synthgen.hpp"
#include "linkdecay/temporal.hpp"

namespace linkdecay {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace linkdecay
