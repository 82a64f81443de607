#pragma once

#include "arrangement.hpp"
#include "compress.hpp"
#include "constructions.hpp"
#include "core.hpp"
#include "deciders.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "linalg.hpp"
#include "poset.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "spectral.hpp"
#include "symmetry.hpp"
#include "witness.hpp"

namespace tensorclass {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tensorclass
