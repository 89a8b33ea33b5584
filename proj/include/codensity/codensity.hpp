#pragma once

// Everything except the command layer, which pulls in CLI11 and nlohmann/json.

#include "codensity/config.hpp"
#include "codensity/fincat.hpp"
#include "codensity/finset.hpp"
#include "codensity/generators.hpp"
#include "codensity/isbell.hpp"
#include "codensity/kan.hpp"
#include "codensity/laws.hpp"
#include "codensity/limits.hpp"
#include "codensity/monad.hpp"
#include "codensity/presheaf.hpp"
#include "codensity/search.hpp"
#include "codensity/spec_format.hpp"
#include "codensity/sweeps.hpp"
