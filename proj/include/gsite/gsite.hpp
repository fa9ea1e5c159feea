#pragma once

// Umbrella header: the whole library is header-only.

#include "gsite/checks.hpp"
#include "gsite/cli_app.hpp"
#include "gsite/diagnostics.hpp"
#include "gsite/error.hpp"
#include "gsite/finite_group.hpp"
#include "gsite/generate.hpp"
#include "gsite/gset.hpp"
#include "gsite/presheaf.hpp"
#include "gsite/refine.hpp"
#include "gsite/serialize.hpp"
#include "gsite/sieve.hpp"
#include "gsite/site.hpp"
#include "gsite/spec_io.hpp"
#include "gsite/tower.hpp"
