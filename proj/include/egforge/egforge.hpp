#pragma once

// Umbrella header: the whole library.

#include "egforge/attacks.hpp"
#include "egforge/audit.hpp"
#include "egforge/digest.hpp"
#include "egforge/dlog.hpp"
#include "egforge/elgamal.hpp"
#include "egforge/errors.hpp"
#include "egforge/keys.hpp"
#include "egforge/natural.hpp"
#include "egforge/numtheory.hpp"
#include "egforge/rng.hpp"
#include "egforge/serial.hpp"
