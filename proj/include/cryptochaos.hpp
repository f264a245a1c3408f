#pragma once

#include "cryptochaos/error.hpp"
#include "cryptochaos/bytes.hpp"
#include "cryptochaos/primitives.hpp"
#include "cryptochaos/random.hpp"
#include "cryptochaos/blake3.hpp"
#include "cryptochaos/chaos.hpp"
#include "cryptochaos/keyforge.hpp"
#include "cryptochaos/envelope.hpp"
#include "cryptochaos/image.hpp"
#include "cryptochaos/metrics.hpp"
#include "cryptochaos/special_functions.hpp"
#include "cryptochaos/nist.hpp"
#include "cryptochaos/quantum.hpp"
#include "cryptochaos/bench.hpp"
#include "cryptochaos/report.hpp"
