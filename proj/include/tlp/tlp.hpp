#pragma once

#include "tlp/core.hpp"
#include "tlp/gpca.hpp"
#include "tlp/instances.hpp"
#include "tlp/ktns.hpp"
#include "tlp/oracle.hpp"
#include "tlp/tofullmag.hpp"
#include "tlp/bench.hpp"
#include "tlp/verify.hpp"
