#pragma once

#include "nfsm/errors.hpp"
#include "nfsm/instance.hpp"
#include "nfsm/io.hpp"
#include "nfsm/random.hpp"
#include "nfsm/stability.hpp"
#include "nfsm/gsp.hpp"
#include "nfsm/near_feasible.hpp"
#include "nfsm/exact.hpp"
#include "nfsm/ilp.hpp"
#include "nfsm/harness.hpp"
