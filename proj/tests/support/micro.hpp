#pragma once

// Smallest interesting instance family: every cardinality 2 except the
// central-hub layer, one machine per stage, one stage. Small enough for the
// structured enumeration oracle, rich enough to exercise every constraint
// group.

#include "hubshop/generate.hpp"

namespace hubshop::test_support {

inline GenSpec micro_spec(int centralHubs) {
    GenSpec g;
    g.nStages = 1;
    g.nNCHC = 2;
    g.nProducts = 2;
    g.nCentralHubs = centralHubs;
    g.nFactories = 2;
    g.nNCHF = 2;
    g.nCustomers = 2;
    g.maxMachines = 1;
    g.prMax = 2;
    return g;
}

}  // namespace hubshop::test_support
