#pragma once

#include <iosfwd>
#include <string>

#include "psc/miner.hpp"

namespace psc {

// JSON rendering of a plan: kernel and sizes, then per partition, per group,
// per codelet the kind, extents, descriptors and cost components. Key order
// is fixed so dumps diff cleanly.
std::string plan_to_json(const CodeletPlan& plan, int indent = 2);

void write_plan_json(std::ostream& os, const CodeletPlan& plan, int indent = 2);

}  // namespace psc
