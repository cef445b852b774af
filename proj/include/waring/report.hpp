#pragma once

#include <json.hpp>

#include "waring/canonical.hpp"
#include "waring/decomposer.hpp"
#include "waring/oracle.hpp"
#include "waring/power_sums.hpp"

namespace waring {

using json = nlohmann::ordered_json;

json to_json(const Field& field);
json to_json(const SolutionClassification& cls);
json to_json(const DecompositionResult& result);
json to_json(const StructuredPlan& plan);
json to_json(const Obstruction& obstruction);
json to_json(const ConjugationWitness& witness);
json to_json(const LangWeilReport& report);
json to_json(const HomogeneousZeroReport& report);
json to_json(const WaringReport& report);
json to_json(const NegativeReport& report);

}  // namespace waring
