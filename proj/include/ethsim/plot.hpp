#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ethsim/runner.hpp"
#include "ethsim/scenario.hpp"

namespace ethsim {

// Self-contained SVG: arena with goal sites (dangerous in red), agent
// trajectories with start/end markers, enforced override targets, and a
// governor score-spread panel underneath with the enforce threshold line.
// Throws std::runtime_error on an empty trace.
std::string render_plot(const std::vector<TraceRow>& trace,
                        const std::vector<nlohmann::json>& report_rows,
                        const Scenario& sc);

}  // namespace ethsim
