#pragma once

#include <optional>
#include <variant>

#include "iafc/memory_analysis.hpp"
#include "iafc/zeeman.hpp"

namespace iafc {

struct IdealCombSpec {
    int teeth = 0;
    double spacing = 0.0;      // rad/s
    double tooth_width = 0.0;  // rad/s
    double g_eff = 0.0;        // rad/s
};

struct AtomicCombSpec {
    const AtomSpec* atom = nullptr;  // owned by an AtomDatabase outliving the context
    double b_field = 0.0;            // T
    int q = 1;                       // polarisation component
    std::optional<double> carrier;   // absolute rad/s; nullopt = auto-centred
};

using CombSource = std::variant<IdealCombSpec, AtomicCombSpec>;

// Everything one efficiency evaluation needs.
struct SimContext {
    CombSource comb;
    CavityParams cavity;
    Pulse pulse;
    GridBudget budget;
};

FrequencyComb realize_comb(const SimContext&);

struct EchoOutcome {
    double eta = 0.0;
    std::optional<double> echo_delay;  // past t0, s
    EchoWindow window;
    double input_energy = 0.0;
    double window_energy = 0.0;
    double output_energy = 0.0;
    double delta_eff = 0.0;  // rad/s
    double t0 = 0.0;         // effective pulse centre after the 5/gamma_p floor
    bool purcell = false;
    SimGrid grid;
};

struct SimRun {
    EchoOutcome outcome;
    FrequencyComb comb;
    InputPulse input;
    Waveform output;
};

// Full pipeline: comb -> grid -> Gaussian input -> transfer -> echo analysis.
// The configured pulse centre is raised to 5/gamma_p when needed so the pulse
// always fits; the efficiency window rides on the effective centre, so this
// shift does not bias eta.
SimRun simulate(const SimContext&);
EchoOutcome evaluate(const SimContext&);

}  // namespace iafc
