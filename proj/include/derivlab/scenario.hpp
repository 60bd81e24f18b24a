#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derivlab/maps.hpp"
#include "derivlab/report.hpp"
#include "derivlab/tower.hpp"

namespace derivlab {

inline constexpr const char* derivlab_version = "0.1.0";

enum class Expectation { Pass, Fail };

// One check invocation, fully resolved and statically validated at parse
// time: map names exist, integer and rational parameters are inside the
// verifier preconditions.
struct CheckSpec {
    std::string kind;
    int line = 0;
    Expectation expect = Expectation::Pass;
    std::map<std::string, std::string> map_args; // role (f, g, F) -> map name
    std::map<std::string, long> ints;            // n, m, k
    std::map<std::string, Rational> rats;        // c, kappa, alpha, beta
    std::optional<MobiusCoeffs> M;
    std::optional<size_t> samples;
};

// Line-oriented scenario: one tower, named maps, checks in declaration order.
// Statements are separated by newlines or ';', comments start with '#'.
//
//   tower Q(t)
//   map D = d/dt with D(t) = 1
//   map f = D + 2*id
//   samples 30
//   check power_rule f=D k=3
//   check linear f=f expect=fail
struct Scenario {
    std::string name;   // bundled demos carry their registry name
    std::string anchor; // identity the scenario exercises, shown in reports
    TowerPtr tower;
    std::vector<std::pair<std::string, AdditiveMap>> maps;
    std::vector<CheckSpec> checks;
    std::optional<size_t> default_samples;

    const AdditiveMap& map_named(const std::string& name) const;
};

struct RunOptions {
    std::string format = "text"; // "text" or "json"
    std::uint64_t seed = 0;      // nonzero appends seeded random samples
    std::optional<size_t> samples;
    bool no_timestamp = false;
    bool serial = false;
    bool swap_mobius_roles = false; // triangle checks swap the f and g roles
};

struct CheckOutcome {
    const CheckSpec* spec;
    VerdictReport report;
    bool expectation_met = false;
};

struct ScenarioResult {
    std::vector<CheckOutcome> outcomes;
    size_t samples_used = 0;
    bool all_met = false;
};

Scenario parse_scenario(const std::string& text);

// One report per check, in declaration order. Verifier errors surface as
// ERROR-status reports; an ERROR never meets any expectation.
ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt);

std::string render_text(const Scenario& s, const ScenarioResult& r, const RunOptions& opt);
std::string render_json(const Scenario& s, const ScenarioResult& r, const RunOptions& opt);

} // namespace derivlab
