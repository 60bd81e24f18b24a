#pragma once

#include <string>
#include <vector>

namespace derivlab {

// Bundled scenario: name for `derivlab demo <name>`, the identity it
// exercises (shown in report headers and `derivlab list`), and the source.
struct DemoScenario {
    std::string name;
    std::string anchor;
    std::string text;
};

const std::vector<DemoScenario>& bundled_demos();
const DemoScenario* find_demo(const std::string& name);

} // namespace derivlab
