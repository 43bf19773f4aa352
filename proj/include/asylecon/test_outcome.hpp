#pragma once

#include <limits>
#include <string>

namespace asylecon::econ {

enum class Decision { accept, reject, undecided };

const char* decision_name(Decision d);

// Uniform record of one hypothesis test. "accept"/"reject" refer to the
// hypothesis named in `name` and spelled out in `detail`; the bounds test is
// the only producer of "undecided".
struct TestOutcome {
    std::string name;
    double statistic = 0.0;
    double reference = 0.0;  // critical value the statistic was compared against
    double p_value = std::numeric_limits<double>::quiet_NaN();
    double alpha = 0.05;
    Decision decision = Decision::accept;
    std::string detail;
};

enum class Group { higher, similar, lower };

const char* group_name(Group g);

}  // namespace asylecon::econ
