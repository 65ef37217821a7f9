#pragma once

#include "geolex/date.hpp"
#include "geolex/record.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace geolex {

// Deterministic test-data generator. `commuters` users bounce between two
// landmark-sized sites on a weekday schedule; `static` users never move
// more than a few dozen meters; `mixed-drop` is commuters with a mobility
// collapse of drop_percent starting at start + drop_at_day.
struct SynthConfig {
    std::string profile = "commuters"; // commuters | static | mixed-drop
    int n_users = 50;
    int n_days = 30;
    std::uint64_t seed = 42;
    Date start = Date(2020, 1, 6); // a Monday
    double drop_percent = 60.0;
    int drop_at_day = 40;
};

// Calls `sink` once per NDJSON line, in a fixed order; byte-identical for
// identical configs.
void synth(const SynthConfig& config, const std::function<void(const std::string&)>& sink);

// Trips per user that the commuter schedule produces on a weekday
// (0 = Monday). Lets tests compute expected series in closed form.
int synth_trips_per_user(int weekday);

} // namespace geolex
