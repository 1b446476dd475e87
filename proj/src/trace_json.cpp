#include "rendezvous/engine.hpp"

namespace rendezvous {

nlohmann::json trace_to_json(const SimulationResult& result) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& ev : result.trace) {
        events.push_back({{"t", ev.t.fraction_str()},
                          {"agent", to_string(ev.agent)},
                          {"kind", to_string(ev.kind)},
                          {"pos", ev.pos.value().fraction_str()},
                          {"pedometer", ev.pedometer.fraction_str()}});
    }
    nlohmann::json doc;
    doc["params"] = {{"n", result.params.n().fraction_str()}, {"c", result.params.c().fraction_str()}};
    doc["placement"] = {{"d", result.d.fraction_str()}};
    doc["program"] = result.program;
    doc["events"] = std::move(events);
    if (result.rendezvous_time) {
        doc["rendezvous"] = {{"t", result.rendezvous_time->fraction_str()},
                             {"pos", result.meeting_point.value().fraction_str()}};
    } else {
        doc["rendezvous"] = nullptr;
    }
    return doc;
}

}  // namespace rendezvous
