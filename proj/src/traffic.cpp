#include "ringcap/traffic.hpp"

namespace ringcap {

const char* to_string(TrafficClass c) {
    switch (c) {
        case TrafficClass::uniform: return "uniform";
        case TrafficClass::hotspot_dest: return "hotspot_dest";
        case TrafficClass::hotspot_src: return "hotspot_src";
    }
    return "?";
}

FanoutPreset parse_fanout_preset(std::string_view name) {
    if (name == "UC" || name == "uc" || name == "unicast") return FanoutPreset::unicast;
    if (name == "MI" || name == "mi" || name == "mixed") return FanoutPreset::mixed;
    if (name == "MC" || name == "mc" || name == "multicast") return FanoutPreset::multicast;
    if (name == "BC" || name == "bc" || name == "broadcast") return FanoutPreset::broadcast;
    if (name == "paper-fig2" || name == "fig2") return FanoutPreset::paper_fig2;
    throw std::invalid_argument("unknown fanout preset '" + std::string(name) +
                                "' (expected UC, MI, MC, BC or paper-fig2)");
}

const char* to_string(FanoutPreset p) {
    switch (p) {
        case FanoutPreset::unicast: return "UC";
        case FanoutPreset::mixed: return "MI";
        case FanoutPreset::multicast: return "MC";
        case FanoutPreset::broadcast: return "BC";
        case FanoutPreset::paper_fig2: return "paper-fig2";
    }
    return "?";
}

}  // namespace ringcap
