#include "triplan/caseio/case.hpp"

#include <algorithm>

#include "triplan/error.hpp"

namespace triplan::caseio {

const char* to_string(Carrier c) {
    switch (c) {
        case Carrier::electricity: return "e";
        case Carrier::heat: return "h";
        case Carrier::cold: return "c";
        case Carrier::gas: return "g";
    }
    return "?";
}

const char* to_string(DeviceKind k) {
    switch (k) {
        case DeviceKind::TL: return "TL";
        case DeviceKind::TP: return "TP";
        case DeviceKind::CCHP: return "CCHP";
        case DeviceKind::GB: return "GB";
        case DeviceKind::AC: return "AC";
    }
    return "?";
}

const char* to_string(ResKind k) {
    switch (k) {
        case ResKind::WT: return "WT";
        case ResKind::PV: return "PV";
    }
    return "?";
}

const char* to_string(EssKind k) {
    switch (k) {
        case EssKind::BESS: return "BESS";
        case EssKind::TESS: return "TESS";
        case EssKind::CESS: return "CESS";
    }
    return "?";
}

Carrier ess_carrier(EssKind k) {
    switch (k) {
        case EssKind::BESS: return Carrier::electricity;
        case EssKind::TESS: return Carrier::heat;
        case EssKind::CESS: return Carrier::cold;
    }
    return Carrier::electricity;
}

bool device_input_is_gas(DeviceKind k) {
    return k == DeviceKind::TP || k == DeviceKind::CCHP || k == DeviceKind::GB;
}

CaseIndex::CaseIndex(const PlanningCase& c) {
    for (std::size_t i = 0; i < c.gas.nodes.size(); ++i)
        node_by_id.emplace(c.gas.nodes[i].id, static_cast<int>(i));
    for (std::size_t i = 0; i < c.electric.buses.size(); ++i)
        bus_by_id.emplace(c.electric.buses[i].id, static_cast<int>(i));
}

int CaseIndex::node(int id) const {
    const auto it = node_by_id.find(id);
    if (it == node_by_id.end()) throw CaseError("unknown gas node id " + std::to_string(id));
    return it->second;
}

int CaseIndex::bus(int id) const {
    const auto it = bus_by_id.find(id);
    if (it == bus_by_id.end()) throw CaseError("unknown bus id " + std::to_string(id));
    return it->second;
}

double gas_channel_cap(const PlanningCase& c) {
    double cap = 0.0;
    for (const auto& r : c.ries)
        for (const auto& d : r.devices)
            if (device_input_is_gas(d.kind)) cap += d.input_max;
    return cap;
}

double elec_channel_cap(const PlanningCase& c) {
    double cap = 0.0;
    for (const auto& r : c.ries)
        for (const auto& d : r.devices)
            if (d.kind == DeviceKind::TL || d.kind == DeviceKind::AC) cap += d.input_max;
    return cap;
}

}  // namespace triplan::caseio
