#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace triplan::caseio {

// Units: power MW, energy MWh, gas flow m3/h, money M$. Gas-fired conversion
// device columns of the energy hub are scaled by the case-level
// gas_mwh_per_m3 factor, so hub entries stay dimensionless efficiencies.

struct GasNode {
    int id = 0;
    double pressure_min = 0.0;
    double pressure_max = 0.0;
    std::vector<double> load;  // length T, m3/h

    bool operator==(const GasNode&) const = default;
};

struct GasSource {
    int id = 0;
    int node = 0;
    double p_min = 0.0;
    double p_max = 0.0;
    double ramp_down = 0.0;
    double ramp_up = 0.0;
    double cost = 0.0;  // M$ per m3

    bool operator==(const GasSource&) const = default;
};

struct Pipe {
    int id = 0;
    int from = 0;
    int to = 0;
    double weymouth = 0.0;  // W in GF|GF| = W^2 (I_from - I_to)
    double flow_max = 0.0;
    double invest_cost = 0.0;  // zero for existing pipes
    bool compressor_allowed = false;
    double compressor_cost = 0.0;

    bool operator==(const Pipe&) const = default;
};

struct GasSystem {
    std::vector<GasNode> nodes;
    std::vector<GasSource> sources;
    std::vector<Pipe> existing_pipes;
    std::vector<Pipe> candidate_pipes;

    bool operator==(const GasSystem&) const = default;
};

struct Bus {
    int id = 0;
    std::vector<double> load;  // length T, MW

    bool operator==(const Bus&) const = default;
};

struct Generator {
    int id = 0;
    int bus = 0;
    double p_min = 0.0;
    double p_max = 0.0;
    double ramp_down = 0.0;
    double ramp_up = 0.0;
    int min_up = 1;
    int min_down = 1;
    double cost = 0.0;  // M$ per MWh

    bool operator==(const Generator&) const = default;
};

struct Line {
    int id = 0;
    int from = 0;
    int to = 0;
    double reactance = 0.0;
    double flow_max = 0.0;
    double invest_cost = 0.0;  // zero for existing lines

    bool operator==(const Line&) const = default;
};

struct ElectricSystem {
    int slack_bus = 0;
    std::vector<Bus> buses;
    std::vector<Generator> generators;
    std::vector<Line> existing_lines;
    std::vector<Line> candidate_lines;

    bool operator==(const ElectricSystem&) const = default;
};

enum class Carrier { electricity, heat, cold, gas };
enum class DeviceKind { TL, TP, CCHP, GB, AC };
enum class ResKind { WT, PV };
enum class EssKind { BESS, TESS, CESS };

[[nodiscard]] const char* to_string(Carrier c);
[[nodiscard]] const char* to_string(DeviceKind k);
[[nodiscard]] const char* to_string(ResKind k);
[[nodiscard]] const char* to_string(EssKind k);
[[nodiscard]] Carrier ess_carrier(EssKind k);  // BESS->e, TESS->h, CESS->c
[[nodiscard]] bool device_input_is_gas(DeviceKind k);  // TP, CCHP, GB draw gas

struct Device {
    DeviceKind kind = DeviceKind::TL;
    std::map<Carrier, double> outputs;  // hub column: carrier -> efficiency
    double input_max = 0.0;
    double cost = 0.0;

    bool operator==(const Device&) const = default;
};

struct ResOption {
    ResKind kind = ResKind::WT;
    std::vector<double> profile;  // per-module max output, length T
    double cost = 0.0;            // per module
    int max_modules = 0;

    bool operator==(const ResOption&) const = default;
};

struct EssOption {
    EssKind kind = EssKind::BESS;
    double eta_ch = 1.0;
    double eta_dis = 1.0;
    double charge_max = 0.0;     // per module
    double discharge_max = 0.0;  // per module
    double soc_min = 0.0;        // per module
    double soc_max = 0.0;        // per module
    double cost = 0.0;           // per module
    int max_modules = 0;

    bool operator==(const EssOption&) const = default;
};

struct RiesSpec {
    std::string name;
    std::vector<Device> devices;
    std::vector<ResOption> res;
    std::vector<EssOption> ess;
    std::map<Carrier, std::vector<double>> loads;  // absent carrier = zero load
    std::map<int, double> site_cost_gas;   // gas node id -> connection cost
    std::map<int, double> site_cost_elec;  // bus id -> connection cost

    bool operator==(const RiesSpec&) const = default;
};

struct AdmmDefaults {
    std::optional<double> rho_gn, rho_en, rho_ehg, rho_ehe;
    std::optional<double> eps_gas, eps_elec;
    std::optional<int> max_iters;
    std::optional<int> quad_knots;

    bool operator==(const AdmmDefaults&) const = default;
};

struct PlanningCase {
    int horizon = 0;
    int segments = 3;                     // gas-flow linearization segments
    double price_electricity = 3.0e-4;   // M$ per MWh (0.3 $/kWh)
    double price_gas = 5.0e-7;           // M$ per m3  (0.5 $/m3)
    double gas_mwh_per_m3 = 0.01055;     // heating value applied to gas-fired hub columns
    GasSystem gas;
    ElectricSystem electric;
    std::vector<RiesSpec> ries;
    std::optional<AdmmDefaults> admm;

    bool operator==(const PlanningCase&) const = default;
};

/// Id -> dense index lookup built once per case.
struct CaseIndex {
    std::map<int, int> node_by_id;
    std::map<int, int> bus_by_id;

    explicit CaseIndex(const PlanningCase& c);
    [[nodiscard]] int node(int id) const;
    [[nodiscard]] int bus(int id) const;
};

/// Largest gas draw any set of RIES devices can accept per period (bounds the
/// coupling channels; valid via the input-side balance).
[[nodiscard]] double gas_channel_cap(const PlanningCase& c);
/// Same for electricity (TL and AC inputs).
[[nodiscard]] double elec_channel_cap(const PlanningCase& c);

}  // namespace triplan::caseio
