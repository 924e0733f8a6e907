#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgopt/errors.hpp"

namespace dgopt {

struct Bus {
    int id = 0;            // 1-based, bus 1 is the slack
    double p_load_kw = 0.0;
    double q_load_kvar = 0.0;
};

struct Branch {
    int id = 0;
    int from_bus = 0;
    int to_bus = 0;
    double r_ohm = 0.0;
    double x_ohm = 0.0;
    // infinity means "no binding limit" (data files may omit the rating)
    double ampacity_a = std::numeric_limits<double>::infinity();
};

struct NetworkModel {
    std::vector<Bus> buses;       // sorted by id, ids contiguous 1..n
    std::vector<Branch> branches; // exactly n-1 for a valid radial feeder
    double base_kv = 12.66;      // line-to-line
    double base_mva = 100.0;
    double v_nom = 1.0;
    double v_min = 0.90;
    double v_max = 1.05;

    int n_bus() const { return static_cast<int>(buses.size()); }
    int n_branch() const { return static_cast<int>(branches.size()); }

    double z_base_ohm() const { return base_kv * base_kv / base_mva; }
    // Single-phase-equivalent current base; keeps loss_kw == i_amp^2 * r_ohm / 1000
    // exactly consistent with the per-unit solve.
    double i_base_a() const { return base_mva * 1e6 / (base_kv * 1e3); }
    double s_base_kw() const { return base_mva * 1e3; }

    double total_p_load_kw() const {
        double s = 0.0;
        for (const auto& b : buses) s += b.p_load_kw;
        return s;
    }
    double total_q_load_kvar() const {
        double s = 0.0;
        for (const auto& b : buses) s += b.q_load_kvar;
        return s;
    }
};

enum class ProfileKind { LoadMultiplier, Irradiance, WindSpeed };

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::LoadMultiplier: return "load-multiplier";
        case ProfileKind::Irradiance: return "irradiance";
        case ProfileKind::WindSpeed: return "wind-speed";
    }
    return "?";
}

// 24-slot series indexed by hour 1..24, all entries >= 0.
struct HourlySeries {
    std::array<double, 24> values{};
    ProfileKind kind = ProfileKind::LoadMultiplier;

    HourlySeries() = default;
    HourlySeries(const std::array<double, 24>& v, ProfileKind k) : values(v), kind(k) {
        for (double x : values)
            if (!(x >= 0.0)) throw value_error("hourly series entries must be >= 0");
    }

    static HourlySeries flat(double value, ProfileKind k) {
        std::array<double, 24> v{};
        v.fill(value);
        return HourlySeries(v, k);
    }

    double at_hour(int hour) const { // hour in 1..24
        if (hour < 1 || hour > 24) throw value_error("hour out of range 1..24");
        return values[static_cast<std::size_t>(hour - 1)];
    }
    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }
};

enum class FileFormat { Csv, Json };

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& t : out) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    }
    return out;
}

inline double parse_double(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw parse_error("trailing junk in " + what + ": '" + tok + "'");
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("cannot parse " + what + ": '" + tok + "'");
    }
}

inline int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw parse_error("trailing junk in " + what + ": '" + tok + "'");
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("cannot parse " + what + ": '" + tok + "'");
    }
}

} // namespace detail

// Structural validation: contiguous ids, slack at bus 1 with zero demand,
// non-negative demands/impedances, and a spanning tree rooted at bus 1.
inline void validate(const NetworkModel& net) {
    const int n = net.n_bus();
    if (n < 2) throw topology_error("network needs at least two buses");
    for (int i = 0; i < n; ++i) {
        if (net.buses[static_cast<std::size_t>(i)].id != i + 1)
            throw value_error("bus ids must be contiguous 1..n and sorted");
    }
    const Bus& slack = net.buses.front();
    if (slack.p_load_kw != 0.0 || slack.q_load_kvar != 0.0)
        throw value_error("slack bus 1 must carry zero demand");
    for (const auto& b : net.buses) {
        if (!(b.p_load_kw >= 0.0) || !(b.q_load_kvar >= 0.0))
            throw value_error("bus " + std::to_string(b.id) + ": loads must be >= 0");
    }
    if (!(net.v_min < net.v_nom && net.v_nom < net.v_max))
        throw value_error("voltage band must satisfy v_min < v_nom < v_max");
    if (!(net.base_kv > 0.0) || !(net.base_mva > 0.0))
        throw value_error("base_kv and base_mva must be > 0");

    if (net.n_branch() != n - 1)
        throw topology_error("radial feeder needs exactly n_bus-1 branches, got " +
                             std::to_string(net.n_branch()));
    for (const auto& br : net.branches) {
        if (br.from_bus == br.to_bus)
            throw topology_error("branch " + std::to_string(br.id) + " is a self-loop");
        if (br.from_bus < 1 || br.from_bus > n || br.to_bus < 1 || br.to_bus > n)
            throw topology_error("branch " + std::to_string(br.id) + " references unknown bus");
        if (!(br.r_ohm >= 0.0) || !(br.x_ohm >= 0.0))
            throw value_error("branch " + std::to_string(br.id) + ": r and x must be >= 0");
        if (!(br.ampacity_a > 0.0))
            throw value_error("branch " + std::to_string(br.id) + ": ampacity must be > 0");
    }

    // connectivity via BFS from the slack over the undirected branch set
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& br : net.branches) {
        adj[static_cast<std::size_t>(br.from_bus - 1)].push_back(br.to_bus - 1);
        adj[static_cast<std::size_t>(br.to_bus - 1)].push_back(br.from_bus - 1);
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (int nb : adj[static_cast<std::size_t>(queue[head])]) {
            if (!seen[static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(nb)] = 1;
                queue.push_back(nb);
            }
        }
    }
    if (queue.size() != static_cast<std::size_t>(n))
        throw topology_error("network is disconnected from the slack bus");
    // n-1 edges + connected implies acyclic
}

// Branches reordered breadth-first from the slack, each oriented so from_bus is
// the bus nearer the root. This is the backward/forward sweep order.
inline std::vector<Branch> validate_radial(const NetworkModel& net) {
    validate(net);
    const int n = net.n_bus();
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n)); // (neighbor, branch idx)
    for (int bi = 0; bi < net.n_branch(); ++bi) {
        const auto& br = net.branches[static_cast<std::size_t>(bi)];
        adj[static_cast<std::size_t>(br.from_bus - 1)].emplace_back(br.to_bus - 1, bi);
        adj[static_cast<std::size_t>(br.to_bus - 1)].emplace_back(br.from_bus - 1, bi);
    }
    std::vector<Branch> ordered;
    ordered.reserve(net.branches.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (const auto& [v, bi] : adj[static_cast<std::size_t>(u)]) {
            if (seen[static_cast<std::size_t>(v)]) continue;
            seen[static_cast<std::size_t>(v)] = 1;
            Branch br = net.branches[static_cast<std::size_t>(bi)];
            if (br.from_bus != u + 1) std::swap(br.from_bus, br.to_bus);
            ordered.push_back(br);
            queue.push_back(v);
        }
    }
    return ordered;
}

inline NetworkModel scale_loads(const NetworkModel& net, double multiplier) {
    if (!(multiplier >= 0.0)) throw value_error("load multiplier must be >= 0");
    NetworkModel out = net;
    for (auto& b : out.buses) {
        b.p_load_kw *= multiplier;
        b.q_load_kvar *= multiplier;
    }
    return out;
}

namespace detail {

inline NetworkModel network_from_csv(std::istream& in) {
    NetworkModel net;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tok = split_csv_line(line);
        if (tok.empty() || tok[0].empty()) continue;
        const std::string& tag = tok[0];
        const std::string at = " (line " + std::to_string(lineno) + ")";
        if (tag == "BUS") {
            if (tok.size() != 4) throw parse_error("BUS row needs id,p_kw,q_kvar" + at);
            Bus b;
            b.id = parse_int(tok[1], "bus id");
            b.p_load_kw = parse_double(tok[2], "p_kw");
            b.q_load_kvar = parse_double(tok[3], "q_kvar");
            net.buses.push_back(b);
        } else if (tag == "BRANCH") {
            if (tok.size() != 7) throw parse_error("BRANCH row needs id,from,to,r_ohm,x_ohm,amp_max" + at);
            Branch br;
            br.id = parse_int(tok[1], "branch id");
            br.from_bus = parse_int(tok[2], "from bus");
            br.to_bus = parse_int(tok[3], "to bus");
            br.r_ohm = parse_double(tok[4], "r_ohm");
            br.x_ohm = parse_double(tok[5], "x_ohm");
            br.ampacity_a = tok[6].empty() ? std::numeric_limits<double>::infinity()
                                           : parse_double(tok[6], "amp_max");
            net.branches.push_back(br);
        } else if (tag == "BASE") {
            // BASE,kv,mva[,v_min,v_max[,v_nom]]
            if (tok.size() < 3) throw parse_error("BASE row needs kv,mva" + at);
            net.base_kv = parse_double(tok[1], "base kv");
            net.base_mva = parse_double(tok[2], "base mva");
            if (tok.size() > 3 && !tok[3].empty()) net.v_min = parse_double(tok[3], "v_min");
            if (tok.size() > 4 && !tok[4].empty()) net.v_max = parse_double(tok[4], "v_max");
            if (tok.size() > 5 && !tok[5].empty()) net.v_nom = parse_double(tok[5], "v_nom");
        } else {
            throw parse_error("unknown record '" + tag + "'" + at);
        }
    }
    std::sort(net.buses.begin(), net.buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });
    return net;
}

inline NetworkModel network_from_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error(std::string("bad network JSON: ") + e.what());
    }
    NetworkModel net;
    try {
        if (j.contains("base")) {
            const auto& base = j.at("base");
            net.base_kv = base.value("kv", net.base_kv);
            net.base_mva = base.value("mva", net.base_mva);
            net.v_min = base.value("v_min", net.v_min);
            net.v_max = base.value("v_max", net.v_max);
            net.v_nom = base.value("v_nom", net.v_nom);
        }
        for (const auto& jb : j.at("buses")) {
            Bus b;
            b.id = jb.at("id").get<int>();
            b.p_load_kw = jb.at("p_kw").get<double>();
            b.q_load_kvar = jb.at("q_kvar").get<double>();
            net.buses.push_back(b);
        }
        for (const auto& jb : j.at("branches")) {
            Branch br;
            br.id = jb.at("id").get<int>();
            br.from_bus = jb.at("from").get<int>();
            br.to_bus = jb.at("to").get<int>();
            br.r_ohm = jb.at("r_ohm").get<double>();
            br.x_ohm = jb.at("x_ohm").get<double>();
            if (jb.contains("amp_max") && !jb.at("amp_max").is_null())
                br.ampacity_a = jb.at("amp_max").get<double>();
            net.branches.push_back(br);
        }
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad network JSON: ") + e.what());
    }
    std::sort(net.buses.begin(), net.buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });
    return net;
}

} // namespace detail

inline NetworkModel load_network(const std::string& path, FileFormat format) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open network file: " + path);
    NetworkModel net = (format == FileFormat::Csv) ? detail::network_from_csv(in)
                                                   : detail::network_from_json(in);
    validate(net);
    return net;
}

inline nlohmann::json to_json(const NetworkModel& net) {
    nlohmann::json j;
    j["base"] = {{"kv", net.base_kv},  {"mva", net.base_mva}, {"v_min", net.v_min},
                 {"v_max", net.v_max}, {"v_nom", net.v_nom}};
    j["buses"] = nlohmann::json::array();
    for (const auto& b : net.buses)
        j["buses"].push_back({{"id", b.id}, {"p_kw", b.p_load_kw}, {"q_kvar", b.q_load_kvar}});
    j["branches"] = nlohmann::json::array();
    for (const auto& br : net.branches) {
        nlohmann::json jb = {{"id", br.id},       {"from", br.from_bus}, {"to", br.to_bus},
                             {"r_ohm", br.r_ohm}, {"x_ohm", br.x_ohm}};
        if (std::isfinite(br.ampacity_a))
            jb["amp_max"] = br.ampacity_a;
        else
            jb["amp_max"] = nullptr;
        j["branches"].push_back(jb);
    }
    return j;
}

inline void save_network(const NetworkModel& net, const std::string& path, FileFormat format) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write network file: " + path);
    if (format == FileFormat::Json) {
        out << to_json(net).dump(2) << '\n';
        return;
    }
    out << "# radial feeder, " << net.n_bus() << " buses\n";
    out.precision(17);
    out << "BASE," << net.base_kv << ',' << net.base_mva << ',' << net.v_min << ',' << net.v_max
        << ',' << net.v_nom << '\n';
    for (const auto& b : net.buses)
        out << "BUS," << b.id << ',' << b.p_load_kw << ',' << b.q_load_kvar << '\n';
    for (const auto& br : net.branches) {
        out << "BRANCH," << br.id << ',' << br.from_bus << ',' << br.to_bus << ',' << br.r_ohm
            << ',' << br.x_ohm << ',';
        if (std::isfinite(br.ampacity_a)) out << br.ampacity_a;
        out << '\n';
    }
}

// Profile CSV: optional "hour,value" header then exactly 24 rows, hours 1..24.
inline HourlySeries load_profile(const std::string& path, ProfileKind kind) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open profile file: " + path);
    std::array<double, 24> values{};
    std::array<char, 24> seen{};
    std::string line;
    int rows = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tok = detail::split_csv_line(line);
        if (tok.size() == 2 && tok[0] == "hour" && tok[1] == "value") continue;
        if (tok.size() != 2)
            throw parse_error("profile row needs hour,value (line " + std::to_string(lineno) + ")");
        const int hour = detail::parse_int(tok[0], "hour");
        const double v = detail::parse_double(tok[1], "value");
        if (hour < 1 || hour > 24) throw parse_error("hour out of range 1..24: " + tok[0]);
        if (seen[static_cast<std::size_t>(hour - 1)])
            throw parse_error("duplicate hour " + tok[0]);
        if (!(v >= 0.0)) throw value_error("profile value must be >= 0 at hour " + tok[0]);
        seen[static_cast<std::size_t>(hour - 1)] = 1;
        values[static_cast<std::size_t>(hour - 1)] = v;
        ++rows;
    }
    if (rows != 24)
        throw parse_error("profile needs exactly 24 rows, got " + std::to_string(rows));
    return HourlySeries(values, kind);
}

} // namespace dgopt
