#include "uavisac/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace uavisac {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(const std::string& key, const std::string& text,
                                  std::size_t expected) {
    std::string normalized = text;
    for (char& c : normalized)
        if (c == ',') c = ' ';
    std::istringstream in(normalized);
    std::vector<double> values;
    std::string token;
    while (in >> token) {
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0')
            throw ConfigError("config key '" + key + "': cannot parse number '" + token + "'");
        values.push_back(v);
    }
    if (values.size() != expected)
        throw ConfigError("config key '" + key + "': expected " + std::to_string(expected) +
                          " value(s), got " + std::to_string(values.size()));
    return values;
}

class KeyMap {
public:
    explicit KeyMap(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": empty key or value");
            if (!entries_.emplace(key, value).second)
                throw ConfigError("config key '" + key + "' appears twice");
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double number(const std::string& key) {
        return parse_numbers(key, take(key), 1)[0];
    }

    double number_or(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        return number(key);
    }

    std::vector<double> numbers(const std::string& key, std::size_t count) {
        return parse_numbers(key, take(key), count);
    }

    bool flag_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string v = take(key);
        if (v == "1" || v == "true") return true;
        if (v == "0" || v == "false") return false;
        throw ConfigError("config key '" + key + "': expected 0/1/true/false");
    }

    void reject_unknown() const {
        if (entries_.empty()) return;
        std::string names;
        for (const auto& [key, value] : entries_) {
            if (!names.empty()) names += ", ";
            names += "'" + key + "'";
        }
        throw ConfigError("unknown config key(s): " + names);
    }

private:
    std::string take(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
        std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    std::map<std::string, std::string> entries_;
};

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

LoadedConfig parse_config(const std::string& text) {
    KeyMap keys(text);
    LoadedConfig cfg;
    cfg.config_hash = fnv1a_hex(text);

    Scenario& sc = cfg.scenario;
    sc.task_bits = keys.number("task_bits");
    sc.cycles_per_bit = keys.number("cycles_per_bit");
    sc.uav_capacity = keys.number("uav_capacity");
    sc.ue_capacity = keys.number("ue_capacity");
    if (keys.has("tx_power_dbm")) {
        if (keys.has("tx_power"))
            throw ConfigError("config keys 'tx_power' and 'tx_power_dbm' are exclusive");
        sc.tx_power = dbm_to_watts(keys.number("tx_power_dbm"));
    } else {
        sc.tx_power = keys.number("tx_power");
    }
    sc.bandwidth = keys.number("bandwidth");
    sc.noise_psd = keys.number("noise_psd");
    sc.ref_channel_gain = keys.number_or("ref_channel_gain", 1e-3);
    sc.path_loss_exponent = keys.number_or("path_loss_exponent", 2.0);
    sc.rcs = keys.number("rcs");
    sc.wavelength = keys.number("wavelength");
    sc.uav_altitude = keys.number("uav_altitude");
    const auto ue = keys.numbers("ue_position", 2);
    sc.ue_x = ue[0];
    sc.ue_y = ue[1];
    const auto target = keys.numbers("target_position", 2);
    sc.target_x = target[0];
    sc.target_y = target[1];
    const auto area = keys.numbers("area_bounds", 4);
    sc.area = {area[0], area[1], area[2], area[3]};
    sc.price_bandwidth = keys.number("price_bandwidth");
    sc.price_tx_energy = keys.number_or("price_tx_energy", 1.0);
    sc.price_cycle = keys.number("price_cycle");
    sc.price_ue_energy = keys.number_or("price_ue_energy", 1.0);
    sc.energy_per_cycle = keys.number_or("energy_per_cycle", 1e-9);
    sc.beta_max = keys.number_or("beta_max", 0.9);
    sc.budget = keys.number_or("budget", 8e8);
    sc.weight_latency = keys.number("weight_latency");
    sc.weight_crb = keys.number("weight_crb");

    ga::GaConfig& g = cfg.ga;
    g.population_size = static_cast<int>(keys.number_or("ga.population_size", 20));
    g.generations = static_cast<int>(keys.number_or("ga.generations", 400));
    g.crossover_prob = keys.number_or("ga.crossover_prob", 0.8);
    g.mutation_prob = keys.number_or("ga.mutation_prob", 0.15);
    g.mutation_index = keys.number_or("ga.mutation_index", 20.0);
    g.penalty_mu = keys.number_or("ga.penalty_mu", 1e6);
    g.rng_seed = static_cast<std::uint64_t>(keys.number_or("ga.rng_seed", 1));
    g.per_gene_mutation = keys.flag_or("ga.per_gene_mutation", false);
    g.init_retry_budget = static_cast<int>(keys.number_or("ga.init_retry_budget", 10000));

    pso::PsoConfig& p = cfg.pso;
    p.swarm_size = static_cast<int>(keys.number_or("pso.swarm_size", 20));
    p.iterations = static_cast<int>(keys.number_or(
        "pso.iterations",
        pso::PsoConfig::matched_iterations(g.population_size, g.generations, p.swarm_size)));
    p.inertia = keys.number_or("pso.inertia", p.inertia);
    p.cognitive = keys.number_or("pso.cognitive", p.cognitive);
    p.social = keys.number_or("pso.social", p.social);
    p.max_velocity_frac = keys.number_or("pso.max_velocity_frac", p.max_velocity_frac);
    p.penalty_mu = keys.number_or("pso.penalty_mu", 1e6);
    p.rng_seed = static_cast<std::uint64_t>(keys.number_or("pso.rng_seed", 1));
    p.init_retry_budget = static_cast<int>(keys.number_or("pso.init_retry_budget", 10000));

    cfg.ablation.fixed_beta = keys.number_or("ablation.fixed_beta", 0.5);
    cfg.ablation.fixed_x =
        keys.number_or("ablation.fixed_x", (sc.area.x_min + sc.area.x_max) / 2.0);
    cfg.ablation.fixed_y =
        keys.number_or("ablation.fixed_y", (sc.area.y_min + sc.area.y_max) / 2.0);

    cfg.radar.true_velocity = keys.number_or("radar.true_velocity", 1.5);
    cfg.radar.max_delay = static_cast<std::size_t>(keys.number_or("radar.max_delay", 64));
    cfg.radar.conjugate_both = keys.flag_or("radar.conjugate_both", false);

    keys.reject_unknown();
    sc.validate();
    cfg.ga.validate();
    cfg.pso.validate();
    return cfg;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace uavisac
