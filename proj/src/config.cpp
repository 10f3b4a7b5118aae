#include "risopt/config.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "risopt/errors.hpp"
#include "risopt/mathutil.hpp"

namespace risopt {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

class KeyValues {
  public:
    explicit KeyValues(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty())
                throw config_error("config line " + std::to_string(line_no) +
                                   ": empty key or value");
            if (values_.count(key)) throw config_error("duplicate config key: " + key);
            values_[key] = value;
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string raw(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) throw config_error("missing config key: " + key);
        used_.insert(key);
        return it->second;
    }

    double number(const std::string& key) {
        const std::string v = raw(key);
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &pos);
        } catch (const std::exception&) {
            throw config_error("config key " + key + ": not a number: '" + v + "'");
        }
        if (pos != v.size() || !std::isfinite(x))
            throw config_error("config key " + key + ": not a finite number: '" + v + "'");
        return x;
    }

    int integer(const std::string& key) {
        const double x = number(key);
        const int i = static_cast<int>(std::lround(x));
        if (static_cast<double>(i) != x)
            throw config_error("config key " + key + ": expected an integer");
        return i;
    }

    bool boolean(const std::string& key) {
        const std::string v = raw(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw config_error("config key " + key + ": expected true/false");
    }

    void reject_unknown() const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key)) throw config_error("unknown config key: " + key);
    }

  private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw config_error(message);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& base_dir) {
    KeyValues kv(text);
    ScenarioConfig c;

    c.delta = kv.number("delta");
    require(c.delta > 0.0 && c.delta <= 1.0, "delta must be in (0, 1]");

    c.n_uc = kv.integer("n_uc");
    require(c.n_uc >= 1, "n_uc must be >= 1");
    c.n_b = kv.integer("n_b");
    require(c.n_b >= 1 && c.n_b <= 8, "n_b must be in [1, 8]");
    c.lambda = kv.number("lambda_m");
    require(c.lambda > 0.0, "lambda_m must be positive");
    c.area.center.x = kv.number("area_center_x_m");
    require(c.area.center.x > 0.0, "area_center_x_m must be positive (in front of the RIS)");
    c.area.center.y = kv.number("area_center_y_m");
    c.area.center.z = kv.number("area_center_z_m");
    c.area.size_y = kv.number("area_size_y_m");
    c.area.size_z = kv.number("area_size_z_m");
    require(c.area.size_y > 0.0 && c.area.size_z > 0.0, "area sizes must be positive");
    c.beta0 = db_to_linear(kv.number("beta0_db"));
    require(c.beta0 > 0.0 && c.beta0 <= 1.0, "beta0_db must be <= 0 (a loss)");

    c.gamma = kv.number("gamma");
    require(c.gamma >= 0.0, "gamma must be >= 0");
    c.epsilon = kv.number("epsilon");
    require(c.epsilon > 0.0 && c.epsilon < 1.0, "epsilon must be in (0, 1)");
    c.p_thr_fraction = kv.number("p_thr_fraction");
    require(c.p_thr_fraction > 0.0 && c.p_thr_fraction < 1.0,
            "p_thr_fraction must be in (0, 1)");
    c.rectifier_data = kv.raw("rectifier_data");
    if (!c.rectifier_data.empty() && c.rectifier_data.front() != '/' && !base_dir.empty())
        c.rectifier_data = base_dir + "/" + c.rectifier_data;

    c.snr_bt_min = db_to_linear(kv.number("snr_bt_min_db"));
    c.g_tx = db_to_linear(kv.number("g_tx_db"));
    c.g_rx = db_to_linear(kv.number("g_rx_db"));
    c.d_inc = kv.number("d_inc_m");
    require(c.d_inc > 0.0, "d_inc_m must be positive");
    c.bs_azimuth_deg = kv.number("bs_azimuth_deg");
    c.bs_elevation_deg = kv.number("bs_elevation_deg");
    c.noise_power = dbm_to_watts(kv.number("noise_power_dbm"));
    c.p_max = kv.number("p_max_w");
    require(c.p_max > 0.0, "p_max_w must be positive");
    c.r_min = kv.number("r_min_bps_hz");
    require(c.r_min > 0.0, "r_min_bps_hz must be positive");

    c.v = kv.number("v_kmh") / 3.6;
    require(c.v > 0.0, "v_kmh must be positive");
    c.kappa = kv.number("kappa");
    require(c.kappa > 0.0 && c.kappa <= 1.0, "kappa must be in (0, 1]");
    c.t_resp = kv.number("t_resp_s");
    c.t_delay = kv.number("t_delay_s");
    c.t_s = kv.number("t_s_s");
    require(c.t_resp >= 0.0 && c.t_delay >= 0.0, "response/delay times must be >= 0");
    require(c.t_s > 0.0, "t_s_s must be positive");
    c.n_est = kv.number("n_est");
    require(c.n_est >= 0.0, "n_est must be >= 0");

    c.power.p_sta = kv.number("p_sta_w");
    c.power.p_uc = kv.number("p_uc_w");
    c.power.p_sh = kv.number("p_sh_w");
    require(c.power.p_sta >= 0.0 && c.power.p_uc >= 0.0 && c.power.p_sh >= 0.0,
            "power model entries must be >= 0");
    c.power.n_b = c.n_b;

    if (kv.has("subarea_samples")) {
        c.subarea_samples = kv.integer("subarea_samples");
        require(c.subarea_samples >= 1, "subarea_samples must be >= 1");
    }
    if (kv.has("aoa_grid_step_deg")) {
        c.aoa_grid_step_deg = kv.number("aoa_grid_step_deg");
        require(c.aoa_grid_step_deg > 0.0, "aoa_grid_step_deg must be positive");
    }
    if (kv.has("ideal_codeword_phases")) c.ideal_codeword_phases = kv.boolean("ideal_codeword_phases");

    kv.reject_unknown();

    // Cross-field checks that need several keys at once.
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(c.n_uc))));
    require(side * side == c.n_uc, "n_uc must be a perfect square");
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::size_t slash = path.find_last_of('/');
    const std::string base_dir = slash == std::string::npos ? "." : path.substr(0, slash);
    return parse_config(buf.str(), base_dir);
}

}  // namespace risopt
