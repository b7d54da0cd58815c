#include "declab/config.hpp"

#include <Eigen/QR>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace declab {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("config line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

/// Remove an unquoted trailing comment.
std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

double parse_number(const std::string& tok, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        fail(line, "not a number: '" + tok + "'");
    return v;
}

ConfigValue parse_value(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (v.empty()) fail(line, "missing value");
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            fail(line, "unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']') fail(line, "unterminated array");
        std::vector<std::string> toks;
        std::string inner = v.substr(1, v.size() - 2);
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (!tok.empty()) toks.push_back(tok);
        }
        if (toks.empty()) return std::vector<double>{};
        if (toks.front().front() == '"') {
            std::vector<std::string> strs;
            for (const auto& t : toks) {
                if (t.size() < 2 || t.front() != '"' || t.back() != '"')
                    fail(line, "mixed or malformed string array");
                strs.push_back(t.substr(1, t.size() - 2));
            }
            return strs;
        }
        std::vector<double> nums;
        for (const auto& t : toks) nums.push_back(parse_number(t, line));
        return nums;
    }
    return parse_number(v, line);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                fail(line, "malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail(line, "empty section name");
            continue;
        }
        const size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(line, "empty key");
        for (char c : key)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
                c != '-')
                fail(line, "bad character in key '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        cfg.values_[full] = parse_value(s.substr(eq + 1), line);
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    return parse(buf.str());
}

bool Config::has(const std::string& key) const {
    return values_.count(key) > 0;
}

double Config::number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing config key: " + key);
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    throw std::runtime_error("config key is not a number: " + key);
}

double Config::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

bool Config::boolean_or(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const bool* v = std::get_if<bool>(&it->second)) return *v;
    throw std::runtime_error("config key is not a boolean: " + key);
}

std::string Config::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing config key: " + key);
    if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
    throw std::runtime_error("config key is not a string: " + key);
}

std::string Config::str_or(const std::string& key,
                           const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
}

const std::vector<double>& Config::numbers(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("missing config key: " + key);
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    throw std::runtime_error("config key is not a number array: " + key);
}

namespace {

Eigen::MatrixXd matrix_from(const Config& cfg, const std::string& key, int rows,
                            int cols) {
    const std::vector<double>& v = cfg.numbers(key);
    if (static_cast<int>(v.size()) != rows * cols)
        throw std::runtime_error(key + ": expected " +
                                 std::to_string(rows * cols) + " entries, got " +
                                 std::to_string(v.size()));
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

} // namespace

SystemSpec system_from_config(const Config& cfg) {
    if (!cfg.has("model.dim")) {
        if (!cfg.has("model.name"))
            throw std::runtime_error("descriptor needs model.name or model.dim");
        return make_builtin(cfg.str("model.name"));
    }
    const int dim = static_cast<int>(cfg.number("model.dim"));
    if (dim < 1 || dim > 16)
        throw std::runtime_error("model.dim out of range [1,16]");

    SystemSpec sys;
    sys.name = cfg.str_or("model.name", "custom");
    sys.a0 = matrix_from(cfg, "model.a0", dim, dim);
    sys.a1 = matrix_from(cfg, "model.a1", dim, dim);
    sys.ell = matrix_from(cfg, "model.l", dim, dim);

    const std::vector<double>& eq = cfg.numbers("model.equilibrium");
    if (eq.empty() || eq.size() % dim != 0)
        throw std::runtime_error("model.equilibrium: length must be a nonzero "
                                 "multiple of model.dim");
    const int k = static_cast<int>(eq.size()) / dim;
    Eigen::MatrixXd basis = matrix_from(cfg, "model.equilibrium", dim, k);
    // downstream projections assume an orthonormal basis
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    sys.equilibrium = qr.householderQ() * Eigen::MatrixXd::Identity(dim, k);

    const std::string law = cfg.str_or("model.law", "none");
    if (law == "none") {
        sys.dealias_fraction = cfg.number_or("model.dealias", 1.0);
    } else if (law == "cubic-flux") {
        const int comp = static_cast<int>(cfg.number_or(
            "model.law_component", static_cast<double>(dim - 1)));
        if (comp < 0 || comp >= dim)
            throw std::runtime_error("model.law_component out of range");
        sys.flux = [dim, comp](const Eigen::VectorXd& z) {
            Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
            p(comp) = z(comp) * z(comp) * z(comp) / 3.0;
            return p;
        };
        sys.dealias_fraction = cfg.number_or("model.dealias", 0.5);
    } else if (law == "euler-pressure") {
        if (dim != 2)
            throw std::runtime_error("euler-pressure law needs model.dim = 2");
        const double rho_bar = cfg.number_or("model.rho_bar", 1.0);
        const double gamma = cfg.number_or("model.gamma", 1.4);
        const SystemSpec ref = make_damped_euler(rho_bar, gamma);
        sys.flux = ref.flux;
        sys.state_valid = ref.state_valid;
        sys.dealias_fraction = cfg.number_or("model.dealias", 2.0 / 3.0);
    } else {
        throw std::runtime_error("unknown model.law: " + law);
    }
    return sys;
}

ExperimentConfig experiment_from_config(const Config& cfg) {
    ExperimentConfig ec;
    const int n = static_cast<int>(cfg.number("grid.n"));
    const double length = cfg.number("grid.length");
    try {
        ec.grid = Grid(n, length);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("grid: ") + e.what());
    }

    ec.data.family = cfg.str_or("data.family", "besov_tail");
    if (ec.data.family != "besov_tail" && ec.data.family != "gaussian_l1" &&
        ec.data.family != "high_freq")
        throw std::runtime_error("unknown data.family: " + ec.data.family);
    ec.data.s = cfg.number_or("data.s", 0.5);
    ec.data.amplitude = cfg.number_or("data.amplitude", 1.0);
    ec.data.xi_cut = cfg.number_or("data.xi_cut", 1.0);
    ec.data.width = cfg.number_or("data.width", 1.0);
    ec.data.j_lo = static_cast<int>(cfg.number_or("data.j_lo", 1));
    ec.data.j_hi = static_cast<int>(cfg.number_or("data.j_hi", 2));
    ec.data.seed = static_cast<std::uint64_t>(cfg.number_or("data.seed", 1));
    if (cfg.has("data.direction")) {
        // either a component vector or one of the random-direction modes
        const ConfigValue& v = cfg.entries().at("data.direction");
        if (std::holds_alternative<std::string>(v)) {
            const std::string& mode = std::get<std::string>(v);
            if (mode != "random" && mode != "random-complement")
                throw std::runtime_error(
                    "data.direction must be a vector, \"random\" or "
                    "\"random-complement\"");
            ec.data.direction_mode = mode;
        } else {
            const std::vector<double>& d = cfg.numbers("data.direction");
            ec.data.direction = Eigen::Map<const Eigen::VectorXd>(
                d.data(), static_cast<long>(d.size()));
        }
    }

    if (cfg.has("run.times")) {
        ec.sample_times = cfg.numbers("run.times");
    } else {
        const double t0 = cfg.number_or("run.t0", 1.0);
        const double t1 = cfg.number_or("run.t1", 100.0);
        const int count = static_cast<int>(cfg.number_or("run.samples", 24));
        if (!(t1 > t0) || t0 < 0.0 || count < 2)
            throw std::runtime_error("run: need 0 <= t0 < t1 and samples >= 2");
        ec.sample_times = geometric_times(t0, t1, count);
    }
    ec.window_lo = cfg.number_or("run.window_lo", 0.0);
    ec.window_hi = cfg.number_or("run.window_hi", 0.0);
    ec.rate_tol = cfg.number_or("run.rate_tol", 0.05);

    const std::string mode = cfg.str_or("run.mode", "linear");
    if (mode == "nonlinear")
        ec.nonlinear = true;
    else if (mode != "linear")
        throw std::runtime_error("run.mode must be linear or nonlinear");
    ec.nl.dt = cfg.number_or("run.dt", 0.1);
    ec.nl.blowup_factor = cfg.number_or("run.blowup_factor", 10.0);
    if (!(ec.nl.dt > 0.0)) throw std::runtime_error("run.dt must be positive");

    auto add_norms = [&](const std::string& key, const std::string& kind) {
        if (!cfg.has(key)) return;
        for (double l : cfg.numbers(key)) ec.norms.push_back({kind, l});
    };
    add_norms("norms.sobolev", "sobolev");
    add_norms("norms.besov", "besov");
    if (ec.norms.empty())
        ec.norms = {{"sobolev", 0.0}, {"besov", 0.5}};
    return ec;
}

} // namespace declab
