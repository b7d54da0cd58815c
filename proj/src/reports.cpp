#include "declab/reports.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace declab {

namespace {

using json = nlohmann::json;

json fit_json(const RateFit& f) {
    return {{"exponent", f.exponent},
            {"stderr", f.stderr_},
            {"r_squared", f.r_squared},
            {"points", f.points},
            {"ok", f.ok}};
}

const char* lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::low_block_flux: return "low-block-flux";
        case LemmaId::low_shells_flux: return "low-shells-flux";
        case LemmaId::low_shells_source: return "low-shells-source";
    }
    return "unknown";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string to_json(const ConditionAReport& r) {
    return dump(json{{"a0_symmetric", r.a0_symmetric},
                     {"a0_positive", r.a0_positive},
                     {"a0_min_eigenvalue", r.a0_min_eigenvalue},
                     {"a1_symmetric", r.a1_symmetric},
                     {"l_symmetric", r.l_symmetric},
                     {"l_nonnegative", r.l_nonnegative},
                     {"l_min_eigenvalue", r.l_min_eigenvalue},
                     {"kernel_matches_equilibrium", r.kernel_matches_equilibrium},
                     {"kernel_angle", r.kernel_angle},
                     {"pass", r.pass},
                     {"detail", r.detail}});
}

std::string to_json(const ConditionKReport& r) {
    std::vector<double> w(r.witness.data(), r.witness.data() + r.witness.size());
    return dump(json{{"pass", r.pass},
                     {"min_margin", r.min_margin},
                     {"witness", w},
                     {"witness_speed", r.witness_speed},
                     {"indeterminate", r.indeterminate},
                     {"detail", r.detail}});
}

std::string to_json(const EnvelopeReport& r) {
    return dump(json{{"xi", r.xi},
                     {"max_re", r.max_re},
                     {"c_fit", r.c_fit},
                     {"all_nonpositive", r.all_nonpositive},
                     {"pass", r.pass}});
}

std::string structure_report_json(const std::string& model,
                                  const ConditionAReport& a,
                                  const ConditionKReport& k,
                                  const EnvelopeReport& env) {
    std::vector<double> w(k.witness.data(), k.witness.data() + k.witness.size());
    return dump(json{
        {"model", model},
        {"condition_a",
         {{"a0_symmetric", a.a0_symmetric},
          {"a0_positive", a.a0_positive},
          {"a0_min_eigenvalue", a.a0_min_eigenvalue},
          {"a1_symmetric", a.a1_symmetric},
          {"l_symmetric", a.l_symmetric},
          {"l_nonnegative", a.l_nonnegative},
          {"l_min_eigenvalue", a.l_min_eigenvalue},
          {"kernel_matches_equilibrium", a.kernel_matches_equilibrium},
          {"kernel_angle", a.kernel_angle},
          {"pass", a.pass},
          {"detail", a.detail}}},
        {"condition_k",
         {{"pass", k.pass},
          {"min_margin", k.min_margin},
          {"witness", w},
          {"witness_speed", k.witness_speed},
          {"indeterminate", k.indeterminate},
          {"detail", k.detail}}},
        {"envelope",
         {{"c_fit", env.c_fit},
          {"all_nonpositive", env.all_nonpositive},
          {"pass", env.pass}}},
        {"pass", a.pass && k.pass && env.pass}});
}

std::string to_json(const InequalityReport& r) {
    return dump(json{{"name", r.name},
                     {"params", r.params},
                     {"samples", r.samples},
                     {"ratio_min", r.ratio_min},
                     {"ratio_max", r.ratio_max},
                     {"ratio_mean", r.ratio_mean},
                     {"pass", r.pass},
                     {"detail", r.detail}});
}

std::string to_json(const std::vector<InequalityReport>& rs) {
    json arr = json::array();
    bool all = !rs.empty();
    for (const auto& r : rs) {
        arr.push_back({{"name", r.name},
                       {"params", r.params},
                       {"samples", r.samples},
                       {"ratio_min", r.ratio_min},
                       {"ratio_max", r.ratio_max},
                       {"ratio_mean", r.ratio_mean},
                       {"pass", r.pass},
                       {"detail", r.detail}});
        all = all && r.pass;
    }
    return dump(json{{"checks", arr}, {"pass", all}});
}

std::string to_json(const LemmaReport& r) {
    return dump(json{{"bound", lemma_name(r.probe.id)},
                     {"s", r.probe.s},
                     {"sigma", r.probe.sigma},
                     {"l", r.probe.l},
                     {"r", r.probe.r},
                     {"times", r.probe.times},
                     {"j0", r.j0},
                     {"c", r.c},
                     {"r0", r.r0},
                     {"lhs", r.lhs},
                     {"envelope", r.envelope},
                     {"sup_ratio", r.sup_ratio},
                     {"admissible", r.admissible},
                     {"finite", r.finite}});
}

std::string to_json(const EnvelopeComparison& r) {
    return dump(json{{"times", r.times},
                     {"env_flux", r.env_flux},
                     {"env_source", r.env_source},
                     {"max_ratio", r.max_ratio},
                     {"dominates", r.dominates},
                     {"pass", r.pass}});
}

std::string to_json(const DecayReport& r) {
    json traces = json::array();
    for (const auto& t : r.traces)
        traces.push_back({{"kind", t.norm.kind},
                          {"l", t.norm.l},
                          {"values", t.values},
                          {"fit", fit_json(t.fit)},
                          {"expected_exponent", t.expected_exponent},
                          {"algebraic_applicable", t.algebraic_applicable},
                          {"pass", t.pass}});
    return dump(json{
        {"model", r.model},
        {"grid", {{"n", r.config.grid.num_points},
                  {"length", r.config.grid.box_length}}},
        {"data", {{"family", r.config.data.family},
                  {"s", r.config.data.s},
                  {"amplitude", r.config.data.amplitude},
                  {"direction_mode", r.config.data.direction_mode},
                  {"seed", r.config.data.seed}}},
        {"nonlinear", r.config.nonlinear},
        {"window", {r.config.window_lo, r.config.window_hi}},
        {"rate_tol", r.config.rate_tol},
        {"c_fit", r.c_fit},
        {"horizon", r.horizon},
        {"times", r.times},
        {"traces", traces},
        {"max_asymmetry", r.max_asymmetry},
        {"blowup", r.blowup},
        {"pass", r.pass}});
}

std::string to_json(const ClosureAuditReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"amplitude", row.amplitude},
                        {"data_norm", row.data_norm},
                        {"m_value", row.m_value},
                        {"ratio", row.ratio},
                        {"blowup", row.blowup}});
    return dump(json{{"model", r.model},
                     {"rows", rows},
                     {"ratio_spread", r.ratio_spread},
                     {"pass", r.pass}});
}

std::string to_json(const EnergyAuditReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"seed", row.seed},
                        {"amplitude", row.amplitude},
                        {"c0", row.c0},
                        {"blowup", row.blowup}});
    return dump(json{{"rows", rows}, {"c0_spread", r.c0_spread}, {"pass", r.pass}});
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

} // namespace declab
