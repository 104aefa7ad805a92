#include "ptqes/json_io.hpp"

namespace ptqes {

using nlohmann::json;

json report_to_json(const VerificationReport& report) {
    json checks = json::array();
    for (const CheckEntry& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    return json{{"checks", checks},
                {"state_class", to_string(report.state_class)},
                {"overall", report.overall},
                {"grid", {{"L", report.grid_half_width}, {"N", report.grid_points}}},
                {"epsilon", {report.epsilon.real(), report.epsilon.imag()}}};
}

json spectrum_to_json(const Spectrum& s) {
    json evs = json::array();
    for (const Complex& ev : s.eigenvalues) evs.push_back({ev.real(), ev.imag()});
    return json{{"eigenvalues", evs}, {"reality_fraction", s.reality_fraction}};
}

json match_to_json(const MatchResult& m) {
    return json{{"matched", m.matched}, {"distance", m.distance}, {"index", m.index}};
}

json sweep_to_json(const std::vector<SweepRecord>& records) {
    json out = json::array();
    for (const SweepRecord& rec : records) {
        json r{{"epsilon", {rec.epsilon.real(), rec.epsilon.imag()}}};
        if (!rec.error.empty()) {
            r["error"] = rec.error;
        } else {
            r["spectrum"] = {{"reality_fraction", rec.reality_fraction},
                             {"n_eigenvalues", rec.n_eigenvalues},
                             {"nearest_distance", rec.nearest_distance}};
            if (rec.report) {
                r["battery"] = {{"overall", rec.report->overall},
                                {"state_class", to_string(rec.report->state_class)}};
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

json bindings_to_json(const Bindings& b) {
    json out = json::object();
    for (const auto& [name, entry] : b.entries()) {
        out[name] = {{"value", {entry.first.real(), entry.first.imag()}},
                     {"real", entry.second}};
    }
    return out;
}

}  // namespace ptqes
