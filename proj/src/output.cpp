#include "quadwalk/output.hpp"

#include <fmt/format.h>

namespace quadwalk {

std::string format_number(double v) { return fmt::format("{}", v); }

std::string verify_csv(const std::vector<VerifyRow>& rows) {
    std::string out = "theorem_id,n,measured,predicted,ratio,dp_error_bound,detail\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{},{},{},\"{}\"\n", r.theorem_id, r.n, r.measured, r.predicted, r.ratio,
                           r.dp_error_bound, r.detail);
    return out;
}

std::string renewal_csv(const RenewalTable& t) {
    std::string out = "u,value\n";
    for (std::size_t u = 0; u < t.values.size(); ++u) out += fmt::format("{},{}\n", u, t.values[u]);
    return out;
}

std::string ladder_csv(const LadderDist& ld) {
    std::string out = "k,probability\n";
    for (std::size_t k = 0; k < ld.pmf.size(); ++k) out += fmt::format("{},{}\n", k, ld.pmf[k]);
    return out;
}

nlohmann::json to_json(const Moments& m) {
    return {{"mu", {m.mu[0], m.mu[1]}}, {"sigma", {{m.s11, m.s12}, {m.s12, m.s22}}}, {"det", m.det()}};
}

nlohmann::json to_json(const LatticeStructure& ls) {
    return {{"a1", ls.a1}, {"d1", ls.d1}, {"a2", ls.a2}, {"d2", ls.d2}};
}

nlohmann::json to_json(const TiltParams& tp) { return {{"h", {tp.h[0], tp.h[1]}}, {"phi", tp.phi}}; }

nlohmann::json to_json(const LadderDist& ld) {
    return {{"pmf", ld.pmf}, {"mean", ld.mean}, {"truncation_error", ld.truncation_error}, {"steps_used", ld.steps_used}};
}

nlohmann::json to_json(const RenewalTable& t) {
    return {{"kind", t.kind == RenewalKind::V ? "V" : "H"}, {"U", t.U}, {"values", t.values}};
}

nlohmann::json to_json(const HarmonicEstimate& e) {
    return {{"lower", e.lower}, {"value", e.value}, {"upper", e.upper}, {"n_used", e.n_used}, {"converged", e.converged}};
}

nlohmann::json to_json(const McEstimate& e) {
    return {{"mean", e.mean}, {"half_width_95", e.half_width_95}, {"reps", e.reps}, {"seed", e.seed}, {"hits", e.hits}};
}

nlohmann::json to_json(const std::vector<VerifyRow>& rows) {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows)
        arr.push_back({{"theorem_id", r.theorem_id},
                       {"n", r.n},
                       {"measured", r.measured},
                       {"predicted", r.predicted},
                       {"ratio", r.ratio},
                       {"dp_error_bound", r.dp_error_bound},
                       {"detail", r.detail}});
    return arr;
}

nlohmann::json envelope(const std::string& command, nlohmann::json result) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

} // namespace quadwalk
