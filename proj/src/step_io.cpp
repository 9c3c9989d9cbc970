#include "quadwalk/step_io.hpp"

#include "quadwalk/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace quadwalk {

StepDistribution parse_steps_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(ErrorCode::ParseError, std::string("step file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
        throw InputError(ErrorCode::ParseError, "step file must be an object with a \"steps\" array");

    std::vector<Atom> raw;
    for (const auto& s : doc["steps"]) {
        if (!s.is_object() || !s.contains("dx") || !s.contains("dy") || !s.contains("w") ||
            !s["dx"].is_number_integer() || !s["dy"].is_number_integer() || !s["w"].is_number())
            throw InputError(ErrorCode::ParseError, "each step needs integer dx, dy and numeric w");
        raw.push_back({s["dx"].get<int>(), s["dy"].get<int>(), s["w"].get<double>()});
    }
    return StepDistribution::from_raw(raw);
}

StepDistribution load_steps_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(ErrorCode::FileError, "cannot open step file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_steps_json(buf.str());
}

std::string steps_to_json(const StepDistribution& sd) {
    nlohmann::json doc;
    doc["steps"] = nlohmann::json::array();
    for (const auto& a : sd.atoms()) doc["steps"].push_back({{"dx", a.dx}, {"dy", a.dy}, {"w", a.weight}});
    return doc.dump();
}

} // namespace quadwalk
