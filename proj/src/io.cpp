#include "anyonsim/io.hpp"

#include <fmt/format.h>

namespace anyonsim::io {

using nlohmann::json;

namespace {

Vec2 parse_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::ParseError, "point must be a [x, y] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(Vec2 p) { return json::array({p.x, p.y}); }

}  // namespace

DiscretePath parse_path_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "path document must be an object");
  if (!doc.contains("dt") || !doc["dt"].is_number()) {
    throw Error(ErrorCode::ParseError, "missing numeric \"dt\"");
  }
  if (!doc.contains("configs") || !doc["configs"].is_array()) {
    throw Error(ErrorCode::ParseError, "missing \"configs\" array");
  }
  DiscretePath path{doc["dt"].get<double>(), {}};
  for (const auto& c : doc["configs"]) {
    if (!c.is_array() || c.size() != 2) {
      throw Error(ErrorCode::ParseError, "config must be a pair of points");
    }
    path.configs.push_back({parse_point(c[0]), parse_point(c[1])});
  }
  return path;
}

json config_to_json(const TwoParticleConfig& c) {
  return json::array({point_to_json(c.p1), point_to_json(c.p2)});
}

json path_to_json(const DiscretePath& path) {
  json configs = json::array();
  for (const auto& c : path.configs) configs.push_back(config_to_json(c));
  return {{"dt", path.dt}, {"configs", configs}};
}

json kernel_to_json(const ResolvedKernel& kernel) {
  json partials = json::array();
  for (const auto& [cls, k] : kernel.partials) {
    partials.push_back({{"kind", to_string(cls.kind())},
                        {"winding", cls.winding()},
                        {"re", k.real()},
                        {"im", k.imag()}});
  }
  return {{"endpoints",
           {{"start", config_to_json(kernel.endpoints.start)},
            {"end", config_to_json(kernel.endpoints.end)}}},
          {"n_steps", kernel.n_steps},
          {"partials", partials}};
}

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  return fmt::format("{:.12g}", x);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}\n", format_number(r.theta), to_string(r.op_class),
                       format_number(r.phi), format_number(r.amplitude.real()),
                       format_number(r.amplitude.imag()));
  }
  return out;
}

}  // namespace anyonsim::io
