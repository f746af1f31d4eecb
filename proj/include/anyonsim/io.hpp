#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anyonsim/amplitudes.hpp"
#include "anyonsim/config_space.hpp"
#include "anyonsim/exchange.hpp"

namespace anyonsim::io {

/// Parses {"dt": number, "configs": [[[x1,y1],[x2,y2]], ...]}. Throws
/// ParseError on malformed input; does not validate path invariants.
DiscretePath parse_path_json(std::string_view text);
nlohmann::json path_to_json(const DiscretePath& path);

nlohmann::json config_to_json(const TwoParticleConfig& c);

/// {"endpoints": {"start": ..., "end": ...}, "n_steps": n,
///  "partials": [{"kind", "winding", "re", "im"}, ...]}
nlohmann::json kernel_to_json(const ResolvedKernel& kernel);

/// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);

inline constexpr std::string_view kSweepHeader = "theta,op_class,phi,re_amp,im_amp";

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace anyonsim::io
