#pragma once

#include "casimir/lifshitz.hpp"

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace casimir
{

inline constexpr std::string_view version = "0.1.0";

/// Scientific notation, 9 significant digits.
std::string format_sci(double value);

/// Hex SHA-256 of `text`.
std::string sha256_hex(std::string_view text);

/// Hash of canonical key=value lines, order-sensitive.
std::string config_hash(const std::vector<std::pair<std::string, std::string>>& canonical);

struct OutputHeader
{
   std::string config_hash;
   std::vector<std::pair<std::string, std::string>> parameters;
   std::vector<std::string> notes;
};

/// `#` comment block: tool version, config hash, parameters, notes.
void write_header(std::ostream& out, const OutputHeader& header);

/// distance_nm, force_pN, model_label
void write_force_curve_csv(std::ostream& out, const ForceCurve& curve, bool with_column_header = true);

/// distance_nm, f_min_pN, f_max_pN
void write_band_csv(std::ostream& out, const ForceBand& band);

} // namespace casimir
