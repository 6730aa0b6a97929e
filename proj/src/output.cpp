#include "casimir/output.hpp"

#include "casimir/errors.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace casimir
{

namespace
{

std::string csv_field(const std::string& text)
{
   if (text.find_first_of(",\"\n") == std::string::npos)
   {
      return text;
   }
   std::string quoted = "\"";
   for (char ch : text)
   {
      quoted += ch;
      if (ch == '"')
      {
         quoted += '"';
      }
   }
   return quoted + "\"";
}

} // namespace

std::string format_sci(double value)
{
   char buf[32];
   std::snprintf(buf, sizeof buf, "%.8e", value == 0.0 ? 0.0 : value); // no "-0"
   return buf;
}

std::string sha256_hex(std::string_view text)
{
   unsigned char digest[EVP_MAX_MD_SIZE];
   unsigned int length = 0;
   if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
   {
      throw Error("SHA-256 digest failed");
   }
   static constexpr char hex[] = "0123456789abcdef";
   std::string out;
   out.reserve(2 * length);
   for (unsigned int i = 0; i < length; ++i)
   {
      out += hex[digest[i] >> 4];
      out += hex[digest[i] & 0xf];
   }
   return out;
}

std::string config_hash(const std::vector<std::pair<std::string, std::string>>& canonical)
{
   std::string text;
   for (const auto& [k, v] : canonical)
   {
      text += k + "=" + v + "\n";
   }
   return sha256_hex(text);
}

void write_header(std::ostream& out, const OutputHeader& header)
{
   out << "# casimir " << version << "\n";
   out << "# config_sha256=" << header.config_hash << "\n";
   for (const auto& [k, v] : header.parameters)
   {
      out << "# " << k << "=" << v << "\n";
   }
   for (const auto& note : header.notes)
   {
      out << "# " << note << "\n";
   }
}

void write_force_curve_csv(std::ostream& out, const ForceCurve& curve, bool with_column_header)
{
   if (with_column_header)
   {
      out << "distance_nm,force_pN,model_label\n";
   }
   for (std::size_t i = 0; i < curve.distances.size(); ++i)
   {
      out << format_sci(curve.distances[i] * 1e9) << "," << format_sci(curve.forces[i] * 1e12)
          << "," << csv_field(curve.model_label) << "\n";
   }
}

void write_band_csv(std::ostream& out, const ForceBand& band)
{
   out << "distance_nm,f_min_pN,f_max_pN\n";
   for (std::size_t i = 0; i < band.distances.size(); ++i)
   {
      out << format_sci(band.distances[i] * 1e9) << "," << format_sci(band.f_min[i] * 1e12) << ","
          << format_sci(band.f_max[i] * 1e12) << "\n";
   }
}

} // namespace casimir
