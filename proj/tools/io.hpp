#pragma once

// JSON and CSV persistence for the command-line front end. Compute modules
// never touch the filesystem; everything on disk goes through here.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "simplexforge/certify.hpp"
#include "simplexforge/knasteropt.hpp"
#include "simplexforge/simplexgeo.hpp"
#include "simplexforge/whsic.hpp"

namespace simplexforge::io {

using Json = nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte)
      : Error(what), byte_(byte) {}
  std::size_t byte() const { return byte_; }

 private:
  std::size_t byte_;
};

struct RunManifest {
  std::string command_line;
  Json config = Json::object();
  std::uint64_t seed = 0;
  Json tolerances = Json::object();
  std::string tool_version;
  double wall_time_s = 0.0;
  std::string environment_digest;
  bool nondeterministic = false;
};

std::string tool_version();
// Hash of compiler, language level and Eigen version; no host information.
std::string environment_digest();

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

// Row-major [[re, im], ...].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, int n);

Json basis_to_json(const GellMannBasis& basis);
Json simplex_to_json(const Simplex& s);

Json result_to_json(const PovmFamilyResult& r, const RunManifest& m);
PovmFamilyResult result_from_json(const Json& j);

// A SIC candidate persists in the result schema (power 3, pure-state f0).
Json sic_to_json(const SicCandidate& c, const RunManifest& m);

// {"dim": n, "fiducial": [[re, im], ...]}
ComplexVector fiducial_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);
std::string report_table(const VerificationReport& r);

Json circle_to_json(const CircleProfile& p);
Json knaster_to_json(const KnasterS1Result& r);

std::string scan_csv_header();
std::string scan_csv_row(const PovmFamilyResult& r);

// %.17g
std::string format_double(double x);

Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace simplexforge::io
