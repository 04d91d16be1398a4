#include "io.hpp"

#include <Eigen/Core>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef SIMPLEXFORGE_VERSION
#define SIMPLEXFORGE_VERSION "0.0.0"
#endif

namespace simplexforge::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw IoError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

Json complex_pair(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw IoError("expected [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json real_vector(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

RealVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected array of reals");
  RealVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string tool_version() { return SIMPLEXFORGE_VERSION; }

std::string environment_digest() {
  std::ostringstream env;
#if defined(__clang__)
  env << "clang-" << __clang_major__ << '.' << __clang_minor__;
#elif defined(__GNUC__)
  env << "gcc-" << __GNUC__ << '.' << __GNUC_MINOR__;
#else
  env << "cxx";
#endif
  env << ";std=" << __cplusplus << ";eigen=" << EIGEN_WORLD_VERSION << '.'
      << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION
      << ";ptr=" << sizeof(void*);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(env.str())));
  return buf;
}

Json to_json(const RunManifest& m) {
  return Json{{"command_line", m.command_line},
              {"config", m.config},
              {"seed", m.seed},
              {"tolerances", m.tolerances},
              {"tool_version", m.tool_version},
              {"wall_time_s", m.wall_time_s},
              {"environment_digest", m.environment_digest},
              {"nondeterministic", m.nondeterministic}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command_line = j.value("command_line", "");
  m.config = j.value("config", Json::object());
  m.seed = j.value("seed", std::uint64_t{0});
  m.tolerances = j.value("tolerances", Json::object());
  m.tool_version = j.value("tool_version", "");
  m.wall_time_s = j.value("wall_time_s", 0.0);
  m.environment_digest = j.value("environment_digest", "");
  m.nondeterministic = j.value("nondeterministic", false);
  return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back(complex_pair(m(r, c)));
    }
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n)) {
    throw IoError("matrix must hold " + std::to_string(n * n) + " entries");
  }
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = complex_from_json(j[r * n + c]);
  }
  return m;
}

Json basis_to_json(const GellMannBasis& basis) {
  Json mats = Json::array();
  for (int k = 0; k < basis.size(); ++k) {
    mats.push_back(matrix_to_json(basis[k]));
  }
  return Json{{"dim", basis.dim()}, {"matrices", mats}};
}

Json simplex_to_json(const Simplex& s) {
  Json out = Json::array();
  for (int i = 0; i < s.vertex_count(); ++i) {
    out.push_back(real_vector(s.vertex(i)));
  }
  return out;
}

Json result_to_json(const PovmFamilyResult& r, const RunManifest& m) {
  Json vertices = Json::array();
  for (const auto& v : r.vertices) vertices.push_back(real_vector(v.coords));
  Json matrices = Json::array();
  for (const auto& mat : r.matrices) matrices.push_back(matrix_to_json(mat));
  Json spectra = Json::array();
  for (const auto& s : r.spectra) spectra.push_back(s);
  Json psd = Json::array();
  for (bool b : r.psd_flags) psd.push_back(b);
  return Json{
      {"manifest", to_json(m)},
      {"dim", r.dim},
      {"power", r.power},
      {"f0", r.f0},
      {"residual_sum", r.residual_sum},
      {"per_vertex_residuals", r.per_vertex_residuals},
      {"iterations", r.iterations},
      {"restarts", r.restarts},
      {"wall_time_s", r.wall_time_s},
      {"source", r.source},
      {"vertices", vertices},
      {"matrices", matrices},
      {"spectra", spectra},
      {"flags",
       {{"converged", r.converged},
        {"psd_all", r.psd_all()},
        {"psd", psd},
        {"nondeterministic", r.nondeterministic}}},
  };
}

PovmFamilyResult result_from_json(const Json& j) {
  PovmFamilyResult r;
  r.dim = require(j, "dim").get<int>();
  if (r.dim < 2) throw IoError("dim must be >= 2");
  r.power = j.value("power", 3);
  r.f0 = require(j, "f0").get<double>();
  r.residual_sum = j.value("residual_sum", 0.0);
  r.per_vertex_residuals =
      j.value("per_vertex_residuals", std::vector<double>{});
  r.iterations = j.value("iterations", 0);
  r.restarts = j.value("restarts", 0);
  r.wall_time_s = j.value("wall_time_s", 0.0);
  r.source = j.value("source", "file");
  for (const auto& mat : require(j, "matrices")) {
    r.matrices.push_back(matrix_from_json(mat, r.dim));
  }
  if (j.contains("vertices")) {
    for (const auto& v : j.at("vertices")) {
      r.vertices.emplace_back(r.dim, real_vector_from_json(v));
    }
  }
  if (j.contains("spectra")) {
    r.spectra = j.at("spectra").get<std::vector<std::vector<double>>>();
  }
  if (j.contains("flags")) {
    const Json& f = j.at("flags");
    r.converged = f.value("converged", false);
    r.nondeterministic = f.value("nondeterministic", false);
    r.psd_flags = f.value("psd", std::vector<bool>{});
  }
  return r;
}

Json sic_to_json(const SicCandidate& c, const RunManifest& m) {
  return result_to_json(family_from_sic(c), m);
}

ComplexVector fiducial_from_json(const Json& j) {
  const int n = require(j, "dim").get<int>();
  const Json& fid = require(j, "fiducial");
  if (!fid.is_array() || fid.size() != static_cast<std::size_t>(n)) {
    throw IoError("fiducial must hold dim entries");
  }
  ComplexVector psi(n);
  for (int i = 0; i < n; ++i) psi[i] = complex_from_json(fid[i]);
  return psi;
}

Json report_to_json(const VerificationReport& r) {
  Json spectra = Json::array();
  for (const auto& s : r.spectra) spectra.push_back(s);
  Json psd = Json::array();
  for (bool b : r.psd_flags) psd.push_back(b);
  Json out{
      {"dim", r.dim},
      {"power", r.power},
      {"f0", r.f0},
      {"tol", r.tol},
      {"trace_max_dev", r.trace_max_dev},
      {"overlap_max_dev", r.overlap_max_dev},
      {"gram_max_dev", r.gram_max_dev},
      {"radius_max_dev", r.radius_max_dev},
      {"f_values", r.f_values},
      {"f_spread", r.f_spread},
      {"f_max_dev", r.f_max_dev},
      {"spectra", spectra},
      {"spectral_distance", r.spectral_distance},
      {"spectrum_route_dev", nullptr},
      {"psd_flags", psd},
      {"purity_defects", r.purity_defects},
      {"all_pure", r.all_pure},
      {"triple_sum", r.triple_sum},
      {"triple_sum_dev", nullptr},
      {"last_vertex_reconstruction_dev", r.last_vertex_reconstruction_dev},
      {"last_vertex_purity_defect", r.last_vertex_purity_defect},
      {"flags",
       {{"geometry_ok", r.geometry_ok},
        {"values_ok", r.values_ok},
        {"closure_ok", r.closure_ok},
        {"triple_ok", r.triple_ok},
        {"cospectral", r.cospectral},
        {"verdict", r.verdict}}},
  };
  if (r.spectrum_route_dev) out["spectrum_route_dev"] = *r.spectrum_route_dev;
  if (r.triple_sum_dev) out["triple_sum_dev"] = *r.triple_sum_dev;
  return out;
}

std::string report_table(const VerificationReport& r) {
  std::ostringstream os;
  auto row = [&os](const std::string& name, const std::string& value,
                   const std::string& status) {
    os << std::left << std::setw(34) << name << std::setw(26) << value
       << status << '\n';
  };
  auto num = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return std::string(buf);
  };
  auto ok = [&r](double dev) { return dev <= r.tol ? "ok" : "FAIL"; };

  os << "dim " << r.dim << ", power " << r.power << ", f0 "
     << format_double(r.f0) << ", tol " << num(r.tol) << '\n';
  row("trace deviation", num(r.trace_max_dev), ok(r.trace_max_dev));
  row("overlap deviation", num(r.overlap_max_dev), ok(r.overlap_max_dev));
  row("gram deviation", num(r.gram_max_dev), ok(r.gram_max_dev));
  row("radius deviation", num(r.radius_max_dev), ok(r.radius_max_dev));
  row("value deviation from f0", num(r.f_max_dev), ok(r.f_max_dev));
  row("value spread", num(r.f_spread), "");
  row("spectral distance", num(r.spectral_distance),
      r.cospectral ? "cospectral" : "not cospectral");
  row("spectrum route deviation",
      r.spectrum_route_dev ? num(*r.spectrum_route_dev) : "n/a", "");
  std::size_t psd = 0;
  for (bool b : r.psd_flags) psd += b ? 1 : 0;
  row("positive semidefinite",
      std::to_string(psd) + "/" + std::to_string(r.psd_flags.size()), "");
  row("all pure", r.all_pure ? "yes" : "no", "");
  row("triple sum", num(r.triple_sum),
      r.triple_sum_dev ? (r.triple_ok ? "ok" : "FAIL") : "skipped");
  row("last vertex reconstruction", num(r.last_vertex_reconstruction_dev),
      ok(r.last_vertex_reconstruction_dev));
  row("last vertex purity defect", num(r.last_vertex_purity_defect), "");
  os << "verdict: " << (r.verdict ? "PASS" : "FAIL") << '\n';
  return os.str();
}

Json circle_to_json(const CircleProfile& p) {
  return Json{{"dim", p.dim},
              {"theta", p.theta_samples},
              {"trace", p.trace_values},
              {"fitted_constant", p.fitted_constant},
              {"fitted_cos3_coefficient", p.fitted_cos3_coefficient},
              {"fit_residual", p.fit_residual},
              {"alpha", p.alpha},
              {"triple_product", complex_pair(p.triple_product)},
              {"expected_constant", p.expected_constant},
              {"expected_cos3_coefficient", p.expected_cos3_coefficient}};
}

Json knaster_to_json(const KnasterS1Result& r) {
  Json points = Json::array();
  for (const auto& p : r.points) points.push_back(real_vector(p));
  return Json{{"angles", r.angles},
              {"points", points},
              {"values", r.values},
              {"common_value", r.common_value},
              {"spread", r.spread},
              {"iterations", r.iterations}};
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string scan_csv_header() {
  return "f0,residual_sum,iterations,converged,spectra_spread,psd_all\n";
}

std::string scan_csv_row(const PovmFamilyResult& r) {
  return format_double(r.f0) + ',' + format_double(r.residual_sum) + ',' +
         std::to_string(r.iterations) + ',' + (r.converged ? "1" : "0") +
         ',' + format_double(r.spectra_spread()) + ',' +
         (r.psd_all() ? "1" : "0") + '\n';
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": parse error at byte " +
                         std::to_string(e.byte) + ": " + e.what(),
                     e.byte);
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed on '" + path.string() + "'");
  return parse_json(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed on '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(1) + '\n');
}

}  // namespace simplexforge::io
