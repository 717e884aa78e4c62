#include "qinterf/spectra.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace qinterf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw std::invalid_argument("jsa file line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, std::size_t line) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') malformed(line, "malformed number '" + tok + "'");
  if (!std::isfinite(v)) malformed(line, "non-finite entries");
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace

JointSpectralAmplitude read_jsa(std::istream& in) {
  std::optional<Axis> axis_s, axis_i;
  std::optional<double> center_s, center_i;
  Eigen::MatrixXcd values;
  std::size_t expected = 0;
  std::size_t filled = 0;
  std::size_t lineno = 0;
  std::string raw;

  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);

    const bool header_done = axis_s && axis_i && center_s && center_i;
    if (!header_done) {
      const std::string& key = tok.front();
      if (key == "axis_s" || key == "axis_i") {
        if (tok.size() != 4) malformed(lineno, "malformed header: expected '" + key + " start step count'");
        const double count = parse_number(tok[3], lineno);
        if (count < 2 || count != std::floor(count)) malformed(lineno, "malformed header: bad count");
        try {
          Axis a(parse_number(tok[1], lineno), parse_number(tok[2], lineno), static_cast<std::size_t>(count));
          (key == "axis_s" ? axis_s : axis_i) = a;
        } catch (const std::invalid_argument& e) {
          malformed(lineno, std::string("malformed header: ") + e.what());
        }
      } else if (key == "center_s" || key == "center_i") {
        if (tok.size() != 2) malformed(lineno, "malformed header: expected '" + key + " value'");
        (key == "center_s" ? center_s : center_i) = parse_number(tok[1], lineno);
      } else {
        malformed(lineno, "malformed header: unexpected '" + key + "' before the header is complete");
      }
      if (axis_s && axis_i && center_s && center_i) {
        expected = axis_s->count() * axis_i->count();
        values.resize(static_cast<Eigen::Index>(axis_s->count()), static_cast<Eigen::Index>(axis_i->count()));
      }
      continue;
    }

    if (tok.size() != 2) malformed(lineno, "data line must hold 're im'");
    if (filled >= expected) malformed(lineno, "shape mismatch: more data lines than count_s * count_i");
    const auto cols = static_cast<std::size_t>(values.cols());
    values(static_cast<Eigen::Index>(filled / cols), static_cast<Eigen::Index>(filled % cols)) =
        cplx(parse_number(tok[0], lineno), parse_number(tok[1], lineno));
    ++filled;
  }

  if (!(axis_s && axis_i && center_s && center_i)) throw std::invalid_argument("jsa file: malformed header (incomplete)");
  if (filled != expected)
    throw std::invalid_argument("jsa file: shape mismatch: expected " + std::to_string(expected) + " data lines, got " +
                                std::to_string(filled));
  return JointSpectralAmplitude::normalized(Grid2(*axis_s, *axis_i, std::move(values)), *center_s, *center_i);
}

JointSpectralAmplitude load_jsa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open jsa file " + path.string());
  return read_jsa(in);
}

void write_jsa(std::ostream& out, const JointSpectralAmplitude& jsa) {
  const Axis& as = jsa.axis_s();
  const Axis& ai = jsa.axis_i();
  out << "# joint spectral amplitude, detunings in rad/s, row-major (signal, idler)\n";
  out << "axis_s " << format_double(as.start()) << ' ' << format_double(as.step()) << ' ' << as.count() << '\n';
  out << "axis_i " << format_double(ai.start()) << ' ' << format_double(ai.step()) << ' ' << ai.count() << '\n';
  out << "center_s " << format_double(jsa.center_s()) << '\n';
  out << "center_i " << format_double(jsa.center_i()) << '\n';
  const Eigen::MatrixXcd& v = jsa.values();
  for (Eigen::Index j = 0; j < v.rows(); ++j)
    for (Eigen::Index k = 0; k < v.cols(); ++k)
      out << format_double(v(j, k).real()) << ' ' << format_double(v(j, k).imag()) << '\n';
}

void save_jsa(const std::filesystem::path& path, const JointSpectralAmplitude& jsa) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write jsa file " + path.string());
  write_jsa(out, jsa);
}

}  // namespace qinterf
