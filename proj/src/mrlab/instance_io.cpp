#include "mrlab/instance_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "mrlab/error.hpp"

namespace mrlab {
namespace {

[[noreturn]] void syntax(int line, const std::string& what) {
  fail(ErrorCode::kInvalidArgument, "instance line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& token, int line) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') syntax(line, "not a number: '" + token + "'");
  return v;
}

std::vector<double> parse_numbers(std::istringstream& is, int line) {
  std::vector<double> out;
  std::string token;
  while (is >> token) out.push_back(parse_number(token, line));
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Instance parse_instance(std::string_view text, double tol) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_family = false;
  long long points = -1;
  std::vector<double> weights;
  bool uniform = true;
  std::vector<double> coeffs;
  bool have_coeffs = false;
  std::vector<std::vector<double>> rows;
  bool in_system = false;
  Instance out;

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (line == 1 && raw.rfind("# mrlab-instance", 0) == 0 && raw != kInstanceHeader)
      syntax(line, "unsupported instance version '" + raw + "'");
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    std::istringstream is(raw);
    if (in_system) {
      rows.push_back(parse_numbers(is, line));
      continue;
    }
    std::string key;
    is >> key;
    if (key == "family") {
      std::string rest;
      std::getline(is, rest);
      out.family = enumerate_family(FamilyDescriptor::parse(rest));
      have_family = true;
    } else if (key == "points") {
      std::string token;
      if (!(is >> token)) syntax(line, "points needs a count");
      const double v = parse_number(token, line);
      if (v < 1 || v != static_cast<double>(static_cast<long long>(v))) syntax(line, "points must be a positive integer");
      points = static_cast<long long>(v);
    } else if (key == "weights") {
      std::string token;
      std::streampos mark = is.tellg();
      if (is >> token && token == "uniform") {
        uniform = true;
      } else {
        is.clear();
        is.seekg(mark);
        weights = parse_numbers(is, line);
        uniform = false;
      }
    } else if (key == "coefficients") {
      coeffs = parse_numbers(is, line);
      have_coeffs = true;
    } else if (key == "system") {
      in_system = true;
    } else {
      syntax(line, "unknown key '" + key + "'");
    }
  }

  if (!have_family) fail(ErrorCode::kInvalidArgument, "instance lacks a family line");
  if (points < 0) fail(ErrorCode::kInvalidArgument, "instance lacks a points line");
  if (!have_coeffs) fail(ErrorCode::kInvalidArgument, "instance lacks a coefficients line");
  if (!in_system) fail(ErrorCode::kInvalidArgument, "instance lacks a system block");

  const auto d = static_cast<Eigen::Index>(out.family.dimension());
  const auto m = static_cast<Eigen::Index>(points);
  if (static_cast<Eigen::Index>(coeffs.size()) != d)
    fail(ErrorCode::kInvalidInstance, "expected " + std::to_string(d) + " coefficients, got " +
                                          std::to_string(coeffs.size()));
  if (static_cast<Eigen::Index>(rows.size()) != m)
    fail(ErrorCode::kInvalidInstance,
         "expected " + std::to_string(m) + " system rows, got " + std::to_string(rows.size()));
  if (!uniform && static_cast<Eigen::Index>(weights.size()) != m)
    fail(ErrorCode::kInvalidInstance, "expected " + std::to_string(m) + " weights");

  out.system.weights = uniform ? Vector(Vector::Ones(m)) : Vector(Eigen::Map<const Vector>(weights.data(), m));
  out.system.values.resize(m, d);
  for (Eigen::Index x = 0; x < m; ++x) {
    const auto& row = rows[static_cast<std::size_t>(x)];
    if (static_cast<Eigen::Index>(row.size()) != d)
      fail(ErrorCode::kInvalidInstance, "system row " + std::to_string(x + 1) + " has " +
                                            std::to_string(row.size()) + " values, expected " +
                                            std::to_string(d));
    for (Eigen::Index i = 0; i < d; ++i) out.system.values(x, i) = row[static_cast<std::size_t>(i)];
  }
  out.coeffs = Eigen::Map<const Vector>(coeffs.data(), d);
  if (!out.coeffs.allFinite()) fail(ErrorCode::kInvalidInstance, "non-finite coefficient");
  validate(out.system, tol);
  return out;
}

Instance load_instance(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), tol);
}

std::string format_instance(const Instance& instance) {
  std::ostringstream os;
  os << kInstanceHeader << '\n';
  os << "family " << instance.family.descriptor.to_string() << '\n';
  os << "points " << instance.system.points() << '\n';
  os << "weights";
  for (Eigen::Index x = 0; x < instance.system.points(); ++x) os << ' ' << format_double(instance.system.weights(x));
  os << '\n' << "coefficients";
  for (Eigen::Index i = 0; i < instance.coeffs.size(); ++i) os << ' ' << format_double(instance.coeffs(i));
  os << '\n' << "system\n";
  for (Eigen::Index x = 0; x < instance.system.points(); ++x) {
    for (Eigen::Index i = 0; i < instance.system.functions(); ++i)
      os << (i ? " " : "") << format_double(instance.system.values(x, i));
    os << '\n';
  }
  return os.str();
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << format_instance(instance);
  if (!out) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

}  // namespace mrlab
