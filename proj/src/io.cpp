#include "qent/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qent/error.hpp"

namespace qent::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string &what) { throw Error(ErrorCode::ParseError, what); }

double parse_double(std::string_view text, ErrorCode code) {
  double x = 0.0;
  const char *first = text.data();
  const char *last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last)
    throw Error(code, "cannot parse number '" + std::string(text) + "'");
  return x;
}

std::vector<std::vector<double>> matrix_rows(const json &j, const char *key) {
  if (!j.is_array()) parse_fail(std::string("'") + key + "' must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (const auto &row : j) {
    if (!row.is_array()) parse_fail(std::string("'") + key + "' rows must be arrays");
    std::vector<double> r;
    for (const auto &x : row) {
      if (!x.is_number()) parse_fail(std::string("'") + key + "' entries must be numbers");
      r.push_back(x.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

} // namespace

std::string format_number(double x) {
  char buf[64];
  if (x == 0.0) x = 0.0;
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

InputDocument parse_input(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("input must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) parse_fail("missing string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();

  InputDocument doc;
  if (kind == "spectrum") {
    doc.kind = InputKind::spectrum;
    if (j.contains("re") || j.contains("im")) parse_fail("spectrum input must not carry 're'/'im'");
    if (!j.contains("values") || !j["values"].is_array()) parse_fail("spectrum needs array 'values'");
    for (const auto &x : j["values"]) {
      if (!x.is_number()) parse_fail("'values' entries must be numbers");
      doc.values.push_back(x.get<double>());
    }
  } else if (kind == "density_matrix") {
    doc.kind = InputKind::density_matrix;
    if (j.contains("values")) parse_fail("density_matrix input must not carry 'values'");
    if (!j.contains("re")) parse_fail("density_matrix needs 're'");
    const auto re = matrix_rows(j["re"], "re");
    const std::size_t n = re.size();
    std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
    if (j.contains("im")) im = matrix_rows(j["im"], "im");
    if (im.size() != n) parse_fail("'re' and 'im' differ in shape");
    doc.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i].size() != n || im[i].size() != n) parse_fail("density matrix must be square");
      for (std::size_t k = 0; k < n; ++k)
        doc.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {re[i][k], im[i][k]};
    }
  } else {
    parse_fail("unknown kind '" + kind + "'");
  }
  return doc;
}

InputDocument read_input_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

Spectrum to_spectrum(const InputDocument &doc) {
  if (doc.kind == InputKind::spectrum) return Spectrum::from_values(std::span<const double>(doc.values));
  return eigenvalues(validate_density_matrix(doc.matrix));
}

std::vector<double> parse_alpha_grid(const std::string &text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw Error(ErrorCode::Usage, "alpha grid must look like start:stop:step");
  const double start = parse_double(std::string_view(text).substr(0, a), ErrorCode::Usage);
  const double stop = parse_double(std::string_view(text).substr(a + 1, b - a - 1), ErrorCode::Usage);
  const double step = parse_double(std::string_view(text).substr(b + 1), ErrorCode::Usage);
  if (!(step > 0.0) || !(start >= 0.0) || !(stop <= 1.0) || !(start <= stop))
    throw Error(ErrorCode::Usage, "alpha grid needs 0 <= start <= stop <= 1 and step > 0");
  std::vector<double> grid;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= count; ++i) grid.push_back(std::min(stop, start + static_cast<double>(i) * step));
  return grid;
}

std::string report_to_json(const EntropyReport &r) {
  json j;
  j["n"] = r.n;
  j["S"] = r.S;
  j["Q"] = r.Q;
  j["R"] = r.R;
  json samples = json::array();
  for (const auto &s : r.alpha_samples) samples.push_back({{"alpha", s.alpha}, {"value", s.value}});
  j["alpha_samples"] = samples;
  return j.dump();
}

EntropyReport report_from_json(const std::string &text) {
  try {
    const json j = json::parse(text);
    EntropyReport r;
    r.n = j.at("n").get<int>();
    r.S = j.at("S").get<double>();
    r.Q = j.at("Q").get<double>();
    r.R = j.at("R").get<std::vector<double>>();
    if (j.contains("alpha_samples"))
      for (const auto &s : j["alpha_samples"])
        r.alpha_samples.push_back({s.at("alpha").get<double>(), s.at("value").get<double>()});
    return r;
  } catch (const json::exception &e) {
    parse_fail(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const EntropyReport &r) {
  std::ostringstream os;
  os << "quantity,index,value\n";
  os << "n,," << r.n << "\n";
  os << "S,," << format_number(r.S) << "\n";
  os << "Q,," << format_number(r.Q) << "\n";
  for (std::size_t i = 0; i < r.R.size(); ++i) os << "R," << (i + 1) << "," << format_number(r.R[i]) << "\n";
  for (const auto &s : r.alpha_samples)
    os << "Ralpha," << format_number(s.alpha) << "," << format_number(s.value) << "\n";
  return os.str();
}

EntropyReport report_from_csv(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "quantity,index,value") parse_fail("missing CSV header");
  EntropyReport r;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = a == std::string::npos ? a : line.find(',', a + 1);
    if (b == std::string::npos) parse_fail("CSV row needs three fields: " + line);
    const std::string q = line.substr(0, a);
    const std::string idx = line.substr(a + 1, b - a - 1);
    const std::string_view val = std::string_view(line).substr(b + 1);
    if (q == "n") {
      r.n = static_cast<int>(parse_double(val, ErrorCode::ParseError));
    } else if (q == "S") {
      r.S = parse_double(val, ErrorCode::ParseError);
    } else if (q == "Q") {
      r.Q = parse_double(val, ErrorCode::ParseError);
    } else if (q == "R") {
      const auto k = static_cast<std::size_t>(parse_double(idx, ErrorCode::ParseError));
      if (k < 1) parse_fail("R index must be >= 1");
      if (r.R.size() < k) r.R.resize(k);
      r.R[k - 1] = parse_double(val, ErrorCode::ParseError);
    } else if (q == "Ralpha") {
      r.alpha_samples.push_back({parse_double(idx, ErrorCode::ParseError), parse_double(val, ErrorCode::ParseError)});
    } else {
      parse_fail("unknown CSV quantity '" + q + "'");
    }
  }
  return r;
}

std::string verdict_to_json_line(const PropertyVerdict &v) {
  json j;
  j["property"] = v.property;
  j["trials"] = v.trials;
  j["failures"] = v.failures;
  j["worstViolation"] = v.worst_violation;
  j["passed"] = v.passed;
  j["expectFailure"] = v.expect_failure;
  j["ok"] = v.ok();
  j["details"] = v.details;
  j["notes"] = v.notes;
  return j.dump();
}

SurfaceQuantity parse_surface_quantity(const std::string &text) {
  SurfaceQuantity q;
  if (text == "S") {
    q.kind = SurfaceQuantity::Kind::S;
  } else if (text == "Q") {
    q.kind = SurfaceQuantity::Kind::Q;
  } else if (text.rfind("R:", 0) == 0) {
    q.kind = SurfaceQuantity::Kind::R;
    const double r = parse_double(std::string_view(text).substr(2), ErrorCode::Usage);
    if (r != std::floor(r) || r < 1 || r > 3)
      throw Error(ErrorCode::Usage, "R:r needs an integer r in [1, 3]");
    q.r = static_cast<int>(r);
  } else if (text.rfind("Ralpha:", 0) == 0) {
    q.kind = SurfaceQuantity::Kind::Ralpha;
    q.alpha = parse_double(std::string_view(text).substr(7), ErrorCode::Usage);
    if (!(q.alpha >= 0.0 && q.alpha <= 1.0)) throw Error(ErrorCode::Usage, "Ralpha:x needs x in [0, 1]");
  } else {
    throw Error(ErrorCode::Usage, "quantity must be S, Q, R:r or Ralpha:x (got '" + text + "')");
  }
  return q;
}

SurfaceGrid surface(const SurfaceQuantity &q, int resolution) {
  if (resolution < 2) throw Error(ErrorCode::Usage, "resolution must be at least 2");
  SurfaceGrid g;
  g.resolution = resolution;
  const double k = resolution;
  for (int i = resolution; i >= 0; --i) {
    for (int j = resolution - i; j >= 0; --j) {
      const int l = resolution - i - j;
      const double lam[3] = {i / k, j / k, l / k};
      const Spectrum s = Spectrum::from_values(std::span<const double>(lam, 3));
      double value = 0.0;
      switch (q.kind) {
      case SurfaceQuantity::Kind::S: value = von_neumann_entropy(s); break;
      case SurfaceQuantity::Kind::Q: value = subentropy(s); break;
      case SurfaceQuantity::Kind::R: value = intermediate_r(s, q.r); break;
      case SurfaceQuantity::Kind::Ralpha: value = interpolant(s, q.alpha); break;
      }
      g.rows.push_back({lam[0], lam[1], lam[2], value});
    }
  }
  return g;
}

std::string surface_to_csv(const SurfaceGrid &g) {
  std::ostringstream os;
  os << "l1,l2,l3,value\n";
  for (const auto &row : g.rows)
    os << format_number(row.l1) << "," << format_number(row.l2) << "," << format_number(row.l3) << ","
       << format_number(row.value) << "\n";
  return os.str();
}

} // namespace qent::io
