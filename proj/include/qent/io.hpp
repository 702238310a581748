#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qent/entropy.hpp"
#include "qent/oracles.hpp"
#include "qent/spectra.hpp"
#include "qent/verify.hpp"

namespace qent::io {

enum class InputKind { spectrum, density_matrix };

/// {"kind":"spectrum","values":[...]} or
/// {"kind":"density_matrix","re":[[...]],"im":[[...]]} (im optional).
struct InputDocument {
  InputKind kind = InputKind::spectrum;
  std::vector<double> values;
  Eigen::MatrixXcd matrix;
};

/// Throws Error(ParseError) on malformed JSON or schema violations.
InputDocument parse_input(const std::string &text);
InputDocument read_input_file(const std::string &path);

/// Validates the payload (spectrum rules or density-matrix rules).
Spectrum to_spectrum(const InputDocument &doc);

/// "start:stop:step", inclusive of stop up to rounding. Throws Usage.
std::vector<double> parse_alpha_grid(const std::string &text);

std::string report_to_json(const EntropyReport &r);
EntropyReport report_from_json(const std::string &text);

/// Rows "quantity,index,value" with 15 significant digits.
std::string report_to_csv(const EntropyReport &r);
EntropyReport report_from_csv(const std::string &text);

std::string verdict_to_json_line(const PropertyVerdict &v);

/// Locale-independent %.15g.
std::string format_number(double x);

struct SurfaceRow {
  double l1, l2, l3, value;
};

struct SurfaceGrid {
  int n = 3;
  int resolution = 0;
  std::vector<SurfaceRow> rows;
};

/// Parsed form of "S" | "Q" | "R:r" | "Ralpha:x". Throws Usage.
struct SurfaceQuantity {
  enum class Kind { S, Q, R, Ralpha } kind = Kind::S;
  int r = 1;
  double alpha = 0.0;
};
SurfaceQuantity parse_surface_quantity(const std::string &text);

/// Barycentric grid (i, j, k) / resolution over the 2-simplex.
SurfaceGrid surface(const SurfaceQuantity &q, int resolution);
std::string surface_to_csv(const SurfaceGrid &g);

} // namespace qent::io
