#pragma once

#include "srgeom/core.hpp"
#include "srgeom/sr_metric.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace srgeom {

// Square matrix from either a JSON array-of-arrays or whitespace-separated
// text (p lines of p numbers). Detected by the first non-space character.
// Throws ParseError.
Eigen::MatrixXd parse_matrix(const std::string& text);
Eigen::MatrixXd read_matrix_file(const std::string& path);

// 17 significant digits: round-trips double precision exactly.
std::string format_double(double v);

std::string matrix_to_json(const Eigen::MatrixXd& m, int indent = 0);

// Header t,x11,x12,...,xpp (upper triangle, row-major), one sample per line.
std::string curve_to_csv(const MssrCurve& c, int samples);
std::string curve_to_json(const MssrCurve& c, int samples);

}  // namespace srgeom
