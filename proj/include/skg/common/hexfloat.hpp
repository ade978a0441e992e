#pragma once

#include <Eigen/Dense>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "skg/common/error.hpp"

namespace skg {

/// "%a" formatting: exact, so a reload reproduces every bit.
inline std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

inline double read_hexfloat(std::istream& in, const std::string& what) {
  std::string tok;
  if (!(in >> tok)) throw Error(what + ": truncated");
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) throw Error(what + ": bad number " + tok);
  return v;
}

inline void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << hexfloat(m(r, c));
    out << '\n';
  }
}

inline Eigen::MatrixXd read_matrix(std::istream& in, const std::string& what) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw Error(what + ": bad shape");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = read_hexfloat(in, what);
  }
  return m;
}

/// Reads "<word> " and checks it; keeps the serialized formats self-describing.
inline void expect_word(std::istream& in, const std::string& word, const std::string& what) {
  std::string tok;
  if (!(in >> tok) || tok != word) throw Error(what + ": expected '" + word + "'");
}

}  // namespace skg
