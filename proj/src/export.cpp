#include "grouprep/export.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace grouprep {

namespace {

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string pgm_text(const Matrix& m) {
  const double lo = m.minCoeff();
  const double hi = m.maxCoeff();
  std::ostringstream out;
  out << "P2\n" << m.cols() << ' ' << m.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      int pixel = 128;
      if (hi > lo) {
        pixel = int(std::lround(255.0 * (m(r, c) - lo) / (hi - lo)));
      }
      out << pixel << (c + 1 < m.cols() ? ' ' : '\n');
    }
  }
  return out.str();
}

}  // namespace

Matrix represented_matrix(const MatrixNetModel& model, const Word& w) {
  const auto channels = represent_word(model, w);
  const int n = model.block.matrix_dim;
  Matrix out = Matrix::Zero(Eigen::Index(channels.size()) * n,
                            Eigen::Index(channels.size()) * n);
  for (std::size_t c = 0; c < channels.size(); ++c) {
    out.block(Eigen::Index(c) * n, Eigen::Index(c) * n, n, n) = channels[c];
  }
  return out;
}

std::string matrix_csv(const Matrix& m) {
  std::ostringstream out;
  char buf[40];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      out << buf << (c + 1 < m.cols() ? "," : "\n");
    }
  }
  return out.str();
}

Matrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        throw ParseError("matrix CSV: bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("matrix CSV: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = rows[std::size_t(r)][std::size_t(c)];
    }
  }
  return m;
}

void write_pgm_heatmap(const Matrix& m, const std::string& path) {
  write_text_file(path, pgm_text(m));
}

std::string word_file_stem(const Word& w) {
  if (w.empty()) return "e";
  std::string stem;
  for (std::size_t i = 0; i < w.symbols.size(); ++i) {
    if (i > 0) stem += '_';
    const SignedGen g = w.symbols[i];
    if (g.index == 0) {
      stem += 'e';
    } else {
      stem += 's' + std::to_string(g.index) + (g.sign < 0 ? "i" : "");
    }
  }
  return stem;
}

void export_representations(const MatrixNetModel& model,
                            const std::vector<Word>& words,
                            const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const Word& w : words) {
    const Matrix m = represented_matrix(model, w);
    const std::string base = dir + "/" + word_file_stem(w);
    write_text_file(base + ".csv", matrix_csv(m));
    write_pgm_heatmap(m, base + ".pgm");
  }
}

void export_representation_pair(const MatrixNetModel& model, const Word& a,
                                const Word& b, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const Matrix ma = represented_matrix(model, a);
  const Matrix mb = represented_matrix(model, b);
  Matrix side(ma.rows(), ma.cols() + mb.cols());
  side << ma, mb;
  const std::string base =
      dir + "/" + word_file_stem(a) + "__" + word_file_stem(b);
  write_text_file(base + ".csv", matrix_csv(side));
  write_pgm_heatmap(side, base + ".pgm");
}

}  // namespace grouprep
