#pragma once

// Exports learned word representations as CSV matrices and grayscale PGM
// heatmaps, including side-by-side pairs for comparing equivalent words.

#include <string>
#include <vector>

#include "grouprep/matrixnet.hpp"

namespace grouprep {

// The full represented matrix of a word: multi-channel models assemble their
// channels block-diagonally, so every word exports as one square matrix.
Matrix represented_matrix(const MatrixNetModel& model, const Word& w);

// Comma-separated rows, one line per row, with round-trip-exact decimal.
std::string matrix_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

// Plain-text PGM (P2), one pixel per entry, linearly rescaled so the minimum
// maps to black and the maximum to white; constant matrices come out mid
// gray.
void write_pgm_heatmap(const Matrix& m, const std::string& path);

// File stem for a word: "e" for the empty word, otherwise symbols joined by
// '_' with a trailing 'i' marking inverses ("s1 s2'" -> "s1_s2i").
std::string word_file_stem(const Word& w);

// Writes <dir>/<stem>.csv and <dir>/<stem>.pgm per word; creates dir.
void export_representations(const MatrixNetModel& model,
                            const std::vector<Word>& words,
                            const std::string& dir);

// Horizontally concatenates the two words' matrices (shared gray scale) into
// <dir>/<stemA>__<stemB>.{csv,pgm}.
void export_representation_pair(const MatrixNetModel& model, const Word& a,
                                const Word& b, const std::string& dir);

}  // namespace grouprep
