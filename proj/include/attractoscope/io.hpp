#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "attractoscope/distribution.hpp"

namespace attractoscope {

// Full round-trip precision for every floating-point value we emit.
std::string format_double(double v);

// Text layout:
//   # attractoscope phase-distribution
//   nx <nx>
//   np <np>
//   x_window 0 <2π>
//   p_window <p_min> <p_max>
// followed by np rows (p_min first) of nx space-separated weights.
void write_distribution_text(std::ostream& out, const PhaseDistribution& d);
PhaseDistribution read_distribution_text(std::istream& in);

// Binary 8-bit PGM (P5); the max weight maps to 255, top row is p_max.
void write_distribution_pgm(std::ostream& out, const PhaseDistribution& d);

// "p,probability" header followed by one line per bin.
void write_histogram_csv(std::ostream& out, const MomentumHistogram& h);

// Generic 8-bit grayscale heatmap of a row-major value grid; rows are written
// in the order given. Values are scaled linearly so that max -> 255.
void write_pgm(std::ostream& out, std::size_t width, std::size_t height,
               std::span<const double> values);

// Writes `content` produced by `writer` to path, throwing IoError on failure.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer,
                bool binary = false);

}  // namespace attractoscope
