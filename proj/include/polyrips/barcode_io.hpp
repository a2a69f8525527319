#pragma once

// Text, JSON and SVG forms of barcodes, and JSON for samples. Reals are
// written with 12 significant digits, so parsing an emitted value returns it
// rounded to that precision and re-emitting is exact.

#include <string>

#include "polyrips/predictor.hpp"
#include "polyrips/sampler.hpp"

namespace polyrips {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

double round_significant(double x, int digits = kSignificantDigits);

std::string interval_text(const Interval& iv);
std::string barcode_text(const Barcode& bc);

std::string barcode_json(const Barcode& bc);
Barcode parse_barcode_json(const std::string& text);

std::string sample_json(const Sample& s);
Sample parse_sample_json(const std::string& text);

std::string barcode_svg(const Barcode& bc);

}  // namespace polyrips
