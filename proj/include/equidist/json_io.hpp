#pragma once

#include <string>

#include "equidist/construction.hpp"
#include "equidist/density.hpp"
#include "equidist/harness.hpp"
#include "equidist/integer_set.hpp"
#include "equidist/measure.hpp"
#include "equidist/riemann.hpp"
#include "json.hpp"

namespace equidist::json_io {

using Json = nlohmann::json;

/// Reals may arrive as JSON numbers, decimal strings or "p/q" strings.
double parse_real(const Json& j);
/// Shortest round-trip decimal.
std::string real_string(double v);
/// Number rounded to 15 significant digits, for reports.
Json report_real(double v);

IntegerSet parse_set(const Json& j);
Json to_json(const IntegerSet& s);
std::string to_hex(const IntegerSet& bitmask);

Measure parse_measure(const Json& j);
Json to_json(const Measure& m);

Generator parse_generator(const Json& j);
Json to_json(const Generator& g);

BoundedFunction parse_function(const Json& j);
Json to_json(const BoundedFunction& f);

WeightSequence parse_weights(const Json& j);
IndexSequence parse_index(const std::string& text);
Interval parse_interval(const std::string& text);

Json to_json(const DensityEstimate& e);
Json to_json(const BuckMeasurability& b);
Json to_json(const QAlgebraReport& r);
Json to_json(const DecompositionReport& r);
Json to_json(const IntervalCheck& c);
Json to_json(const Corollary1Report& r);
Json to_json(const AverageReport& r);
Json to_json(const DiscrepancyReport& r);
Json to_json(const Envelope& e);
Json to_json(const IntegrabilityVerdict& v);

/// Parses text, mapping library-level syntax errors to ErrorCode::Parse.
Json parse_text(const std::string& text);

}  // namespace equidist::json_io
