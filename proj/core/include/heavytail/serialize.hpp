// Serialization of sample batches: CSV with a provenance header, and a
// versioned JSON envelope.  All floating-point values are written with 17
// significant digits so round-tripping through text is lossless.

#pragma once

#include <string>

#include "heavytail/families.hpp"
#include "heavytail/samplers.hpp"

namespace heavytail::serialize {

// Version tag stamped into every JSON document the toolkit emits; the
// machine-readable contract lives in schemas/heavytail-output.schema.json.
inline constexpr const char* kSchemaVersion = "heavytail/v1";

// One provenance comment block (family, params, recipe, seed, stream, n),
// then a "value" column with one %.17g number per row.
std::string to_csv(const samplers::SampleBatch& batch);

// {"schema", "kind":"samples", "family", "params", "recipe", "seed",
//  "stream", "n", "values" | "summary"}.  With include_values = false the
// values array is replaced by a summary (count, mean, stdev, min, max).
std::string to_json(const samplers::SampleBatch& batch,
                    bool include_values = true);

// Named parameter fields for a family, e.g. {"delta": 0.5}; empty object
// for parameter-free families.
std::string params_json(const FamilySpec& spec);

}  // namespace heavytail::serialize
