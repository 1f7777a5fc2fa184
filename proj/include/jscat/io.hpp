#pragma once
// JSON and CSV serialization for every public value type, plus atomic file
// output. All floating-point values survive a dump/parse round trip exactly
// (shortest round-trip representation, at most 17 significant digits).

#include <string>

#include <json.hpp>

#include "jscat/circle_fn.hpp"
#include "jscat/direct_scattering.hpp"
#include "jscat/hankel.hpp"
#include "jscat/inverse_scattering.hpp"
#include "jscat/jacobi.hpp"
#include "jscat/smatrix.hpp"
#include "jscat/uniqueness.hpp"

namespace jscat::io {

using json = nlohmann::json;

// CircleFunction <-> {"coeffs": {"<index>": value, ...}}
json to_json(const CircleFunction& f);
CircleFunction circle_fn_from_json(const json& j);

// ScatteringMatrix <-> {"s": ..., "s_minus": ..., "s_plus": ...}
json to_json(const ScatteringMatrix& S);
ScatteringMatrix smatrix_from_json(const json& j);

// JacobiMatrix <-> {"perturbation": {"<site>": [p, q], ...}, "range": [lo, hi]?}
// The "range" field is present exactly for truncated (reconstructed) matrices.
json to_json(const JacobiMatrix& J);
JacobiMatrix jacobi_from_json(const json& j);

json to_json(const OuterReport& r);
json to_json(const ValidationReport& r);
json to_json(const KernelResult& r);   // lambda_min serializes NaN as null
json to_json(const ABNumerators& r);
json to_json(const ScatteringExtraction& r);
json to_json(const ReconstructionReport& r);
json to_json(const CriterionResult& r);
json to_json(const ClosedFormCheck& r);
json to_json(const ApproximationResiduals& r);
json to_json(const DensityReport& r);
json to_json(const UniquenessReport& r);
json to_json(const RepairSearchResult& r);

// CSV table "n,p_n,q_n" of the rows lo..hi; 17-significant-digit values.
std::string jacobi_csv(const JacobiMatrix& J, int lo, int hi);

// Write via a temporary file in the same directory followed by rename, so
// readers never observe partial content. Throws jscat::Error on I/O failure.
void write_text_atomic(const std::string& path, const std::string& content);

// write_text_atomic of j.dump(2) plus a trailing newline.
void write_json(const std::string& path, const json& j);

// Parse a JSON file; the thrown Error carries the path and parser message.
json read_json(const std::string& path);

} // namespace jscat::io
