#pragma once

// JSON/CSV serialization of results and certificates, and matrix/vector
// readers for the CLI. JSON uses fixed key order so identical inputs give
// byte-identical output.

#include "symseq/kothe.hpp"
#include "symseq/schur.hpp"
#include "symseq/space.hpp"
#include "symseq/tensor.hpp"
#include "symseq/triangle.hpp"

#include <string>

// vendored single-header nlohmann/json
#include "json.hpp"

namespace symseq {

using Json = nlohmann::ordered_json;

Json to_json(const Vec& v);
Json to_json(const Mat& a);
Json to_json(const NormBounds& nb);
Json to_json(const FactorizationCert& cert);
Json to_json(const Gamma2Cert& cert);
Json to_json(const MultiplierReport& rep);
Json to_json(const GrowthCurve& curve);
Json to_json(const ConvexityReport& rep);
Json to_json(const OrliczConditionReport& rep);
Json to_json(const EmbeddingAuditRecord& rec);
Json to_json(const AxiomAuditRecord& rec);

/// "3,-1,2" or JSON array text -> vector.
Vec parse_vec(const std::string& text);

/// Row-major CSV ("1,2;3,4" inline or file contents with newlines) or a
/// JSON 2-D array.
Mat parse_mat(const std::string& text);
Mat read_matrix_file(const std::string& path);

/// Growth curve as CSV: columns n, lower, upper, fit_residual; fit summary
/// in a trailing comment footer. 17 significant digits, '.' separator.
std::string growth_csv(const GrowthCurve& curve);

/// %.17g formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace symseq
