#pragma once

// JSON file formats of the command line tool. All divisor and variable
// indices are 1-based in files and reports.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricfol/fan.hpp"
#include "toricfol/foliation.hpp"
#include "toricfol/pullback.hpp"

namespace toricfol::cli {

using Json = nlohmann::json;

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);

/// Reads files and remembers the digest of every file touched.
class Inputs {
 public:
  /// Parsed JSON of a file; ParseError with "path:byte N" on malformed JSON.
  Json load(const std::filesystem::path& path);
  const std::map<std::string, std::string>& digests() const noexcept { return digests_; }

 private:
  std::map<std::string, std::string> digests_;
};

/// {"dim": n, "rays": [[...], ...], "max_cones": [[1-based], ...]}
Fan fan_from_json(const Json& j, const std::string& where);
Json fan_to_json(const Fan& fan);

/// A fan given inline or as a path relative to `base`.
Fan fan_reference(Inputs& in, const Json& ref, const std::filesystem::path& base, const std::string& where);

struct FoliationFile {
  Fan fan;
  DegreeData dd;
  std::vector<VectorField> fields;
};

/// {"fan": ref, "fields": [{"components": ["x2", ...], "degree": [..]}, ...]}
/// The degree may be omitted for nonzero fields. With `fan` given, a "fan"
/// entry in the file is optional.
FoliationFile foliation_from_json(Inputs& in, const Json& j, const std::filesystem::path& base, const std::string& where,
                                  const Fan* fan = nullptr);

/// {"fan": ref, "S": [1-based], "operators": {"j": [[k, "coeff"], ...]}}
struct ProjectionFile {
  Fan fan;
  DegreeData dd;
  RaySet S;
  std::map<std::size_t, LinearForm> operators;
};
ProjectionFile projection_from_json(Inputs& in, const Json& j, const std::filesystem::path& base, const std::string& where);

MultiDegree parse_degree(const std::string& text, std::size_t s);
/// Comma-separated 1-based indices.
RaySet parse_indices(const std::string& text);
/// Comma-separated coordinates of the form a, b*i, a+b*i with rational a, b.
std::vector<GaussianRational> parse_point(const std::string& text);

Json degree_json(const MultiDegree& d);
Json indices_json(const std::vector<std::size_t>& idx);
Json field_json(const VectorField& y);
Json matrix_json(const IntMatrix& m);
Json rational_json(const Rational& q);

}  // namespace toricfol::cli
