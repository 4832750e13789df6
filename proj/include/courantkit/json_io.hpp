#pragma once

#include <optional>

#include <json.hpp>

#include "courantkit/transport.hpp"

namespace ck {

/// Parsed input document.  Which parts are present depends on the command.
struct InputDoc {
  Chart chart;
  bool has_chart = false;

  QuadLieAlgebra fiber;     // validated when used as a bundle fiber
  LieAlgebra lie;           // bare Lie algebra (check-lie, invariant-forms)
  bool has_fiber = false;
  bool has_metric = false;

  std::optional<CourantData> courant;
  std::optional<GacsComponents> gacs;
  std::optional<NondegSeed> seed;
  std::optional<IsoData> iso;
  std::optional<RatMat> form;  // symmetric matrix for `signature`

  std::vector<std::vector<Rational>> points;
};

/// Parses and validates the whole document; InputError messages carry JSON
/// pointer paths.
InputDoc parse_input(const nlohmann::json& doc);

/// Convenience: file load + parse; also returns the raw bytes for hashing.
InputDoc load_input(const std::string& path, std::string* raw_bytes = nullptr);

std::vector<Rational> parse_point(const std::string& comma_separated, int dim);

}  // namespace ck
