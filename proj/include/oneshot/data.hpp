#pragma once

#include "oneshot/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oneshot {

struct RegressionData {
    std::vector<double> Y;  // length k
    Matrix X;               // k x p
    double prior_lambda = 0.0;
};

struct LocationData {
    std::vector<double> y;
};

using Dataset = std::variant<RegressionData, LocationData>;

/// Header row required; ',' separated; '.' decimal point. With no x columns
/// the result is LocationData, otherwise RegressionData (which also needs
/// prior_lambda). Throws IngestionError naming the row and column at fault.
Dataset load_csv(const std::string& path, const std::string& y_column,
                 const std::vector<std::string>& x_columns = {},
                 std::optional<double> prior_lambda = std::nullopt);

/// As load_csv, reading from memory; `source` names the input in messages.
Dataset parse_csv(std::string_view text, const std::string& y_column,
                  const std::vector<std::string>& x_columns = {},
                  std::optional<double> prior_lambda = std::nullopt,
                  const std::string& source = "<memory>");

/// Names of the embedded datasets. Only "trees-girth" (31 black cherry tree
/// girths, inches) is shipped.
std::vector<std::string> builtin_datasets();
LocationData builtin_dataset(const std::string& name);

struct RegressionStats {
    int k = 0;
    int p = 0;
    Matrix A;  // X^T X + lambda I
    std::vector<double> beta_tilde;
    double C_stat = 0.0;  // Y^T (I - X A^{-1} X^T) Y
    double condition = 0.0;
};

RegressionStats regression_stats(const RegressionData& d);

struct LocationStats {
    int J = 0;
    double y_bar = 0.0;
    double S = 0.0;  // sum of squared deviations from the mean
};

LocationStats location_stats(const LocationData& d);

}  // namespace oneshot
