#include "oneshot/data.hpp"

#include "oneshot/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oneshot {

namespace {

constexpr std::string_view kTreesGirth =
    "Girth\n8.3\n8.6\n8.8\n10.5\n10.7\n10.8\n11.0\n11.0\n11.1\n11.2\n11.3\n11.4\n11.4\n11.7\n"
    "12.0\n12.9\n12.9\n13.3\n13.7\n13.8\n14.0\n14.2\n14.5\n16.0\n16.3\n17.3\n17.5\n17.9\n"
    "18.0\n18.0\n20.6\n";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Dataset parse_csv(std::string_view text, const std::string& y_column,
                  const std::vector<std::string>& x_columns, std::optional<double> prior_lambda,
                  const std::string& source) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < text.size();) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw IngestionError(source + ": no header row");

    const auto header = split(lines[0]);
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw IngestionError(source + ": no column named '" + name + "'");
        return std::size_t(it - header.begin());
    };
    std::vector<std::size_t> wanted{column(y_column)};
    for (const auto& x : x_columns) wanted.push_back(column(x));

    std::vector<std::vector<double>> values(wanted.size());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::string row = "row " + std::to_string(r + 1);
        if (trim(lines[r]).empty()) throw IngestionError(source + ": " + row + " is empty");
        const auto cells = split(lines[r]);
        if (cells.size() != header.size())
            throw IngestionError(source + ": " + row + " has " + std::to_string(cells.size()) +
                                 " cells, header has " + std::to_string(header.size()));
        for (std::size_t c = 0; c < wanted.size(); ++c) {
            const std::string_view cell = cells[wanted[c]];
            const std::string where =
                source + ": " + row + ", column '" + std::string(header[wanted[c]]) + "'";
            if (cell.empty()) throw IngestionError(where + ": missing value");
            double v = 0.0;
            const char* first = cell.data();
            const char* last = cell.data() + cell.size();
            if (*first == '+') ++first;
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
                throw IngestionError(where + ": cannot read '" + std::string(cell) +
                                     "' as a number");
            values[c].push_back(v);
        }
    }
    if (values[0].empty()) throw IngestionError(source + ": no data rows");

    if (x_columns.empty()) return LocationData{std::move(values[0])};

    if (!prior_lambda)
        throw IngestionError(source + ": regression data needs a prior precision lambda");
    RegressionData d;
    d.Y = std::move(values[0]);
    d.X = Matrix(d.Y.size(), x_columns.size());
    for (std::size_t c = 0; c < x_columns.size(); ++c)
        for (std::size_t i = 0; i < d.Y.size(); ++i) d.X(i, c) = values[c + 1][i];
    d.prior_lambda = *prior_lambda;
    return d;
}

Dataset load_csv(const std::string& path, const std::string& y_column,
                 const std::vector<std::string>& x_columns, std::optional<double> prior_lambda) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), y_column, x_columns, prior_lambda, path);
}

std::vector<std::string> builtin_datasets() { return {"trees-girth"}; }

LocationData builtin_dataset(const std::string& name) {
    if (name != "trees-girth") throw IngestionError("no builtin dataset named '" + name + "'");
    return std::get<LocationData>(parse_csv(kTreesGirth, "Girth", {}, std::nullopt, name));
}

RegressionStats regression_stats(const RegressionData& d) {
    const std::size_t k = d.Y.size();
    const std::size_t p = d.X.cols();
    if (d.X.rows() != k) throw ParameterError("regression_stats: X and Y differ in row count");
    if (p == 0) throw ParameterError("regression_stats: X has no columns");
    if (k <= p) throw ParameterError("regression_stats: need more observations than covariates");
    if (!std::isfinite(d.prior_lambda) || d.prior_lambda < 0.0)
        throw ParameterError("regression_stats: prior lambda must be >= 0");

    RegressionStats s;
    s.k = int(k);
    s.p = int(p);
    const Matrix Xt = d.X.transpose();
    s.A = Xt * d.X;
    for (std::size_t i = 0; i < p; ++i) s.A(i, i) += d.prior_lambda;

    const SymEigen eig = sym_eigen(s.A);
    const double lo = eig.values.back();
    const double hi = eig.values.front();
    if (!(lo > 0.0) || hi / lo > 1e12)
        throw ParameterError("regression_stats: X^T X + lambda I is rank deficient");
    s.condition = hi / lo;

    const std::vector<double> xty = Xt * d.Y;
    s.beta_tilde = inverse(s.A) * xty;
    double yty = 0.0;
    for (double v : d.Y) yty += v * v;
    double fit = 0.0;
    for (std::size_t i = 0; i < p; ++i) fit += xty[i] * s.beta_tilde[i];
    double C = yty - fit;
    if (C < 0.0) {
        if (C < -1e-8 * std::max(1.0, yty))
            throw PrecisionError("regression_stats: residual statistic is negative");
        C = 0.0;
    }
    s.C_stat = C;
    return s;
}

LocationStats location_stats(const LocationData& d) {
    if (d.y.size() < 3) throw ParameterError("location_stats: need at least 3 observations");
    LocationStats s;
    s.J = int(d.y.size());
    double sum = 0.0;
    for (double v : d.y) sum += v;
    s.y_bar = sum / s.J;
    double ss = 0.0;
    for (double v : d.y) ss += (v - s.y_bar) * (v - s.y_bar);
    s.S = ss;
    return s;
}

}  // namespace oneshot
