#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sknn {

/// Raised for malformed input files (CSV syntax, unparsable cells). Carries
/// the 1-based data row index when one is known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, std::optional<std::size_t> row = {})
        : std::runtime_error(msg), row_(row) {}
    std::optional<std::size_t> row() const { return row_; }

private:
    std::optional<std::size_t> row_;
};

/// Raised when data disagrees with the declared schema (unknown tokens,
/// arity mismatches, bad kind declarations).
class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised for bad task setup (no target, wrong target kind, missing fit).
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FeatureType { Continuous, Nominal, Ordinal };

/// Cell value at the API boundary: a real for continuous features, a
/// category token for nominal/ordinal ones.
using Value = std::variant<double, std::string>;

struct FeatureSpec {
    std::string name;
    FeatureType type = FeatureType::Continuous;
    /// Ordered rank list for Ordinal; the legal token set for Nominal.
    /// Empty for Continuous.
    std::vector<std::string> categories;
    /// Expected absolute leave-one-out prediction error, in feature units.
    double residual = 0.0;
    /// Metric weight (dimensionless).
    double weight = 1.0;

    /// Rank of a token within `categories`; throws SchemaError for unknown
    /// tokens.
    std::size_t rank_of(const std::string& token) const;
};

/// Immutable case store. Cells are held encoded: continuous values as-is,
/// nominal/ordinal values as the category rank cast to double. Case ids are
/// dense [0, N). Construction validates every cell against the specs; reads
/// are safe from any number of threads afterwards.
class Dataset {
public:
    Dataset(std::vector<FeatureSpec> specs, const std::vector<std::vector<Value>>& rows,
            std::optional<std::size_t> target = {});

    std::size_t size() const { return n_; }
    std::size_t dim() const { return specs_.size(); }
    const std::vector<FeatureSpec>& specs() const { return specs_; }
    const FeatureSpec& spec(std::size_t feature) const { return specs_.at(feature); }
    std::optional<std::size_t> target() const { return target_; }

    std::span<const double> row(std::size_t id) const {
        return {cells_.data() + id * specs_.size(), specs_.size()};
    }
    double at(std::size_t id, std::size_t feature) const {
        return cells_[id * specs_.size() + feature];
    }

    /// Encode one boundary-format row. `allow_missing_target` leaves a NaN in
    /// the target slot when the row carries no usable value there; queries
    /// never read that slot because prediction skips the target feature.
    std::vector<double> encode_row(const std::vector<Value>& values,
                                   bool allow_missing_target = false) const;

    /// Encode a single cell for feature `feature`.
    double encode_cell(std::size_t feature, const Value& value) const;

    /// Decode an encoded cell back to boundary format.
    Value decode_cell(std::size_t feature, double encoded) const;

    /// Token for an encoded categorical cell.
    const std::string& token_at(std::size_t id, std::size_t feature) const;

    /// New dataset holding the given cases, re-labelled densely in the order
    /// given. Residuals/weights on the specs are carried over.
    Dataset subset(std::span<const std::size_t> ids) const;

private:
    Dataset() = default;

    std::vector<FeatureSpec> specs_;
    std::vector<double> cells_;  // row-major, n_ x dim()
    std::size_t n_ = 0;
    std::optional<std::size_t> target_;
};

/// Parse a schema document (JSON: column name -> {kind, categories?, target?})
/// and a CSV file (RFC 4180) into a validated Dataset. Column order follows
/// the CSV header; every CSV column must be declared in the schema.
Dataset load_dataset(const std::string& csv_path, const std::string& schema_path);

/// Schema entry as parsed from the schema document, before binding to CSV
/// column order.
struct SchemaColumn {
    FeatureType type = FeatureType::Continuous;
    std::vector<std::string> categories;
    bool target = false;
};

/// Parse just the schema document. Exposed for query-file loading.
std::vector<std::pair<std::string, SchemaColumn>> load_schema(const std::string& schema_path);

}  // namespace sknn
