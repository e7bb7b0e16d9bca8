#include "sknn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sknn/csv.hpp"

namespace sknn {

namespace {

const char* type_name(FeatureType t) {
    switch (t) {
        case FeatureType::Continuous: return "continuous";
        case FeatureType::Nominal: return "nominal";
        case FeatureType::Ordinal: return "ordinal";
    }
    return "?";
}

bool parse_real(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    if (begin == end) return false;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

std::size_t FeatureSpec::rank_of(const std::string& token) const {
    auto it = std::find(categories.begin(), categories.end(), token);
    if (it == categories.end()) {
        throw SchemaError("token \"" + token + "\" not in the declared category set of feature \"" +
                          name + "\"");
    }
    return static_cast<std::size_t>(it - categories.begin());
}

Dataset::Dataset(std::vector<FeatureSpec> specs, const std::vector<std::vector<Value>>& rows,
                 std::optional<std::size_t> target)
    : specs_(std::move(specs)), target_(target) {
    if (specs_.empty()) {
        throw SchemaError("dataset needs at least one feature");
    }
    for (const auto& s : specs_) {
        if (s.type == FeatureType::Ordinal) {
            if (s.categories.empty()) {
                throw SchemaError("ordinal feature \"" + s.name + "\" declares no categories");
            }
            std::vector<std::string> sorted = s.categories;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                throw SchemaError("ordinal feature \"" + s.name + "\" has duplicate categories");
            }
        }
        if (s.residual < 0.0 || s.weight < 0.0) {
            throw SchemaError("feature \"" + s.name + "\" has a negative residual or weight");
        }
    }
    if (target_ && *target_ >= specs_.size()) {
        throw SchemaError("target index out of range");
    }
    cells_.reserve(rows.size() * specs_.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != specs_.size()) {
            throw SchemaError("row " + std::to_string(r) + " has " +
                              std::to_string(rows[r].size()) + " values, expected " +
                              std::to_string(specs_.size()));
        }
        for (std::size_t f = 0; f < specs_.size(); ++f) {
            cells_.push_back(encode_cell(f, rows[r][f]));
        }
    }
    n_ = rows.size();
}

double Dataset::encode_cell(std::size_t feature, const Value& value) const {
    const FeatureSpec& spec = specs_[feature];
    if (spec.type == FeatureType::Continuous) {
        if (!std::holds_alternative<double>(value)) {
            throw SchemaError("feature \"" + spec.name + "\" is continuous but got a token");
        }
        double v = std::get<double>(value);
        if (!std::isfinite(v)) {
            throw SchemaError("feature \"" + spec.name + "\" got a non-finite value");
        }
        return v;
    }
    if (!std::holds_alternative<std::string>(value)) {
        throw SchemaError("feature \"" + spec.name + "\" is " + type_name(spec.type) +
                          " but got a real");
    }
    return static_cast<double>(spec.rank_of(std::get<std::string>(value)));
}

Value Dataset::decode_cell(std::size_t feature, double encoded) const {
    const FeatureSpec& spec = specs_[feature];
    if (spec.type == FeatureType::Continuous) {
        return encoded;
    }
    auto rank = static_cast<std::size_t>(encoded);
    if (rank >= spec.categories.size()) {
        throw SchemaError("encoded rank out of range for feature \"" + spec.name + "\"");
    }
    return spec.categories[rank];
}

const std::string& Dataset::token_at(std::size_t id, std::size_t feature) const {
    const FeatureSpec& spec = specs_[feature];
    if (spec.type == FeatureType::Continuous) {
        throw SchemaError("feature \"" + spec.name + "\" holds reals, not tokens");
    }
    return spec.categories[static_cast<std::size_t>(at(id, feature))];
}

std::vector<double> Dataset::encode_row(const std::vector<Value>& values,
                                        bool allow_missing_target) const {
    const std::size_t m = specs_.size();
    if (values.size() == m) {
        std::vector<double> out(m);
        for (std::size_t f = 0; f < m; ++f) out[f] = encode_cell(f, values[f]);
        return out;
    }
    if (allow_missing_target && target_ && values.size() == m - 1) {
        std::vector<double> out(m);
        std::size_t src = 0;
        for (std::size_t f = 0; f < m; ++f) {
            if (f == *target_) {
                out[f] = std::numeric_limits<double>::quiet_NaN();
            } else {
                out[f] = encode_cell(f, values[src++]);
            }
        }
        return out;
    }
    throw SchemaError("query has " + std::to_string(values.size()) + " values, expected " +
                      std::to_string(m));
}

Dataset Dataset::subset(std::span<const std::size_t> ids) const {
    Dataset out;
    out.specs_ = specs_;
    out.target_ = target_;
    out.n_ = ids.size();
    out.cells_.reserve(ids.size() * specs_.size());
    for (std::size_t id : ids) {
        if (id >= n_) throw std::out_of_range("subset id out of range");
        auto r = row(id);
        out.cells_.insert(out.cells_.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<std::pair<std::string, SchemaColumn>> load_schema(const std::string& schema_path) {
    std::ifstream in(schema_path);
    if (!in) {
        throw ParseError("cannot open schema file: " + schema_path);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("schema is not valid JSON: " + std::string(e.what()));
    }
    const nlohmann::json& cols = doc.contains("columns") ? doc.at("columns") : doc;
    if (!cols.is_object()) {
        throw SchemaError("schema must map column names to declarations");
    }
    std::vector<std::pair<std::string, SchemaColumn>> out;
    for (const auto& [name, decl] : cols.items()) {
        SchemaColumn col;
        if (!decl.is_object() || !decl.contains("kind")) {
            throw SchemaError("column \"" + name + "\" needs a kind");
        }
        const std::string kind = decl.at("kind").get<std::string>();
        if (kind == "continuous") {
            col.type = FeatureType::Continuous;
        } else if (kind == "nominal") {
            col.type = FeatureType::Nominal;
        } else if (kind == "ordinal") {
            col.type = FeatureType::Ordinal;
        } else {
            throw SchemaError("column \"" + name + "\" has unknown kind \"" + kind + "\"");
        }
        if (decl.contains("categories")) {
            col.categories = decl.at("categories").get<std::vector<std::string>>();
        }
        if (col.type == FeatureType::Ordinal && col.categories.empty()) {
            throw SchemaError("ordinal column \"" + name + "\" needs an ordered category list");
        }
        if (col.type == FeatureType::Continuous && !col.categories.empty()) {
            throw SchemaError("continuous column \"" + name + "\" cannot declare categories");
        }
        col.target = decl.value("target", false);
        out.emplace_back(name, std::move(col));
    }
    if (out.empty()) {
        throw SchemaError("schema declares no columns");
    }
    std::size_t targets = 0;
    for (const auto& [name, col] : out) targets += col.target ? 1 : 0;
    if (targets > 1) {
        throw SchemaError("schema declares more than one target column");
    }
    return out;
}

Dataset load_dataset(const std::string& csv_path, const std::string& schema_path) {
    auto schema = load_schema(schema_path);
    auto records = read_csv(csv_path);
    if (records.empty()) {
        throw ParseError("CSV has no header row: " + csv_path);
    }
    const std::vector<std::string>& header = records.front();

    // Bind schema entries to CSV column order.
    std::vector<FeatureSpec> specs;
    std::optional<std::size_t> target;
    specs.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        auto it = std::find_if(schema.begin(), schema.end(),
                               [&](const auto& e) { return e.first == header[c]; });
        if (it == schema.end()) {
            throw SchemaError("CSV column \"" + header[c] + "\" is not declared in the schema");
        }
        FeatureSpec spec;
        spec.name = it->first;
        spec.type = it->second.type;
        spec.categories = it->second.categories;
        if (it->second.target) target = c;
        specs.push_back(std::move(spec));
    }

    // Infer nominal category sets that the schema left open, first-seen order.
    const std::size_t m = specs.size();
    for (std::size_t f = 0; f < m; ++f) {
        if (specs[f].type != FeatureType::Nominal || !specs[f].categories.empty()) continue;
        for (std::size_t r = 1; r < records.size(); ++r) {
            if (records[r].size() != m) continue;  // arity reported below
            const std::string& tok = records[r][f];
            if (std::find(specs[f].categories.begin(), specs[f].categories.end(), tok) ==
                specs[f].categories.end()) {
                specs[f].categories.push_back(tok);
            }
        }
    }

    std::vector<std::vector<Value>> rows;
    rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != m) {
            throw ParseError("row " + std::to_string(r) + " has " + std::to_string(rec.size()) +
                                 " fields, expected " + std::to_string(m),
                             r);
        }
        std::vector<Value> row;
        row.reserve(m);
        for (std::size_t f = 0; f < m; ++f) {
            if (specs[f].type == FeatureType::Continuous) {
                double v;
                if (!parse_real(rec[f], v)) {
                    throw ParseError("row " + std::to_string(r) + ", column \"" + specs[f].name +
                                         "\": cannot parse \"" + rec[f] + "\" as a real",
                                     r);
                }
                row.emplace_back(v);
            } else {
                if (rec[f].empty()) {
                    throw ParseError("row " + std::to_string(r) + ", column \"" + specs[f].name +
                                         "\": empty token (missing values are rejected)",
                                     r);
                }
                row.emplace_back(rec[f]);
            }
        }
        rows.push_back(std::move(row));
    }

    try {
        return Dataset(std::move(specs), rows, target);
    } catch (const SchemaError& e) {
        throw SchemaError(std::string(e.what()) + " (while loading " + csv_path + ")");
    }
}

}  // namespace sknn
