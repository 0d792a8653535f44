#pragma once

// JSON model documents: one object per file, nodes and edges by explicit id,
// rationals as "p/q" strings.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "abekit/abp.hpp"
#include "abekit/errors.hpp"
#include "abekit/model.hpp"

namespace abekit::tools {

enum class DocKind { Formula, Circuit, Abp, Family, Polynomial };

std::string to_string(DocKind k);
std::optional<DocKind> parse_doc_kind(std::string_view text);

class ParseError : public Error {
 public:
  using Error::Error;
};

using Model = std::variant<Formula, Circuit, Abp, FormulaFamily, NcPolynomial>;

struct Document {
  Model model;
  /// Declared variables with bucket ids, when the document lists them.
  std::optional<BucketingSystem> buckets;
  nlohmann::json meta = nlohmann::json::object();

  DocKind kind() const { return static_cast<DocKind>(model.index()); }
};

/// Throws ParseError on malformed input, dangling ids or cycles.
Document parse_document(std::string_view text);
Document read_document(const std::string& path);

std::string serialize(const Document& doc);
void write_document(const Document& doc, const std::string& path);

/// The document's own bucketing system, else one guessed from its variable
/// names: x_i -> singletons, x_{i,j} -> rows, x^{(k)}_i -> positions.
BucketingSystem buckets_for(const Document& doc);

/// "singletons:n", "rows:n", "position:n:d", "subscript:n:d", "single:n".
BucketingSystem parse_buckets(std::string_view spec);

/// Every variable reachable in the model.
std::vector<Var> variables_of(const Model& m);

}  // namespace abekit::tools
