#pragma once

#include <smellrole/code/model.hpp>
#include <smellrole/code/type_graph.hpp>

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace smellrole::code {

/// Per-class quantities tested by rule cards.
struct MetricVector {
  double loc = 0;
  double nom = 0;
  double nof = 0;
  double max_params = 0;
  double avg_params = 0;
  double max_cc = 0;
  double total_cc = 0;
  double avg_cc = 0;
  double lcom_fraction = 0;  // share of method pairs sharing no own field
  double dit = 0;
  double no_children = 0;
  double num_interfaces = 0;
  double num_public_instance_fields = 0;       // non-final
  double num_public_static_mutable_fields = 0;
  double max_chain_length = 0;
  double num_overridden = 0;
  double num_accessors = 0;
  double num_long_no_param_methods = 0;        // loc >= 60, no parameters
  bool uses_foreign_globals = false;
  bool references_derived_type = false;
  bool is_abstract = false;
  double parent_loc = 0;
  // Not part of the classic set; needed by the LongMethod and
  // RefusedParentBequest default cards.
  double max_method_loc = 0;
  double overridden_ratio = 0;  // overridden parent methods / parent's overridable

  bool operator==(const MetricVector &) const = default;
};

struct MetricField {
  std::string_view name;
  double MetricVector::*number = nullptr;
  bool MetricVector::*flag = nullptr;

  [[nodiscard]] double get(const MetricVector &mv) const {
    return number != nullptr ? mv.*number : (mv.*flag ? 1.0 : 0.0);
  }
};

/// All fields in declaration order; names are the camelCase column names.
const std::vector<MetricField> &metric_fields();

/// Resolves a metric by column name or by one of the Ptidej-style aliases
/// (NOParam, LOC_CLASS, LOC_METHOD, NMD, NAD, DIT).
std::optional<MetricField> find_metric(std::string_view name);

/// Copy of `mv` where the per-method maxima (maxParams, maxCC,
/// maxChainLength, maxMethodLoc) are replaced by the values of `method`.
MetricVector with_method_values(MetricVector mv, const MethodModel &method);

MetricVector compute_metrics(const ClassModel &model, const TypeGraph &graph);

bool is_getter(const MethodModel &method);
bool is_setter(const MethodModel &method);
/// "getFooBar" -> "fooBar"; empty if `name` has no accessor prefix.
std::string accessor_target(std::string_view name);

using KeyedMetrics = std::vector<std::pair<std::string, MetricVector>>;

/// canonicalKey followed by every metric column.
void write_metrics_csv(std::ostream &out, const KeyedMetrics &rows);
KeyedMetrics read_metrics_csv(std::istream &in);

}  // namespace smellrole::code
