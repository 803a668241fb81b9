#pragma once

#include <smellrole/analytics/stats.hpp>
#include <smellrole/dataset/manifest.hpp>
#include <smellrole/dataset/records.hpp>
#include <smellrole/roles/stereotype.hpp>
#include <smellrole/smells/catalog.hpp>

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace smellrole::analytics {

using dataset::FineGrainedRecord;
using dataset::Kind;
using roles::kLabelCount;
using smells::kSmellCount;

/// SP, CO, IH, IT, CT, ST: the column order of the percentage tables.
const std::array<roles::Stereotype, kLabelCount> &report_order();

struct DensityRow {
  std::string project;
  Kind kind = Kind::Desktop;
  double total_smells = 0;
  double kloc = 0;
  double density = 0;  // smells per KLOC
};

struct DensityReport {
  std::vector<DensityRow> rows;  // manifest order
  /// Unweighted mean of per-project densities.
  std::map<Kind, double> mean_density;
  /// Total smells over total KLOC.
  std::map<Kind, double> pooled_density;
};

/// Throws Error{"MissingLoc"} when a manifest project has no positive LOC.
DensityReport smell_density(const std::vector<FineGrainedRecord> &records,
                            const dataset::CorpusManifest &manifest,
                            const std::map<std::string, double> &project_loc);

/// Per-project densities of each kind; Welch test desktop vs mobile.
WelchResult density_ttest(const DensityReport &report);

struct ProjectPercentages {
  std::string project;
  std::optional<Kind> kind;
  std::size_t classes = 0;
  /// Indexed by Stereotype: share of the project's classes that have that
  /// stereotype and at least one smell (smelly) or none (clean).
  std::array<double, kLabelCount> smelly{};
  std::array<double, kLabelCount> clean{};
};

/// One entry per project, manifest order first, then any other projects
/// by name.
std::vector<ProjectPercentages> stereotype_percentages(
    const std::vector<FineGrainedRecord> &records,
    const dataset::CorpusManifest &manifest);

/// Percentage of all smell occurrences falling in each stereotype. Throws
/// Error{"NoSmells"} when there are none.
std::array<double, kLabelCount> smell_share_by_stereotype(
    const std::vector<FineGrainedRecord> &records);

/// Total occurrences per stereotype and smell.
using FrequencyTable = std::array<std::array<std::uint64_t, kSmellCount>, kLabelCount>;
FrequencyTable smell_frequency(const std::vector<FineGrainedRecord> &records);

/// presence[smell][stereotype][kind]: some class of that stereotype and kind
/// has the smell. Records without a kind are ignored.
using PresenceMatrix = std::array<std::array<std::array<bool, 2>, kLabelCount>, kSmellCount>;
PresenceMatrix presence_matrix(const std::vector<FineGrainedRecord> &records);

CorrelationMatrix smell_correlations(const std::vector<FineGrainedRecord> &records);

/// Largest off-diagonal entry: (row smell, column smell, value).
struct CorrelationPeak {
  std::size_t first = 0;
  std::size_t second = 0;
  double value = 0;
};
CorrelationPeak strongest_pair(const CorrelationMatrix &matrix);

void write_density_csv(std::ostream &out, const DensityReport &report);
void write_welch_text(std::ostream &out, const WelchResult &result,
                      const DensityReport &report);
void write_spearman_csv(std::ostream &out, const CorrelationMatrix &matrix);
void write_percentages_csv(std::ostream &out, const std::vector<ProjectPercentages> &rows);
void write_shares_csv(std::ostream &out, const std::array<double, kLabelCount> &shares);
void write_frequency_csv(std::ostream &out, const FrequencyTable &table);
void write_presence_csv(std::ostream &out, const PresenceMatrix &matrix);

}  // namespace smellrole::analytics
