#include <smellrole/analytics/tables.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>

#include <cstdio>
#include <set>

namespace smellrole::analytics {

namespace {

std::size_t idx(roles::Stereotype label) { return static_cast<std::size_t>(label); }
std::size_t kind_idx(Kind kind) { return kind == Kind::Mobile ? 0 : 1; }

double total_smells(const FineGrainedRecord &record) {
  double total = 0;
  for (auto c : record.counts) {
    total += c;
  }
  return total;
}

}  // namespace

const std::array<roles::Stereotype, kLabelCount> &report_order() {
  using S = roles::Stereotype;
  static const std::array<S, kLabelCount> order = {S::ServiceProvider, S::Coordinator,
                                                   S::InformationHolder, S::Interfacer,
                                                   S::Controller, S::Structurer};
  return order;
}

DensityReport smell_density(const std::vector<FineGrainedRecord> &records,
                            const dataset::CorpusManifest &manifest,
                            const std::map<std::string, double> &project_loc) {
  std::map<std::string, double> smells_by_project;
  for (const auto &record : records) {
    smells_by_project[record.project] += total_smells(record);
  }
  DensityReport report;
  std::map<Kind, double> density_sum;
  std::map<Kind, double> smell_sum;
  std::map<Kind, double> kloc_sum;
  std::map<Kind, std::size_t> projects;
  for (const auto &project : manifest.projects) {
    auto it = project_loc.find(project.name);
    if (it == project_loc.end() || !(it->second > 0)) {
      throw Error("MissingLoc", "no lines of code known for project " + project.name);
    }
    DensityRow row;
    row.project = project.name;
    row.kind = project.kind;
    row.total_smells = smells_by_project[project.name];
    row.kloc = it->second / 1000.0;
    row.density = row.total_smells / row.kloc;
    density_sum[row.kind] += row.density;
    smell_sum[row.kind] += row.total_smells;
    kloc_sum[row.kind] += row.kloc;
    ++projects[row.kind];
    report.rows.push_back(row);
  }
  for (const auto &[kind, count] : projects) {
    report.mean_density[kind] = density_sum[kind] / static_cast<double>(count);
    report.pooled_density[kind] = smell_sum[kind] / kloc_sum[kind];
  }
  return report;
}

WelchResult density_ttest(const DensityReport &report) {
  std::vector<double> desktop;
  std::vector<double> mobile;
  for (const auto &row : report.rows) {
    (row.kind == Kind::Desktop ? desktop : mobile).push_back(row.density);
  }
  return welch_ttest(desktop, mobile);
}

std::vector<ProjectPercentages> stereotype_percentages(
    const std::vector<FineGrainedRecord> &records,
    const dataset::CorpusManifest &manifest) {
  std::map<std::string, ProjectPercentages> by_project;
  for (const auto &record : records) {
    ProjectPercentages &p = by_project[record.project];
    p.project = record.project;
    if (record.kind) {
      p.kind = record.kind;
    }
    ++p.classes;
    (record.has_smell() ? p.smelly : p.clean)[idx(record.label)] += 1;
  }
  for (auto &[name, p] : by_project) {
    for (std::size_t k = 0; k < kLabelCount; ++k) {
      p.smelly[k] = 100.0 * p.smelly[k] / static_cast<double>(p.classes);
      p.clean[k] = 100.0 * p.clean[k] / static_cast<double>(p.classes);
    }
  }
  std::vector<ProjectPercentages> out;
  for (const auto &project : manifest.projects) {
    auto it = by_project.find(project.name);
    if (it != by_project.end()) {
      if (!it->second.kind) {
        it->second.kind = project.kind;
      }
      out.push_back(it->second);
      by_project.erase(it);
    }
  }
  for (auto &[name, p] : by_project) {
    out.push_back(p);
  }
  return out;
}

std::array<double, kLabelCount> smell_share_by_stereotype(
    const std::vector<FineGrainedRecord> &records) {
  std::array<double, kLabelCount> totals{};
  double all = 0;
  for (const auto &record : records) {
    const double t = total_smells(record);
    totals[idx(record.label)] += t;
    all += t;
  }
  if (all == 0) {
    throw Error("NoSmells", "no smell occurrences to distribute");
  }
  for (auto &t : totals) {
    t = 100.0 * t / all;
  }
  return totals;
}

FrequencyTable smell_frequency(const std::vector<FineGrainedRecord> &records) {
  FrequencyTable table{};
  for (const auto &record : records) {
    for (std::size_t s = 0; s < kSmellCount; ++s) {
      table[idx(record.label)][s] += record.counts[s];
    }
  }
  return table;
}

PresenceMatrix presence_matrix(const std::vector<FineGrainedRecord> &records) {
  PresenceMatrix matrix{};
  for (const auto &record : records) {
    if (!record.kind) {
      continue;
    }
    for (std::size_t s = 0; s < kSmellCount; ++s) {
      if (record.counts[s] >= 1) {
        matrix[s][idx(record.label)][kind_idx(*record.kind)] = true;
      }
    }
  }
  return matrix;
}

CorrelationMatrix smell_correlations(const std::vector<FineGrainedRecord> &records) {
  std::vector<std::vector<double>> columns(kSmellCount);
  for (const auto &record : records) {
    for (std::size_t s = 0; s < kSmellCount; ++s) {
      columns[s].push_back(record.counts[s]);
    }
  }
  return spearman_matrix(columns);
}

CorrelationPeak strongest_pair(const CorrelationMatrix &matrix) {
  CorrelationPeak peak;
  bool found = false;
  for (std::size_t i = 0; i < matrix.values.size(); ++i) {
    for (std::size_t j = i + 1; j < matrix.values.size(); ++j) {
      if (!found || matrix.values[i][j] > peak.value) {
        peak = {i, j, matrix.values[i][j]};
        found = true;
      }
    }
  }
  return peak;
}

void write_density_csv(std::ostream &out, const DensityReport &report) {
  csv::write_row(out, {"project", "kind", "totalSmells", "kloc", "density"});
  for (const auto &row : report.rows) {
    csv::write_row(out, {row.project, dataset::to_string(row.kind),
                         csv::format_number(row.total_smells), csv::format_number(row.kloc),
                         csv::format_number(row.density)});
  }
}

void write_welch_text(std::ostream &out, const WelchResult &result,
                      const DensityReport &report) {
  char line[200];
  for (Kind kind : {Kind::Desktop, Kind::Mobile}) {
    auto mean_it = report.mean_density.find(kind);
    if (mean_it == report.mean_density.end()) {
      continue;
    }
    std::snprintf(line, sizeof line,
                  "%s: mean density %.6f smells/KLOC, pooled %.6f smells/KLOC\n",
                  dataset::to_string(kind), mean_it->second, report.pooled_density.at(kind));
    out << line;
  }
  std::snprintf(line, sizeof line, "Welch two-sample t-test (desktop vs mobile): t = %.6f, df = %.6f, p = %.6f\n",
                result.t, result.df, result.p);
  out << line;
}

void write_spearman_csv(std::ostream &out, const CorrelationMatrix &matrix) {
  csv::Row header{"smell"};
  for (auto name : smells::smell_names()) {
    header.emplace_back(name);
  }
  header.emplace_back("constant");
  csv::write_row(out, header);
  for (std::size_t i = 0; i < matrix.values.size(); ++i) {
    csv::Row row{std::string(smells::smell_names()[i])};
    for (double v : matrix.values[i]) {
      row.push_back(csv::format_number(v));
    }
    row.emplace_back(matrix.constant[i] ? "1" : "0");
    csv::write_row(out, row);
  }
}

void write_percentages_csv(std::ostream &out, const std::vector<ProjectPercentages> &rows) {
  csv::Row header{"project", "kind", "NOC"};
  for (auto label : report_order()) {
    header.push_back(std::string(roles::abbreviation(label)) + "_a");
    header.push_back(std::string(roles::abbreviation(label)) + "_b");
  }
  csv::write_row(out, header);
  for (const auto &p : rows) {
    csv::Row row{p.project, p.kind ? dataset::to_string(*p.kind) : "",
                 std::to_string(p.classes)};
    for (auto label : report_order()) {
      row.push_back(csv::format_percent(p.smelly[idx(label)]));
      row.push_back(csv::format_percent(p.clean[idx(label)]));
    }
    csv::write_row(out, row);
  }
}

void write_shares_csv(std::ostream &out, const std::array<double, kLabelCount> &shares) {
  csv::write_row(out, {"stereotype", "share"});
  for (auto label : report_order()) {
    csv::write_row(out, {std::string(roles::display_name(label)),
                         csv::format_percent(shares[idx(label)])});
  }
}

void write_frequency_csv(std::ostream &out, const FrequencyTable &table) {
  csv::write_row(out, {"stereotype", "smell", "frequency"});
  for (auto label : report_order()) {
    for (std::size_t s = 0; s < kSmellCount; ++s) {
      csv::write_row(out, {std::string(roles::display_name(label)),
                           std::string(smells::smell_names()[s]),
                           std::to_string(table[idx(label)][s])});
    }
  }
}

void write_presence_csv(std::ostream &out, const PresenceMatrix &matrix) {
  csv::write_row(out, {"smell", "stereotype", "M", "D"});
  for (std::size_t s = 0; s < kSmellCount; ++s) {
    for (auto label : report_order()) {
      const auto &cell = matrix[s][idx(label)];
      csv::write_row(out, {std::string(smells::smell_names()[s]),
                           std::string(roles::abbreviation(label)),
                           cell[kind_idx(Kind::Mobile)] ? "1" : "0",
                           cell[kind_idx(Kind::Desktop)] ? "1" : "0"});
    }
  }
}

}  // namespace smellrole::analytics
