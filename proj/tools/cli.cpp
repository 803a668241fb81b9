#include "cli.hpp"

#include <smellrole/analytics/svg.hpp>
#include <smellrole/analytics/tables.hpp>
#include <smellrole/code/metrics.hpp>
#include <smellrole/code/parser.hpp>
#include <smellrole/code/type_graph.hpp>
#include <smellrole/csv.hpp>
#include <smellrole/dataset/manifest.hpp>
#include <smellrole/dataset/records.hpp>
#include <smellrole/error.hpp>
#include <smellrole/mining/apriori.hpp>
#include <smellrole/mining/dendrogram.hpp>
#include <smellrole/mining/popc.hpp>
#include <smellrole/roles/features.hpp>
#include <smellrole/roles/forest.hpp>
#include <smellrole/smells/detect.hpp>
#include <smellrole/smells/ini.hpp>
#include <smellrole/smells/rule_card.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace smellrole::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &message) : Error("Usage", message) {}
};

std::string schema_line(const std::string &artifact) {
  return "# schema: smellrole/" + artifact + "/1\n";
}

std::string slurp(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("MissingArtifact", "cannot read " + path.generic_string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path &path, const std::string &text) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error("WriteFailed", "cannot write " + path.generic_string());
  }
  out << text;
}

void write_artifact(const fs::path &path, const std::string &artifact, const std::string &body) {
  write_file(path, schema_line(artifact) + body);
}

template <typename Writer>
std::string render(Writer &&writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

fs::path ws(const Options &o) { return fs::path(o.workspace); }

void require_seed(const Options &o, const char *command) {
  if (!o.seed) {
    throw UsageError(std::string(command) + " needs --seed");
  }
}

struct LoadedManifest {
  dataset::CorpusManifest manifest;
  fs::path base;
};

LoadedManifest load_manifest_file(const std::string &path) {
  return {dataset::load_manifest(slurp(path)), fs::path(path).parent_path()};
}

fs::path project_root(const LoadedManifest &m, const dataset::Project &project) {
  fs::path root = (m.base / project.root_path).lexically_normal();
  if (root.filename().empty()) {
    root = root.parent_path();
  }
  return root;
}

std::vector<fs::path> java_files(const fs::path &root) {
  std::vector<fs::path> files;
  if (!fs::is_directory(root)) {
    return files;
  }
  for (const auto &entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path &a, const fs::path &b) { return a.generic_string() < b.generic_string(); });
  return files;
}

void warn(std::ostream &log, const std::string &code, const std::string &message) {
  log << nlohmann::json{{"warning", code}, {"message", message}}.dump() << "\n";
}

std::vector<smells::RuleCard> load_cards(const Options &o) {
  if (o.rule_cards.empty()) {
    return smells::default_rule_cards();
  }
  std::string text;
  const fs::path path(o.rule_cards);
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto &file : files) text += slurp(file) + "\n";
  } else {
    text = slurp(path);
  }
  return smells::merge_cards(smells::default_rule_cards(), smells::parse_rule_cards(text));
}

std::vector<dataset::FineGrainedRecord> load_records(const Options &o) {
  std::istringstream in(slurp(ws(o) / "records.csv"));
  auto records = dataset::read_records_csv(in);
  if (!o.manifest.empty()) {
    const auto m = load_manifest_file(o.manifest);
    for (auto &record : records) {
      if (record.project.empty()) {
        if (const auto *project = dataset::project_for_key(m.manifest, record.canonical_key)) {
          record.project = project->name;
          record.kind = project->kind;
        }
      }
    }
  }
  return records;
}

void reset_dir(const fs::path &dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
}

}  // namespace

int cmd_scan(const Options &o, std::ostream &log) {
  if (o.manifest.empty()) {
    throw UsageError("scan needs --manifest");
  }
  const LoadedManifest m = load_manifest_file(o.manifest);
  std::vector<code::SourceUnit> units;
  struct ProjectStats {
    std::size_t files = 0;
    std::size_t classes = 0;
    std::size_t errors = 0;
    double loc = 0;
  };
  std::vector<ProjectStats> stats(m.manifest.projects.size());
  std::vector<std::size_t> unit_project;
  for (std::size_t p = 0; p < m.manifest.projects.size(); ++p) {
    const auto &project = m.manifest.projects[p];
    const fs::path root = project_root(m, project);
    for (const auto &file : java_files(root)) {
      ++stats[p].files;
      const std::string rel = file.lexically_relative(root.parent_path()).generic_string();
      try {
        units.push_back(code::parse_source(slurp(file), rel));
        unit_project.push_back(p);
        stats[p].classes += units.back().types.size();
      } catch (const code::ParseError &error) {
        ++stats[p].errors;
        warn(log, "ParseError", rel + ": " + error.what());
      }
    }
    if (stats[p].classes == 0) {
      throw Error("NoClasses", "project " + project.name + " yields no classes under " +
                                   root.generic_string());
    }
  }
  const code::TypeGraph graph = code::build_type_graph(units);

  code::KeyedMetrics metrics;
  std::vector<roles::KeyedFeatures> features;
  std::map<std::string, const code::ClassModel *> models;
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const auto &type : units[u].types) {
      const code::MetricVector mv = code::compute_metrics(type, graph);
      metrics.emplace_back(type.canonical_key, mv);
      features.push_back({type.canonical_key, roles::extract_features(type, mv)});
      models.emplace(type.canonical_key, &type);
      stats[unit_project[u]].loc += static_cast<double>(type.loc);
    }
  }
  std::sort(metrics.begin(), metrics.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::sort(features.begin(), features.end(),
            [](const auto &a, const auto &b) { return a.canonical_key < b.canonical_key; });

  const fs::path dir = ws(o);
  fs::create_directories(dir);
  write_artifact(dir / "metrics.csv", "metrics",
                 render([&](std::ostream &out) { code::write_metrics_csv(out, metrics); }));
  write_artifact(dir / "features.csv", "features",
                 render([&](std::ostream &out) { roles::write_features_csv(out, features); }));
  write_artifact(dir / "methods.csv", "methods", render([&](std::ostream &out) {
                   csv::write_row(out, {"canonicalKey", "method", "params", "loc", "cc", "chainLength"});
                   for (const auto &[key, model] : models) {
                     for (const auto &method : model->methods) {
                       csv::write_row(out, {key, method.name, std::to_string(method.param_count),
                                            std::to_string(method.loc), std::to_string(method.cyclomatic),
                                            std::to_string(method.max_chain_length)});
                     }
                   }
                 }));
  write_artifact(dir / "projects.csv", "projects", render([&](std::ostream &out) {
                   csv::write_row(out, {"project", "kind", "files", "classes", "loc", "parseErrors"});
                   for (std::size_t p = 0; p < stats.size(); ++p) {
                     const auto &project = m.manifest.projects[p];
                     csv::write_row(out, {project.name, dataset::to_string(project.kind),
                                          std::to_string(stats[p].files), std::to_string(stats[p].classes),
                                          csv::format_number(stats[p].loc), std::to_string(stats[p].errors)});
                   }
                 }));
  log << "scan: " << metrics.size() << " classes in " << stats.size() << " projects\n";
  return kExitOk;
}

int cmd_detect(const Options &o, std::ostream &log) {
  const fs::path dir = ws(o);
  std::istringstream metrics_in(slurp(dir / "metrics.csv"));
  const code::KeyedMetrics metrics = code::read_metrics_csv(metrics_in);
  const csv::Table methods = csv::read_string(slurp(dir / "methods.csv"));

  std::map<std::string, code::ClassModel> models;
  for (const auto &[key, mv] : metrics) {
    code::ClassModel &model = models[key];
    model.canonical_key = key;
    model.name = smells::simple_class_name(key);
  }
  const auto col = [&](const char *name) {
    const auto index = methods.column(name);
    if (!index) throw Error("SchemaMismatch", std::string("methods.csv lacks column ") + name);
    return *index;
  };
  const std::size_t c_key = col("canonicalKey"), c_name = col("method"), c_params = col("params"),
                    c_loc = col("loc"), c_cc = col("cc"), c_chain = col("chainLength");
  for (const auto &row : methods.rows) {
    auto it = models.find(row[c_key]);
    if (it == models.end()) {
      throw Error("SchemaMismatch", "methods.csv names unknown class " + row[c_key]);
    }
    code::MethodModel method;
    method.name = row[c_name];
    method.param_count = static_cast<std::size_t>(csv::parse_number(row[c_params]));
    method.loc = static_cast<std::size_t>(csv::parse_number(row[c_loc]));
    method.cyclomatic = static_cast<std::size_t>(csv::parse_number(row[c_cc]));
    method.max_chain_length = static_cast<std::size_t>(csv::parse_number(row[c_chain]));
    it->second.methods.push_back(std::move(method));
  }
  std::vector<smells::Subject> subjects;
  for (const auto &[key, mv] : metrics) {
    subjects.push_back({&models.at(key), mv});
  }
  const auto cards = load_cards(o);
  const auto detections = smells::detect(cards, subjects);
  const auto table = smells::tabulate(detections, subjects);
  write_artifact(dir / "smells.csv", "smells",
                 render([&](std::ostream &out) { smells::write_smell_csv(out, table); }));

  std::optional<LoadedManifest> m;
  if (!o.manifest.empty()) m = load_manifest_file(o.manifest);
  std::vector<std::string> projects;
  if (m) {
    for (const auto &p : m->manifest.projects) projects.push_back(p.name);
  }
  std::map<std::string, std::vector<smells::SmellDetection>> by_project;
  for (const auto &d : detections) {
    const dataset::Project *p = m ? dataset::project_for_key(m->manifest, d.canonical_key) : nullptr;
    const std::string name = p ? p->name : (m ? "unassigned" : "corpus");
    if (std::find(projects.begin(), projects.end(), name) == projects.end()) projects.push_back(name);
    by_project[name].push_back(d);
  }
  reset_dir(dir / "ini");
  for (const auto &project : projects) {
    for (auto smell : smells::smell_names()) {
      write_artifact(dir / "ini" / project / smells::ini_file_name(project, smell), "ini",
                     smells::emit_ini(by_project[project], smell));
    }
  }
  log << "detect: " << detections.size() << " detections over " << subjects.size() << " classes\n";
  return kExitOk;
}

int cmd_classify(const Options &o, std::ostream &log) {
  const fs::path dir = ws(o);
  const fs::path model_path = o.model.empty() ? dir / "model.json" : fs::path(o.model);
  if (!fs::exists(model_path)) {
    throw Error("ModelNotFound", "no classifier model at " + model_path.generic_string());
  }
  const roles::ForestModel model = roles::deserialize(slurp(model_path));
  std::istringstream in(slurp(dir / "features.csv"));
  const auto features = roles::read_features_csv(in);
  std::vector<dataset::RoleRow> rows;
  std::vector<roles::Distribution> probabilities;
  for (const auto &f : features) {
    const roles::Prediction p = roles::predict(model, f.features);
    rows.push_back({f.canonical_key, p.label});
    probabilities.push_back(p.probabilities);
  }
  write_artifact(dir / "roles.csv", "roles",
                 render([&](std::ostream &out) { dataset::write_roles_csv(out, rows, probabilities); }));
  log << "classify: " << rows.size() << " classes labelled\n";
  return kExitOk;
}

int cmd_train(const Options &o, std::ostream &log) {
  require_seed(o, "train");
  if (o.labels.empty()) {
    throw UsageError("train needs --labels");
  }
  const std::string text = slurp(o.labels);
  const csv::Table table = csv::read_string(text);
  const bool has_features = std::all_of(roles::feature_names().begin(), roles::feature_names().end(),
                                        [&](std::string_view name) { return table.column(name).has_value(); });
  std::vector<roles::LabeledExample> examples;
  if (has_features) {
    std::istringstream in(text);
    examples = roles::read_labeled_csv(in);
  } else {
    const auto path_col = table.column("FullClassPath");
    const auto label_col = table.column("label");
    if (!path_col || !label_col) {
      throw Error("SchemaMismatch", "labels need FullClassPath and label columns");
    }
    std::istringstream in(slurp(ws(o) / "features.csv"));
    std::map<std::string, roles::FeatureVector> features;
    for (const auto &f : roles::read_features_csv(in)) features.emplace(f.canonical_key, f.features);
    std::size_t missing = 0;
    for (const auto &row : table.rows) {
      const std::string key = roles::strip_java_suffix(row[*path_col]);
      auto it = features.find(key);
      if (it == features.end()) {
        ++missing;
        continue;
      }
      examples.push_back({key, it->second, roles::require_stereotype(row[*label_col])});
    }
    if (missing > 0) {
      warn(log, "UnmatchedLabels", std::to_string(missing) + " labelled classes have no features");
    }
  }
  roles::Hyperparams params;
  params.trees = o.trees;
  params.max_depth = o.max_depth;
  params.seed = *o.seed;
  std::vector<std::string> warnings;
  const roles::ForestModel model = roles::train(examples, params, o.oversample, &warnings);
  for (const auto &w : warnings) warn(log, w, "training");
  const fs::path model_path = o.model.empty() ? ws(o) / "model.json" : fs::path(o.model);
  write_file(model_path, roles::serialize(model));
  write_artifact(ws(o) / "train_scores.txt", "train-scores", render([&](std::ostream &out) {
                   out << "training-set scores, " << examples.size() << " examples\n";
                   roles::write_scores(out, roles::evaluate(model, examples));
                 }));
  log << "train: " << model.tree_count << " trees on " << examples.size() << " examples\n";
  return kExitOk;
}

int cmd_integrate(const Options &o, std::ostream &log) {
  const fs::path dir = ws(o);
  std::istringstream smells_in(slurp(dir / "smells.csv"));
  const auto smell_table = smells::read_smell_csv(smells_in);
  std::istringstream roles_in(slurp(dir / "roles.csv"));
  const auto role_rows = dataset::read_roles_csv(roles_in);
  dataset::Integration result = dataset::integrate(smell_table, role_rows);
  if (!o.manifest.empty()) {
    dataset::assign_projects(result.records, load_manifest_file(o.manifest).manifest);
  }
  write_artifact(dir / "records.csv", "records",
                 render([&](std::ostream &out) { dataset::write_records_csv(out, result.records); }));
  write_artifact(dir / "unmatched.txt", "unmatched",
                 render([&](std::ostream &out) { dataset::write_unmatched(out, result); }));
  log << "integrate: " << result.records.size() << " records, " << result.smell_only.size()
      << " smell-only, " << result.role_only.size() << " role-only\n";
  return kExitOk;
}

int cmd_analyze(const Options &o, std::ostream &log) {
  using namespace analytics;
  const fs::path dir = ws(o);
  const auto records = load_records(o);
  if (records.empty()) {
    throw Error("NoRecords", "records.csv has no rows");
  }
  dataset::CorpusManifest manifest;
  if (!o.manifest.empty()) {
    manifest = load_manifest_file(o.manifest).manifest;
  } else {
    std::set<std::string> seen;
    for (const auto &r : records) {
      if (r.kind && !r.project.empty() && seen.insert(r.project).second) {
        manifest.projects.push_back({r.project, r.project, *r.kind, "", ""});
      }
    }
  }
  std::map<std::string, double> loc;
  if (fs::exists(dir / "projects.csv")) {
    const csv::Table projects = csv::read_string(slurp(dir / "projects.csv"));
    const auto name = projects.column("project");
    const auto lines = projects.column("loc");
    if (name && lines) {
      for (const auto &row : projects.rows) loc[row[*name]] = csv::parse_number(row[*lines]);
    }
  }

  const fs::path reports = dir / "reports";
  reset_dir(reports);
  std::string welch_text;
  std::string density_text = render([&](std::ostream &out) { write_density_csv(out, {}); });
  try {
    const DensityReport density = smell_density(records, manifest, loc);
    density_text = render([&](std::ostream &out) { write_density_csv(out, density); });
    std::size_t desktop = 0, mobile = 0;
    for (const auto &row : density.rows) (row.kind == Kind::Desktop ? desktop : mobile) += 1;
    if (desktop < 2 || mobile < 2) {
      welch_text = "Welch test skipped: needs at least two desktop and two mobile projects (have " +
                   std::to_string(desktop) + " and " + std::to_string(mobile) + ")\n";
      std::ostringstream means;
      write_welch_text(means, WelchResult{}, density);
      const std::string all = means.str();
      welch_text = all.substr(0, all.rfind("Welch")) + welch_text;
    } else {
      try {
        welch_text = render([&](std::ostream &out) { write_welch_text(out, density_ttest(density), density); });
      } catch (const Error &e) {
        welch_text = "Welch test skipped: " + e.code() + ": " + e.what() + "\n";
      }
    }
  } catch (const Error &e) {
    if (e.code() != "MissingLoc") throw;
    welch_text = std::string("density and Welch test skipped: ") + e.what() + "\n";
  }
  if (const auto at = welch_text.find("skipped"); at != std::string::npos) {
    const auto begin = welch_text.rfind('\n', at);
    const auto end = welch_text.find('\n', at);
    warn(log, "WelchSkipped", welch_text.substr(begin == std::string::npos ? 0 : begin + 1,
                                                end == std::string::npos ? std::string::npos : end - begin - 1));
  }
  write_artifact(reports / "density.csv", "density", density_text);
  write_artifact(reports / "welch.txt", "welch", welch_text);

  write_artifact(reports / "percentages.csv", "percentages", render([&](std::ostream &out) {
                   write_percentages_csv(out, stereotype_percentages(records, manifest));
                 }));

  std::vector<std::string> labels;
  for (auto label : report_order()) labels.emplace_back(roles::display_name(label));
  try {
    const auto shares = smell_share_by_stereotype(records);
    write_artifact(reports / "shares.csv", "shares",
                   render([&](std::ostream &out) { write_shares_csv(out, shares); }));
    std::vector<double> values;
    for (auto label : report_order()) values.push_back(shares[static_cast<std::size_t>(label)]);
    write_file(reports / "shares.svg", "<!-- schema: smellrole/shares-svg/1 -->\n" +
                                           bar_chart_svg("Share of smells per stereotype (%)", labels, values));
  } catch (const Error &e) {
    if (e.code() != "NoSmells") throw;
    warn(log, "NoSmells", "shares report has no rows");
    write_artifact(reports / "shares.csv", "shares", "stereotype,share\n");
  }
  write_artifact(reports / "frequency.csv", "frequency",
                 render([&](std::ostream &out) { write_frequency_csv(out, smell_frequency(records)); }));
  write_artifact(reports / "presence.csv", "presence",
                 render([&](std::ostream &out) { write_presence_csv(out, presence_matrix(records)); }));
  try {
    const CorrelationMatrix matrix = smell_correlations(records);
    write_artifact(reports / "spearman.csv", "spearman",
                   render([&](std::ostream &out) { write_spearman_csv(out, matrix); }));
    std::vector<std::string> smell_labels(smells::smell_names().begin(), smells::smell_names().end());
    write_file(reports / "spearman.svg", "<!-- schema: smellrole/spearman-svg/1 -->\n" +
                                             heatmap_svg("Spearman correlation of smells", smell_labels, matrix.values));
    const CorrelationPeak peak = strongest_pair(matrix);
    log << "analyze: strongest smell correlation " << smells::smell_names()[peak.first] << " / "
        << smells::smell_names()[peak.second] << " = " << csv::format_number(peak.value) << "\n";
  } catch (const Error &e) {
    if (e.code() != "TooFewRows") throw;
    write_artifact(reports / "spearman.csv", "spearman", "smell\n");
  }
  log << "analyze: " << records.size() << " records\n";
  return kExitOk;
}

int cmd_mine(const Options &o, std::ostream &log) {
  using namespace mining;
  require_seed(o, "mine");
  auto records = load_records(o);
  if (o.filter_smelly_only) records = dataset::smelly_only(records);
  if (records.empty()) {
    throw Error("NoRecords", "no records to mine");
  }
  const fs::path out_dir = ws(o) / "mining";
  reset_dir(out_dir);
  std::ostringstream summary;

  auto write_rules = [&](const std::string &name, const std::vector<Transaction> &transactions,
                         const std::optional<std::set<std::string>> &consequents) {
    const auto found = rules(apriori(transactions, o.min_support), consequents);
    write_artifact(out_dir / name, "rules", render([&](std::ostream &out) { write_rules_csv(out, found); }));
    summary << name << ": " << found.size() << " rules from " << transactions.size() << " transactions\n";
  };
  write_rules("rules-smells.csv", smell_transactions(records), std::nullopt);
  std::set<std::string> stereotype_names;
  for (auto label : roles::all_stereotypes()) stereotype_names.emplace(roles::display_name(label));
  write_rules("rules-smells-stereotypes.csv", smell_role_transactions(records), stereotype_names);

  std::map<std::string, std::vector<dataset::FineGrainedRecord>> groups;
  const bool any_kind = std::any_of(records.begin(), records.end(), [](const auto &r) { return r.kind.has_value(); });
  for (const auto &r : records) {
    if (any_kind && !r.kind) continue;
    groups[any_kind ? dataset::to_string(*r.kind) : "all"].push_back(r);
  }
  std::vector<std::string> role_rows;
  for (auto label : analytics::report_order()) role_rows.emplace_back(roles::abbreviation(label));
  const std::vector<std::string> smell_rows(smells::smell_names().begin(), smells::smell_names().end());

  auto write_tree = [&](const std::string &stem, const std::string &title, const BinaryMatrix &m) {
    const DendrogramNode root = agglomerate(m);
    nlohmann::json doc = {{"schema", "smellrole/dendrogram/1"},
                          {"root", nlohmann::json::parse(to_json_text(root))}};
    write_file(out_dir / (stem + ".json"), doc.dump(2) + "\n");
    write_file(out_dir / (stem + ".nwk"), "[schema: smellrole/dendrogram-newick/1]\n" + to_newick(root));
    write_file(out_dir / (stem + ".svg"), "<!-- schema: smellrole/dendrogram-svg/1 -->\n" + dendrogram_svg(title, root));
  };

  for (const auto &[kind, group] : groups) {
    if (group.size() < 2) {
      summary << kind << ": skipped, " << group.size() << " sample\n";
      continue;
    }
    const BinaryMatrix m = binarize(group);
    const ClusterAssignment a = popc(m, *o.seed, o.theta);
    write_artifact(out_dir / ("clusters-" + kind + ".csv"), "clusters",
                   render([&](std::ostream &out) { write_clusters_csv(out, m, a); }));
    summary << kind << ": " << group.size() << " samples, " << a.clusters << " clusters, J = "
            << csv::format_number(a.score) << ", " << a.iterations << " sweeps\n";

    std::vector<std::vector<std::string>> smells_of;
    std::vector<std::string> role_of;
    for (const auto &r : group) {
      smells_of.push_back(smell_transactions({r}).front());
      role_of.emplace_back(roles::abbreviation(r.label));
    }
    write_tree("dendrogram-smells-" + kind, "Smells by POPC cluster (" + kind + ")",
               presence_by_group(a, smells_of, smell_rows));
    write_tree("dendrogram-stereotypes-" + kind, "Stereotypes by POPC cluster (" + kind + ")",
               presence_by_group(a, role_of, role_rows));
    write_rules("rules-stereotypes-" + kind + ".csv", cluster_role_transactions(a, role_of), std::nullopt);
  }
  write_artifact(out_dir / "summary.txt", "mining-summary", summary.str());
  log << summary.str();
  return kExitOk;
}

namespace {

std::map<std::string, std::string> read_config(const std::string &path) {
  std::map<std::string, std::string> out;
  std::istringstream in(slurp(path));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(number) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("config " + key + ": expected true or false");
}

double parse_double(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception &) {
  }
  throw UsageError("config " + key + ": expected a number");
}

std::uint64_t parse_unsigned(const std::string &key, const std::string &value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used == value.size() && value.find('-') == std::string::npos) return v;
  } catch (const std::exception &) {
  }
  throw UsageError("config " + key + ": expected a non-negative integer");
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Design smells and role stereotypes in Java corpora"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::map<std::string, CLI::Option *> flags;
  flags["workspace"] = app.add_option("--workspace", o.workspace, "workspace directory");
  flags["manifest"] = app.add_option("--manifest", o.manifest, "corpus manifest");
  app.add_option("--config", o.config, "key=value configuration file");
  flags["seed"] = app.add_option("--seed", seed, "random seed");
  flags["min_support"] = app.add_option("--min-support", o.min_support, "Apriori minimum support");
  flags["theta"] = app.add_option("--theta", o.theta, "POPC exponent");
  flags["rule_cards"] = app.add_option("--rule-cards", o.rule_cards, "rule-card file or directory");
  flags["model"] = app.add_option("--model", o.model, "classifier model path");
  flags["labels"] = app.add_option("--labels", o.labels, "labelled classes for train");
  flags["trees"] = app.add_option("--trees", o.trees, "forest size");
  flags["max_depth"] = app.add_option("--max-depth", o.max_depth, "tree depth limit, 0 for none");
  flags["filter_smelly_only"] = app.add_flag("--filter-smelly-only", o.filter_smelly_only,
                                             "mine only classes with at least one smell");
  flags["oversample"] = app.add_flag("--oversample,!--no-oversample", o.oversample, "balance labels before training");

  const std::vector<std::pair<const char *, int (*)(const Options &, std::ostream &)>> commands{
      {"scan", cmd_scan},   {"detect", cmd_detect},   {"classify", cmd_classify}, {"integrate", cmd_integrate},
      {"analyze", cmd_analyze}, {"mine", cmd_mine}, {"train", cmd_train}};
  std::map<std::string, CLI::App *> subcommands;
  for (const auto &[name, fn] : commands) {
    subcommands[name] = app.add_subcommand(name)->fallthrough();
  }
  subcommands["scan"]->description("parse the corpus and write metrics, methods and features");
  subcommands["detect"]->description("apply rule cards; write smells.csv and .ini reports");
  subcommands["classify"]->description("label classes with a trained model");
  subcommands["integrate"]->description("join smells and roles into records.csv");
  subcommands["analyze"]->description("write statistical reports");
  subcommands["mine"]->description("POPC clusters, dendrograms and association rules");
  subcommands["train"]->description("train the role-stereotype classifier");

  auto fail = [&](int code, const std::string &id, const std::string &message) {
    err << nlohmann::json{{"error", id}, {"message", message}}.dump() << "\n";
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    return fail(kExitUsage, "Usage", e.what());
  }
  try {
    if (flags["seed"]->count() > 0) o.seed = seed;
    if (!o.config.empty()) {
      for (const auto &[key, value] : read_config(o.config)) {
        auto it = flags.find(key);
        if (it == flags.end()) throw UsageError("unknown config key " + key);
        if (it->second->count() > 0) continue;
        if (key == "workspace") o.workspace = value;
        else if (key == "manifest") o.manifest = value;
        else if (key == "seed") o.seed = parse_unsigned(key, value);
        else if (key == "min_support") o.min_support = parse_double(key, value);
        else if (key == "theta") o.theta = parse_double(key, value);
        else if (key == "rule_cards") o.rule_cards = value;
        else if (key == "model") o.model = value;
        else if (key == "labels") o.labels = value;
        else if (key == "trees") o.trees = parse_unsigned(key, value);
        else if (key == "max_depth") o.max_depth = parse_unsigned(key, value);
        else if (key == "filter_smelly_only") o.filter_smelly_only = parse_bool(key, value);
        else if (key == "oversample") o.oversample = parse_bool(key, value);
      }
    }
    if (!(o.min_support > 0 && o.min_support <= 1)) throw UsageError("min-support must lie in (0, 1]");
    if (!(o.theta > 0)) throw UsageError("theta must be positive");
    if (o.trees == 0) throw UsageError("trees must be positive");
    for (const auto &[name, fn] : commands) {
      if (subcommands[name]->parsed()) return fn(o, out);
    }
    return fail(kExitUsage, "Usage", "no subcommand");
  } catch (const UsageError &e) {
    return fail(kExitUsage, e.code(), e.what());
  } catch (const Error &e) {
    return fail(kExitData, e.code(), e.what());
  } catch (const std::filesystem::filesystem_error &e) {
    return fail(kExitData, "FileSystem", e.what());
  }
}

}  // namespace smellrole::cli
