#include <smellrole/mining/apriori.hpp>

#include <smellrole/csv.hpp>
#include <smellrole/error.hpp>
#include <smellrole/roles/stereotype.hpp>

#include <algorithm>
#include <map>

namespace smellrole::mining {

namespace {

using Items = std::vector<std::string>;

bool by_size_then_items(const ItemSet &a, const ItemSet &b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  return a.items < b.items;
}

}  // namespace

std::vector<ItemSet> apriori(const std::vector<Transaction> &transactions, double min_support) {
  if (transactions.empty()) {
    throw Error("EmptyTransactions", "no transactions to mine");
  }
  if (!(min_support > 0 && min_support <= 1)) {
    throw Error("BadSupport", "minimum support must lie in (0, 1]");
  }
  std::vector<Items> baskets;
  baskets.reserve(transactions.size());
  for (const auto &t : transactions) {
    Items items = t;
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    baskets.push_back(std::move(items));
  }
  const double n = static_cast<double>(baskets.size());
  auto frequent = [&](std::size_t count) {
    return static_cast<double>(count) + 1e-9 >= min_support * n;
  };
  auto make = [&](Items items, std::size_t count) {
    return ItemSet{std::move(items), count, static_cast<double>(count) / n};
  };

  std::vector<ItemSet> out;
  std::map<std::string, std::size_t> singles;
  for (const auto &basket : baskets) {
    for (const auto &item : basket) ++singles[item];
  }
  std::vector<Items> level;
  for (const auto &[item, count] : singles) {
    if (frequent(count)) {
      out.push_back(make({item}, count));
      level.push_back({item});
    }
  }
  while (level.size() > 1) {
    std::set<Items> known(level.begin(), level.end());
    std::vector<Items> candidates;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        if (!std::equal(level[i].begin(), level[i].end() - 1, level[j].begin())) {
          break;
        }
        Items joined = level[i];
        joined.push_back(level[j].back());
        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < joined.size() && closed; ++drop) {
          Items subset = joined;
          subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(drop));
          closed = known.count(subset) > 0;
        }
        if (closed) candidates.push_back(std::move(joined));
      }
    }
    std::vector<std::size_t> counts(candidates.size(), 0);
    for (const auto &basket : baskets) {
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(basket.begin(), basket.end(), candidates[c].begin(), candidates[c].end())) {
          ++counts[c];
        }
      }
    }
    std::vector<Items> next;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (frequent(counts[c])) {
        out.push_back(make(candidates[c], counts[c]));
        next.push_back(std::move(candidates[c]));
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), by_size_then_items);
  return out;
}

std::vector<AssociationRule> rules(const std::vector<ItemSet> &itemsets,
                                   const std::optional<std::set<std::string>> &consequents) {
  std::map<Items, const ItemSet *> index;
  for (const auto &set : itemsets) index.emplace(set.items, &set);
  auto lookup = [&](const Items &items) {
    auto it = index.find(items);
    if (it == index.end()) {
      std::string text;
      for (const auto &i : items) text += (text.empty() ? "" : ",") + i;
      throw Error("MissingSubsetSupport", "no support recorded for {" + text + "}");
    }
    return it->second;
  };
  std::vector<AssociationRule> out;
  for (const auto &set : itemsets) {
    if (set.items.size() < 2) continue;
    for (std::size_t i = 0; i < set.items.size(); ++i) {
      const std::string &y = set.items[i];
      if (consequents && !consequents->count(y)) continue;
      Items x = set.items;
      x.erase(x.begin() + static_cast<std::ptrdiff_t>(i));
      const ItemSet *sx = lookup(x);
      const ItemSet *sy = lookup({y});
      AssociationRule rule;
      rule.antecedent = std::move(x);
      rule.consequent = y;
      rule.support = set.support;
      rule.confidence = static_cast<double>(set.count) / static_cast<double>(sx->count);
      rule.lift = set.support / (sx->support * sy->support);
      out.push_back(std::move(rule));
    }
  }
  std::sort(out.begin(), out.end(), [](const AssociationRule &a, const AssociationRule &b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.support != b.support) return a.support > b.support;
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return out;
}

void write_rules_csv(std::ostream &out, const std::vector<AssociationRule> &rules) {
  csv::write_row(out, {"antecedent", "consequent", "support", "confidence", "lift"});
  for (const auto &rule : rules) {
    std::string antecedent;
    for (const auto &item : rule.antecedent) antecedent += (antecedent.empty() ? "" : ";") + item;
    csv::write_row(out, {antecedent, rule.consequent, csv::format_number(rule.support),
                         csv::format_number(rule.confidence), csv::format_number(rule.lift)});
  }
}

std::vector<Transaction> smell_transactions(const std::vector<dataset::FineGrainedRecord> &records) {
  std::vector<Transaction> out;
  for (const auto &record : records) {
    Transaction t;
    for (std::size_t s = 0; s < smells::kSmellCount; ++s) {
      if (record.counts[s] >= 1) t.emplace_back(smells::smell_names()[s]);
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Transaction> smell_role_transactions(const std::vector<dataset::FineGrainedRecord> &records) {
  std::vector<Transaction> out = smell_transactions(records);
  for (std::size_t i = 0; i < records.size(); ++i) {
    out[i].emplace_back(roles::display_name(records[i].label));
  }
  return out;
}

std::vector<Transaction> cluster_role_transactions(const ClusterAssignment &a,
                                                   const std::vector<std::string> &role_of) {
  std::vector<std::set<std::string>> members(a.clusters);
  for (std::size_t i = 0; i < a.cluster.size() && i < role_of.size(); ++i) {
    members[a.cluster[i]].insert(role_of[i]);
  }
  std::vector<Transaction> out;
  for (const auto &m : members) {
    if (!m.empty()) out.emplace_back(m.begin(), m.end());
  }
  return out;
}

}  // namespace smellrole::mining
