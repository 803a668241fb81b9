#pragma once

#include <smellrole/dataset/records.hpp>
#include <smellrole/mining/popc.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace smellrole::mining {

using Transaction = std::vector<std::string>;

struct ItemSet {
  std::vector<std::string> items;  // sorted
  std::size_t count = 0;
  double support = 0;
  bool operator==(const ItemSet &) const = default;
};

/// Every itemset with support >= min_support, by size then items. Throws
/// Error{"EmptyTransactions"} and Error{"BadSupport"} outside (0, 1].
std::vector<ItemSet> apriori(const std::vector<Transaction> &transactions, double min_support);

struct AssociationRule {
  std::vector<std::string> antecedent;
  std::string consequent;
  double support = 0;
  double confidence = 0;
  double lift = 0;
};

/// Single-item consequents, optionally restricted to `consequents`. Sorted by
/// confidence, then support (both descending), then antecedent and
/// consequent. Throws Error{"MissingSubsetSupport"} when a subset is absent.
std::vector<AssociationRule> rules(const std::vector<ItemSet> &itemsets,
                                   const std::optional<std::set<std::string>> &consequents = std::nullopt);

/// antecedent,consequent,support,confidence,lift; antecedent items joined by ';'.
void write_rules_csv(std::ostream &out, const std::vector<AssociationRule> &rules);

/// Smells present per class.
std::vector<Transaction> smell_transactions(const std::vector<dataset::FineGrainedRecord> &records);
/// Smells present per class plus its stereotype.
std::vector<Transaction> smell_role_transactions(const std::vector<dataset::FineGrainedRecord> &records);
/// Stereotypes present in each nonempty cluster.
std::vector<Transaction> cluster_role_transactions(const ClusterAssignment &a,
                                                   const std::vector<std::string> &role_of);

}  // namespace smellrole::mining
