#include <doctest.h>

#include "oracles.hpp"

#include <smellrole/error.hpp>
#include <smellrole/mining/apriori.hpp>
#include <smellrole/mining/dendrogram.hpp>
#include <smellrole/mining/matrix.hpp>
#include <smellrole/mining/popc.hpp>
#include <smellrole/rng.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

using namespace smellrole;
using namespace smellrole::mining;

namespace {

BinaryMatrix matrix(const std::vector<std::vector<std::uint8_t>> &rows) {
  BinaryMatrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) m.row_labels.push_back("s" + std::to_string(i));
  for (std::size_t j = 0; j < (rows.empty() ? 0 : rows[0].size()); ++j)
    m.column_labels.push_back("f" + std::to_string(j));
  m.cells = rows;
  return m;
}

BinaryMatrix random_matrix(Rng &rng, std::size_t n, std::size_t d, std::uint64_t density = 2) {
  std::vector<std::vector<std::uint8_t>> rows(n, std::vector<std::uint8_t>(d));
  for (auto &row : rows)
    for (auto &c : row) c = rng.below(density) == 0 ? 1 : 0;
  return matrix(rows);
}

double oracle_score(const std::vector<std::size_t> &cluster, const BinaryMatrix &m, double theta) {
  return oracles::popc_score(cluster, m, theta);
}

double brute_force_best(const BinaryMatrix &m, std::size_t k, double theta) {
  return oracles::popc_best(m, k, theta);
}

BinaryMatrix two_blocks() {
  std::vector<std::vector<std::uint8_t>> rows;
  const std::vector<std::vector<std::uint8_t>> a{{1, 1, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}};
  const std::vector<std::vector<std::uint8_t>> b{{0, 0, 1, 1}, {0, 0, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}};
  for (int i = 0; i < 10; ++i) {
    rows.push_back(a[static_cast<std::size_t>(i) % a.size()]);
    rows.push_back(b[static_cast<std::size_t>(i * 3) % b.size()]);
  }
  return matrix(rows);
}

}  // namespace

TEST_CASE("binarize") {
  smells::SmellCountTable table;
  auto &row = table.row("k9mail.AuthType");
  row[*smells::smell_index("Blob")] = 3;
  row[*smells::smell_index("LongMethod")] = 1;
  const BinaryMatrix m = binarize(table);
  REQUIRE(m.rows() == 1);
  CHECK(m.cols() == smells::kSmellCount);
  CHECK(m.cells[0][0] == 1);
  CHECK(m.cells[0][1] == 1);
  CHECK(m.cells[0][2] == 0);
  CHECK_NOTHROW(validate(m));
  BinaryMatrix bad = m;
  bad.cells[0][0] = 2;
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("kmeans_init") {
  SUBCASE("identical samples collapse") {
    const ClusterAssignment a = kmeans_init(matrix({{1, 0}, {1, 0}}), 1);
    CHECK(a.clusters == 1);
  }
  SUBCASE("orthogonal pairs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ClusterAssignment a = kmeans_init(matrix({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}}), seed);
      CHECK(a.clusters == 2);
      CHECK(a.cluster[0] == a.cluster[2]);
      CHECK(a.cluster[1] == a.cluster[3]);
      CHECK(a.cluster[0] != a.cluster[1]);
    }
  }
  SUBCASE("deterministic and bounded") {
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
      const BinaryMatrix m = random_matrix(rng, 3 + rng.below(30), 5);
      const ClusterAssignment a = kmeans_init(m, 99);
      CHECK(a == kmeans_init(m, 99));
      CHECK(a.clusters <= (m.rows() + 1) / 2);
      CHECK(a.iterations <= 100);
    }
  }
  SUBCASE("too few samples") {
    try {
      kmeans_init(matrix({{1}}), 1);
      FAIL("expected TooFewSamples");
    } catch (const Error &e) {
      CHECK(e.code() == "TooFewSamples");
    }
  }
}

TEST_CASE("popc_score") {
  const BinaryMatrix m = matrix({{1, 0}, {1, 1}, {0, 1}, {0, 1}});
  CHECK(popc_score({{0, 0, 1, 1}, 2}, m) == doctest::Approx(1.0 + (1.0 / 9 + 4.0 / 9)));
  CHECK(popc_score({{0, 0, 0, 0}, 1}, m) == doctest::Approx(2.0));
  CHECK(popc_score({{0, 1}, 2}, matrix({{1}, {1}})) == doctest::Approx(0.5));
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const BinaryMatrix r = random_matrix(rng, 6, 4);
    std::vector<std::size_t> cluster(6);
    for (auto &c : cluster) c = rng.below(3);
    ClusterAssignment a{cluster, 3};
    CHECK(std::abs(popc_score(a, r, 2.0) - oracle_score(cluster, r, 2.0)) < 1e-12);
    CHECK(std::abs(popc_score(a, r, 3.0) - oracle_score(cluster, r, 3.0)) < 1e-12);
  }
}

TEST_CASE("popc") {
  SUBCASE("two disjoint blocks") {
    const BinaryMatrix m = two_blocks();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      PopcTrace trace;
      const ClusterAssignment a = popc(m, seed, 2.0, &trace);
      CHECK(a.clusters == 2);
      CHECK(a.iterations < 50);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        CHECK(a.cluster[i] == a.cluster[i % 2]);
      }
      CHECK(a.cluster[0] != a.cluster[1]);
      double previous = trace.initial_score;
      for (double j : trace.accepted) {
        CHECK(j > previous);
        previous = j;
      }
      CHECK(a.score == doctest::Approx(4.0));
    }
  }
  SUBCASE("all-zero matrix keeps the initial assignment") {
    const BinaryMatrix m = matrix({{0, 0}, {0, 0}, {0, 0}, {0, 0}});
    const ClusterAssignment init = kmeans_init(m, 5);
    const ClusterAssignment a = popc(m, 5);
    CHECK(a.cluster == init.cluster);
    CHECK(a.score == 0);
  }
  SUBCASE("identical samples merge") {
    const ClusterAssignment a = popc(matrix({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}), 3);
    CHECK(a.clusters == 1);
  }
}

// True when no single sample can move to another cluster, existing or new,
// and strictly raise J.
bool single_move_optimal(const BinaryMatrix &m, std::vector<std::size_t> cluster, double theta) {
  const double here = oracle_score(cluster, m, theta);
  const std::size_t fresh = *std::max_element(cluster.begin(), cluster.end()) + 1;
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    const std::size_t from = cluster[i];
    for (std::size_t to = 0; to <= fresh; ++to) {
      if (to == from) continue;
      cluster[i] = to;
      if (oracle_score(cluster, m, theta) > here + 1e-12) return false;
    }
    cluster[i] = from;
  }
  return true;
}

TEST_CASE("popc moves strictly improve, rerun exactly, and stop at a single-move optimum") {
  Rng rng(2024);
  double worst_ratio = 1;
  for (int t = 0; t < 200; ++t) {
    const BinaryMatrix m = random_matrix(rng, 6, 4);
    const std::uint64_t seed = rng.next();
    PopcTrace trace;
    const ClusterAssignment a = popc(m, seed, 2.0, &trace);
    CHECK(a.cluster.size() == 6);
    CHECK(a == popc(m, seed));
    CHECK(std::abs(a.score - oracle_score(a.cluster, m, 2.0)) < 1e-12);
    CHECK(a.score >= kmeans_init(m, seed).score - 1e-12);
    double previous = trace.initial_score;
    for (double j : trace.accepted) {
      CHECK(j > previous);
      previous = j;
    }
    CHECK(single_move_optimal(m, a.cluster, 2.0));
    const double best = brute_force_best(m, 3, 2.0);
    CHECK(a.score <= best + 1e-12);
    if (best > 0) worst_ratio = std::min(worst_ratio, a.score / best);
  }
  MESSAGE("worst popc/optimum ratio " << worst_ratio);
}

TEST_CASE("presence_by_group") {
  const ClusterAssignment a{{0, 1, 2, 1, 0}, 3};
  const std::vector<std::string> role{"SP", "IH", "SP", "CT", "IH"};
  const BinaryMatrix p = presence_by_group(a, role, {"SP", "CO", "IH", "CT"});
  CHECK(p.column_labels == std::vector<std::string>{"C0", "C1", "C2"});
  CHECK(p.cells == std::vector<std::vector<std::uint8_t>>{{1, 0, 1}, {0, 0, 0}, {1, 1, 0}, {0, 1, 0}});
  const BinaryMatrix single = presence_by_group({{0, 0}, 1}, std::vector<std::string>{"A", "B"}, {"A", "B"});
  CHECK(single.cells == std::vector<std::vector<std::uint8_t>>{{1}, {1}});
  const BinaryMatrix multi = presence_by_group(a, std::vector<std::vector<std::string>>{{"Blob"}, {}, {"Blob", "LazyClass"}, {}, {}},
                                               {"Blob", "LazyClass"});
  CHECK(multi.cells == std::vector<std::vector<std::uint8_t>>{{1, 0, 1}, {0, 0, 1}});
}

TEST_CASE("jaccard distance") {
  const std::vector<std::uint8_t> a{1, 1, 0, 0};
  const std::vector<std::uint8_t> b{0, 0, 1, 1};
  const std::vector<std::uint8_t> c{1, 0, 1, 0};
  CHECK(jaccard_distance(a, b) == 1.0);
  CHECK(jaccard_distance(a, c) == doctest::Approx(2.0 / 3));
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint8_t> x(6), y(6);
    for (auto &v : x) v = rng.below(2) ? 1 : 0;
    for (auto &v : y) v = rng.below(2) ? 1 : 0;
    CHECK(jaccard_distance(x, x) == 0);
    CHECK(jaccard_distance(x, y) == jaccard_distance(y, x));
    CHECK(jaccard_distance(x, y) >= 0);
    CHECK(jaccard_distance(x, y) <= 1);
  }
}

namespace {

struct Merge {
  std::set<std::string> left;
  std::set<std::string> right;
  double height;
};

void transcript(const DendrogramNode &node, std::vector<Merge> &out, std::set<std::string> &leaves) {
  if (node.is_leaf()) {
    leaves.insert(node.label);
    return;
  }
  std::set<std::string> l, r;
  transcript(node.children[0], out, l);
  transcript(node.children[1], out, r);
  out.push_back({l, r, node.height});
  leaves.insert(l.begin(), l.end());
  leaves.insert(r.begin(), r.end());
}

// Average linkage from pairwise leaf distances at every step.
std::vector<Merge> oracle_agglomerate(const BinaryMatrix &m) {
  std::vector<std::set<std::size_t>> groups;
  for (std::size_t i = 0; i < m.rows(); ++i) groups.push_back({i});
  auto name = [&](const std::set<std::size_t> &g) {
    std::set<std::string> s;
    for (auto i : g) s.insert(m.row_labels[i]);
    return s;
  };
  std::vector<Merge> out;
  while (groups.size() > 1) {
    double best = 2;
    std::pair<std::string, std::string> best_key;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        double sum = 0;
        for (auto x : groups[i])
          for (auto y : groups[j]) sum += jaccard_distance(m.cells[x], m.cells[y]);
        const double d = sum / static_cast<double>(groups[i].size() * groups[j].size());
        std::string a = *name(groups[i]).begin();
        std::string b = *name(groups[j]).begin();
        if (b < a) std::swap(a, b);
        const std::pair<std::string, std::string> key{a, b};
        if (d < best - 1e-12 || (std::abs(d - best) <= 1e-12 && key < best_key)) {
          best = d;
          best_key = key;
          bi = i;
          bj = j;
        }
      }
    }
    auto l = name(groups[bi]);
    auto r = name(groups[bj]);
    if (*r.begin() < *l.begin()) std::swap(l, r);
    out.push_back({l, r, best});
    groups[bi].insert(groups[bj].begin(), groups[bj].end());
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return out;
}

bool same_transcript(std::vector<Merge> a, std::vector<Merge> b) {
  if (a.size() != b.size()) return false;
  auto order = [](const Merge &x, const Merge &y) {
    if (x.height != y.height) return x.height < y.height;
    return x.left < y.left;
  };
  std::sort(a.begin(), a.end(), order);
  std::sort(b.begin(), b.end(), order);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].left != b[i].left || a[i].right != b[i].right || std::abs(a[i].height - b[i].height) > 1e-12)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("agglomerate") {
  SUBCASE("identical rows merge at height 0") {
    const DendrogramNode root = agglomerate(matrix({{1, 0, 1}, {1, 0, 1}}));
    CHECK(root.height == 0);
    CHECK(root.children.size() == 2);
  }
  SUBCASE("disjoint rows merge at height 1") {
    const DendrogramNode root = agglomerate(matrix({{1, 1, 0, 0}, {0, 0, 1, 1}}));
    CHECK(root.height == 1);
    CHECK(to_newick(root) == "(s0:1,s1:1);\n");
  }
  SUBCASE("four-row fixture") {
    const BinaryMatrix m = matrix({{1, 1, 0, 0}, {1, 1, 1, 0}, {0, 0, 1, 1}, {0, 1, 1, 1}});
    const DendrogramNode root = agglomerate(m);
    std::vector<Merge> got;
    std::set<std::string> leaves;
    transcript(root, got, leaves);
    CHECK(same_transcript(got, oracle_agglomerate(m)));
    CHECK(root.height == doctest::Approx(0.75));
    CHECK(to_newick(root) == "((s0:0.33333333333333337,s1:0.33333333333333337):0.41666666666666663,"
                             "(s2:0.33333333333333337,s3:0.33333333333333337):0.41666666666666663);\n");
  }
  SUBCASE("too few rows") {
    CHECK_THROWS_AS(agglomerate(matrix({{1}})), Error);
  }
  SUBCASE("json and svg") {
    const DendrogramNode root = agglomerate(matrix({{1, 0}, {1, 1}, {0, 1}}));
    const std::string json = to_json_text(root);
    CHECK(json.find("\"children\"") != std::string::npos);
    CHECK(json.find("\"label\": \"s0\"") != std::string::npos);
    const std::string svg = dendrogram_svg("t", root);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find(">s2</text>") != std::string::npos);
  }
}

TEST_CASE("agglomerate matches the direct oracle and keeps heights monotone") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    const BinaryMatrix m = random_matrix(rng, 2 + rng.below(6), 5);
    const DendrogramNode root = agglomerate(m);
    std::vector<Merge> got;
    std::set<std::string> leaves;
    transcript(root, got, leaves);
    CHECK(leaves.size() == m.rows());
    CHECK(same_transcript(got, oracle_agglomerate(m)));
    std::function<void(const DendrogramNode &)> monotone = [&](const DendrogramNode &n) {
      for (const auto &c : n.children) {
        CHECK(c.height <= n.height + 1e-12);
        monotone(c);
      }
    };
    monotone(root);
  }
}

TEST_CASE("apriori") {
  SUBCASE("direct counting") {
    const auto sets = apriori({{"A"}, {"A"}, {"A", "B"}, {"B"}}, 0.5);
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].items == std::vector<std::string>{"A"});
    CHECK(sets[0].support == 0.75);
    CHECK(sets[1].support == 0.5);
  }
  SUBCASE("support 1 with no universal item") {
    CHECK(apriori({{"A"}, {"B"}}, 1.0).empty());
    CHECK(rules(apriori({{"A"}, {"B"}}, 1.0)).empty());
  }
  SUBCASE("errors") {
    try {
      apriori({}, 0.5);
      FAIL("expected EmptyTransactions");
    } catch (const Error &e) {
      CHECK(e.code() == "EmptyTransactions");
    }
    CHECK_THROWS_AS(apriori({{"A"}}, 0.0), Error);
    CHECK_THROWS_AS(apriori({{"A"}}, 1.5), Error);
    try {
      rules({{{"A", "B"}, 1, 0.5}});
      FAIL("expected MissingSubsetSupport");
    } catch (const Error &e) {
      CHECK(e.code() == "MissingSubsetSupport");
    }
  }
  SUBCASE("rule identities") {
    const auto sets = apriori({{"A", "B"}, {"A", "B"}, {"C"}, {"C"}}, 0.25);
    const auto rs = rules(sets);
    REQUIRE_FALSE(rs.empty());
    CHECK(rs[0].confidence == 1.0);
    const auto independent = rules(apriori({{"X", "Y"}, {"X"}, {"Y"}, {}}, 0.25));
    REQUIRE(independent.size() == 2);
    CHECK(independent[0].lift == doctest::Approx(1.0));
  }
}

TEST_CASE("apriori and rules match a power-set oracle") {
  Rng rng(909);
  const std::vector<std::string> names{"A", "B", "C", "D", "E"};
  for (int fixture = 0; fixture < 20; ++fixture) {
    std::vector<unsigned> masks(8);
    std::vector<Transaction> transactions;
    for (auto &mask : masks) {
      mask = static_cast<unsigned>(rng.below(32));
      Transaction t;
      for (unsigned b = 0; b < 5; ++b)
        if (mask & (1u << b)) t.push_back(names[b]);
      transactions.push_back(t);
    }
    const double min_support = 0.125 * static_cast<double>(1 + rng.below(4));
    auto count = [&](unsigned set) {
      std::size_t c = 0;
      for (auto m : masks) c += (m & set) == set;
      return c;
    };
    std::map<std::vector<std::string>, std::size_t> expected;
    for (unsigned set = 1; set < 32; ++set) {
      if (static_cast<double>(count(set)) >= min_support * 8 - 1e-9) {
        std::vector<std::string> items;
        for (unsigned b = 0; b < 5; ++b)
          if (set & (1u << b)) items.push_back(names[b]);
        expected[items] = count(set);
      }
    }
    const auto sets = apriori(transactions, min_support);
    std::map<std::vector<std::string>, std::size_t> got;
    for (const auto &s : sets) {
      got[s.items] = s.count;
      CHECK(s.support == static_cast<double>(s.count) / 8);
    }
    CHECK(got == expected);

    auto mask_of = [&](const std::vector<std::string> &items) {
      unsigned m = 0;
      for (const auto &i : items) m |= 1u << static_cast<unsigned>(i[0] - 'A');
      return m;
    };
    std::size_t expected_rules = 0;
    for (const auto &[items, c] : expected) expected_rules += items.size() > 1 ? items.size() : 0;
    const auto rs = rules(sets);
    CHECK(rs.size() == expected_rules);
    for (const auto &r : rs) {
      const unsigned x = mask_of(r.antecedent);
      const unsigned y = mask_of({r.consequent});
      CHECK((x & y) == 0u);
      const double sxy = static_cast<double>(count(x | y)) / 8;
      const double sx = static_cast<double>(count(x)) / 8;
      const double sy = static_cast<double>(count(y)) / 8;
      CHECK(std::abs(r.support - sxy) < 1e-12);
      CHECK(std::abs(r.confidence - static_cast<double>(count(x | y)) / static_cast<double>(count(x))) < 1e-12);
      CHECK(std::abs(r.lift - sxy / (sx * sy)) < 1e-12);
      CHECK(std::abs(r.lift - r.confidence / sy) < 1e-12);
    }
    for (std::size_t i = 1; i < rs.size(); ++i) {
      CHECK((rs[i - 1].confidence > rs[i].confidence ||
             (rs[i - 1].confidence == rs[i].confidence && rs[i - 1].support >= rs[i].support)));
    }
    for (const auto &s : sets) {
      for (std::size_t drop = 0; drop < s.items.size() && s.items.size() > 1; ++drop) {
        auto sub = s.items;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        REQUIRE(got.count(sub));
        CHECK(got[sub] >= s.count);
      }
    }
  }
}

TEST_CASE("rule families") {
  std::vector<dataset::FineGrainedRecord> records(3);
  records[0].label = roles::Stereotype::ServiceProvider;
  records[0].counts[*smells::smell_index("AntiSingleton")] = 1;
  records[0].counts[*smells::smell_index("ClassDataShouldBePrivate")] = 2;
  records[1].label = roles::Stereotype::ServiceProvider;
  records[1].counts[*smells::smell_index("AntiSingleton")] = 1;
  records[2].label = roles::Stereotype::Controller;
  const auto smell_sets = smell_transactions(records);
  CHECK(smell_sets[0] == Transaction{"AntiSingleton", "ClassDataShouldBePrivate"});
  CHECK(smell_sets[2].empty());
  const auto with_roles = smell_role_transactions(records);
  CHECK(with_roles[2] == Transaction{"Controller"});
  const auto rs = rules(apriori(with_roles, 0.05), std::set<std::string>{"Service Provider"});
  REQUIRE_FALSE(rs.empty());
  for (const auto &r : rs) CHECK(r.consequent == "Service Provider");
  CHECK(rs[0].confidence == 1.0);

  const auto clusters = cluster_role_transactions({{0, 1, 0}, 2}, {"SP", "CT", "IH"});
  CHECK(clusters == std::vector<Transaction>{{"IH", "SP"}, {"CT"}});

  std::ostringstream out;
  write_rules_csv(out, rs);
  CHECK(out.str().rfind("antecedent,consequent,support,confidence,lift\n", 0) == 0);
}
