#include <doctest.h>

#include "oracles.hpp"

#include <smellrole/analytics/stats.hpp>
#include <smellrole/analytics/svg.hpp>
#include <smellrole/analytics/tables.hpp>
#include <smellrole/error.hpp>
#include <smellrole/rng.hpp>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace smellrole;
using namespace smellrole::analytics;
using roles::Stereotype;

namespace {

double oracle_spearman(const std::vector<double> &x, const std::vector<double> &y) {
  return oracles::spearman(x, y);
}

FineGrainedRecord record(const std::string &key, const std::string &project, Kind kind,
                         Stereotype label) {
  FineGrainedRecord r;
  r.canonical_key = key;
  r.class_name = smells::simple_class_name(key);
  r.project = project;
  r.kind = kind;
  r.label = label;
  return r;
}

std::size_t smell(const char *name) { return *smells::smell_index(name); }

dataset::CorpusManifest manifest_of(
    std::initializer_list<std::pair<const char *, const char *>> projects) {
  std::string text;
  for (const auto &[name, kind] : projects) {
    text += std::string("[[project]]\nname = \"") + name + "\"\nkind = " + kind + "\n";
  }
  return dataset::load_manifest(text);
}

}  // namespace

TEST_CASE("welch_ttest") {
  SUBCASE("identical groups") {
    const std::vector<double> a{3, 5, 7, 9};
    const WelchResult r = welch_ttest(a, a);
    CHECK(r.t == doctest::Approx(0.0));
    CHECK(r.p == doctest::Approx(1.0));
  }
  SUBCASE("reference values") {
    struct Case {
      std::vector<double> a, b;
      double t, p, df;
    };
    const std::vector<Case> cases{
        {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}, -1.0, 0.34659350708733416, 8.0},
        {{19.2, 37.5, 41.0, 12.3, 55.1, 28.7}, {30.1, 22.4, 18.9, 35.0},
         0.7789264829065747, 0.4599232527262721, 7.489345816036323},
        {{0.5, 1.5, 2.0, 8.0}, {3.0, 3.5, 9.5, 12.0, 15.5, 2.0, 7.25},
         -1.7707910271687528, 0.1120253073324901, 8.575553933701743},
    };
    for (const auto &c : cases) {
      const WelchResult r = welch_ttest(c.a, c.b);
      CHECK(std::abs(r.t - c.t) < 1e-6);
      CHECK(std::abs(r.p - c.p) < 1e-6);
      CHECK(std::abs(r.df - c.df) < 1e-6);
      const WelchResult s = welch_ttest(c.b, c.a);
      CHECK(std::abs(s.t + r.t) < 1e-12);
      CHECK(std::abs(s.p - r.p) < 1e-12);
    }
  }
  SUBCASE("errors") {
    const std::vector<double> one{1};
    const std::vector<double> two{1, 2};
    const std::vector<double> flat{4, 4, 4};
    try {
      welch_ttest(one, two);
      FAIL("expected TooFewSamples");
    } catch (const Error &e) {
      CHECK(e.code() == "TooFewSamples");
    }
    try {
      welch_ttest(flat, flat);
      FAIL("expected ZeroVariance");
    } catch (const Error &e) {
      CHECK(e.code() == "ZeroVariance");
    }
  }
}

TEST_CASE("welch p stays in [0, 1] and shrinks as groups separate") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a, b;
    for (int i = 0; i < 6; ++i) a.push_back(static_cast<double>(rng.below(100)) / 10);
    for (int i = 0; i < 5; ++i) b.push_back(static_cast<double>(rng.below(100)) / 10);
    if (variance(a) == 0 || variance(b) == 0) continue;
    double previous = welch_ttest(a, b).p;
    CHECK(previous >= 0);
    CHECK(previous <= 1);
    auto shifted = b;
    for (int step = 0; step < 5; ++step) {
      for (auto &v : shifted) v += 20;
      const double p = welch_ttest(a, shifted).p;
      CHECK(p <= previous + 1e-12);
      previous = p;
    }
  }
}

TEST_CASE("spearman") {
  SUBCASE("perfect monotone relations") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 8, 16, 32};
    const std::vector<double> down{10, 9, 7, 3, 0};
    CHECK(spearman(x, up).value == doctest::Approx(1.0));
    CHECK(spearman(x, down).value == doctest::Approx(-1.0));
  }
  SUBCASE("ties") {
    const std::vector<double> x{0, 0, 1, 1, 2, 0};
    const std::vector<double> y{1, 0, 1, 3, 3, 0};
    CHECK(std::abs(spearman(x, y).value - oracle_spearman(x, y)) < 1e-12);
    CHECK(average_ranks(x) == std::vector<double>{2, 2, 4.5, 4.5, 6, 2});
  }
  SUBCASE("constant column") {
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> c{0, 0, 0};
    const Correlation r = spearman(x, c);
    CHECK(r.value == 0);
    CHECK_FALSE(r.defined);
    const CorrelationMatrix m = spearman_matrix({x, c});
    CHECK(m.values[1][1] == 1);
    CHECK(m.values[0][1] == 0);
    CHECK(m.constant == std::vector<bool>{false, true});
  }
  SUBCASE("too few rows") {
    try {
      spearman_matrix({{1}, {2}});
      FAIL("expected TooFewRows");
    } catch (const Error &e) {
      CHECK(e.code() == "TooFewRows");
    }
  }
}

TEST_CASE("spearman matches the oracle and ignores monotone transforms") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    std::vector<double> x(n), y(n);
    for (auto &v : x) v = static_cast<double>(rng.below(4));
    for (auto &v : y) v = static_cast<double>(rng.below(5));
    const Correlation r = spearman(x, y);
    if (!r.defined) continue;
    CHECK(std::abs(r.value - oracle_spearman(x, y)) < 1e-12);
    CHECK(r.value >= -1 - 1e-12);
    CHECK(r.value <= 1 + 1e-12);
    std::vector<double> tx(n);
    for (std::size_t i = 0; i < n; ++i) tx[i] = std::exp(x[i]) * 3 + 1;
    CHECK(std::abs(spearman(tx, y).value - r.value) < 1e-12);
    CHECK(std::abs(spearman(y, x).value - r.value) < 1e-12);
  }
}

TEST_CASE("smell_density") {
  const auto manifest = manifest_of({{"D1", "desktop"}, {"D2", "desktop"}, {"M1", "mobile"}});
  std::vector<FineGrainedRecord> records;
  records.push_back(record("d1.A", "D1", Kind::Desktop, Stereotype::Controller));
  records.back().counts[smell("Blob")] = 10;
  records.push_back(record("d2.A", "D2", Kind::Desktop, Stereotype::Controller));
  records.back().counts[smell("Blob")] = 4;
  records.back().counts[smell("LargeClass")] = 2;
  records.push_back(record("m1.A", "M1", Kind::Mobile, Stereotype::Structurer));

  const DensityReport report = smell_density(records, manifest, {{"D1", 1000}, {"D2", 2000}, {"M1", 500}});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].density == doctest::Approx(10.0));
  CHECK(report.rows[1].density == doctest::Approx(3.0));
  CHECK(report.rows[2].density == 0);
  CHECK(report.mean_density.at(Kind::Desktop) == doctest::Approx(6.5));
  CHECK(report.pooled_density.at(Kind::Desktop) == doctest::Approx(16.0 / 3.0));
  CHECK(report.mean_density.at(Kind::Mobile) == 0);

  try {
    smell_density(records, manifest, {{"D1", 1000}, {"D2", 2000}});
    FAIL("expected MissingLoc");
  } catch (const Error &e) {
    CHECK(e.code() == "MissingLoc");
  }
  std::ostringstream out;
  write_density_csv(out, report);
  CHECK(out.str().find("D1,desktop,10,1,10\n") != std::string::npos);
}

TEST_CASE("stereotype_percentages") {
  const auto manifest = manifest_of({{"P", "mobile"}});
  std::vector<FineGrainedRecord> records{
      record("p.A", "P", Kind::Mobile, Stereotype::ServiceProvider),
      record("p.B", "P", Kind::Mobile, Stereotype::ServiceProvider),
      record("p.C", "P", Kind::Mobile, Stereotype::InformationHolder),
      record("p.D", "P", Kind::Mobile, Stereotype::Controller)};
  records[0].counts[smell("Blob")] = 1;
  const auto rows = stereotype_percentages(records, manifest);
  REQUIRE(rows.size() == 1);
  const auto &p = rows[0];
  CHECK(p.classes == 4);
  CHECK(p.smelly[static_cast<int>(Stereotype::ServiceProvider)] == doctest::Approx(25));
  CHECK(p.clean[static_cast<int>(Stereotype::ServiceProvider)] == doctest::Approx(25));
  CHECK(p.clean[static_cast<int>(Stereotype::InformationHolder)] == doctest::Approx(25));
  CHECK(p.clean[static_cast<int>(Stereotype::Controller)] == doctest::Approx(25));
  std::ostringstream out;
  write_percentages_csv(out, rows);
  CHECK(out.str() ==
        "project,kind,NOC,SP_a,SP_b,CO_a,CO_b,IH_a,IH_b,IT_a,IT_b,CT_a,CT_b,ST_a,ST_b\n"
        "P,mobile,4,25.00,25.00,0.00,0.00,0.00,25.00,0.00,0.00,0.00,25.00,0.00,0.00\n");
}

TEST_CASE("percentages of each project partition its classes") {
  Rng rng(23);
  const auto manifest = manifest_of({{"A", "desktop"}, {"B", "mobile"}});
  std::vector<FineGrainedRecord> records;
  for (int i = 0; i < 200; ++i) {
    const bool a = rng.below(2) == 0;
    records.push_back(record("x.C" + std::to_string(i), a ? "A" : "B",
                             a ? Kind::Desktop : Kind::Mobile,
                             static_cast<Stereotype>(rng.below(6))));
    if (rng.below(2) == 0) records.back().counts[rng.below(smells::kSmellCount)] = 1;
  }
  for (const auto &p : stereotype_percentages(records, manifest)) {
    double total = 0;
    for (std::size_t k = 0; k < kLabelCount; ++k) total += p.smelly[k] + p.clean[k];
    CHECK(total == doctest::Approx(100.0));
  }
}

TEST_CASE("smell_share_by_stereotype") {
  std::vector<FineGrainedRecord> records{
      record("p.A", "P", Kind::Mobile, Stereotype::ServiceProvider),
      record("p.B", "P", Kind::Mobile, Stereotype::InformationHolder),
      record("p.C", "P", Kind::Mobile, Stereotype::Controller)};
  records[0].counts[smell("Blob")] = 6;
  records[1].counts[smell("LazyClass")] = 3;
  records[2].counts[smell("LongMethod")] = 1;
  const auto shares = smell_share_by_stereotype(records);
  CHECK(shares[static_cast<int>(Stereotype::ServiceProvider)] == doctest::Approx(60));
  CHECK(shares[static_cast<int>(Stereotype::InformationHolder)] == doctest::Approx(30));
  CHECK(shares[static_cast<int>(Stereotype::Controller)] == doctest::Approx(10));
  CHECK(std::accumulate(shares.begin(), shares.end(), 0.0) == doctest::Approx(100));

  const FrequencyTable freq = smell_frequency(records);
  CHECK(freq[static_cast<int>(Stereotype::ServiceProvider)][smell("Blob")] == 6);

  records[0].counts = {};
  records[1].counts = {};
  records[2].counts = {};
  try {
    smell_share_by_stereotype(records);
    FAIL("expected NoSmells");
  } catch (const Error &e) {
    CHECK(e.code() == "NoSmells");
  }
}

TEST_CASE("presence_matrix") {
  auto count_cells = [](const PresenceMatrix &m) {
    int n = 0;
    for (const auto &s : m)
      for (const auto &l : s)
        for (bool b : l) n += b;
    return n;
  };
  std::vector<FineGrainedRecord> records{
      record("p.A", "P", Kind::Mobile, Stereotype::InformationHolder)};
  records[0].counts[smell("LargeClass")] = 2;
  PresenceMatrix m = presence_matrix(records);
  CHECK(count_cells(m) == 1);
  CHECK(m[smell("LargeClass")][static_cast<int>(Stereotype::InformationHolder)][0]);

  Rng rng(3);
  std::vector<FineGrainedRecord> scattered;
  for (int i = 0; i < 5; ++i) {
    scattered.push_back(record("q.C" + std::to_string(i), "Q", i % 2 ? Kind::Mobile : Kind::Desktop,
                               static_cast<Stereotype>(i)));
    scattered.back().counts[static_cast<std::size_t>(i)] = 1;
  }
  CHECK(count_cells(presence_matrix(scattered)) == 5);

  for (int trial = 0; trial < 30; ++trial) {
    std::vector<FineGrainedRecord> base;
    for (int i = 0; i < 10; ++i) {
      base.push_back(record("r.C" + std::to_string(i), "R", rng.below(2) ? Kind::Mobile : Kind::Desktop,
                            static_cast<Stereotype>(rng.below(6))));
      base.back().counts[rng.below(smells::kSmellCount)] = 1;
    }
    const PresenceMatrix before = presence_matrix(base);
    auto more = base;
    more.push_back(record("r.X", "R", Kind::Mobile, static_cast<Stereotype>(rng.below(6))));
    more.back().counts[rng.below(smells::kSmellCount)] = 1;
    const PresenceMatrix after = presence_matrix(more);
    for (std::size_t s = 0; s < kSmellCount; ++s)
      for (std::size_t l = 0; l < kLabelCount; ++l)
        for (int k = 0; k < 2; ++k) CHECK((!before[s][l][k] || after[s][l][k]));
  }
}

TEST_CASE("smell correlations and the strongest pair") {
  std::vector<FineGrainedRecord> records;
  for (int i = 0; i < 6; ++i) {
    records.push_back(record("p.C" + std::to_string(i), "P", Kind::Desktop, Stereotype::Controller));
    records.back().counts[smell("Blob")] = static_cast<std::uint32_t>(i);
    records.back().counts[smell("LargeClass")] = static_cast<std::uint32_t>(i * 2);
    records.back().counts[smell("LazyClass")] = static_cast<std::uint32_t>(i % 2);
  }
  const CorrelationMatrix m = smell_correlations(records);
  const CorrelationPeak peak = strongest_pair(m);
  CHECK(peak.first == smell("Blob"));
  CHECK(peak.second == smell("LargeClass"));
  CHECK(peak.value == doctest::Approx(1.0));
  CHECK(m.constant[smell("MessageChains")]);
  std::ostringstream out;
  write_spearman_csv(out, m);
  CHECK(out.str().rfind("smell,Blob,LongMethod,LazyClass,", 0) == 0);
}

TEST_CASE("svg output") {
  CHECK(xml_escape("a<b & \"c\"") == "a&lt;b &amp; &quot;c&quot;");
  const std::string bars = bar_chart_svg("Shares", {"SP", "IH"}, {60, 30});
  CHECK(bars.rfind("<svg", 0) == 0);
  CHECK(bars.find("</svg>") != std::string::npos);
  CHECK(bars.find(">SP</text>") != std::string::npos);
  const std::string heat = heatmap_svg("Spearman", {"A", "B"}, {{1, -1}, {-1, 1}});
  CHECK(heat.find("#ff0000") != std::string::npos);
  CHECK(heat.find("#0000ff") != std::string::npos);
}
