#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "newtongraph/error.hpp"
#include "newtongraph/io.hpp"
#include "newtongraph/thurston.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace newtongraph;
using namespace testing;

namespace {

MulticurveSpec spec_of(const RationalMatrix& a) {
  // Entries are sums of 1/degree; write each as numerator copies of 1/den.
  MulticurveSpec s;
  s.classes = static_cast<int>(a.size());
  s.lifts.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (long long n = 0; n < a[i][j].numerator(); ++n)
        s.lifts[j].push_back({static_cast<int>(i), static_cast<int>(a[i][j].denominator())});
  return s;
}

}  // namespace

TEST_CASE("hand examples") {
  MulticurveSpec half{1, {{{0, 2}}}};
  auto t = transition_matrix(half);
  CHECK(t.entries[0][0] == Rational(1, 2));
  CHECK(t.lambda == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t.irreducible);
  CHECK_FALSE(is_irreducible_obstruction(half));

  MulticurveSpec swap{2, {{{1, 1}}, {{0, 1}}}};
  t = transition_matrix(swap);
  CHECK(t.entries == RationalMatrix{{0, 1}, {1, 0}});
  CHECK(std::abs(t.lambda - 1.0) < 1e-10);
  CHECK(t.irreducible);
  CHECK(is_irreducible_obstruction(swap));

  MulticurveSpec sixths{1, {{{0, 2}, {0, 3}}}};
  t = transition_matrix(sixths);
  CHECK(t.entries[0][0] == Rational(5, 6));
  CHECK(std::abs(t.lambda - 5.0 / 6.0) < 1e-12);
  CHECK_FALSE(is_irreducible_obstruction(sixths));

  CHECK(std::abs(leading_eigenvalue(std::vector<std::vector<double>>{{0, 2}, {0.5, 0}}) - 1.0) < 1e-10);
  CHECK_FALSE(is_irreducible(std::vector<std::vector<double>>{{1, 1}, {0, 1}}));
  CHECK_FALSE(is_irreducible(std::vector<std::vector<double>>{{0}}));

  MulticurveSpec none{1, {{{std::nullopt, 1}}}};
  CHECK(transition_matrix(none).entries[0][0] == Rational(0));
}

TEST_CASE("invalid specs") {
  MulticurveSpec bad{1, {{{3, 1}}}};
  CHECK_THROWS_AS(check(bad), Error);
  MulticurveSpec zero{1, {{{0, 0}}}};
  CHECK_THROWS_AS(transition_matrix(zero), Error);
  CHECK_THROWS_AS(multicurve_from_json(nlohmann::json::parse(R"({"classes": 1, "lifts": {"0": [{"target": 2}]}})")),
                  Error);
}

TEST_CASE("spec JSON") {
  const auto swap = multicurve_from_json(read_json_file(testing::data_path("swap.json")));
  CHECK(swap.classes == 2);
  CHECK(is_irreducible_obstruction(swap));
  const auto back = multicurve_from_json(to_json(swap));
  CHECK(transition_entries(back) == transition_entries(swap));
  const auto half = multicurve_from_json(read_json_file(testing::data_path("half.json")));
  CHECK(transition_entries(half)[0][0] == Rational(1, 2));
}

TEST_CASE("characteristic polynomial oracle on random specs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 4;
    const auto spec = random_spec(rng, m);
    const auto t = transition_matrix(spec);
    CAPTURE(to_json(spec).dump());
    CHECK(std::abs(t.lambda - std::max(0.0, largest_real_root(characteristic(t.entries)))) < 1e-8);
    std::vector<std::vector<int>> s(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s[i][j] = t.entries[i][j] > 0;
    CHECK(t.irreducible == irreducible_by_powers(s));
    // denominators divide the lcm of the lift degrees
    long long l = 1;
    for (const auto& lifts : spec.lifts)
      for (const auto& x : lifts) l = std::lcm(l, static_cast<long long>(x.degree));
    for (const auto& row : t.entries)
      for (const auto& v : row) CHECK(l % v.denominator() == 0);
  }
}

TEST_CASE("matrices with entries in {0, 1/3, 1/2, 1, 2}") {
  std::mt19937 rng(77);
  const Rational values[] = {0, Rational(1, 3), Rational(1, 2), 1, 2};
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 4;
    RationalMatrix a(m, std::vector<Rational>(m));
    for (auto& row : a)
      for (auto& v : row) v = values[rng() % 5];
    CHECK(std::abs(leading_eigenvalue(a) - std::max(0.0, largest_real_root(characteristic(a)))) < 1e-8);
    CHECK(transition_entries(spec_of(a)) == a);
  }
}

TEST_CASE("irreducibility on random 5x5 supports") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<int>> s(5, std::vector<int>(5));
    std::vector<std::vector<double>> a(5, std::vector<double>(5));
    const unsigned density = 2 + trial % 5;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        s[i][j] = rng() % 10 < density;
        a[i][j] = s[i][j];
      }
    CHECK(is_irreducible(a) == irreducible_by_powers(s));
  }
}
