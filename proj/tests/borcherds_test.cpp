#include "bll/borcherds.hpp"

#include "doctest.h"

#include <set>

using namespace bll;

namespace {

std::vector<std::string> keys_of(const nlohmann::ordered_json& j) {
  std::vector<std::string> out;
  for (const auto& item : j.items()) out.push_back(item.key());
  return out;
}

Rat chart_norm(const QVec& x) {
  Rat s = 0;
  for (const auto& c : x) s += c * c;
  return s;
}

}  // namespace

TEST_CASE("ambient lattice of a degree 2g-2 polarization") {
  for (int g : {2, 5, 11, 22}) {
    Lattice L = polarized_k3_lattice(g);
    CHECK(L.rank() == 21);
    Signature sig = signature(L);
    CHECK(sig.pos == 2);
    CHECK(sig.neg == 19);
    DiscriminantData d = discriminant(L);
    CHECK(d.order == 2 * g - 2);
    CHECK(d.invariant_factors.size() == 1);  // cyclic
    CHECK(d.invariant_factors[0] == 2 * g - 2);
  }
  CHECK_THROWS_WITH_AS(polarized_k3_lattice(1), "genus must be at least 2",
                       invalid_input);
}

TEST_CASE("complement report for the genus 6 catalog vector") {
  QVec v{Rat(3), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  QuasiPullbackReport rep = quasi_pullback(6, v);
  CHECK(rep.g == 6);
  CHECK(rep.v_basis == IVec{0, 0, 0, 0, 0, -1, 0, 2});
  CHECK(rep.K.rank() == 7);
  CHECK_FALSE(rep.K.degenerate);
  CHECK(rep.r == 60);
  CHECK(rep.k == 42);
  CHECK(rep.n == 23);
  CHECK(type_string(rep.root_type) == "D6");
  CHECK(rep.is_cusp);
  CHECK(rep.disc_order == 10);
  CHECK(rep.crosscheck_passed);
  REQUIRE(rep.dim_vg.has_value());
  CHECK(*rep.dim_vg == 23);
  // basis coordinates reproduce the chart vector
  CHECK(e8_basis_to_chart(rep.v_basis) == v);
}

TEST_CASE("report serialization is byte-stable") {
  QVec v{Rat(3), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  nlohmann::ordered_json j = report_json(quasi_pullback(6, v));
  CHECK(j.dump() ==
        "{\"g\":6,\"v_chart\":[\"3\",\"1\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\"],"
        "\"v_basis\":[0,0,0,0,0,-1,0,2],\"gram_K\":[[-2,1,0,1,0,0,0],[1,-2,1,0,"
        "0,0,0],[0,1,-2,0,-2,1,0],[1,0,0,-2,0,0,0],[0,0,-2,0,-14,6,-6],[0,0,1,"
        "0,6,-4,9],[0,0,0,0,-6,9,-34]],\"r\":60,\"k\":42,\"n\":23,\"root_type\""
        ":\"D6\",\"is_cusp\":true,\"disc_order\":10,\"crosscheck\":true}");
}

TEST_CASE("each input test fails with its own message") {
  QVec good5{Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(1, 2),
             Rat(1, 2), Rat(1, 2), Rat(1, 2), Rat(5, 2)};
  CHECK_NOTHROW(quasi_pullback(5, good5));
  CHECK_THROWS_WITH_AS(quasi_pullback(1, good5), "genus must be at least 2",
                       invalid_input);
  CHECK_THROWS_WITH_AS(quasi_pullback(6, QVec{Rat(1)}),
                       "chart vector must have 8 coordinates", invalid_input);
  QVec third(8, Rat(0));
  third[0] = Rat(1, 3);
  CHECK_THROWS_WITH_AS(quasi_pullback(6, third),
                       "coordinates must be integers or half-integers",
                       invalid_input);
  QVec mixed(8, Rat(0));
  mixed[0] = Rat(1, 2);
  CHECK_THROWS_WITH_AS(quasi_pullback(6, mixed),
                       "coordinates must be all integral or all half-integral",
                       invalid_input);
  QVec odd(8, Rat(0));
  odd[0] = Rat(1);
  CHECK_THROWS_WITH_AS(quasi_pullback(6, odd),
                       "coordinate sum must be an even integer", invalid_input);
  CHECK_THROWS_WITH_AS(quasi_pullback(6, QVec(8, Rat(0))),
                       "v must be a nonzero vector", invalid_input);
  QVec short_norm(8, Rat(0));
  short_norm[0] = Rat(2);  // sum of squares 4, genus 6 needs 10
  CHECK_THROWS_WITH_AS(quasi_pullback(6, short_norm),
                       "norm test failed: sum of squares is 4, expected 10",
                       invalid_input);
  QVec imprim(8, Rat(0));
  imprim[0] = Rat(2);
  imprim[1] = Rat(2);  // norm 8 fits genus 5 but gcd is 2
  CHECK_THROWS_WITH_AS(quasi_pullback(5, imprim),
                       "primitivity test failed: coordinate gcd is 2",
                       invalid_input);
}

TEST_CASE("catalog vectors: one per genus, right norm, primitive") {
  const auto& refs = reference_vectors();
  REQUIRE(refs.size() == 21);
  std::set<int> reconstructed;
  for (size_t i = 0; i < refs.size(); ++i) {
    const ReferenceVector& rv = refs[i];
    CHECK(rv.g == int(i) + 2);
    CHECK(chart_norm(rv.v_chart) == 2 * rv.g - 2);
    CHECK(is_primitive(make_E8(), e8_chart_to_basis(rv.v_chart)));
    if (rv.reconstructed) reconstructed.insert(rv.g);
  }
  CHECK(reconstructed == std::set<int>{2, 3, 4, 5, 7, 8, 11, 16});
  CHECK(reference_vector(13).g == 13);
  CHECK_THROWS_AS(reference_vector(23), invalid_input);
  CHECK_THROWS_AS(reference_vector(1), invalid_input);
}

TEST_CASE("stored dimensions cover genera 3..10 only") {
  std::map<int, int> expected{{3, 35}, {4, 30}, {5, 21}, {6, 23},
                              {7, 16}, {8, 15}, {9, 14}, {10, 14}};
  for (int g = 2; g <= 22; ++g) {
    auto d = dim_vg(g);
    if (expected.count(g)) {
      REQUIRE(d.has_value());
      CHECK(*d == expected[g]);
    } else {
      CHECK_FALSE(d.has_value());
    }
  }
}

TEST_CASE("full table reproduces the known row data") {
  std::vector<QuasiPullbackReport> table = reference_table();
  const auto& rows = known_rows();
  REQUIRE(table.size() == 21);
  REQUIRE(rows.size() == 21);
  for (size_t i = 0; i < 21; ++i) {
    const QuasiPullbackReport& rep = table[i];
    const KnownRow& row = rows[i];
    CHECK(rep.g == row.g);
    CHECK(rep.r == row.r);
    CHECK(rep.n == row.n);
    CHECK(type_string(rep.root_type) == row.root_type);
    CHECK(rep.k == rep.n + 19);
    CHECK(rep.is_cusp);
    CHECK(rep.disc_order == 2 * rep.g - 2);
    CHECK(rep.crosscheck_passed);
  }
}

TEST_CASE("threaded table equals the serial one") {
  std::vector<QuasiPullbackReport> serial = reference_table();
  std::vector<QuasiPullbackReport> par = reference_table({}, 3);
  REQUIRE(par.size() == serial.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(par[i].g == serial[i].g);
    CHECK(par[i].r == serial[i].r);
    CHECK(par[i].n == serial[i].n);
    CHECK(par[i].v_basis == serial[i].v_basis);
    CHECK(type_string(par[i].root_type) == type_string(serial[i].root_type));
  }
}

TEST_CASE("coset ledgers: six genera carry entries, the rest are empty") {
  // every nonzero entry in range happens to sit at q = 1/2, x = -1/2
  std::map<int, std::vector<std::pair<Int, Int>>> expected{
      {3, {{2, 14}}},  {7, {{2, 10}}}, {9, {{4, 7}}},
      {11, {{2, 6}}},  {15, {{2, 8}}}, {19, {{6, 5}, {2, 4}}}};
  for (int g = 2; g <= 22; ++g) {
    const QVec& v = reference_vector(g).v_chart;
    HeegnerLedger led = heegner_ledger(g, v);
    CHECK(led.g == g);
    CHECK(led.v_chart == v);
    auto it = expected.find(g);
    if (it == expected.end()) {
      CHECK(led.entries.empty());
      REQUIRE(led.f_divisor_entries.size() == 1);
    } else {
      DiscriminantData d =
          discriminant(quasi_pullback(g, v).K.as_lattice());
      REQUIRE(led.entries.size() == it->second.size());
      for (size_t i = 0; i < led.entries.size(); ++i) {
        const HeegnerEntry& e = led.entries[i];
        CHECK(d.order_of(e.lambda) == it->second[i].first);
        CHECK(e.q_lambda == Rat(1, 2));
        CHECK(e.x == Rat(-1, 2));
        CHECK(e.multiplicity == it->second[i].second);
        CHECK_FALSE(lex_less(d.negate(e.lambda), e.lambda));
      }
      CHECK(led.f_divisor_entries.size() == led.entries.size() + 1);
    }
    // divisor rendering always leads with the distinguished component
    const FDivisorEntry& head = led.f_divisor_entries[0];
    CHECK(head.x == Rat(-1));
    CHECK(head.multiplicity == 1);
    for (const auto& c : head.lambda) CHECK(c == 0);
  }
}

TEST_CASE("coset multiplicity is symmetric under negation") {
  const QVec& v = reference_vector(9).v_chart;
  QuasiPullbackReport rep = quasi_pullback(9, v);
  Lattice KL = rep.K.as_lattice();
  DiscriminantData d = discriminant(KL);
  IVec lambda{4};
  IVec neg = d.negate(lambda);
  CHECK(neg == IVec{12});
  Rat q = d.q_of(lambda);
  CHECK(q == d.q_of(neg));
  CHECK(count_of_norm(KL, -2 * q, d.lift(lambda)) == 7);
  CHECK(count_of_norm(KL, -2 * q, d.lift(neg)) == 7);
}

TEST_CASE("ledger serialization is byte-stable") {
  nlohmann::ordered_json j =
      ledger_json(heegner_ledger(3, reference_vector(3).v_chart));
  CHECK(j.dump() ==
        "{\"g\":3,\"v_chart\":[\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"0\",\"2\"]"
        ",\"entries\":[{\"lambda\":[2],\"q_lambda\":\"1/2\",\"x\":\"-1/2\","
        "\"multiplicity\":14}],\"f_divisor_entries\":[{\"lambda\":[0],\"x\":"
        "\"-1\",\"multiplicity\":1},{\"lambda\":[2],\"x\":\"-1/2\","
        "\"multiplicity\":14}]}");
}

TEST_CASE("orbit counts over the small-genus range") {
  OrbitCount o2 = eichler_minus2_orbits(2);
  CHECK(o2.divisibilities == std::vector<Int>{1, 2});
  CHECK(o2.count == 2);
  for (int g : {3, 4, 5, 7, 9, 13}) {
    OrbitCount oc = eichler_minus2_orbits(g);
    CHECK(oc.divisibilities == std::vector<Int>{1});
    CHECK(oc.count == 1);
  }
  // the divisibility 2 class appears exactly when an order 2 coset with
  // q = 3/4 exists, which over this family means g = 2 mod 4
  for (int g = 2; g <= 30; ++g) {
    OrbitCount oc = eichler_minus2_orbits(g);
    CHECK(oc.count == (g % 4 == 2 ? 2 : 1));
    CHECK(oc.count == Int(oc.divisibilities.size()));
  }
  CHECK(orbits_json(eichler_minus2_orbits(2)).dump() ==
        "{\"g\":2,\"divisibilities\":[1,2],\"count\":2}");
}

TEST_CASE("exhaustive vector search at the lowest genus") {
  SearchResult sr = search_v(2, SearchObjective::minimize_roots);
  CHECK(sr.g == 2);
  CHECK(sr.shell_count == 240);
  CHECK(sr.candidates == 120);
  REQUIRE(sr.classes.size() == 1);
  CHECK(sr.classes[0].r == 126);
  CHECK(type_string(sr.classes[0].root_type) == "E7");
  CHECK(sr.classes[0].members == 120);
}

TEST_CASE("search at genus 6 finds the catalog class") {
  SearchResult sr = search_v(6, SearchObjective::minimize_roots);
  Int total_members = 0;
  bool found = false;
  for (const auto& c : sr.classes) {
    total_members += c.members;
    if (c.r == 60 && type_string(c.root_type) == "D6") found = true;
  }
  CHECK(found);
  CHECK(total_members == sr.candidates);
  // ranking follows the objective
  for (size_t i = 1; i < sr.classes.size(); ++i)
    CHECK(sr.classes[i - 1].r <= sr.classes[i].r);
  SearchResult mx = search_v(6, SearchObjective::maximize_roots);
  for (size_t i = 1; i < mx.classes.size(); ++i)
    CHECK(mx.classes[i - 1].r >= mx.classes[i].r);
  CHECK(mx.classes.front().r == sr.classes.back().r);
}

TEST_CASE("machine renderings keep their key order") {
  QVec v{Rat(3), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  CHECK(keys_of(report_json(quasi_pullback(6, v))) ==
        std::vector<std::string>{"g", "v_chart", "v_basis", "gram_K", "r", "k",
                                 "n", "root_type", "is_cusp", "disc_order",
                                 "crosscheck"});
  nlohmann::ordered_json led = ledger_json(heegner_ledger(6, v));
  CHECK(keys_of(led) == std::vector<std::string>{"g", "v_chart", "entries",
                                                 "f_divisor_entries"});
  CHECK(keys_of(orbits_json(eichler_minus2_orbits(2))) ==
        std::vector<std::string>{"g", "divisibilities", "count"});
  nlohmann::ordered_json sj = search_json(search_v(2, SearchObjective::minimize_roots));
  CHECK(keys_of(sj) == std::vector<std::string>{"g", "objective", "shell_count",
                                                "candidates", "classes"});
  CHECK(keys_of(sj["classes"][0]) ==
        std::vector<std::string>{"v_chart", "v_basis", "r", "root_type",
                                 "members"});
}
