#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "sfc/errors.hpp"
#include "sfc/io.hpp"
#include "sfc/randomgen.hpp"

using namespace sfc;
using nlohmann::json;

TEST_CASE("operator documents round-trip in both algebras") {
  Rng rng(3);
  for (const Algebra& alg : {Algebra::clifford(2), Algebra::quaternions()}) {
    const ParavectorOperator T = random_operator(alg, 3, rng);
    const json j = io::operator_to_json(T);
    CHECK(j.at("d") == 3);
    CHECK(j.at("n") == alg.point_dim() - 1);
    CHECK(j.at("components").size() ==
          static_cast<std::size_t>(alg.point_dim()));
    CHECK(j.contains("algebra") == alg.is_quaternionic());

    const ParavectorOperator back = io::operator_from_json(j);
    CHECK(back.algebra() == alg);
    for (int c = 0; c < alg.point_dim(); ++c)
      CHECK((back.component(c) - T.component(c)).norm() == 0.0);

    // Serialization is stable: dumping the round-trip matches byte for byte.
    CHECK(io::operator_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("malformed operator documents are rejected") {
  const json good = io::operator_to_json(
      ParavectorOperator(Algebra::clifford(1),
                         {Eigen::MatrixXd::Identity(2, 2),
                          Eigen::MatrixXd::Zero(2, 2)}));
  CHECK_NOTHROW((void)io::operator_from_json(good));

  json j = good;
  j.erase("components");
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);

  j = good;
  j["components"].push_back(j["components"][0]);
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);

  j = good;
  j["components"][0].push_back(1.0);
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);

  j = good;
  j["n"] = 7;
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);

  j = good;
  j["algebra"] = "octonion";
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);

  j = good;
  j["algebra"] = "quaternion";  // n = 1 contradicts quaternionic scalars
  CHECK_THROWS_AS((void)io::operator_from_json(j), InputError);
}

TEST_CASE("spectrum documents expose source and spheres") {
  Spectrum s;
  s.spheres.push_back({0.0, 1.0, 4});
  const json j = io::spectrum_to_json(s);
  CHECK(j.dump() == R"({"source":"S","spheres":[{"mult":4,"u":0.0,"v":1.0}]})");
  const Spectrum back = io::spectrum_from_json(j);
  REQUIRE(back.spheres.size() == 1);
  CHECK(back.spheres[0].u == 0.0);
  CHECK(back.spheres[0].v == 1.0);
  CHECK(back.spheres[0].multiplicity == 4);

  CHECK_THROWS_AS((void)io::spectrum_from_json(json::object()), InputError);
  CHECK_THROWS_AS(
      (void)io::spectrum_from_json(json::parse(R"({"spheres":[{"u":0}]})")),
      InputError);
}

TEST_CASE("function descriptors build every shipped kind") {
  const Algebra alg = Algebra::clifford(2);
  Rng rng(9);
  const Paravector x = random_paravector(alg, rng);

  const SliceFunction e = io::function_from_json(alg, json{{"named", "exp"}});
  CHECK((e.eval(x) - SliceFunction::exponential(alg).eval(x)).norm() == 0.0);

  const SliceFunction p = io::function_from_json(
      alg, json::parse(R"({"kind":"polynomial","coeffs":[1,0,2]})"));
  CHECK((p.eval(x) - SliceFunction::polynomial(alg, {1.0, 0.0, 2.0}).eval(x))
            .norm() == 0.0);

  const SliceFunction r = io::function_from_json(
      alg, json::parse(R"({"kind":"rational","num":[1],"den":[2,1]})"));
  CHECK((r.eval(x) - SliceFunction::rational(alg, {1.0}, {2.0, 1.0}).eval(x))
            .norm() == 0.0);

  json sj;
  sj["kind"] = "series";
  sj["side"] = "right";
  sj["series"] = json::array();
  sj["series"].push_back(io::multivector_to_json(random_multivector(alg, rng)));
  sj["series"].push_back(io::multivector_to_json(random_multivector(alg, rng)));
  const SliceFunction s = io::function_from_json(alg, sj);
  CHECK(s.side() == FunctionSide::right);

  CHECK_THROWS_AS((void)io::function_from_json(alg, json{{"named", "tan"}}),
                  InputError);
  CHECK_THROWS_AS((void)io::function_from_json(alg, json{{"kind", "spline"}}),
                  InputError);
}

TEST_CASE("calculus results serialize with their estimates") {
  const Algebra alg = Algebra::clifford(1);
  CalculusResult r{OperatorMatrix::identity(alg, 2), 512, 3e-12};
  const json j = io::calculus_to_json(r);
  CHECK(j.at("nodes") == 512);
  CHECK(j.at("err_estimate") == 3e-12);
  CHECK(io::matrix_from_json(j.at("value")) == r.value.matrix());
}

TEST_CASE("contour and projector reports are plain CSV") {
  const Algebra alg = Algebra::clifford(2);
  Spectrum s;
  s.spheres.push_back({0.0, 1.0, 1});
  const Contour c =
      build_contour(s, {0}, ImaginaryUnit::axis(alg, 1), 0.25, 8);
  const std::string csv = io::contour_to_csv(c);

  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "circle_id,theta,re,im_0,im_1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2 * 8);

  const std::string rep = io::projectors_to_csv(
      {{{0, 2}, 1e-12, 2e-12}, {{1}, 3e-12, 4e-12}});
  CHECK(rep ==
        "subset,idempotency,commutation\n"
        "0|2,9.9999999999999998e-13,2e-12\n"
        "1,3.0000000000000001e-12,3.9999999999999999e-12\n");
}

TEST_CASE("json files load with diagnostics") {
  const std::string good = "/tmp/sfc_io_good.json";
  const std::string bad = "/tmp/sfc_io_bad.json";
  io::save_text_file(good, R"({"a": 1})");
  io::save_text_file(bad, "{nope");
  CHECK(io::load_json_file(good).at("a") == 1);
  CHECK_THROWS_AS((void)io::load_json_file(bad), InputError);
  CHECK_THROWS_AS((void)io::load_json_file("/tmp/sfc_io_missing.json"),
                  InputError);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}
