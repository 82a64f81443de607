#include <catch2/catch_amalgamated.hpp>

#include <tensorclass/json_io.hpp>
#include <tensorclass/random.hpp>

using namespace tensorclass;

TEST_CASE("tensors round-trip through JSON", "[json]") {
  for (const auto& [name, kind] : catalog_names()) {
    const Tensor t = construct({kind, 3});
    const Json j = tensor_to_json(t);
    const Tensor back = tensor_from_json(Json::parse(j.dump()));
    CHECK(back.shape() == t.shape());
    CHECK(back.entries() == t.entries());
    CHECK(tensor_to_json(back).dump() == j.dump());
  }
  SeededRng rng(1);
  const Tensor g = generic_tensor(random_support(Shape(2, 3, 4), 0.5, rng), 9);
  CHECK(tensor_from_json(tensor_to_json(g)).entries() == g.entries());
}

TEST_CASE("supports omit coefficients", "[json]") {
  const Support s(Shape(2, 2, 1), {{0, 1, 0}, {1, 0, 0}});
  const Json j = support_to_json(s);
  CHECK(j.dump() == R"({"shape":[2,2,1],"entries":[{"idx":[0,1,0]},{"idx":[1,0,0]}]})");
  CHECK(support_from_json(j) == s);
}

TEST_CASE("malformed tensor JSON is rejected", "[json]") {
  auto parse = [](const char* text) { return tensor_from_json(Json::parse(text)); };
  CHECK_THROWS_AS(parse(R"({"entries":[]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2],"entries":[]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[0,1,1],"entries":[]})"), ShapeError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[2,0,0]}]})"), ShapeError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[0,0,0]},{"idx":[0,0,0]}]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[0,0,0],"coef":"0/1"}]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[0,0,0],"coef":3}]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[0,0,0],"coef":"1/0"}]})"), DomainError);
  CHECK_THROWS_AS(parse(R"({"shape":[2,2,2],"entries":[{"idx":[0,0.5,0]}]})"), DomainError);
}

TEST_CASE("witnesses round-trip through JSON", "[json]") {
  const TightWitness w{{{{-1, 0, 1}, {3, 2}, {-2, 7, 9}}}};
  const Json j = witness_to_json(w);
  CHECK(j.dump() == R"({"tauA":[-1,0,1],"tauB":[3,2],"tauC":[-2,7,9]})");
  CHECK(witness_from_json(j).tau == w.tau);
  CHECK_THROWS_AS(witness_from_json(Json::parse(R"({"tauA":[1],"tauB":[1]})")), DomainError);
  CHECK_THROWS_AS(witness_from_json(Json::parse(R"({"tauA":[1],"tauB":[1],"tauC":["x"]})")), DomainError);
}

TEST_CASE("census report layout", "[json]") {
  const Json j = census_to_json(census_m3());
  CHECK(j["counts"].dump() == R"({"maximal":144,"concise":80,"orbits":13})");
  CHECK(j["orbits"].size() == 13);
}

TEST_CASE("file helpers report I/O failures", "[json]") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.json", "{}"), IoError);
}
