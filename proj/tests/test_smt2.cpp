#include <set>

#include "doctest.h"
#include "test_util.hpp"
#include "tick/encode.hpp"
#include "tick/smt2.hpp"

using namespace tick;

namespace {

std::string encode_sample(const std::string& name, int unroll_depth = 1) {
  auto prog = tick_test::parse_or_throw(
      tick_test::read_file(tick_test::samples_dir() + "/" + name));
  auto up = unroll(prog, unroll_depth);
  Encoder enc(up);
  std::vector<Formula> formulas = enc.gen_sched_parts();
  std::vector<PropertyInstance> instances;
  for (const auto& p : prog.properties) {
    auto more = instantiate_property(up, p);
    instances.insert(instances.end(), more.begin(), more.end());
  }
  formulas.push_back(neg(enc.gen_property(instances)));
  return serialize(formulas, up);
}

}  // namespace

TEST_CASE("variable layout covers every variable once") {
  auto up = unroll(tick_test::parse_or_throw(tick_test::kToy), 1);
  auto layout = variable_layout(up);
  // 2 threads x 4 rounds of pc, Y and X for rounds 1..4, 4 E variables.
  CHECK(layout.size() == 8 + 4 + 4 + 4);
  std::set<std::string> names;
  for (const auto& v : layout) names.insert(var_name(v));
  CHECK(names.size() == layout.size());
  CHECK(names.count("pc_1_1") == 1);
  CHECK(names.count("Y_4") == 1);
  CHECK(names.count("X_4") == 1);
  CHECK(names.count("E_2_2") == 1);
}

TEST_CASE("serialization is deterministic") {
  CHECK(encode_sample("toy.tick") == encode_sample("toy.tick"));
  CHECK(encode_sample("pipeline_k2.tick") == encode_sample("pipeline_k2.tick"));
}

TEST_CASE("toy encoding matches the golden file") {
  const std::string golden = tick_test::read_file(tick_test::golden_dir() + "/toy.smt2");
  CHECK(encode_sample("toy.tick") == golden);
}

TEST_CASE("distinct programs serialize to distinct text") {
  std::set<std::string> texts;
  texts.insert(encode_sample("toy.tick"));
  texts.insert(encode_sample("toy_slow.tick"));
  texts.insert(encode_sample("pipeline_k2.tick"));
  texts.insert(encode_sample("loop.tick", 2));
  texts.insert(encode_sample("conflict.tick", 2));
  CHECK(texts.size() == 5);
}

TEST_CASE("negative constants render in SMT form") {
  CHECK(to_sexpr(cnum(-3)) == "(- 3)");
  CHECK(to_sexpr(cnum(0)) == "0");
}
