#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "mrlab/error.hpp"
#include "mrlab/instance_io.hpp"
#include "test_support.hpp"

using mrlab::ErrorCode;
using mrlab::FamilyDescriptor;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    mrlab::parse_instance(text);
  } catch (const mrlab::Error& e) {
    return e.code();
  }
  return ErrorCode{};  // parsed fine
}

const char* kSmall =
    "# mrlab-instance v1\n"
    "family kind=intervals m=2\n"
    "points 2\n"
    "weights uniform\n"
    "coefficients 0.6 0.8\n"
    "system\n"
    "1 0\n"
    "0 1\n";

}  // namespace

TEST_CASE("parse a small instance") {
  const auto in = mrlab::parse_instance(kSmall);
  CHECK(in.family.size() == 3);
  CHECK(in.system.points() == 2);
  CHECK(in.coeffs(1) == 0.8);
  CHECK(mrlab::operator_value(in.system, in.coeffs, in.family) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("round trip is exact") {
  std::mt19937_64 rng(41);
  for (const auto& desc : {FamilyDescriptor::right_triangles(5), FamilyDescriptor::rectangles(2, 3),
                           FamilyDescriptor::explicit_sets({{{1, 1}, {2, 1}}, {}, {{3, 2}}})}) {
    mrlab::Instance in;
    in.family = mrlab::enumerate_family(desc);
    const auto d = static_cast<Eigen::Index>(in.family.dimension());
    in.system = testing_support::random_system(rng, d + 3, d, true);
    in.coeffs = testing_support::random_unit(rng, d);
    const std::string text = mrlab::format_instance(in);
    CHECK(text.rfind(mrlab::kInstanceHeader, 0) == 0);
    const auto back = mrlab::parse_instance(text);
    CHECK(back.family.descriptor.to_string() == in.family.descriptor.to_string());
    CHECK(back.family.members == in.family.members);
    CHECK(back.system.values == in.system.values);
    CHECK(back.system.weights == in.system.weights);
    CHECK(back.coeffs == in.coeffs);
    CHECK(mrlab::format_instance(back) == text);
  }
}

TEST_CASE("save and load") {
  const auto path = std::filesystem::temp_directory_path() / "mrlab_instance_io_test.txt";
  const auto in = mrlab::parse_instance(kSmall);
  mrlab::save_instance(in, path.string());
  const auto back = mrlab::load_instance(path.string());
  CHECK(back.coeffs == in.coeffs);
  std::filesystem::remove(path);
  try {
    mrlab::load_instance((path.string() + ".missing"));
    FAIL("missing file loaded");
  } catch (const mrlab::Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("error classes") {
  const std::string s = kSmall;
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string t = s;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK(code_of(replace("points 2", "points two")) == ErrorCode::kInvalidArgument);
  CHECK(code_of(replace("system\n", "sistem\n")) == ErrorCode::kInvalidArgument);
  CHECK(code_of(replace("family kind=intervals m=2\n", "")) == ErrorCode::kInvalidArgument);
  CHECK(code_of(replace("v1", "v9")) == ErrorCode::kInvalidArgument);
  CHECK(code_of(replace("kind=intervals", "kind=circles")) == ErrorCode::kInvalidArgument);

  CHECK(code_of(replace("1 0\n0 1", "1 0\n0.5 1")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("weights uniform", "weights 1 -1")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("weights uniform", "weights 1 1 1")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("coefficients 0.6 0.8", "coefficients 0.6")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("0 1\n", "")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("0 1\n", "0 1 2\n")) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("points 2", "points 1").substr(0, s.size() - 4)) == ErrorCode::kInvalidInstance);
  CHECK(code_of(replace("coefficients 0.6 0.8", "coefficients nan 0.8")) == ErrorCode::kInvalidInstance);
}

TEST_CASE("weighted instances validate in the weighted inner product") {
  const std::string text =
      "# mrlab-instance v1\n"
      "family kind=intervals m=1\n"
      "points 2\n"
      "weights 0.5 1.5\n"
      "coefficients 1\n"
      "system\n"
      "1\n"
      "0.5773502691896258\n";
  const auto in = mrlab::parse_instance(text);
  CHECK(mrlab::gram_residual(in.system) <= 1e-15);
}
