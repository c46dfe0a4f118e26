#include <paekit/error.hpp>

#include <gtest/gtest.h>

#include <set>
#include <string>

using namespace paekit;

TEST(ErrorCodes, NamesAreUniqueAndClassesTotal) {
  std::set<std::string> names;
  for (int c = 0; c <= static_cast<int>(ErrorCode::DegenerateDirection); ++c) {
    const auto code = static_cast<ErrorCode>(c);
    const std::string name(error_name(code));
    EXPECT_FALSE(name.empty());
    EXPECT_TRUE(names.insert(name).second) << name;
    const auto cls = error_class(code);
    EXPECT_TRUE(cls == ErrorClass::Data || cls == ErrorClass::Numeric);
  }
  EXPECT_EQ(error_class(ErrorCode::NullTextProjection), ErrorClass::Numeric);
  EXPECT_EQ(error_class(ErrorCode::SchemaError), ErrorClass::Data);
}

TEST(ErrorCodes, ErrorCarriesCode) {
  try {
    fail(ErrorCode::RankDeficient, "boom");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    EXPECT_EQ(e.name(), "RankDeficient");
    EXPECT_STREQ(e.what(), "RankDeficient: boom");
    EXPECT_EQ(e.message(), "boom");
  }
}
