#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "amdahl/format.hpp"

using namespace amdahl;

TEST_CASE("numbers render with nine significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1.00000000");
  CHECK(format_number(-1.0) == "-1.00000000");
  CHECK(format_number(0.808) == "0.808000000");
  CHECK(format_number(3.25e-8) == "3.25000000e-08");
  CHECK(format_number(14.7e-8) == "1.47000000e-07");
  CHECK(format_number(123456.5) == "123456.500");
  CHECK(format_number(0.001) == "0.00100000000");
  CHECK(format_number(0.0009999) == "9.99900000e-04");
  CHECK(format_number(999999.0) == "999999.000");
  CHECK(format_number(1000000.0) == "1.00000000e+06");
  CHECK(format_number(4.155e17) == "4.15500000e+17");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("formatting is stable across repeated calls") {
  const std::array<double, 6> samples = {0.74,        3.01,  1.0372e-13,
                                         6.68e2,      5e-8,  1.23456789e-7};
  for (double x : samples) {
    CHECK(format_number(x) == format_number(x));
  }
}

TEST_CASE("digest matches the reference fnv-1a vectors") {
  // Widely published test vectors for 64-bit FNV-1a.
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("json writer produces canonical nesting and escaping") {
  JsonWriter w;
  w.begin_object();
  w.key("command");
  w.value_string("alpha");
  w.key("quote");
  w.value_string("say \"hi\"\n");
  w.key("results");
  w.begin_object();
  w.key("value");
  w.value_number(0.5);
  w.key("count");
  w.value_integer(7);
  w.key("flag");
  w.value_bool(true);
  w.key("missing");
  w.value_null();
  w.end_object();
  w.key("warnings");
  w.begin_array();
  w.value_string("w1");
  w.value_string("w2");
  w.end_array();
  w.end_object();

  CHECK(w.str() ==
        "{\"command\":\"alpha\",\"quote\":\"say \\\"hi\\\"\\n\","
        "\"results\":{\"value\":0.500000000,\"count\":7,\"flag\":true,"
        "\"missing\":null},\"warnings\":[\"w1\",\"w2\"]}");
}

TEST_CASE("json escaping covers control characters") {
  CHECK(json_escape("tab\tand\x01") == "tab\\tand\\u0001");
  CHECK(json_escape("back\\slash") == "back\\\\slash");
}

TEST_CASE("csv rows follow quoting rules") {
  const std::vector<std::string> plain = {"a", "b", "c"};
  CHECK(csv_row(plain) == "a,b,c\n");

  const std::vector<std::string> tricky = {"a,b", "say \"hi\"", "line\nbreak"};
  CHECK(csv_row(tricky) == "\"a,b\",\"say \"\"hi\"\"\",\"line\nbreak\"\n");

  const std::vector<std::string> semi = {"a", "b;c"};
  CHECK(csv_row(semi, ';') == "a;\"b;c\"\n");
}
