#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amdahl {

/// Renders x with 9 significant digits. Scientific notation for
/// |x| < 1e-3 or |x| >= 1e6, fixed otherwise; locale-independent.
/// Non-finite values render as "inf", "-inf", "nan".
std::string format_number(double x);

/// FNV-1a 64-bit content hash, 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Minimal deterministic JSON emitter: explicit structure, insertion order
/// preserved, numbers through format_number (non-finite becomes null).
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value_string(std::string_view s);
  JsonWriter& value_number(double x);
  JsonWriter& value_integer(std::uint64_t v);
  JsonWriter& value_bool(bool b);
  JsonWriter& value_null();

  const std::string& str() const noexcept { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string json_escape(std::string_view s);

/// One newline-terminated CSV row from already-rendered cells
/// (quotes cells that need it).
std::string csv_row(std::span<const std::string> cells, char delimiter = ',');

}  // namespace amdahl
