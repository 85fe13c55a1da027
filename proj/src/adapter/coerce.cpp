// Copyright 2026 The trajbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trajbench/adapter/coerce.hpp"

#include <charconv>
#include <cmath>

#include "trajbench/error.hpp"

namespace trajbench::adapter {
namespace {

using nlohmann::json;

/// Either a parsed vector or the defect that prevents one.
struct Parsed {
  std::vector<double> values;
  std::optional<FallbackReason> defect;
};

Parsed defect(FallbackReason r) { return {{}, r}; }

Parsed from_json_array(const json& arr) {
  bool non_scalar = false;
  bool non_numeric = false;
  Parsed out;
  for (const auto& x : arr) {
    if (x.is_array() || x.is_object()) {
      non_scalar = true;
    } else if (!x.is_number()) {
      non_numeric = true;
    } else {
      double v = x.get<double>();
      if (!std::isfinite(v)) non_numeric = true;
      out.values.push_back(v);
    }
  }
  if (non_scalar) return defect(FallbackReason::kNonScalarElement);
  if (non_numeric) return defect(FallbackReason::kNonNumeric);
  return out;
}

Parsed from_json_value(const json& v) {
  if (v.is_array()) return from_json_array(v);
  if (v.is_number()) return from_json_array(json::array({v}));
  if (v.is_object()) return defect(FallbackReason::kNonScalarElement);
  return defect(FallbackReason::kNonNumeric);
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

Parsed from_text(std::string_view raw) {
  std::string_view text = trim(raw);
  if (text.empty()) return defect(FallbackReason::kMixedText);

  json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!parsed.is_discarded()) {
    if (parsed.is_object()) return defect(FallbackReason::kMixedText);
    return from_json_value(parsed);
  }

  const bool bracketed = text.front() == '[' && text.back() == ']';
  if (bracketed) text = text.substr(1, text.size() - 2);
  if (text.find_first_of("[]") != std::string_view::npos) {
    // Nested lists are structurally valid but not scalar; stray brackets are prose.
    return defect(bracketed && trim(text).front() == '[' ? FallbackReason::kNonScalarElement
                                                         : FallbackReason::kMixedText);
  }

  Parsed out;
  std::size_t i = 0;
  bool expect_value = true;
  bool non_finite = false;
  while (i < text.size()) {
    if (is_separator(text[i])) {
      if (text[i] == ',') {
        if (expect_value) return defect(FallbackReason::kMixedText);
        expect_value = true;
      }
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_separator(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    double v = 0.0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
      return defect(FallbackReason::kMixedText);
    if (!std::isfinite(v)) non_finite = true;
    out.values.push_back(v);
    expect_value = false;
    i = j;
  }
  if (out.values.empty()) return defect(FallbackReason::kMixedText);
  if (expect_value) return defect(FallbackReason::kMixedText);  // trailing comma
  if (non_finite) return defect(FallbackReason::kNonNumeric);
  return out;
}

}  // namespace

std::string to_string(FallbackReason r) {
  switch (r) {
    case FallbackReason::kWrongLength: return "wrong_length";
    case FallbackReason::kNonNumeric: return "non_numeric";
    case FallbackReason::kMixedText: return "mixed_text";
    case FallbackReason::kNonScalarElement: return "non_scalar_element";
    case FallbackReason::kAdapterError: return "adapter_error";
  }
  return "adapter_error";
}

FallbackReason fallback_reason_from_string(const std::string& s) {
  for (auto r : kAllFallbackReasons)
    if (to_string(r) == s) return r;
  throw Error("unknown fallback reason '" + s + "'");
}

CoercionOutcome fallback_outcome(std::size_t expected_dim, FallbackReason reason,
                                 Xoshiro256StarStar& rng) {
  CoercionOutcome out;
  out.action.resize(expected_dim);
  for (auto& v : out.action) v = rng.uniform01();
  out.used_fallback = true;
  out.reason = reason;
  return out;
}

CoercionOutcome coerce_response(const AdapterResponse& response, std::size_t expected_dim,
                                Xoshiro256StarStar& rng) {
  Parsed parsed;
  if (const auto* a = std::get_if<ActionPayload>(&response.payload))
    parsed = from_json_value(a->values);
  else if (const auto* t = std::get_if<TextPayload>(&response.payload))
    parsed = from_text(t->text);
  else
    parsed = defect(FallbackReason::kAdapterError);

  if (!parsed.defect && parsed.values.size() != expected_dim)
    parsed.defect = FallbackReason::kWrongLength;
  if (parsed.defect) return fallback_outcome(expected_dim, *parsed.defect, rng);
  return {std::move(parsed.values), false, std::nullopt};
}

}  // namespace trajbench::adapter
