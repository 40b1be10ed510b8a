#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "dspace/elem.hpp"

namespace dspace {

enum class Verdict { pass, fail, bounded };

const char* verdict_name(Verdict v);

// A boolean answer that may only hold up to a sampling bound.
struct Judgement {
  bool value = true;
  bool exact = true;
  std::size_t bound = 0;

  static Judgement sure(bool v) { return {v, true, 0}; }
  static Judgement sampled(bool v, std::size_t n) { return {v, false, n}; }
  explicit operator bool() const { return value; }
};

Judgement operator&&(const Judgement& a, const Judgement& b);

struct Check {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::size_t bound = 0;
  std::string detail;
  json counterexample;  // null when absent
};

class Report {
 public:
  explicit Report(std::string title = {}) : title_(std::move(title)) {}

  Check& add(std::string name, Verdict v, std::string detail = {},
             json counterexample = nullptr, std::size_t bound = 0);
  Check& pass(std::string name, std::string detail = {});
  Check& fail(std::string name, std::string detail, json counterexample = nullptr);
  Check& bounded(std::string name, std::size_t bound, std::string detail = {});
  // pass, bounded or fail depending on the judgement.
  Check& judge(std::string name, const Judgement& j, std::string detail = {},
               json counterexample = nullptr);
  Check& expect(std::string name, bool ok, std::string detail = {},
                json counterexample = nullptr);

  void merge(const Report& other, const std::string& prefix = {});

  bool ok() const;
  bool has_bounded() const;
  const Check* first_failure() const;
  const std::vector<Check>& checks() const { return checks_; }
  const std::string& title() const { return title_; }

  json to_json() const;
  static Report from_json(const json& j);
  std::string to_text() const;

  json inputs;  // replay data; null when not replayable
  std::string digest;
  double seconds = 0;

 private:
  std::string title_;
  std::vector<Check> checks_;
};

// Thrown when a construction exceeds its resource budget; carries a partial log.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded(const std::string& what, json partial = nullptr)
      : std::runtime_error(what), partial_log(std::move(partial)) {}
  json partial_log;
};

}  // namespace dspace
