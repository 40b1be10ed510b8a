#include "dspace/report.hpp"

#include <sstream>

namespace dspace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::bounded: return "bounded";
  }
  return "?";
}

Judgement operator&&(const Judgement& a, const Judgement& b) {
  if (!a.value && a.exact) return a;
  if (!b.value && b.exact) return b;
  Judgement r;
  r.value = a.value && b.value;
  r.exact = a.exact && b.exact;
  r.bound = std::max(a.bound, b.bound);
  return r;
}

Check& Report::add(std::string name, Verdict v, std::string detail, json cx,
                   std::size_t bound) {
  checks_.push_back(Check{std::move(name), v, bound, std::move(detail), std::move(cx)});
  return checks_.back();
}

Check& Report::pass(std::string name, std::string detail) {
  return add(std::move(name), Verdict::pass, std::move(detail));
}

Check& Report::fail(std::string name, std::string detail, json cx) {
  return add(std::move(name), Verdict::fail, std::move(detail), std::move(cx));
}

Check& Report::bounded(std::string name, std::size_t bound, std::string detail) {
  return add(std::move(name), Verdict::bounded, std::move(detail), nullptr, bound);
}

Check& Report::judge(std::string name, const Judgement& j, std::string detail, json cx) {
  if (!j.value) return fail(std::move(name), std::move(detail), std::move(cx));
  if (j.exact) return pass(std::move(name), std::move(detail));
  return bounded(std::move(name), j.bound, std::move(detail));
}

Check& Report::expect(std::string name, bool ok, std::string detail, json cx) {
  if (ok) return pass(std::move(name), std::move(detail));
  return fail(std::move(name), std::move(detail), std::move(cx));
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks_) {
    Check copy = c;
    if (!prefix.empty()) copy.name = prefix + "/" + copy.name;
    checks_.push_back(std::move(copy));
  }
}

bool Report::ok() const {
  for (const auto& c : checks_)
    if (c.verdict == Verdict::fail) return false;
  return true;
}

bool Report::has_bounded() const {
  for (const auto& c : checks_)
    if (c.verdict == Verdict::bounded) return true;
  return false;
}

const Check* Report::first_failure() const {
  for (const auto& c : checks_)
    if (c.verdict == Verdict::fail) return &c;
  return nullptr;
}

json Report::to_json() const {
  json j;
  j["title"] = title_;
  j["ok"] = ok();
  j["checks"] = json::array();
  for (const auto& c : checks_) {
    json cj = {{"name", c.name}, {"verdict", verdict_name(c.verdict)}};
    if (c.verdict == Verdict::bounded) cj["bound"] = c.bound;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (!c.counterexample.is_null()) cj["counterexample"] = c.counterexample;
    j["checks"].push_back(std::move(cj));
  }
  if (!inputs.is_null()) j["inputs"] = inputs;
  if (!digest.empty()) j["digest"] = digest;
  j["timing"] = {{"seconds", seconds}};
  return j;
}

Report Report::from_json(const json& j) {
  Report r(j.value("title", std::string{}));
  for (const auto& cj : j.at("checks")) {
    Check c;
    c.name = cj.at("name").get<std::string>();
    std::string v = cj.at("verdict").get<std::string>();
    if (v == "pass") c.verdict = Verdict::pass;
    else if (v == "fail") c.verdict = Verdict::fail;
    else if (v == "bounded") c.verdict = Verdict::bounded;
    else throw std::invalid_argument("unknown verdict: " + v);
    c.bound = cj.value("bound", std::size_t{0});
    c.detail = cj.value("detail", std::string{});
    if (cj.contains("counterexample")) c.counterexample = cj["counterexample"];
    r.checks_.push_back(std::move(c));
  }
  if (j.contains("inputs")) r.inputs = j["inputs"];
  r.digest = j.value("digest", std::string{});
  if (j.contains("timing")) r.seconds = j["timing"].value("seconds", 0.0);
  return r;
}

std::string Report::to_text() const {
  std::ostringstream out;
  if (!title_.empty()) out << "== " << title_ << "\n";
  for (const auto& c : checks_) {
    out << "  [" << verdict_name(c.verdict);
    if (c.verdict == Verdict::bounded) out << " up to " << c.bound;
    out << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
    if (!c.counterexample.is_null()) out << "      counterexample " << c.counterexample.dump() << "\n";
  }
  out << "  => " << (ok() ? (has_bounded() ? "pass (verified up to bound)" : "pass") : "FAIL")
      << "\n";
  return out.str();
}

}  // namespace dspace
