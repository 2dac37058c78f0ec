#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tidyup/score.hpp"

using namespace tidyup::score;

namespace {

std::string fixture_path(int trial) {
  const char* src = std::getenv("TIDYUP_SOURCE_DIR");
  REQUIRE(src != nullptr);
  return std::string(src) + "/data/fixtures/trial" + std::to_string(trial) + ".jsonl";
}

std::vector<TrialLog> load_fixtures() {
  std::vector<TrialLog> logs;
  for (int i = 1; i <= 6; ++i) logs.push_back(load_trial_log(fixture_path(i)));
  return logs;
}

Task1Attempt attempt(std::string target, std::string category, bool delivery, bool cat_ok,
                     bool orient, int restarts, int drops, int hits, bool false_del = false) {
  Task1Attempt a;
  a.target = std::move(target);
  a.category = std::move(category);
  a.orientation_sensitive = orient;
  a.delivery = delivery;
  a.category_correct = cat_ok;
  a.orientation = orient;
  a.restart = restarts > 0;
  a.drop = drops > 0;
  a.hit = hits > 0;
  a.false_delivery = false_del;
  return a;
}

}  // namespace

TEST_CASE("attempt scoring rules from the sheets") {
  // spoon with restart: three corrects halved once
  CHECK(score_attempt(attempt("spoon", "Kitchen", true, true, true, 1, 0, 0)) == 15.0);
  // bowl with drop and hit: two corrects halved twice
  CHECK(score_attempt(attempt("bowl", "Kitchen", true, true, false, 0, 1, 1)) == 5.0);
  // boss with hit: two corrects halved once
  CHECK(score_attempt(attempt("boss", "Boss", true, true, false, 0, 0, 1)) == 10.0);
  // false delivery is always zero
  Task1Attempt f = attempt("small marker", "Tool", false, false, false, 0, 0, 0, true);
  CHECK(score_attempt(f) == 0.0);
  f.drop = true;
  CHECK(score_attempt(f) == 0.0);
}

TEST_CASE("attempt validation") {
  Task1Attempt bad = attempt("x", "Food", true, false, false, 0, 0, 0, true);
  CHECK_THROWS_AS(score_attempt(bad), std::invalid_argument);
  Task1Attempt orient = attempt("ball", "Shape", true, true, false, 0, 0, 0);
  orient.orientation = true;  // not orientation sensitive
  CHECK_THROWS_AS(score_attempt(orient), std::invalid_argument);
}

TEST_CASE("score monotonicity in flags") {
  Task1Attempt base = attempt("mug", "Kitchen", true, true, false, 0, 0, 0);
  const double p0 = score_attempt(base);
  Task1Attempt withdrop = base;
  withdrop.drop = true;
  CHECK(score_attempt(withdrop) < p0);
  Task1Attempt withorient = base;
  withorient.orientation_sensitive = true;
  withorient.orientation = true;
  CHECK(score_attempt(withorient) > p0);
}

TEST_CASE("task2 block penalties") {
  Task2Record r;
  r.nav_success = true;
  r.took_any_food = true;
  r.took_requested = true;
  r.shelf_hits = 2;
  CHECK(score_task2(r) == 100.0 + 50.0);  // 100 block reduced by 2x25%

  r.shelf_hits = 5;  // block floors at zero
  CHECK(score_task2(r) == 100.0);

  r.shelf_hits = 0;
  r.delivered_any = true;
  r.delivered_requested = true;
  r.finished_in_time = true;
  r.minutes_remaining = 2;
  CHECK(score_task2(r) == 390.0);

  // Remaining minutes only count when the task finished in time.
  r.finished_in_time = false;
  CHECK(score_task2(r) == 300.0);

  Task2Record bad;
  bad.took_requested = true;
  CHECK_THROWS_AS(score_task2(bad), std::invalid_argument);
}

TEST_CASE("empty log scores zero") {
  TrialLog log;
  CHECK(score_task1(log) == 0.0);
  CHECK(score_task2(log.task2) == 0.0);
}

TEST_CASE("six fixture sheets reproduce the recorded subtotals and totals") {
  const std::vector<double> task1 = {145, 185, 240, 145, 320, 250};
  const std::vector<double> task2 = {390, 200, 390, 100, 410, 150};
  const std::vector<double> totals = {535, 385, 630, 245, 730, 400};
  auto logs = load_fixtures();
  REQUIRE(logs.size() == 6);
  for (int i = 0; i < 6; ++i) {
    ScoreSheet sheet = score_trial(logs[i]);
    CHECK(sheet.trial_id == i + 1);
    CHECK(sheet.task1_subtotal == task1[i]);
    CHECK(sheet.task2_subtotal == task2[i]);
    CHECK(sheet.total == totals[i]);
  }
}

TEST_CASE("aggregate reproduces tidy-up counts") {
  auto logs = load_fixtures();
  Summary s = aggregate(logs);
  CHECK(s.tidy_counts == std::vector<int>{5, 8, 9, 7, 11, 10});
  CHECK(s.total_tidied == 50);

  Summary empty = aggregate({});
  CHECK(empty.total_tidied == 0);
  CHECK(empty.tidy_counts.empty());
  CHECK(empty.total_attempts == 0);
}

TEST_CASE("serialize then parse is identity for scoring") {
  auto logs = load_fixtures();
  for (const TrialLog& log : logs) {
    std::istringstream in(trial_log_to_jsonl(log));
    TrialLog round = parse_trial_log(in);
    CHECK(score_task1(round) == score_task1(log));
    CHECK(score_task2(round.task2) == score_task2(log.task2));
    CHECK(round.attempts.size() == log.attempts.size());
    CHECK(round.trial_id == log.trial_id);
  }
}

TEST_CASE("sheet renders text and csv") {
  auto log = load_trial_log(fixture_path(1));
  ScoreSheet sheet = score_trial(log);
  const std::string text = sheet.to_text();
  CHECK(text.find("535") != std::string::npos);
  CHECK(text.find("softball") != std::string::npos);
  const std::string csv = sheet.to_csv();
  CHECK(csv.find("TOTAL,,535") != std::string::npos);
}

TEST_CASE("malformed logs are rejected") {
  std::istringstream bad("{\"event\":\"attempt\"\n");
  CHECK_THROWS(parse_trial_log(bad));
  std::istringstream empty("");
  CHECK_THROWS(parse_trial_log(empty));
}
