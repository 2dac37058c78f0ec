#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tidyup::score {

/// One tidy-up attempt from a task 1 sheet row.
struct Task1Attempt {
  std::string target;
  std::string category;           // Food, Kitchen, Shape, Tool, Task, Boss
  bool unknown_object = false;    // not listed in the rule book
  bool orientation_sensitive = false;

  // Penalties (x0.5 each)
  bool restart = false;
  bool drop = false;
  bool hit = false;

  // Correct (+10 each)
  bool delivery = false;
  bool category_correct = false;
  bool orientation = false;

  bool false_delivery = false;  // x0.0

  int penalty_count() const { return (restart ? 1 : 0) + (drop ? 1 : 0) + (hit ? 1 : 0); }
  bool any_earned() const { return delivery || category_correct || orientation; }
};

struct Task2Record {
  bool nav_success = false;
  bool took_any_food = false;
  bool took_requested = false;
  int shelf_hits = 0;
  bool delivered_any = false;
  bool delivered_requested = false;
  int delivery_hits = 0;
  bool finished_in_time = false;
  int minutes_remaining = 0;
};

struct TrialLog {
  int trial_id = 0;
  std::vector<Task1Attempt> attempts;
  bool task1_finished_in_time = false;
  bool boss_bonus = false;
  bool drawers_bonus = false;
  Task2Record task2;
  int restart_count = 0;
};

/// Points for one attempt: 10 per earned flag, halved per penalty,
/// zero on a false delivery, rounded to the nearest 0.5.
double score_attempt(const Task1Attempt& a);

/// Task 1 subtotal: attempts plus +50 each for finishing in time, the boss
/// challenge, and opening the three drawers.
double score_task1(const TrialLog& log);

/// Task 2 subtotal: 100 for navigation, 40+60 taking and 40+60 delivering
/// blocks each reduced by 25% of the block per hit (floored at zero), +50
/// for finishing, and +20 per remaining minute counted only when the task
/// finished in time.
double score_task2(const Task2Record& r);

struct SheetRow {
  int number = 0;
  std::string target;
  std::string category;
  double points = 0.0;
};

struct ScoreSheet {
  int trial_id = 0;
  std::vector<SheetRow> rows;
  double task1_subtotal = 0.0;
  double task2_subtotal = 0.0;
  double total = 0.0;

  std::string to_text() const;
  std::string to_csv() const;
};

ScoreSheet score_trial(const TrialLog& log);

struct CategoryTally {
  int attempts = 0;
  int delivered = 0;
  int category_correct = 0;
};

struct Summary {
  std::vector<int> tidy_counts;  // per trial: attempts with delivery earned
  int total_tidied = 0;
  int total_attempts = 0;
  // Keyed like the paper's breakdown: listed categories, plus Unknown and Boss.
  std::vector<std::pair<std::string, CategoryTally>> per_category;

  std::string to_text() const;
};

Summary aggregate(const std::vector<TrialLog>& logs);

/// Line-delimited JSON trial-log IO. Scoring consumes the `attempt`,
/// `task1_end` and `task2` events; other event kinds pass through untouched
/// so a full harness event stream can be scored directly.
TrialLog parse_trial_log(std::istream& in);
TrialLog load_trial_log(const std::string& path);

/// Serializes a TrialLog as scoring events (used for fixtures and tests).
std::string trial_log_to_jsonl(const TrialLog& log);

}  // namespace tidyup::score
