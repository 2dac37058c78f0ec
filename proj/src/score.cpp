#include "tidyup/score.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tidyup::score {

using nlohmann::json;

namespace {

double round_half(double v) { return std::round(v * 2.0) / 2.0; }

std::string fmt_points(double v) {
  std::ostringstream os;
  if (v == std::floor(v)) {
    os << static_cast<long long>(v);
  } else {
    os << std::fixed << std::setprecision(1) << v;
  }
  return os.str();
}

}  // namespace

double score_attempt(const Task1Attempt& a) {
  if (a.false_delivery && a.any_earned())
    throw std::invalid_argument("Task1Attempt: false delivery cannot earn points (" + a.target +
                                ")");
  if (a.orientation && !a.orientation_sensitive)
    throw std::invalid_argument(
        "Task1Attempt: orientation earned on an orientation-insensitive object (" + a.target +
        ")");
  if (a.false_delivery) return 0.0;
  const int earned =
      (a.delivery ? 1 : 0) + (a.category_correct ? 1 : 0) + (a.orientation ? 1 : 0);
  double points = 10.0 * earned;
  for (int i = 0; i < a.penalty_count(); ++i) points *= 0.5;
  return round_half(points);
}

double score_task1(const TrialLog& log) {
  double sum = 0.0;
  for (const Task1Attempt& a : log.attempts) sum += score_attempt(a);
  if (log.task1_finished_in_time) sum += 50.0;
  if (log.boss_bonus) sum += 50.0;
  if (log.drawers_bonus) sum += 50.0;
  return sum;
}

namespace {

/// A 40+60 point block reduced by 25% of its earned points per hit.
double hit_block(bool base, bool requested, int hits) {
  if (hits < 0) throw std::invalid_argument("score_task2: negative hit count");
  const double earned = (base ? 40.0 : 0.0) + (requested ? 60.0 : 0.0);
  const double reduced = earned * (1.0 - 0.25 * hits);
  return round_half(std::max(0.0, reduced));
}

}  // namespace

double score_task2(const Task2Record& r) {
  if (r.took_requested && !r.took_any_food)
    throw std::invalid_argument("Task2Record: took_requested implies took_any_food");
  if (r.delivered_requested && !r.delivered_any)
    throw std::invalid_argument("Task2Record: delivered_requested implies delivered_any");
  double sum = r.nav_success ? 100.0 : 0.0;
  sum += hit_block(r.took_any_food, r.took_requested, r.shelf_hits);
  sum += hit_block(r.delivered_any, r.delivered_requested, r.delivery_hits);
  if (r.finished_in_time) {
    sum += 50.0;
    sum += 20.0 * std::max(0, r.minutes_remaining);
  }
  return sum;
}

ScoreSheet score_trial(const TrialLog& log) {
  ScoreSheet sheet;
  sheet.trial_id = log.trial_id;
  int n = 0;
  for (const Task1Attempt& a : log.attempts) {
    SheetRow row;
    row.number = ++n;
    row.target = a.target;
    row.category = a.category;
    row.points = score_attempt(a);
    sheet.rows.push_back(row);
  }
  sheet.task1_subtotal = score_task1(log);
  sheet.task2_subtotal = score_task2(log.task2);
  sheet.total = sheet.task1_subtotal + sheet.task2_subtotal;
  return sheet;
}

std::string ScoreSheet::to_text() const {
  std::ostringstream os;
  os << "Trial " << trial_id << "\n";
  os << "Task 1\n";
  os << "  #  Target                    Category   Points\n";
  for (const SheetRow& r : rows) {
    os << "  " << std::left << std::setw(3) << r.number << std::setw(26) << r.target
       << std::setw(11) << r.category << std::right << std::setw(6) << fmt_points(r.points)
       << "\n";
  }
  os << "  SUBTOTAL (Task 1)" << std::right << std::setw(29) << fmt_points(task1_subtotal)
     << "\n";
  os << "Task 2\n";
  os << "  SUBTOTAL (Task 2)" << std::right << std::setw(29) << fmt_points(task2_subtotal)
     << "\n";
  os << "TOTAL (Task 1 + Task 2)" << std::right << std::setw(25) << fmt_points(total) << "\n";
  return os.str();
}

std::string ScoreSheet::to_csv() const {
  std::ostringstream os;
  os << "trial,row,target,category,points\n";
  for (const SheetRow& r : rows)
    os << trial_id << "," << r.number << "," << r.target << "," << r.category << ","
       << fmt_points(r.points) << "\n";
  os << trial_id << ",,SUBTOTAL Task 1,," << fmt_points(task1_subtotal) << "\n";
  os << trial_id << ",,SUBTOTAL Task 2,," << fmt_points(task2_subtotal) << "\n";
  os << trial_id << ",,TOTAL,," << fmt_points(total) << "\n";
  return os.str();
}

Summary aggregate(const std::vector<TrialLog>& logs) {
  Summary s;
  std::map<std::string, CategoryTally> tally;
  for (const TrialLog& log : logs) {
    int tidy = 0;
    for (const Task1Attempt& a : log.attempts) {
      if (a.delivery) ++tidy;
      std::string key = a.category;
      if (a.unknown_object) key = "Unknown";
      CategoryTally& t = tally[key];
      t.attempts++;
      if (a.delivery) t.delivered++;
      if (a.category_correct) t.category_correct++;
      s.total_attempts++;
    }
    s.tidy_counts.push_back(tidy);
    s.total_tidied += tidy;
  }
  for (auto& [name, t] : tally) s.per_category.emplace_back(name, t);
  return s;
}

std::string Summary::to_text() const {
  std::ostringstream os;
  os << "Tidy-up counts per trial:";
  for (int c : tidy_counts) os << " " << c;
  os << "\nTotal tidied: " << total_tidied << " of " << total_attempts << " attempts\n";
  os << "Per category (attempts / delivered / category correct):\n";
  for (const auto& [name, t] : per_category) {
    os << "  " << std::left << std::setw(10) << name << " " << t.attempts << " / " << t.delivered
       << " / " << t.category_correct << "\n";
  }
  return os.str();
}

namespace {

Task1Attempt attempt_from_json(const json& j) {
  Task1Attempt a;
  a.target = j.at("target").get<std::string>();
  a.category = j.at("category").get<std::string>();
  a.unknown_object = j.value("unknown", false);
  a.orientation_sensitive = j.value("orientation_sensitive", false);
  const json& pen = j.at("penalties");
  a.restart = pen.value("restart", false);
  a.drop = pen.value("drop", false);
  a.hit = pen.value("hit", false);
  const json& earned = j.at("earned");
  a.delivery = earned.value("delivery", false);
  a.category_correct = earned.value("category", false);
  a.orientation = earned.value("orientation", false);
  a.false_delivery = j.value("false_delivery", false);
  return a;
}

json attempt_to_json(const Task1Attempt& a) {
  json j;
  j["target"] = a.target;
  j["category"] = a.category;
  if (a.unknown_object) j["unknown"] = true;
  j["orientation_sensitive"] = a.orientation_sensitive;
  j["penalties"] = {{"restart", a.restart}, {"drop", a.drop}, {"hit", a.hit}};
  j["earned"] = {
      {"delivery", a.delivery}, {"category", a.category_correct}, {"orientation", a.orientation}};
  j["false_delivery"] = a.false_delivery;
  return j;
}

Task2Record task2_from_json(const json& j) {
  Task2Record r;
  r.nav_success = j.value("nav_success", false);
  r.took_any_food = j.value("took_any_food", false);
  r.took_requested = j.value("took_requested", false);
  r.shelf_hits = j.value("shelf_hits", 0);
  r.delivered_any = j.value("delivered_any", false);
  r.delivered_requested = j.value("delivered_requested", false);
  r.delivery_hits = j.value("delivery_hits", 0);
  r.finished_in_time = j.value("finished_in_time", false);
  r.minutes_remaining = j.value("minutes_remaining", 0);
  return r;
}

}  // namespace

TrialLog parse_trial_log(std::istream& in) {
  TrialLog log;
  bool saw_task2 = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("trial log line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::string event = j.value("event", "");
    if (event == "trial_start") {
      log.trial_id = j.value("trial", 0);
    } else if (event == "attempt") {
      log.attempts.push_back(attempt_from_json(j));
      if (log.attempts.back().restart) log.restart_count++;
    } else if (event == "task1_end") {
      log.task1_finished_in_time = j.value("finished_in_time", false);
      log.boss_bonus = j.value("boss_bonus", false);
      log.drawers_bonus = j.value("drawers_bonus", false);
    } else if (event == "task2") {
      log.task2 = task2_from_json(j);
      saw_task2 = true;
    }
    // Other events (phase, view, plan, ...) are operational records and do
    // not affect the score.
  }
  if (!saw_task2 && log.attempts.empty())
    throw std::runtime_error("trial log contains no scoring events");
  return log;
}

TrialLog load_trial_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trial log: " + path);
  return parse_trial_log(in);
}

std::string trial_log_to_jsonl(const TrialLog& log) {
  std::ostringstream os;
  os << json{{"event", "trial_start"}, {"trial", log.trial_id}}.dump() << "\n";
  for (const Task1Attempt& a : log.attempts) {
    json j = attempt_to_json(a);
    j["event"] = "attempt";
    os << j.dump() << "\n";
  }
  os << json{{"event", "task1_end"},
             {"finished_in_time", log.task1_finished_in_time},
             {"boss_bonus", log.boss_bonus},
             {"drawers_bonus", log.drawers_bonus}}
            .dump()
     << "\n";
  const Task2Record& r = log.task2;
  os << json{{"event", "task2"},
             {"nav_success", r.nav_success},
             {"took_any_food", r.took_any_food},
             {"took_requested", r.took_requested},
             {"shelf_hits", r.shelf_hits},
             {"delivered_any", r.delivered_any},
             {"delivered_requested", r.delivered_requested},
             {"delivery_hits", r.delivery_hits},
             {"finished_in_time", r.finished_in_time},
             {"minutes_remaining", r.minutes_remaining}}
            .dump()
     << "\n";
  os << json{{"event", "trial_end"}}.dump() << "\n";
  return os.str();
}

}  // namespace tidyup::score
