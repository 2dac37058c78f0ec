#pragma once

#include <string>
#include <vector>

namespace tidyup::prompts {

struct PromptEntry {
  std::string object_name;
  std::string prompt;
  bool task2b = false;  // food subset used by the task-2b classifier
};

/// The competition prompt table, one handmade description per object.
const std::vector<PromptEntry>& builtin_prompt_table();

const PromptEntry* find_prompt(const std::string& object_name);

/// Class embedding for an object: the prompt string hashed to a unit
/// vector. Stable across runs; objects without a prompt entry fall back to
/// hashing the name itself.
std::vector<double> prompt_embedding(const std::string& object_name, int dim);

/// JSON file IO ({name: {"prompt": ..., "task2b": ...}}).
std::vector<PromptEntry> load_prompt_table(const std::string& path);
void save_prompt_table(const std::vector<PromptEntry>& table, const std::string& path);

}  // namespace tidyup::prompts
