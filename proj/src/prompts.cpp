#include "tidyup/prompts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "tidyup/rng.hpp"

namespace tidyup::prompts {

using nlohmann::json;

const std::vector<PromptEntry>& builtin_prompt_table() {
  static const std::vector<PromptEntry> table = {
      {"chips can", "a photo of a pringles can", true},
      {"master chef can", "a photo of a blue coffee can", true},
      {"cracker box", "a photo of a box of cheez-it", true},
      {"sugar box", "a photo of a yellow box of Domino sugar", true},
      {"tomato soup can", "a photo of a can of campbells tomato soup", true},
      {"mustard bottle", "a photo of a yellow mustard", true},
      {"tuna fish can", "a photo of a StarKist can tuna", true},
      {"pudding box", "a photo of a box of brown chocolate pudding jello", true},
      {"gelatin box", "a photo of a box of red jello", true},
      {"potted meat can", "a photo of a can of spam", true},
      {"banana", "a photo of a banana, a type of fruit", true},
      {"strawberry", "a photo of a red strawberry with green stem, a type of fruit", true},
      {"apple", "a photo of a red apple, a type of fruit", true},
      {"lemon", "a photo of a lemon, a type of fruit", true},
      {"peach", "a photo of a yellowish peach, a type of fruit", true},
      {"pear", "a photo of a green pear, a type of fruit", true},
      {"orange", "a photo of a orange, a type of fruit", true},
      {"plum", "a photo of a purple plum, a type of fruit", true},
      {"pitcher base", "a photo of a blue pitcher", false},
      {"pitcher lid", "a photo of a pitcher lid", false},
      {"bleach cleanser", "a photo of a soft scrub bleach bottle", false},
      {"windex bottle", "a photo of a windex spray bottle", false},
      {"wine glass", "a photo of a wine glass", false},
      {"bowl", "a photo of a red bowl", false},
      {"mug", "a photo of a red mug", false},
      {"sponge", "a photo of a sponge", false},
      {"plate", "a photo of a plate", false},
      {"fork", "a photo of a red fork", false},
      {"spoon", "a photo of a red spoon", false},
      {"spatula", "a photo of a spatula", false},
      {"key", "a photo of a key", false},
      {"large marker", "a photo of a expo marker", false},
      {"small marker", "a photo of a expo marker", false},
      {"plastic bolt", "a photo of a bolt", false},
      {"medium clamp", "a photo of a clamp", false},
      {"card", "a photo of a card", false},
      {"ball", "a photo of a sports ball", false},
      {"rope", "a photo of a rope", false},
      {"chain", "a photo of a chain", false},
      {"foam brick", "a photo of a brick", false},
      {"dice", "a photo of a die", false},
      {"marbles", "a photo of a marble", false},
      {"cups", "a photo of a toy cup", false},
      {"peg", "a photo of a wooden puzzle", false},
      {"toy airplane", "a photo of a toy airplane", false},
      {"magazine", "a photo of a time magazine", false},
      {"shirt", "a photo of a black t-shirt", false},
      {"lego duplo", "a photo of a lego", false},
      {"timer", "a photo of a timer", false},
      {"rubiks cube", "a photo of a rubiks cube", false},
  };
  return table;
}

const PromptEntry* find_prompt(const std::string& object_name) {
  for (const PromptEntry& e : builtin_prompt_table())
    if (e.object_name == object_name) return &e;
  return nullptr;
}

std::vector<double> prompt_embedding(const std::string& object_name, int dim) {
  const PromptEntry* e = find_prompt(object_name);
  // "small marker" and "large marker" share a prompt; salt with the name so
  // every object keeps a distinct class direction.
  const std::string text = e ? e->prompt + "|" + object_name : object_name;
  return rng::hash_to_unit_vector(text, dim);
}

std::vector<PromptEntry> load_prompt_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open prompt table: " + path);
  json j;
  in >> j;
  std::vector<PromptEntry> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    PromptEntry e;
    e.object_name = it.key();
    e.prompt = it.value().at("prompt").get<std::string>();
    e.task2b = it.value().value("task2b", false);
    out.push_back(e);
  }
  // Keys come back sorted from the JSON object; restore table order where
  // possible so round trips compare cleanly.
  std::stable_sort(out.begin(), out.end(), [](const PromptEntry& a, const PromptEntry& b) {
    auto rank = [](const std::string& name) {
      const auto& table = builtin_prompt_table();
      for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i].object_name == name) return i;
      return table.size();
    };
    return rank(a.object_name) < rank(b.object_name);
  });
  return out;
}

void save_prompt_table(const std::vector<PromptEntry>& table, const std::string& path) {
  json j = json::object();
  for (const PromptEntry& e : table)
    j[e.object_name] = json{{"prompt", e.prompt}, {"task2b", e.task2b}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write prompt table: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace tidyup::prompts
