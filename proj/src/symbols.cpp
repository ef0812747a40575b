#include "opalg/symbols.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace opalg {

namespace {
std::mutex& table_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

std::int32_t SymbolTable::intern(std::string_view name) {
  std::lock_guard lock(table_mutex());
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it != names_.end()) return static_cast<std::int32_t>(it - names_.begin());
  names_.emplace_back(name);
  return static_cast<std::int32_t>(names_.size() - 1);
}

std::int32_t SymbolTable::find(std::string_view name) const {
  std::lock_guard lock(table_mutex());
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<std::int32_t>(it - names_.begin());
}

std::string SymbolTable::name(std::int32_t id) const {
  std::lock_guard lock(table_mutex());
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size())
    throw std::out_of_range("unknown symbol id");
  return names_[static_cast<std::size_t>(id)];
}

std::size_t SymbolTable::size() const {
  std::lock_guard lock(table_mutex());
  return names_.size();
}

SymbolTable& generator_symbols() {
  static SymbolTable t;
  return t;
}

SymbolTable& cvar_symbols() {
  static SymbolTable t;
  return t;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Generator::Generator(std::string_view name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid generator name: " + std::string(name));
  id_ = generator_symbols().intern(name);
}

std::string Generator::name() const { return generator_symbols().name(id_); }

GeneratorSet::GeneratorSet(const std::vector<std::string>& names) {
  for (const auto& n : names) add(n);
}

GeneratorSet GeneratorSet::open() {
  GeneratorSet s;
  s.open_ = true;
  return s;
}

void GeneratorSet::add(std::string_view name) {
  Generator g(name);
  if (contains(g)) throw std::invalid_argument("duplicate generator: " + std::string(name));
  gens_.push_back(g);
}

bool GeneratorSet::contains(Generator g) const {
  return std::find(gens_.begin(), gens_.end(), g) != gens_.end();
}

bool GeneratorSet::contains(std::string_view name) const {
  auto id = generator_symbols().find(name);
  return id >= 0 && contains(Generator::from_id(id));
}

}  // namespace opalg
