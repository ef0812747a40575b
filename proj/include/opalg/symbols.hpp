#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace opalg {

/// Process-wide interning of names. Generators and coefficient variables
/// live in two disjoint tables, so "x" may be both a generator and a CVar.
class SymbolTable {
 public:
  std::int32_t intern(std::string_view name);
  /// Returns -1 when the name has not been interned.
  std::int32_t find(std::string_view name) const;
  std::string name(std::int32_t id) const;
  std::size_t size() const;

 private:
  std::vector<std::string> names_;
};

SymbolTable& generator_symbols();
SymbolTable& cvar_symbols();

bool is_identifier(std::string_view s);

class Generator {
 public:
  Generator() = default;
  explicit Generator(std::string_view name);
  static Generator from_id(std::int32_t id) {
    Generator g;
    g.id_ = id;
    return g;
  }

  std::int32_t id() const { return id_; }
  std::string name() const;

  friend bool operator==(Generator a, Generator b) { return a.id_ == b.id_; }
  friend auto operator<=>(Generator a, Generator b) { return a.id_ <=> b.id_; }

 private:
  std::int32_t id_ = -1;
};

/// Ordered set of generators; the declaration order is the rank used by
/// term orders. An open set accepts any identifier while parsing.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(const std::vector<std::string>& names);
  static GeneratorSet open();

  void add(std::string_view name);
  bool contains(Generator g) const;
  bool contains(std::string_view name) const;
  bool is_open() const { return open_; }
  const std::vector<Generator>& generators() const { return gens_; }

 private:
  std::vector<Generator> gens_;
  bool open_ = false;
};

}  // namespace opalg
