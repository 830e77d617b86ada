#ifndef LIMITLAB_TEXT_HPP
#define LIMITLAB_TEXT_HPP

#include <optional>
#include <string>
#include <vector>

#include "limitlab/finite_set.hpp"
#include "limitlab/nat.hpp"

namespace limitlab {

/// One text symbol: a datum or the pause mark '#'.
class Symbol {
 public:
  Symbol() : datum_(std::nullopt) {}  // pause
  explicit Symbol(Nat x) : datum_(x) {}
  static Symbol pause() { return Symbol(); }

  bool is_pause() const { return !datum_.has_value(); }
  bool is_datum() const { return datum_.has_value(); }
  Nat datum() const { return *datum_; }

  bool operator==(const Symbol& o) const { return datum_ == o.datum_; }
  bool operator!=(const Symbol& o) const { return !(*this == o); }

 private:
  std::optional<Nat> datum_;
};

/// Finite sequence over naturals and '#'. Positions are 0-based; prefix
/// conventions follow the usual string ordering on texts.
class TextPrefix {
 public:
  TextPrefix() = default;
  explicit TextPrefix(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& at(std::size_t i) const { return symbols_.at(i); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  /// Set of naturals occurring in the prefix.
  FiniteSet range() const;

  TextPrefix appended(Symbol s) const;
  void push_back(Symbol s) { symbols_.push_back(s); }
  /// sigma' : the prefix with its last symbol removed. Throws on empty.
  TextPrefix dropped_last() const;
  /// First n symbols.
  TextPrefix take(std::size_t n) const;
  TextPrefix concat(const TextPrefix& o) const;

  bool is_prefix_of(const TextPrefix& o) const;

  bool operator==(const TextPrefix& o) const { return symbols_ == o.symbols_; }
  bool operator!=(const TextPrefix& o) const { return !(*this == o); }

  /// Compact canonical encoding, e.g. "3,1,#,0". Empty prefix is "".
  std::string to_string() const;
  /// JSON array mixing integers and the string "#".
  std::string to_json() const;
  static TextPrefix from_json(const std::string& json);

 private:
  std::vector<Symbol> symbols_;
};

}  // namespace limitlab

#endif
