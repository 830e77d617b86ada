#include "limitlab/text.hpp"

#include <sstream>

#include "json.hpp"

namespace limitlab {

FiniteSet TextPrefix::range() const {
  std::vector<Nat> xs;
  for (const Symbol& s : symbols_)
    if (s.is_datum()) xs.push_back(s.datum());
  return FiniteSet(std::move(xs));
}

TextPrefix TextPrefix::appended(Symbol s) const {
  TextPrefix r = *this;
  r.symbols_.push_back(s);
  return r;
}

TextPrefix TextPrefix::dropped_last() const {
  if (symbols_.empty()) throw Error("dropped_last on empty prefix");
  TextPrefix r = *this;
  r.symbols_.pop_back();
  return r;
}

TextPrefix TextPrefix::take(std::size_t n) const {
  TextPrefix r;
  r.symbols_.assign(symbols_.begin(), symbols_.begin() + std::min(n, symbols_.size()));
  return r;
}

TextPrefix TextPrefix::concat(const TextPrefix& o) const {
  TextPrefix r = *this;
  r.symbols_.insert(r.symbols_.end(), o.symbols_.begin(), o.symbols_.end());
  return r;
}

bool TextPrefix::is_prefix_of(const TextPrefix& o) const {
  if (size() > o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (symbols_[i] != o.symbols_[i]) return false;
  return true;
}

std::string TextPrefix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) os << ',';
    if (symbols_[i].is_pause())
      os << '#';
    else
      os << symbols_[i].datum();
  }
  return os.str();
}

std::string TextPrefix::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Symbol& s : symbols_) {
    if (s.is_pause())
      arr.push_back("#");
    else
      arr.push_back(s.datum());
  }
  return arr.dump();
}

TextPrefix TextPrefix::from_json(const std::string& json) {
  nlohmann::json arr = nlohmann::json::parse(json);
  if (!arr.is_array()) throw Error("text prefix json: expected array");
  std::vector<Symbol> syms;
  for (const auto& v : arr) {
    if (v.is_string()) {
      if (v.get<std::string>() != "#") throw Error("text prefix json: bad symbol");
      syms.push_back(Symbol::pause());
    } else if (v.is_number_unsigned()) {
      syms.push_back(Symbol(v.get<Nat>()));
    } else {
      throw Error("text prefix json: bad symbol");
    }
  }
  return TextPrefix(std::move(syms));
}

}  // namespace limitlab
